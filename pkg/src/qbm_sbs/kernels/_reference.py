"""Pure-numpy kernel: weighted exponent sums over the bath, chunked over time.

This is the fallback used when the compiled extension is unavailable (or when
``QBM_SBS_FORCE_PURE=1``).  Results agree with the compiled kernel to
floating-point rounding.
"""

from __future__ import annotations

import numpy as np

AXIS_MOMENTUM = 0
AXIS_POSITION = 1

_CHUNK = 8192


def exponent_series(
    times: np.ndarray,
    omega: np.ndarray,
    pref: np.ndarray,
    weight: np.ndarray,
    omega_big: float,
    axis: int,
    r: float,
    theta: float,
    psi: float,
) -> np.ndarray:
    """sum_k weight[k] * |alpha~_k(t)|^2 for every t.

    ``pref[k]`` is the amplitude prefactor C_k / (2 sqrt(2 m_k omega_k)).
    """
    times = np.ascontiguousarray(times, dtype=float)
    omega = np.asarray(omega, dtype=float)
    pref = np.asarray(pref, dtype=float)
    weight = np.asarray(weight, dtype=float)
    ch = np.cosh(r)
    th = np.tanh(r)
    rot_in = np.exp(-1j * psi)
    rot_conj = np.exp(1j * (psi + theta))
    out = np.empty(times.shape[0])
    for lo in range(0, times.shape[0], _CHUNK):
        t = times[lo : lo + _CHUNK, None]
        plus = (np.exp(1j * (omega + omega_big) * t) - 1.0) / (omega + omega_big)
        minus = (np.exp(1j * (omega - omega_big) * t) - 1.0) / (omega - omega_big)
        if axis == AXIS_MOMENTUM:
            a = -pref * (plus + minus)
        else:
            a = 1j * pref * (plus - minus)
        if r != 0.0:
            a = ch * (rot_in * a - rot_conj * np.conj(a) * th)
        out[lo : lo + _CHUNK] = ((a.real**2 + a.imag**2) * weight).sum(axis=1)
    return out
