# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel: weighted exponent sums over the bath modes.

Same contract as the numpy fallback in ``_reference``; one pass over the
(time, oscillator) grid with scalar trig calls.
"""

import numpy as np

from libc.math cimport cos, sin, cosh, tanh

AXIS_MOMENTUM = 0
AXIS_POSITION = 1


def exponent_series(times, omega, pref, weight,
                    double omega_big, int axis,
                    double r, double theta, double psi):
    """sum_k weight[k] * |alpha~_k(t)|^2 for every t."""
    cdef double[::1] tv = np.ascontiguousarray(times, dtype=np.float64)
    cdef double[::1] wv = np.ascontiguousarray(omega, dtype=np.float64)
    cdef double[::1] pv = np.ascontiguousarray(pref, dtype=np.float64)
    cdef double[::1] gv = np.ascontiguousarray(weight, dtype=np.float64)
    cdef Py_ssize_t nt = tv.shape[0], nk = wv.shape[0]
    out = np.empty(nt, dtype=np.float64)
    cdef double[::1] ov = out

    cdef double ch = cosh(r), th = tanh(r)
    cdef double ch2 = ch * ch
    cdef double phi = 2.0 * psi + theta
    cdef double cph = cos(phi), sph = sin(phi)

    cdef Py_ssize_t i, k
    cdef double t, w, p
    cdef double cw, sw, cwp, swp, cwm, swm
    cdef double rep, imp, rem, imm, x, y, u, v, acc
    cdef double cbig, sbig

    with nogil:
        for i in range(nt):
            t = tv[i]
            cbig = cos(omega_big * t)
            sbig = sin(omega_big * t)
            acc = 0.0
            for k in range(nk):
                w = wv[k]
                p = pv[k]
                cw = cos(w * t)
                sw = sin(w * t)
                # e^{i(w+W)t} and e^{i(w-W)t} via angle addition
                cwp = cw * cbig - sw * sbig
                swp = sw * cbig + cw * sbig
                cwm = cw * cbig + sw * sbig
                swm = sw * cbig - cw * sbig
                rep = (cwp - 1.0) / (w + omega_big)
                imp = swp / (w + omega_big)
                rem = (cwm - 1.0) / (w - omega_big)
                imm = swm / (w - omega_big)
                if axis == 0:
                    x = -p * (rep + rem)
                    y = -p * (imp + imm)
                else:
                    # i * pref * (plus - minus)
                    x = -p * (imp - imm)
                    y = p * (rep - rem)
                # |cosh(r) (e^{-i psi} a - e^{i(psi+theta)} conj(a) tanh(r))|^2
                #   = cosh(r)^2 |a - e^{i(2 psi + theta)} conj(a) tanh(r)|^2
                u = x - th * (x * cph + y * sph)
                v = y - th * (x * sph - y * cph)
                acc += gv[k] * ch2 * (u * u + v * v)
            ov[i] = acc
    return out
