"""Brute-force Fock-space validation of the closed-form observables.

Everything here works for a single bath mode in dimensionless displacement
units eta = alpha * dX / sqrt(hbar); multiplicativity over modes reduces the
many-oscillator observables to this case.  Truncation dimensions come from
explicit tail bounds with a x2 safety margin, and every result records the
dimension used: silent truncation is the main failure mode of Fock brute
force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, expm

from .errors import ConfigurationError, TruncationError

TAIL_TOL = 1.0e-10
EIG_CLAMP = -1.0e-10
PASS_TOL = 1.0e-5


@dataclass(frozen=True)
class FockState:
    """Density matrix in the number basis, truncated at ``dim`` levels."""

    dim: int
    matrix: np.ndarray

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


def _ladder(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)


def required_thermal_dim(nbar: float, tol: float = TAIL_TOL) -> int:
    """Smallest dim whose neglected thermal tail mass is below tol."""
    if nbar < 0:
        raise TruncationError(f"nbar must be >= 0, got {nbar}")
    if nbar == 0:
        return 1
    q = nbar / (nbar + 1.0)
    return max(1, math.ceil(math.log(tol) / math.log(q)))


def thermal_fock(nbar: float, dim: int) -> FockState:
    """Thermal state with mean occupation nbar; the truncated tail is not renormalized."""
    need = required_thermal_dim(nbar)
    if dim < need:
        raise TruncationError(
            f"dim={dim} keeps a thermal tail above {TAIL_TOL:g} for nbar={nbar}; need dim >= {need}"
        )
    n = np.arange(dim, dtype=float)
    if nbar == 0:
        p = np.zeros(dim)
        p[0] = 1.0
    else:
        p = np.exp(n * math.log(nbar / (nbar + 1.0)) - math.log(nbar + 1.0))
    return FockState(dim=dim, matrix=np.diag(p).astype(complex))


def required_displace_dim(eta: complex) -> int:
    """Truncation guard against displacement leakage out of the low-lying block."""
    m = abs(eta)
    return math.ceil(4.0 * (m * m + 3.0 * m + 4.0))


def displace_fock(eta: complex, dim: int) -> np.ndarray:
    """Displacement unitary in the truncated number basis."""
    need = required_displace_dim(eta)
    if dim < need:
        raise TruncationError(
            f"dim={dim} too small for displacement |eta|={abs(eta):g}; need dim >= {need}"
        )
    a = _ladder(dim)
    return expm(eta * a.conj().T - np.conj(eta) * a)


def squeezed_vacuum_tail(r: float, n_keep: int) -> float:
    """Probability mass of a squeezed vacuum above number level ``n_keep``."""
    th = math.tanh(r)
    p = 1.0 / math.cosh(r)
    total = 0.0
    m = 0
    while 2 * m < n_keep:
        total += p
        p *= th * th * (2 * m + 1) / (2 * m + 2)
        m += 1
    return max(0.0, 1.0 - total)


def required_squeeze_dim(r: float, tol: float = TAIL_TOL) -> int:
    dim = 16
    while squeezed_vacuum_tail(r, dim // 2) >= tol:
        dim *= 2
        if dim > 1 << 16:
            raise TruncationError(f"no practical truncation for squeezing r={r}")
    return dim


def squeeze_fock(xi: complex, dim: int) -> np.ndarray:
    """Squeezing unitary exp((xi a^dag^2 - xi^* a^2) / 2) in the truncated basis.

    The sign convention is the one under which the closed-form amplitude
    substitution for Gaussian initial states reproduces this operator's
    action; see the oracle consistency tests.
    """
    r = abs(xi)
    need = required_squeeze_dim(r)
    if dim < need:
        raise TruncationError(
            f"dim={dim} leaks squeezed population above dim/2 for r={r:g}; need dim >= {need}"
        )
    a = _ladder(dim)
    ad = a.conj().T
    return expm((xi * (ad @ ad) - np.conj(xi) * (a @ a)) / 2.0)


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    w, v = eigh((m + m.conj().T) / 2.0)
    if w.min() < EIG_CLAMP:
        raise TruncationError(f"matrix eigenvalue {w.min():g} below the PSD clamp {EIG_CLAMP:g}")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def overlap_fock(rho1: FockState, rho2: FockState) -> float:
    """Generalized overlap tr sqrt(sqrt(rho1) rho2 sqrt(rho1))."""
    if rho1.dim != rho2.dim:
        raise ConfigurationError(f"dimension mismatch: {rho1.dim} vs {rho2.dim}")
    s1 = _sqrt_psd(rho1.matrix)
    inner = s1 @ rho2.matrix @ s1
    w = eigh((inner + inner.conj().T) / 2.0, eigvals_only=True)
    w = np.clip(w, 0.0, None)
    return float(np.sum(np.sqrt(w)))


def gamma_fock(rho0: FockState, eta: complex) -> float:
    """Modulus of the displaced-state trace, the single-mode decoherence factor."""
    d = displace_fock(eta, rho0.dim)
    return float(abs(np.trace(d @ rho0.matrix)))


def transformed_amplitude(eta: complex, r: float, theta: float, psi: float = 0.0) -> complex:
    """Closed-form amplitude substitution for a squeezed-rotated Gaussian state."""
    ch = math.cosh(r)
    th = math.tanh(r)
    return ch * (
        np.exp(-1j * psi) * eta - np.exp(1j * (psi + theta)) * np.conj(eta) * th
    )


def gamma_closed(nbar: float, eta: complex, r: float = 0.0, theta: float = 0.0) -> float:
    """Closed-form single-mode decoherence factor, coth weight as 2 nbar + 1."""
    et = transformed_amplitude(eta, r, theta)
    return math.exp(-abs(et) ** 2 * (2.0 * nbar + 1.0) / 2.0)


def b_closed(nbar: float, eta: complex, r: float = 0.0, theta: float = 0.0) -> float:
    """Closed-form single-mode generalized overlap, tanh weight as 1/(2 nbar + 1)."""
    et = transformed_amplitude(eta, r, theta)
    return math.exp(-abs(et) ** 2 / (2.0 * (2.0 * nbar + 1.0)))


@dataclass(frozen=True)
class ValidationCell:
    nbar: float
    eta: complex
    r: float
    theta: float
    dim: int
    guard_ok: bool
    gamma_closed: float
    gamma_fock: float
    b_closed: float
    b_fock: float
    note: str = ""

    @property
    def gamma_dev(self) -> float:
        return abs(self.gamma_closed - self.gamma_fock)

    @property
    def b_dev(self) -> float:
        return abs(self.b_closed - self.b_fock)

    @property
    def ok(self) -> bool:
        return self.guard_ok and self.gamma_dev < PASS_TOL and self.b_dev < PASS_TOL


@dataclass(frozen=True)
class ValidationReport:
    cells: tuple[ValidationCell, ...]
    passed: bool
    max_gamma_dev: float
    max_b_dev: float


def default_grid() -> list[tuple[float, float, float, float]]:
    """(nbar, |eta|, r, theta) cells: thermal plus squeezed-thermal states."""
    nbars = [0.0, 0.5, 2.0]
    etas = [0.3, 1.0, 2.0]
    cells = [(nb, e, 0.0, 0.0) for nb in nbars for e in etas]
    for nb in nbars:
        for e in etas:
            for r in (0.5, 1.0):
                for theta in (0.0, math.pi / 2.0, math.pi):
                    cells.append((nb, e, r, theta))
    return cells


def auto_dim(nbar: float, eta: complex, r: float) -> int:
    """Tail-bound truncation with a x2 safety margin."""
    n_eff = nbar * math.cosh(2.0 * r) + math.sinh(r) ** 2 + abs(eta) ** 2
    need = max(
        required_thermal_dim(n_eff),
        required_displace_dim(eta),
        required_squeeze_dim(r) if r > 0 else 1,
        16,
    )
    return 2 * need


def _cell_state(nbar: float, r: float, theta: float, dim: int) -> FockState:
    rho = thermal_fock(nbar, dim)
    if r > 0:
        s = squeeze_fock(r * np.exp(1j * theta), dim)
        rho = FockState(dim=dim, matrix=s @ rho.matrix @ s.conj().T)
    return rho


def validate_closed_forms(
    grid: list[tuple[float, float, float, float]] | None = None,
    force_dim: int | None = None,
) -> ValidationReport:
    """Compare closed-form Gamma and B against Fock brute force on every cell.

    Guard violations flag the cell (and fail the report) without aborting the
    remaining cells.  Cells sharing an initial state reuse its square root;
    displacement unitaries are cached by (eta, dim).
    """
    if grid is None:
        grid = default_grid()
    if len(grid) == 0:
        raise ConfigurationError("validation grid is empty")

    # Group by initial state so the expensive eigendecomposition runs once.
    groups: dict[tuple[float, float, float], list[complex]] = {}
    for nbar, eta_abs, r, theta in grid:
        groups.setdefault((nbar, r, theta), []).append(complex(eta_abs))

    disp_cache: dict[tuple[complex, int], np.ndarray] = {}

    def displacement(eta: complex, dim: int) -> np.ndarray:
        key = (eta, dim)
        if key not in disp_cache:
            disp_cache[key] = displace_fock(eta, dim)
        return disp_cache[key]

    results: dict[tuple[float, complex, float, float], ValidationCell] = {}
    for (nbar, r, theta), etas in groups.items():
        dim = force_dim if force_dim is not None else max(auto_dim(nbar, e, r) for e in etas)
        try:
            rho0 = _cell_state(nbar, r, theta, dim)
            s0 = _sqrt_psd(rho0.matrix)
            state_err = None
        except TruncationError as exc:
            rho0 = s0 = None
            state_err = exc
        for eta in etas:
            gc = gamma_closed(nbar, eta, r, theta)
            bc = b_closed(nbar, eta, r, theta)
            if state_err is not None:
                cell = ValidationCell(
                    nbar, eta, r, theta, dim, False, gc, np.nan, bc, np.nan, note=str(state_err)
                )
            else:
                try:
                    d = displacement(eta, dim)
                    gf = float(abs(np.trace(d @ rho0.matrix)))
                    inner = s0 @ (d @ rho0.matrix @ d.conj().T) @ s0
                    w = eigh((inner + inner.conj().T) / 2.0, eigvals_only=True)
                    bf = float(np.sum(np.sqrt(np.clip(w, 0.0, None))))
                    cell = ValidationCell(nbar, eta, r, theta, dim, True, gc, gf, bc, bf)
                except TruncationError as exc:
                    cell = ValidationCell(
                        nbar, eta, r, theta, dim, False, gc, np.nan, bc, np.nan, note=str(exc)
                    )
            results[(nbar, eta, r, theta)] = cell

    cells = [results[(nbar, complex(e), r, theta)] for nbar, e, r, theta in grid]
    finite = [c for c in cells if c.guard_ok]
    return ValidationReport(
        cells=tuple(cells),
        passed=all(c.ok for c in cells),
        max_gamma_dev=max((c.gamma_dev for c in finite), default=math.nan),
        max_b_dev=max((c.b_dev for c in finite), default=math.nan),
    )
