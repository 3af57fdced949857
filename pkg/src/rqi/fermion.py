"""Dirac-cavity Bogoliubov coefficients and perturbative entanglement degradation.

A massless Dirac field in a cavity of length `delta` with boundary parameters
(s, theta) has frequencies omega_n = (n + s) pi / delta, n in Z; n >= 0 are
particles and n < 0 antiparticles.  The s = 0 zero mode is handled as the
s -> 0+ limit (all quantities below are continuous there).

The acceleration expansion of the mode-matching matrix A reads

    A[m, n] = delta_mn + A1[m, n] h + A2[m, n] h^2 + O(h^3)

with the closed forms of `dirac_bogo`.  Grafting an acceleration of proper
duration tau1 between two inertial stretches gives the region-I -> region-III
matrix calA = A+ G(tau1) A whose order-by-order blocks feed the negativity
formulas for two-mode and charge-entangled Bell states.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .boson import PerturbativeValidityWarning


@dataclass(frozen=True)
class FermionCavityConfig:
    """Cavity and truncation parameters for the Dirac treatment.

    `theta` enters no implemented observable (it cancels from all printed
    formulas); it is stored for completeness only.
    """

    s: float = 0.0
    theta: float = 0.0
    delta: float = 1.0
    h: float = 1e-2
    n_side: int = 200  # mode window [-n_side, n_side]

    def __post_init__(self):
        if not 0.0 <= self.s < 1.0:
            raise ValueError("spectrum offset s must lie in [0, 1)")
        if not 0.0 <= self.h < 2.0:
            raise ValueError("acceleration parameter must lie in [0, 2)")
        if self.delta <= 0:
            raise ValueError("cavity length must be positive")
        if self.n_side < 2:
            raise ValueError("mode window too small")

    @property
    def modes(self):
        return np.arange(-self.n_side, self.n_side + 1)


@dataclass(frozen=True)
class DiracBogo:
    """Perturbative Bogoliubov matrices over the mode window."""

    modes: np.ndarray
    a1: np.ndarray
    a2: np.ndarray

    def index(self, n):
        i = int(n) - int(self.modes[0])
        if not 0 <= i < self.modes.size:
            raise ValueError(f"mode {n} outside window")
        return i


def frequencies(config, modes=None):
    """omega_n = (n + s) pi / delta over the window."""
    if modes is None:
        modes = config.modes
    return (np.asarray(modes) + config.s) * np.pi / config.delta


def a1_entry(m, n, s=0.0):
    """First-order coefficient [(-1)^(m+n) - 1] (m + n + 2s) / (2 pi^2 (m-n)^3)."""
    m = np.asarray(m)
    n = np.asarray(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = ((-1.0) ** (m + n) - 1.0) * (m + n + 2.0 * s) / (2.0 * np.pi**2 * (m - n) ** 3)
    return np.where(m == n, 0.0, val)


def a2_entry(m, n, s=0.0):
    """Second-order coefficient; diagonal -(1/96 + pi^2 (n+s)^2 / 240)."""
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    diag = -(1.0 / 96.0 + np.pi**2 * (n + s) ** 2 / 240.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        off = ((-1.0) ** (m + n) + 1.0) / (8.0 * np.pi**2 * (m - n) ** 4) * (
            (m + s) ** 2 + 3.0 * (n + s) ** 2 + 8.0 * (m + s) * (n + s)
        )
    return np.where(m == n, diag, off)


def dirac_bogo(config):
    """Bogoliubov matrices A1, A2 over the configured mode window."""
    modes = config.modes
    m, n = np.meshgrid(modes, modes, indexing="ij")
    return DiracBogo(modes=modes, a1=a1_entry(m, n, config.s), a2=a2_entry(m, n, config.s))


def compose_I_to_III(config, bogo, tau1, g2=None):
    """Order-by-order blocks of calA = A+ G(tau1) A.

    Returns (calA0, calA1, calA2) with calA0 = G0, calA1 = G0 A1 + A1+ G0 and
    calA2 = G0 A2 + A2+ G0 + A1+ G0 A1 + G2.  The O(h^2) phase correction G2
    is not printed for fermions; it defaults to zero (its effect sits in the
    pure-phase part that cancels from every implemented observable).
    """
    g0 = np.diag(np.exp(1j * frequencies(config) * tau1))
    cal0 = g0
    cal1 = g0 @ bogo.a1 + bogo.a1.conj().T @ g0
    cal2 = g0 @ bogo.a2 + bogo.a2.conj().T @ g0 + bogo.a1.conj().T @ g0 @ bogo.a1
    if g2 is not None:
        cal2 = cal2 + g2
    return cal0, cal1, cal2


def f_k(config, tau1, k, bogo=None):
    """Degradation sum f_k = sum_p |E1^(k-p) - 1|^2 |A1[k, p]|^2.

    E1 = exp(i pi tau1 / delta); periodic in tau1 with period 2 delta and
    vanishing iff tau1 is an integer multiple of 2 delta.  Even in k for s=0.
    """
    if bogo is None:
        bogo = dirac_bogo(config)
    k_i = bogo.index(k)
    p = bogo.modes
    e1 = np.exp(1j * np.pi * tau1 / config.delta)
    weights = np.abs(e1 ** (k - p) - 1.0) ** 2
    total = float(np.sum(weights * np.abs(bogo.a1[k_i, :]) ** 2))
    # truncation sanity: the tail of |A1|^2 decays like 1/(k-p)^6
    edge = weights[0] * bogo.a1[k_i, 0] ** 2 + weights[-1] * bogo.a1[k_i, -1] ** 2
    if edge > 1e-6 * max(total, 1e-30):
        raise RuntimeError("mode window too small for a converged f_k")
    return total


def f_k_split(config, tau1, k, bogo=None):
    """(f_k^+, f_k^-): particle / antiparticle split of f_k via calA1 sums."""
    if bogo is None:
        bogo = dirac_bogo(config)
    _, cal1, _ = compose_I_to_III(config, bogo, tau1)
    k_i = bogo.index(k)
    col = np.abs(cal1[:, k_i]) ** 2
    pos = bogo.modes >= 0
    return float(col[pos].sum()), float(col[~pos].sum())


def _warn_if_large(config, value):
    if value * config.h**2 > 0.5:
        warnings.warn(
            f"f h^2 = {value * config.h**2:.3g} > 0.5; perturbative negativity unreliable",
            PerturbativeValidityWarning,
            stacklevel=3,
        )


def negativity_two_mode(config, tau1, k, bogo=None):
    """Negativity (1 - f_k h^2)/2 of the evolved two-mode Bell states.

    Independent of the Bell sign and of the charge of the reference mode.
    """
    val = f_k(config, tau1, k, bogo=bogo)
    _warn_if_large(config, val)
    return 0.5 * (1.0 - val * config.h**2)


def negativity_charge_state(config, tau1, k, kp, bogo=None):
    """Negativity of the charge-entangled Bell states (k >= 0, k' < 0).

    1/2 - (f_k + f_k') h^2 / 4 + |E1^(k-k') - 1|^2 |A1[k, k']|^2 h^2 / 2;
    the interference term is nonzero iff k and k' differ in parity and always
    diminishes the degradation.
    """
    if k < 0 or kp >= 0:
        raise ValueError("charge state requires k >= 0 and k' < 0")
    if bogo is None:
        bogo = dirac_bogo(config)
    fk = f_k(config, tau1, k, bogo=bogo)
    fkp = f_k(config, tau1, kp, bogo=bogo)
    e1 = np.exp(1j * np.pi * tau1 / config.delta)
    inter = abs(e1 ** (k - kp) - 1.0) ** 2 * abs(bogo.a1[bogo.index(k), bogo.index(kp)]) ** 2
    _warn_if_large(config, fk + fkp)
    return 0.5 - 0.25 * (fk + fkp) * config.h**2 + 0.5 * inter * config.h**2


def oneway_f(config, tau1, tau2, k, bogo=None):
    """One-way journey sum f~~_k with both E1 and E1 E2 phase factors."""
    if bogo is None:
        bogo = dirac_bogo(config)
    k_i = bogo.index(k)
    p = bogo.modes
    e1 = np.exp(1j * np.pi * tau1 / config.delta)
    e12 = np.exp(1j * np.pi * (tau1 + tau2) / config.delta)
    weights = np.abs(e1 ** (k - p) - 1.0) ** 2 * np.abs(e12 ** (k - p) - 1.0) ** 2
    return float(np.sum(weights * np.abs(bogo.a1[k_i, :]) ** 2))


def oneway_negativities(config, tau1, tau2, k, kp=None, bogo=None):
    """Negativities after accelerate / coast / brake (one-way journey).

    Returns the two-mode value (1 - f~~_k h^2)/2, and additionally the
    charge-state value when k' is given.
    """
    if bogo is None:
        bogo = dirac_bogo(config)
    fk = oneway_f(config, tau1, tau2, k, bogo=bogo)
    _warn_if_large(config, fk)
    two_mode = 0.5 * (1.0 - fk * config.h**2)
    if kp is None:
        return {"two_mode": two_mode}
    if k < 0 or kp >= 0:
        raise ValueError("charge state requires k >= 0 and k' < 0")
    fkp = oneway_f(config, tau1, tau2, kp, bogo=bogo)
    e1 = np.exp(1j * np.pi * tau1 / config.delta)
    e12 = np.exp(1j * np.pi * (tau1 + tau2) / config.delta)
    inter = (
        abs(e1 ** (k - kp) - 1.0) ** 2
        * abs(e12 ** (k - kp) - 1.0) ** 2
        * abs(bogo.a1[bogo.index(k), bogo.index(kp)]) ** 2
    )
    charge = 0.5 - 0.25 * (fk + fkp) * config.h**2 + 0.5 * inter * config.h**2
    return {"two_mode": two_mode, "charge": charge}


def two_mode_density_matrix(config, tau1, k, sign=+1, bogo=None):
    """Printed 4x4 reduced density matrix of the evolved Bell state.

    Basis {|0 0>, |0 1_k>, |1 0>, |1 1_k>} (Alice x Rob).  Used as the dense
    eigensolver cross-check for `negativity_two_mode`.
    """
    if bogo is None:
        bogo = dirac_bogo(config)
    zeta_minus = k < 0
    f_plus, f_minus = f_k_split(config, tau1, k, bogo=bogo)
    f_same, f_opp = (f_minus, f_plus) if zeta_minus else (f_plus, f_minus)
    _, _, cal2 = compose_I_to_III(config, bogo, tau1)
    g_k = np.exp(1j * frequencies(config, [k])[0] * tau1)
    a2_kk = cal2[bogo.index(k), bogo.index(k)]
    if zeta_minus:
        g_k, a2_kk = np.conj(g_k), np.conj(a2_kk)
    h2 = config.h**2
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 - f_opp * h2
    rho[1, 1] = f_opp * h2
    rho[2, 2] = f_same * h2
    rho[3, 3] = 1.0 - f_same * h2
    rho[0, 3] = sign * (g_k + a2_kk * h2)
    rho[3, 0] = np.conj(rho[0, 3])
    return rho / 2.0


def charge_density_matrix(config, tau1, k, kp, sign=+1, bogo=None):
    """Printed 8x8 reduced state of the charge-entangled Bell pair.

    Alice basis {|1_k>+, |1_k'>-}, Rob basis {|00>, |1_k 0>, |0 1_k'>,
    |1_k 1_k'>}; row/column order is the Kronecker product (Alice x Rob).
    """
    if k < 0 or kp >= 0:
        raise ValueError("charge state requires k >= 0 and k' < 0")
    if bogo is None:
        bogo = dirac_bogo(config)
    _, cal1, cal2 = compose_I_to_III(config, bogo, tau1)
    modes = bogo.modes
    k_i, kp_i = bogo.index(k), bogo.index(kp)
    h2 = config.h**2
    omega = frequencies(config, [k, kp])
    g_k = np.exp(1j * omega[0] * tau1)
    g_kp = np.exp(1j * omega[1] * tau1)
    col_k = cal1[:, k_i]
    col_kp = cal1[:, kp_i]
    pos = modes >= 0
    f_k_plus = float(np.sum(np.abs(col_k[pos]) ** 2))
    f_k_minus = float(np.sum(np.abs(col_k[~pos]) ** 2))
    f_kp_plus = float(np.sum(np.abs(col_kp[pos]) ** 2))
    f_kp_minus = float(np.sum(np.abs(col_kp[~pos]) ** 2))
    a1_sq = abs(cal1[kp_i, k_i]) ** 2
    cross_minus = np.sum(np.conj(col_kp[~pos]) * col_k[~pos])
    cross_plus = np.sum(np.conj(col_kp[pos]) * col_k[pos])

    rho = np.zeros((8, 8), dtype=complex)
    # Rob basis: |00>, |0 1_k'>, |1_k 0>, |1_k 1_k'>; Alice basis: |1_k>+, |1_k'>-
    i00, i0k, ik0, ikk = 0, 1, 2, 3
    a_k, a_kp = 0, 1

    def put(ar, ac, rr, rc, val):
        rho[4 * ar + rr, 4 * ac + rc] += val

    # Alice |1_k><1_k| (x) Rob tr |1_k'><1_k'| on {|00>, |0 1_k'>, |1_k 1_k'>}
    put(a_k, a_k, i00, i00, f_kp_minus * h2)
    put(a_k, a_k, i0k, i0k, 1.0 - f_kp_minus * h2 - f_k_minus * h2 + a1_sq * h2)
    put(a_k, a_k, ikk, ikk, (f_k_minus - a1_sq) * h2)
    put(a_k, a_k, i00, ikk, cross_minus * h2)
    put(a_k, a_k, ikk, i00, np.conj(cross_minus) * h2)
    # Alice |1_k'><1_k'| (x) Rob tr |1_k><1_k| on {|00>, |1_k 0>, |1_k 1_k'>}
    put(a_kp, a_kp, i00, i00, f_k_plus * h2)
    put(a_kp, a_kp, ik0, ik0, 1.0 - f_kp_plus * h2 - f_k_plus * h2 + a1_sq * h2)
    put(a_kp, a_kp, ikk, ikk, (f_kp_plus - a1_sq) * h2)
    put(a_kp, a_kp, i00, ikk, -cross_plus * h2)
    put(a_kp, a_kp, ikk, i00, -np.conj(cross_plus) * h2)
    # off-diagonal 2x2 block between Rob states |0 1_k'> and |1_k 0>
    akk_akpkp = g_k * g_kp + g_kp * cal2[k_i, k_i] * h2 + g_k * cal2[kp_i, kp_i] * h2
    x = g_k * g_kp * a1_sq * h2 + akk_akpkp
    put(a_k, a_kp, i0k, ik0, sign * x)
    put(a_kp, a_k, ik0, i0k, sign * np.conj(x))
    return rho / 2.0
