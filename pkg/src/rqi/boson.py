"""Perturbative Bogoliubov machinery for a scalar field in a moving cavity.

A rigid Dirichlet cavity of proper length `delta` holding a field of
dimensionless mass M has mode frequencies

    omega_n = sqrt((n pi / delta)^2 + (M / delta)^2),   n = 1, 2, ...

Switching acceleration on or off mixes the modes; to first order in the
dimensionless acceleration h = 2 delta / (a + b) the mixing coefficients have
closed forms (in units of the dimensionless frequencies w_n = omega_n delta):

    alpha1[m, n] = -2 pi^2 m n / (sqrt(w_m w_n) (w_m - w_n)^3)
    beta1[m, n]  = +2 pi^2 m n / (sqrt(w_m w_n) (w_m + w_n)^3)

for m + n odd, and zero otherwise (in particular the diagonals vanish).  The
sign convention matches the t = 0 Klein-Gordon inner product with modes
normalised positive; the quadrature oracle in the test suite pins it down.

Trajectories are built from blocks S_j = Q(h_j)^-1 U(tau_j) Q(h_j): jump to
the accelerated mode basis, rotate phases for proper time tau_j, jump back.
Products of blocks approximate arbitrary piecewise inertial/uniformly
accelerated motion.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import gaussian
from .gaussian import COMPLEX, CovarianceState, SymplecticMap


class PerturbativeValidityWarning(UserWarning):
    """First-order treatment pushed outside its comfort zone."""


@dataclass(frozen=True)
class BosonCavityConfig:
    """Cavity geometry and truncation for the perturbative treatment."""

    delta: float = 1.0
    mass: float = 0.0  # dimensionless M = mu * delta
    n_max: int = 20
    h: float = 1e-4

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("cavity length must be positive")
        if self.n_max < 2:
            raise ValueError("need at least two modes")
        if not abs(self.h) < 2.0:
            raise ValueError("physical accelerated segments need |h| < 2")


@dataclass(frozen=True)
class TrajectorySegment:
    """Ordered (h_j, tau_j) building blocks; h_j = 0 is inertial coasting."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((float(h), float(tau)) for h, tau in self.blocks)
        for h, tau in blocks:
            if tau < 0:
                raise ValueError("proper times must be non-negative")
        object.__setattr__(self, "blocks", blocks)

    @property
    def total_time(self):
        return sum(tau for _, tau in self.blocks)


@dataclass(frozen=True)
class BogoCoefficients:
    """First-order Bogoliubov matrices (coefficients of h)."""

    alpha1: np.ndarray
    beta1: np.ndarray
    order0: str = field(default="identity", compare=False)


def mode_frequencies(config):
    """omega_n for n = 1..n_max (units 1/delta)."""
    n = np.arange(1, config.n_max + 1)
    return np.sqrt((n * np.pi / config.delta) ** 2 + (config.mass / config.delta) ** 2)


def bogo_first_order(config):
    """Closed-form alpha1, beta1 matrices (see module docstring).

    Entries vanish on the diagonal and whenever m + n is even; alpha1 is
    antisymmetric and beta1 symmetric.
    """
    n = np.arange(1, config.n_max + 1)
    w = np.sqrt((n * np.pi) ** 2 + config.mass**2)  # dimensionless omega * delta
    m_idx, n_idx = np.meshgrid(n, n, indexing="ij")
    wm, wn = np.meshgrid(w, w, indexing="ij")
    odd = (m_idx + n_idx) % 2 == 1
    root = np.sqrt(wm * wn)
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = -2.0 * np.pi**2 * m_idx * n_idx / (root * (wm - wn) ** 3)
        beta = 2.0 * np.pi**2 * m_idx * n_idx / (root * (wm + wn) ** 3)
    alpha = np.where(odd, alpha, 0.0)
    beta = np.where(odd, beta, 0.0)
    return BogoCoefficients(alpha1=alpha, beta1=beta)


def _phase_diag(config, tau):
    return np.exp(1j * mode_frequencies(config) * tau)


def building_block(config, h_j, tau_j, coeffs=None):
    """Symplectic building block S_j = Q(h_j)^-1 U(tau_j) Q(h_j) (complex form).

    h_j = 0 reduces to the pure phase rotation U(tau_j); tau_j = 0 gives the
    identity.  Emits a PerturbativeValidityWarning when n_max * |h| is not
    small, since the block is built from first-order coefficients only.
    """
    if tau_j < 0:
        raise ValueError("proper time must be non-negative")
    if not abs(h_j) < 2.0:
        raise ValueError("physical accelerated segments need |h| < 2")
    n = config.n_max
    g = _phase_diag(config, tau_j)
    u = np.diag(np.concatenate([g.conj(), g]))
    if h_j == 0.0:
        return SymplecticMap(n, COMPLEX, u, check_tol=1e-10)
    if config.n_max * abs(h_j) > 0.05:
        warnings.warn(
            f"n_max*|h| = {config.n_max * abs(h_j):.3g}; first-order block may be inaccurate",
            PerturbativeValidityWarning,
            stacklevel=2,
        )
    if coeffs is None:
        coeffs = bogo_first_order(config)
    alpha = np.eye(n) + coeffs.alpha1 * h_j
    beta = coeffs.beta1 * h_j
    q = np.block([[alpha, -beta], [-beta, alpha]]).astype(complex)
    s = np.linalg.inv(q) @ u @ q
    scale = max(np.abs(coeffs.alpha1).max(), np.abs(coeffs.beta1).max())
    tol = max(1e-10, 50.0 * (n * scale * h_j) ** 2)
    return SymplecticMap(n, COMPLEX, s, check_tol=tol)


def compose_segment(config, segment, coeffs=None):
    """Ordered product of building blocks (first block acts first).

    The zero-order part is the phase rotation by the total proper time T;
    phases accumulate left-to-right in segment order.
    """
    if not segment.blocks:
        raise ValueError("segment must contain at least one block")
    if coeffs is None:
        coeffs = bogo_first_order(config)
    total = np.eye(2 * config.n_max, dtype=complex)
    tol = 1e-10
    for h_j, tau_j in segment.blocks:
        block = building_block(config, h_j, tau_j, coeffs=coeffs)
        tol = max(tol, block.check_tol)
        total = block.matrix @ total
    return SymplecticMap(config.n_max, COMPLEX, total, check_tol=10 * tol * len(segment.blocks))


def segment_blocks(smap):
    """(A, B) blocks of a composed map S = [[conj(A), -conj(B)], [-B, A]]."""
    n = smap.n_modes
    s = smap.matrix
    return s[n:, n:].copy(), -s[n:, :n].copy()


def two_mode_reduced_state(smap, k, kp):
    """Reduced state of modes (k, k') after acting on the cavity vacuum.

    Modes are 1-based.  Gamma = (S S+) restricted to the two modes; the
    reduced state is pure up to O(h^2).
    """
    if k == kp:
        raise ValueError("need two distinct modes")
    n = smap.n_modes
    if not (1 <= k <= n and 1 <= kp <= n):
        raise ValueError("mode index out of range")
    full = smap.matrix @ smap.matrix.conj().T
    state = CovarianceState(n, COMPLEX, np.zeros(2 * n, dtype=complex), (full + full.conj().T) / 2)
    return gaussian.partial_trace(state, [k - 1, kp - 1])


def resonance_check(config, segment_or_map, k, kp, tol=1e-6):
    """Commutator residual |(G_k' - conj(G_k)) B_kk'| and its verdict.

    The residual vanishes exactly when the total time satisfies
    T (omega_k + omega_k') = 2 pi n, or trivially when B_kk' = 0 (even k + k').
    """
    if isinstance(segment_or_map, TrajectorySegment):
        smap = compose_segment(config, segment_or_map)
    else:
        smap = segment_or_map
    n = smap.n_modes
    _, b = segment_blocks(smap)
    b_kkp = b[k - 1, kp - 1]
    # zero-order phases from the unit-modulus part of the diagonal
    g_k = smap.matrix[n + k - 1, n + k - 1]
    g_kp = smap.matrix[n + kp - 1, n + kp - 1]
    g_k, g_kp = g_k / abs(g_k), g_kp / abs(g_kp)
    residual = float(abs((g_kp - np.conj(g_k)) * b_kkp))
    # entries that vanish at first order (even k + k') only carry O(h^2)
    # residue from the composition; they are resonant for every travel time
    b_scale = float(np.abs(b - np.diag(np.diag(b))).max())
    zero_like = abs(b_kkp) <= 1e-3 * b_scale + 1e-300
    resonant = zero_like or residual <= tol * abs(b_kkp)
    return resonant, residual


def resonant_times(config, k, kp, count=5):
    """Discrete resonant total times T_n = 2 n pi / (omega_k + omega_k')."""
    omega = mode_frequencies(config)
    base = 2.0 * np.pi / (omega[k - 1] + omega[kp - 1])
    return base * np.arange(1, count + 1)


def segment_negativity_exact(config, segment, k, kp, repetitions=1, coeffs=None):
    """Negativity of modes (k, k') after `repetitions` of the composed segment.

    This is the generic composed-product route: matrix power, reduced state,
    partial transpose, smallest symplectic eigenvalue.
    """
    smap = compose_segment(config, segment, coeffs=coeffs)
    power = np.linalg.matrix_power(smap.matrix, repetitions)
    smap_n = SymplecticMap(config.n_max, COMPLEX, power, check_tol=max(1e-6, smap.check_tol * repetitions**2))
    state = two_mode_reduced_state(smap_n, k, kp)
    tilde = gaussian.partial_transpose(state, mode=1)
    nus = gaussian.symplectic_spectrum(tilde.covariance, basis=COMPLEX)
    nu_min = float(nus.min())
    return max((1.0 - nu_min) / (2.0 * nu_min), 0.0)


def resonance_negativity(config, segment, k, kp, repetitions, tol=1e-6):
    """Negativity after N segment repetitions.

    On resonance this is N |B_kk'| (B already carries one power of h) and the
    growth is linear in N; off resonance the generic composed-product value is
    returned together with resonant=False.
    """
    if repetitions < 0:
        raise ValueError("repetitions must be non-negative")
    if repetitions == 0:
        return {"negativity": 0.0, "resonant": True, "residual": 0.0}
    smap = compose_segment(config, segment)
    resonant, residual = resonance_check(config, segment, k, kp, tol=tol)
    _, b = segment_blocks(smap)
    b_kkp = abs(b[k - 1, kp - 1])
    if repetitions * b_kkp >= 0.1:
        warnings.warn(
            f"N |B^(1)| h = {repetitions * b_kkp:.3g} >= 0.1; perturbative result unreliable",
            PerturbativeValidityWarning,
            stacklevel=2,
        )
    if resonant:
        value = repetitions * b_kkp
    else:
        value = segment_negativity_exact(config, segment, k, kp, repetitions)
    return {"negativity": float(value), "resonant": bool(resonant), "residual": residual}


def standard_segment(h, tau1, tau2, lam=1.0):
    """(h, tau1), (0, tau2), (lam h, tau1), (0, tau2): the sample scenario."""
    return TrajectorySegment(((h, tau1), (0.0, tau2), (lam * h, tau1), (0.0, tau2)))


def closed_form_b_magnitude(config, tau1, tau2, lam, k, kp, coeffs=None):
    """|B_kk'| of the standard segment from the closed form.

    |B| = h beta1_kk' |1 - G_k G_k'(tau1)| |1 + lam G_k G_k'(tau1 + tau2)|
    with G_k G_k'(t) = exp(i (omega_k + omega_k') t).
    """
    if coeffs is None:
        coeffs = bogo_first_order(config)
    omega = mode_frequencies(config)
    s = omega[k - 1] + omega[kp - 1]
    phase1 = np.exp(1j * s * tau1)
    phase2 = np.exp(1j * s * (tau1 + tau2))
    return float(
        abs(config.h * coeffs.beta1[k - 1, kp - 1]) * abs(1.0 - phase1) * abs(1.0 + lam * phase2)
    )


def two_mode_convergence(config, segment, k, kp, repetitions=1):
    """Shift of the negativity when n_max doubles (truncation gate)."""
    small = segment_negativity_exact(config, segment, k, kp, repetitions)
    big_cfg = BosonCavityConfig(config.delta, config.mass, 2 * config.n_max, config.h)
    big = segment_negativity_exact(big_cfg, segment, k, kp, repetitions)
    return abs(big - small)
