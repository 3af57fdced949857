"""Entanglement generation between an inertial and an accelerated 2-D cavity.

An excited two-level atom crosses Alice's (inertial) cavity and then Rob's
(uniformly accelerated) cavity, both of unit wall length, and is post-selected
in its ground state.  The surviving field state

    |Phi> = sum_nm [F^A_nm a+_nm + F^R_nm b+_nm] |0>|0>

is entangled between the cavities; its entropy of entanglement follows from
the reduced state rho_R = (sum |F^A|^2) (+) F F+ after trace normalisation.

Rob's x-direction modes solve the modified Bessel equation with imaginary
order; the spectrum is found either by root finding on the Bessel boundary
function ("bessel" engine) or by a tridiagonal discretisation of the
equivalent Sturm-Liouville problem in y = log(chi) ("fd" engine, used for
grid sweeps).  The atom's trajectory enters through chi(tau) =
sqrt(1/h^2 - gamma^2 tau^2) and the Rindler phase Omega atanh(h gamma tau);
the dimensionless frequency convention is pinned by the h -> 0 continuity
check Omega log(chi+/chi-) -> sqrt(n^2 pi^2 + kappa_m^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import bessel as bessel_mod


@dataclass(frozen=True)
class BoxScenario:
    """Geometry, kinematics and truncation (all wall lengths = 1)."""

    v: float = 0.5
    h: float = 0.5
    kappa: float = 0.0
    gap: float = np.sqrt(2.0) * np.pi
    epsilon: float = 1.0
    n_cut: int = 8
    n_y: int = 1200
    n_quad: int = 600

    def __post_init__(self):
        if not 0.0 < self.v < 1.0:
            raise ValueError("atom speed must satisfy 0 < v < 1")
        if self.h < 0.0 or self.h > 2.0 * self.v + 1e-12:
            raise ValueError("acceleration limited to 0 <= h <= 2v")

    @property
    def gamma(self):
        return 1.0 / np.sqrt(1.0 - self.v**2)

    @property
    def t_half(self):
        # half the proper crossing time of one cavity
        return 1.0 / (2.0 * self.v * self.gamma)

    def kappa_m(self, m):
        return np.sqrt((m * np.pi) ** 2 + self.kappa**2)


@dataclass(frozen=True)
class RindlerBoxSpectrum:
    """Frequencies, norm factors and x-mode profiles per (n, m)."""

    scenario: BoxScenario
    y_grid: np.ndarray
    omegas: np.ndarray  # (n_cut, n_cut) indexed [n-1, m-1]
    norms: np.ndarray
    profiles: np.ndarray  # (n_cut, n_cut, n_y) mode values on y_grid

    def mode_values(self, n, m, chis):
        y = np.log(chis)
        return self.norms[n - 1, m - 1] * np.interp(y, self.y_grid, self.profiles[n - 1, m - 1])


def solve_rindler_spectrum(scenario, engine="fd"):
    """Frequencies Omega_nm, normalisations and profiles of Rob's modes.

    Normalisation: Omega * int u^2 dchi/chi * int sin^2 dy = 1/2 with the
    Klein-Gordon measure, i.e. N = 1/sqrt(Omega I_chi).
    """
    if scenario.h <= 0:
        raise ValueError("spectrum solver needs h > 0; use the closed form at h = 0")
    chi_minus = 1.0 / scenario.h - 0.5
    chi_plus = 1.0 / scenario.h + 0.5
    y0, y1 = np.log(chi_minus), np.log(chi_plus)
    n_cut = scenario.n_cut
    y = np.linspace(y0, y1, scenario.n_y)
    omegas = np.empty((n_cut, n_cut))
    norms = np.empty((n_cut, n_cut))
    profiles = np.empty((n_cut, n_cut, scenario.n_y))
    for m in range(1, n_cut + 1):
        km = scenario.kappa_m(m)
        if engine == "fd":
            om, prof = _fd_modes(y, km, n_cut)
        elif engine == "bessel":
            om, prof = _bessel_modes(y, chi_minus, chi_plus, km, n_cut)
        else:
            raise ValueError(f"unknown engine {engine!r}")
        for n in range(1, n_cut + 1):
            u = prof[n - 1]
            i_chi = np.trapezoid(u * u, y)
            norm = 1.0 / np.sqrt(om[n - 1] * i_chi)
            omegas[n - 1, m - 1] = om[n - 1]
            norms[n - 1, m - 1] = norm
            profiles[n - 1, m - 1] = u
    return RindlerBoxSpectrum(scenario, y, omegas, norms, profiles)


def _fd_modes(y, kappa_m, n_cut):
    """Sturm-Liouville solve of u'' + (Omega^2 - kappa^2 e^(2y)) u = 0."""
    interior = y[1:-1]
    dy = y[1] - y[0]
    diag = 2.0 / dy**2 + kappa_m**2 * np.exp(2.0 * interior)
    off = -np.ones(interior.size - 1) / dy**2
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_cut - 1))
    if vals.min() <= 0:
        raise RuntimeError("unexpected non-positive eigenvalue in the mode solve")
    omegas = np.sqrt(vals)
    prof = np.zeros((n_cut, y.size))
    for n in range(n_cut):
        vec = vecs[:, n]
        # fix the sign so the first lobe is positive
        if vec[np.argmax(np.abs(vec) > 1e-3 * np.abs(vec).max())] < 0:
            vec = -vec
        prof[n, 1:-1] = vec / np.sqrt(dy)  # continuum normalisation of the grid vector
    return omegas, prof


def _bessel_modes(y, chi_minus, chi_plus, kappa_m, n_cut):
    """Spectrum and profiles through the imaginary-order Bessel functions."""
    omegas = bessel_mod.rindler_frequencies(chi_minus, chi_plus, kappa_m, n_cut)
    chis = np.exp(y)
    prof = np.empty((n_cut, y.size))
    for n in range(n_cut):
        u = bessel_mod.rindler_mode_profile(chis, chi_minus, kappa_m, omegas[n])
        if u[np.argmax(np.abs(u) > 1e-3 * np.abs(u).max())] < 0:
            u = -u
        prof[n] = u
    return omegas, prof


def _lambda_exponential_terms(m, scenario):
    """Lambda(tau(zeta)) as sum_j c_j exp(i a_j zeta), zeta = v gamma tau.

    Lambda = -i eps sin^2(2 pi zeta) sin(m pi (zeta - 1/2)) exp(-i Delta zeta/(v gamma)).
    """
    eps = scenario.epsilon
    dphase = -scenario.gap / (scenario.v * scenario.gamma)
    # sin^2(2 pi z) = 1/2 - exp(4 i pi z)/4 - exp(-4 i pi z)/4
    env = [(0.5, 0.0), (-0.25, 4.0 * np.pi), (-0.25, -4.0 * np.pi)]
    # sin(m pi (z - 1/2)) = (exp(i m pi z) e^{-i m pi/2} - c.c.)/ 2i
    osc = [
        (np.exp(-1j * m * np.pi / 2.0) / 2j, m * np.pi),
        (-np.exp(+1j * m * np.pi / 2.0) / 2j, -m * np.pi),
    ]
    terms = []
    for ce, ae in env:
        for co, ao in osc:
            terms.append((-1j * eps * ce * co, ae + ao + dphase))
    return terms


def _integrate_terms(terms, extra_phase, z1, z2):
    """int_z1^z2 sum c_j exp(i (a_j + extra) z) dz, exactly."""
    total = 0.0 + 0.0j
    for c, a in terms:
        k = a + extra_phase
        if abs(k) < 1e-12:
            total += c * (z2 - z1)
        else:
            total += c * (np.exp(1j * k * z2) - np.exp(1j * k * z1)) / (1j * k)
    return total


def alice_overlap(n, m, scenario):
    """F^A_nm: closed form (Alice is inertial; zero for even n)."""
    if n % 2 == 0:
        return 0.0 + 0.0j
    omega = np.sqrt((n * np.pi) ** 2 + scenario.kappa_m(m) ** 2)
    norm = np.sqrt(2.0 / omega)
    terms = _lambda_exponential_terms(m, scenario)
    extra = omega / scenario.v  # exp(i omega gamma tau) = exp(i omega zeta / v)
    val = _integrate_terms(terms, extra, -1.5, -0.5) / (scenario.v * scenario.gamma)
    return norm * np.sin(n * np.pi / 2.0) * val


def rob_overlap_inertial(n, m, scenario):
    """F^R_nm at h = 0: closed form f_nm (1 - (-1)^m exp(i g_nm)) structure.

    g_nm = (gap sqrt(1 - v^2) - omega_nm) / v; constructive resonances sit at
    |1 - (-1)^m exp(i g)| = 2.
    """
    if n % 2 == 0:
        return 0.0 + 0.0j
    omega = np.sqrt((n * np.pi) ** 2 + scenario.kappa_m(m) ** 2)
    norm = np.sqrt(2.0 / omega)
    terms = _lambda_exponential_terms(m, scenario)
    extra = omega / scenario.v
    val = _integrate_terms(terms, extra, -0.5, 0.5) / (scenario.v * scenario.gamma)
    return norm * np.sin(n * np.pi / 2.0) * val


def resonance_phase(n, m, scenario):
    """g_nm(kappa) = (gap sqrt(1 - v^2) - omega_nm) / v."""
    omega = np.sqrt((n * np.pi) ** 2 + scenario.kappa_m(m) ** 2)
    return (scenario.gap * np.sqrt(1.0 - scenario.v**2) - omega) / scenario.v


def rob_overlap_quadrature(scenario, spectrum=None):
    """F^R matrix by quadrature along the atom's trajectory (h > 0).

    Gauss-Legendre nodes avoid the tau = +-T endpoints, where chi(tau) can
    reach the horizon at h = 2v; outside the cavity walls the coupling is
    zero (the atom has exited through the trailing wall).
    """
    if scenario.h == 0.0:
        n = scenario.n_cut
        return np.array(
            [[rob_overlap_inertial(i + 1, j + 1, scenario) for j in range(n)] for i in range(n)]
        )
    if spectrum is None:
        spectrum = solve_rindler_spectrum(scenario)
    t = scenario.t_half
    nodes, weights = np.polynomial.legendre.leggauss(scenario.n_quad)
    tau = nodes * t
    w = weights * t
    vg = scenario.v * scenario.gamma
    chi = np.sqrt(np.maximum(1.0 / scenario.h**2 - (scenario.gamma * tau) ** 2, 0.0))
    chi_minus = 1.0 / scenario.h - 0.5
    chi_plus = 1.0 / scenario.h + 0.5
    inside = (chi >= chi_minus) & (chi <= chi_plus)
    phase_arg = np.arctanh(np.clip(scenario.h * scenario.gamma * tau, -1 + 1e-15, 1 - 1e-15))
    eps = scenario.epsilon * np.sin(2.0 * np.pi * vg * tau) ** 2
    out = np.empty((scenario.n_cut, scenario.n_cut), dtype=complex)
    for m in range(1, scenario.n_cut + 1):
        y_factor = np.sin(m * np.pi * (vg * tau - 0.5))
        lam = -1j * eps * y_factor * np.exp(-1j * scenario.gap * tau)
        for n in range(1, scenario.n_cut + 1):
            omega = spectrum.omegas[n - 1, m - 1]
            u_vals = np.where(inside, spectrum.mode_values(n, m, np.where(inside, chi, chi_minus)), 0.0)
            integrand = lam * u_vals * np.exp(1j * omega * phase_arg)
            out[n - 1, m - 1] = np.sum(w * integrand)
    return out


def alice_overlaps(scenario):
    n = scenario.n_cut
    return np.array([[alice_overlap(i + 1, j + 1, scenario) for j in range(n)] for i in range(n)])


def overlap_amplitudes(scenario, spectrum=None):
    """(F^A, F^R) emission-amplitude matrices indexed [n-1, m-1]."""
    return alice_overlaps(scenario), rob_overlap_quadrature(scenario, spectrum=spectrum)


def cavity_entanglement(scenario, spectrum=None, return_details=False):
    """Entropy of entanglement of Rob's reduced state (natural log).

    rho_R = (sum |F^A|^2) (+) F F+ renormalised by its trace; the excitation
    block is rank one, but the entropy is computed from the full eigenvalue
    spectrum.  A vanishing trace (no emission amplitude) returns zero with a
    flag.
    """
    f_alice = alice_overlaps(scenario)
    f_rob = rob_overlap_quadrature(scenario, spectrum=spectrum)
    p0 = float(np.sum(np.abs(f_alice) ** 2))
    fvec = f_rob.ravel()
    rho = np.zeros((fvec.size + 1, fvec.size + 1), dtype=complex)
    rho[0, 0] = p0
    rho[1:, 1:] = np.outer(fvec, fvec.conj())
    trace = float(np.real(np.trace(rho)))
    if trace < 1e-300:
        result = {"entropy": 0.0, "flagged": True, "p_alice": 0.0, "p_rob": 0.0}
        return (result, f_alice, f_rob) if return_details else result
    rho /= trace
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise RuntimeError("reduced state came out non-positive")
    evals = np.clip(evals, 0.0, None)
    evals = evals[evals > 1e-16]
    entropy = float(-np.sum(evals * np.log(evals)))
    result = {
        "entropy": entropy,
        "flagged": False,
        "p_alice": p0 / trace,
        "p_rob": 1.0 - p0 / trace,
    }
    return (result, f_alice, f_rob) if return_details else result


def binary_entropy(p):
    """Closed form for the rank-one excitation block: -p ln p - q ln q."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    q = 1.0 - p
    return float(-p * np.log(p) - q * np.log(q))
