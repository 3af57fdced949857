import numpy as np
import pytest

from oracle_fermion_fock import reduced_charge, reduced_two_mode
from rqi import entanglement, fermion


def cfg(**kw):
    kw.setdefault("n_side", 200)
    return fermion.FermionCavityConfig(**kw)


def test_a1_closed_form_values():
    assert abs(fermion.a1_entry(0, 1) - 1.0 / np.pi**2) < 1e-14
    assert abs(fermion.a2_entry(0, 0) + 1.0 / 96.0) < 1e-14
    assert fermion.a1_entry(1, 3) == 0.0  # even m + n
    assert fermion.a1_entry(4, 4) == 0.0  # diagonal
    # antisymmetry of A1, and A2 parity structure
    m, n = np.meshgrid(np.arange(-5, 6), np.arange(-5, 6), indexing="ij")
    a1 = fermion.a1_entry(m, n, 0.3)
    assert np.abs(a1 + a1.T).max() < 1e-14
    a2 = fermion.a2_entry(m, n, 0.3)
    odd = (m + n) % 2 != 0
    assert np.abs(np.where(odd & (m != n), a2, 0.0)).max() == 0.0


def test_a1_against_inner_product_quadrature():
    # independent route: A_mn = int_{-1/2}^{1/2} dZ conj(psi_m) psihat_n at T=0,
    # expanded to first order in h by central difference
    from scipy.integrate import quad

    s = 0.0
    def a_mn(m, n, h):
        lh = np.log((2 + h) / (2 - h))

        def integrand(z):
            lam = np.log((z + 1.0 / h) / (1.0 / h - 0.5)) / lh
            # spinor inner product of the 2-component (U+, U-) structure:
            # conj(psi_m) psihat_n = [e^{-i w_m u} e^{i W_n lam-phase} + c.c. term]
            w_m = (m + s) * np.pi
            phase_n = (n + s) * np.pi
            norm = 1.0 / np.sqrt(lh * np.sqrt((z + 1.0 / h) ** 2))
            plus = np.exp(-1j * w_m * (z + 0.5)) * np.exp(1j * phase_n * lam) * norm
            minus = np.exp(+1j * w_m * (z + 0.5)) * np.exp(-1j * phase_n * lam) * norm
            return plus + minus

        re, _ = quad(lambda z: np.real(integrand(z)), -0.5, 0.5, epsabs=1e-13, epsrel=1e-12, limit=200)
        im, _ = quad(lambda z: np.imag(integrand(z)), -0.5, 0.5, epsabs=1e-13, epsrel=1e-12, limit=200)
        return (re + 1j * im) / 2.0

    # the expansion is odd in h for odd m + n, so the one-sided ratio has
    # only an O(h^2) relative error
    h = 1e-4
    for m, n in [(0, 1), (1, 2), (-1, 2)]:
        # the integral computes (psi_m, psihat_n), i.e. the transposed entry
        num = (a_mn(m, n, h) - (1.0 if m == n else 0.0)) / h
        closed = fermion.a1_entry(n, m, s)
        assert abs(num - closed) < max(2e-6 * abs(closed), 5e-8)


def test_dirac_bogo_window_and_index():
    c = cfg(n_side=6)
    bogo = fermion.dirac_bogo(c)
    assert bogo.modes[0] == -6 and bogo.modes[-1] == 6
    assert bogo.index(0) == 6
    with pytest.raises(ValueError):
        bogo.index(9)


def test_compose_orders_and_unitarity():
    c = cfg(n_side=30)
    bogo = fermion.dirac_bogo(c)
    cal0, cal1, cal2 = fermion.compose_I_to_III(c, bogo, 0.0)
    assert np.abs(cal1 - (bogo.a1 + bogo.a1.conj().T)).max() < 1e-14
    assert np.abs(np.diag(cal1)).max() < 1e-14
    tau1 = 0.63
    cal0, cal1, cal2 = fermion.compose_I_to_III(c, bogo, tau1)
    # calA1[n, k] = (G_n - G_k) A1[n, k]
    g = np.diag(cal0)
    expect = (g[:, None] - g[None, :]) * bogo.a1
    assert np.abs(cal1 - expect).max() < 1e-12
    # first-order unitarity: conj(G0) calA1 + calA1+ G0 = 0
    res = cal0.conj() @ cal1 + cal1.conj().T @ cal0
    assert np.abs(res).max() < 1e-12
    # 2 Re(conj(G_k) calA2_kk) = -f_k: exact up to the window tail
    c_wide = cfg(n_side=200)
    bogo_w = fermion.dirac_bogo(c_wide)
    cal0w, _, cal2w = fermion.compose_I_to_III(c_wide, bogo_w, tau1)
    k_i = bogo_w.index(1)
    lhs = 2 * np.real(np.conj(cal0w[k_i, k_i]) * cal2w[k_i, k_i])
    fk = fermion.f_k(c_wide, tau1, 1, bogo=bogo_w)
    assert abs(lhs + fk) < 1e-9


def test_f_k_periodicity_zeros_parity():
    c = cfg()
    bogo = fermion.dirac_bogo(c)
    assert abs(fermion.f_k(c, 2.0 * c.delta, 1, bogo=bogo)) < 1e-10
    assert abs(fermion.f_k(c, 4.0 * c.delta, 2, bogo=bogo)) < 1e-10
    v1 = fermion.f_k(c, 0.37, 1, bogo=bogo)
    v2 = fermion.f_k(c, 0.37 + 2.0 * c.delta, 1, bogo=bogo)
    assert abs(v1 - v2) < 1e-8
    # s = 0 parity
    assert abs(fermion.f_k(c, 0.81, 1, bogo=bogo) - fermion.f_k(c, 0.81, -1, bogo=bogo)) < 1e-10
    # s != 0 breaks it
    c2 = cfg(s=0.25)
    b2 = fermion.dirac_bogo(c2)
    assert abs(fermion.f_k(c2, 0.81, 1, bogo=b2) - fermion.f_k(c2, 0.81, -1, bogo=b2)) > 1e-4


def test_f_k_curve_shape_max_at_half_period():
    c = cfg()
    bogo = fermion.dirac_bogo(c)
    us = np.linspace(0.0, 1.0, 41)
    vals = np.array([fermion.f_k(c, 2 * u, 1, bogo=bogo) for u in us])
    assert vals.argmax() == 20  # u = 1/2
    assert vals[0] < 1e-10 and vals[-1] < 1e-10
    assert np.all(vals >= -1e-15)
    # symmetric about u = 1/2 for s = 0
    assert np.abs(vals - vals[::-1]).max() < 1e-10


def test_f_k_split_consistency():
    c = cfg(n_side=150)
    bogo = fermion.dirac_bogo(c)
    fp, fm = fermion.f_k_split(c, 0.7, 1, bogo=bogo)
    total = fermion.f_k(c, 0.7, 1, bogo=bogo)
    assert abs((fp + fm) - total) < 1e-10
    assert fp >= 0 and fm >= 0


def test_f_k_large_k_quadratic_divergence():
    c = cfg(n_side=400)
    bogo = fermion.dirac_bogo(c)
    tau1 = 0.61
    f8 = fermion.f_k(c, tau1, 8, bogo=bogo)
    f16 = fermion.f_k(c, tau1, 16, bogo=bogo)
    f32 = fermion.f_k(c, tau1, 32, bogo=bogo)
    assert abs(f16 / f8 - 4.0) < 0.4
    assert abs(f32 / f16 - 4.0) < 0.4


def test_window_convergence():
    tau1 = 0.45
    small = fermion.f_k(cfg(n_side=200), tau1, 3)
    big = fermion.f_k(cfg(n_side=400), tau1, 3)
    assert abs(small - big) < 1e-6


def test_negativity_two_mode_limits():
    c = cfg(h=0.0)
    assert fermion.negativity_two_mode(c, 0.9, 1) == 0.5
    c2 = cfg(h=0.05)
    assert abs(fermion.negativity_two_mode(c2, 2.0, 1) - 0.5) < 1e-10
    val = fermion.negativity_two_mode(c2, 0.9, 1)
    assert val < 0.5


def test_negativity_two_mode_warning():
    c = cfg(h=0.9)
    with pytest.warns(fermion.PerturbativeValidityWarning):
        fermion.negativity_two_mode(c, 1.0, 8)


def test_negativity_charge_state_cases():
    c = cfg(h=0.05)
    bogo = fermion.dirac_bogo(c)
    # s = 0, k' = -k equals the two-mode value
    two = fermion.negativity_two_mode(c, 0.7, 1, bogo=bogo)
    charge = fermion.negativity_charge_state(c, 0.7, 1, -1, bogo=bogo)
    assert abs(two - charge) < 1e-12
    # even k - k': no interference; value is the bare average
    fk = fermion.f_k(c, 0.7, 2, bogo=bogo)
    fkp = fermion.f_k(c, 0.7, -2, bogo=bogo)
    no_inter = 0.5 - 0.25 * (fk + fkp) * c.h**2
    assert abs(fermion.negativity_charge_state(c, 0.7, 2, -2, bogo=bogo) - no_inter) < 1e-14
    # odd parity difference: interference diminishes the degradation
    with_inter = fermion.negativity_charge_state(c, 0.7, 1, -2, bogo=bogo)
    fk1 = fermion.f_k(c, 0.7, 1, bogo=bogo)
    fkm2 = fermion.f_k(c, 0.7, -2, bogo=bogo)
    assert with_inter >= 0.5 - 0.25 * (fk1 + fkm2) * c.h**2 - 1e-15
    with pytest.raises(ValueError):
        fermion.negativity_charge_state(c, 0.7, -1, -2)


def test_oneway_zero_lines_and_positivity():
    c = cfg()
    bogo = fermion.dirac_bogo(c)
    assert fermion.oneway_f(c, 0.0, 0.83, 1, bogo=bogo) == 0.0
    assert abs(fermion.oneway_f(c, 2.0, 0.83, 1, bogo=bogo)) < 1e-10  # E1 = 1
    u, v = 0.3, 0.7  # u + v = 1: E1 E2 = 1
    assert abs(fermion.oneway_f(c, 2 * u, 2 * v, 1, bogo=bogo)) < 1e-10
    val = fermion.oneway_f(c, 0.5, 0.5, 1, bogo=bogo)
    assert val > 0
    # period 2 delta in each argument
    assert abs(val - fermion.oneway_f(c, 0.5 + 2.0, 0.5, 1, bogo=bogo)) < 1e-8
    assert abs(val - fermion.oneway_f(c, 0.5, 0.5 + 2.0, 1, bogo=bogo)) < 1e-8


def test_oneway_generic_point_matches_windowed_sum():
    c = cfg(n_side=400)
    bogo = fermion.dirac_bogo(c)
    u = v = 0.25
    got = fermion.oneway_f(c, 2 * u, 2 * v, 1, bogo=bogo)
    # independent direct summation
    p = np.arange(-400, 401)
    e1 = np.exp(1j * np.pi * 2 * u)
    e12 = np.exp(1j * np.pi * 2 * (u + v))
    a1 = fermion.a1_entry(1, p)
    direct = np.sum(np.abs(e1 ** (1 - p) - 1) ** 2 * np.abs(e12 ** (1 - p) - 1) ** 2 * a1**2)
    assert abs(got - direct) < 1e-12
    assert got > 0


def test_oneway_negativities_dict():
    c = cfg(h=0.05)
    res = fermion.oneway_negativities(c, 0.5, 0.5, 1, -2)
    assert res["two_mode"] <= 0.5
    assert res["charge"] <= 0.5
    res_single = fermion.oneway_negativities(c, 0.5, 0.5, 1)
    assert set(res_single) == {"two_mode"}


def test_density_matrix_route_matches_closed_form_two_mode():
    c = cfg(h=1e-2, n_side=150)
    for k, sign in [(1, +1), (-1, -1), (2, +1)]:
        rho = fermion.two_mode_density_matrix(c, 0.7, k, sign=sign)
        neg_dense = entanglement.negativity_density_matrix(rho, (2, 2), subsystem=1)
        neg_closed = fermion.negativity_two_mode(c, 0.7, k)
        assert abs(neg_dense - neg_closed) < 50 * c.h**3
        # the state is positive to the perturbative order, with unit trace
        w = np.linalg.eigvalsh(rho)
        assert w.min() > -100 * c.h**4
        assert abs(np.trace(rho).real - 1.0) < 1e-12


def test_density_matrix_route_matches_closed_form_charge():
    c = cfg(h=1e-2, n_side=150)
    for (k, kp), sign in [((1, -1), +1), ((1, -2), -1), ((2, -1), +1)]:
        rho = fermion.charge_density_matrix(c, 0.9, k, kp, sign=sign)
        neg_dense = entanglement.negativity_density_matrix(rho, (2, 4), subsystem=1)
        neg_closed = fermion.negativity_charge_state(c, 0.9, k, kp)
        assert abs(neg_dense - neg_closed) < 50 * c.h**3


def test_density_matrix_scaling_in_h():
    c_ref = cfg(n_side=150)
    ratios = []
    for h in (0.02, 0.01, 0.005):
        c = fermion.FermionCavityConfig(s=0.0, h=h, n_side=150)
        rho = fermion.two_mode_density_matrix(c, 0.7, 1)
        neg_dense = entanglement.negativity_density_matrix(rho, (2, 2), subsystem=1)
        neg_closed = fermion.negativity_two_mode(c, 0.7, 1)
        ratios.append(abs(neg_dense - neg_closed) / h**3)
    assert max(ratios) < 100 * max(min(ratios), 1e-6)


def test_fock_oracle_reproduces_printed_matrices():
    c = fermion.FermionCavityConfig(s=0.0, h=1e-2, n_side=3)
    for k, sign, tau1 in [(1, +1, 0.7), (-2, -1, 0.53)]:
        d = np.abs(
            reduced_two_mode(c, tau1, k, sign=sign, n_window=3)
            - fermion.two_mode_density_matrix(c, tau1, k, sign=sign)
        ).max()
        assert d < 2 * c.h**3
    for (k, kp), sign in [((1, -1), +1), ((2, -1), +1)]:
        d = np.abs(
            reduced_charge(c, 0.7, k, kp, sign=sign, n_window=3)
            - fermion.charge_density_matrix(c, 0.7, k, kp, sign=sign)
        ).max()
        assert d < 2 * c.h**3


def test_vacuum_trace_normalisation():
    # reconstructed vacuum trace is 1 + O(h^3)
    from oracle_fermion_fock import region_i_states

    c = fermion.FermionCavityConfig(s=0.0, h=1e-2, n_side=3)
    _, vac_i, _ = region_i_states(c, 0.6, list(range(-3, 4)), [1])
    assert abs(np.linalg.norm(vac_i) ** 2 - 1.0) < 2 * c.h**3


def test_s_zero_plus_limit_continuity():
    c0 = cfg(s=0.0)
    c_eps = cfg(s=1e-6)
    v0 = fermion.f_k(c0, 0.7, 1)
    veps = fermion.f_k(c_eps, 0.7, 1)
    assert abs(v0 - veps) < 1e-4


def test_h_range_validation():
    with pytest.raises(ValueError):
        fermion.FermionCavityConfig(h=2.0)
    with pytest.raises(ValueError):
        fermion.FermionCavityConfig(s=1.0)
