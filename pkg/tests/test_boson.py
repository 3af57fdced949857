import numpy as np
import pytest

from oracle_boson import first_order_oracle
from rqi import boson, gaussian


def cfg(**kw):
    return boson.BosonCavityConfig(**kw)


def test_mode_frequencies_massless_and_massive():
    c = cfg(n_max=5)
    assert np.allclose(boson.mode_frequencies(c), np.arange(1, 6) * np.pi)
    cm = cfg(n_max=5, mass=2.0)
    w = boson.mode_frequencies(cm)
    assert np.all(np.diff(w) > 0)
    assert abs(w[0] - np.sqrt(np.pi**2 + 4.0)) < 1e-14


def test_bogo_first_order_structure():
    c = boson.bogo_first_order(cfg(n_max=8, mass=1.3))
    assert np.abs(np.diag(c.alpha1)).max() == 0.0
    assert np.abs(np.diag(c.beta1)).max() == 0.0
    m, n = np.meshgrid(np.arange(1, 9), np.arange(1, 9), indexing="ij")
    even = (m + n) % 2 == 0
    assert np.abs(c.alpha1[even]).max() == 0.0
    assert np.abs(c.beta1[even]).max() == 0.0
    assert np.abs(c.alpha1 + c.alpha1.T).max() < 1e-14  # antisymmetric
    assert np.abs(c.beta1 - c.beta1.T).max() < 1e-14  # symmetric


def test_bogo_first_order_against_quadrature_oracle():
    c = boson.bogo_first_order(cfg(n_max=4))
    a_o, b_o = first_order_oracle(2, 1, 0.0)
    assert abs(c.alpha1[1, 0] - a_o) < 1e-5 * abs(a_o)
    assert abs(c.beta1[1, 0] - b_o) < 1e-5 * abs(b_o)


def test_building_block_limits():
    c = cfg(n_max=6)
    u = boson.building_block(c, 0.0, 0.8)
    g = np.exp(1j * boson.mode_frequencies(c) * 0.8)
    assert np.abs(u.matrix - np.diag(np.concatenate([g.conj(), g]))).max() < 1e-14
    ident = boson.building_block(c, c.h, 0.0)
    assert np.abs(ident.matrix - np.eye(12)).max() < 1e-12


def test_building_block_first_order_b_entry():
    c = cfg(n_max=12, h=1e-4)
    block = boson.building_block(c, c.h, 1.0)
    _, b = boson.segment_blocks(block)
    coeffs = boson.bogo_first_order(c)
    omega = boson.mode_frequencies(c)
    expect = abs(coeffs.beta1[0, 1]) * abs(1 - np.exp(1j * (omega[0] + omega[1]))) * c.h
    assert abs(abs(b[0, 1]) - expect) < 1e-12


def test_building_block_warns_outside_validity():
    c = cfg(n_max=20, h=0.05)
    with pytest.warns(boson.PerturbativeValidityWarning):
        boson.building_block(c, c.h, 0.5)


def test_compose_segment_zero_order_and_closed_form():
    c = cfg(n_max=12, h=1e-4)
    for lam, t1, t2 in [(1.0, 0.31, 0.47), (-1.0, 0.62, 0.17), (0.5, 1.1, 0.9)]:
        seg = boson.standard_segment(c.h, t1, t2, lam)
        smap = boson.compose_segment(c, seg)
        a, b = boson.segment_blocks(smap)
        g = np.exp(1j * boson.mode_frequencies(c) * seg.total_time)
        assert np.abs(np.diag(a) - g).max() < 1e-6  # zero order phase rotation
        closed = boson.closed_form_b_magnitude(c, t1, t2, lam, 1, 2)
        assert abs(abs(b[0, 1]) - closed) < 1e-8 * max(1.0, closed)
    with pytest.raises(ValueError):
        boson.compose_segment(c, boson.TrajectorySegment(()))


def test_segment_inverse_identity_to_h_squared():
    c = cfg(n_max=10, h=1e-3)
    seg = boson.standard_segment(c.h, 0.4, 0.3, -1.0)
    smap = boson.compose_segment(c, seg)
    sym_inv = smap.inverse()
    residual = np.abs(sym_inv.matrix @ smap.matrix - np.eye(2 * c.n_max)).max()
    assert residual < 100 * c.h**2
    assert residual > 0


def test_perturbative_unitarity_residual_shrinks_with_n_max():
    h = 1e-3
    # full residual on the interior block is O(h^2) plus a truncation tail
    c8 = cfg(n_max=8, h=h)
    co8 = boson.bogo_first_order(c8)
    alpha = np.eye(8) + co8.alpha1 * h
    beta = co8.beta1 * h
    assert np.abs(alpha @ alpha.T - beta @ beta.T - np.eye(8))[:4, :4].max() < 100 * h**2
    # isolate the tail: interior h^2 coefficient against a wide reference
    ref = boson.bogo_first_order(cfg(n_max=128, h=h))
    ref_block = (ref.alpha1 @ ref.alpha1.T - ref.beta1 @ ref.beta1.T)[:4, :4]
    tails = []
    for n_max in (8, 16, 32):
        co = boson.bogo_first_order(cfg(n_max=n_max, h=h))
        blk = (co.alpha1 @ co.alpha1.T - co.beta1 @ co.beta1.T)[:4, :4]
        tails.append(np.abs(blk - ref_block).max())
    assert tails[0] > tails[1] > tails[2]  # tail shrinks monotonically


def test_first_order_relations_exact_derivative():
    from rqi import teleport

    c = cfg(n_max=10, h=1e-4)
    seg = boson.standard_segment(c.h, 0.31, 0.47, 1.0)
    a1, b1 = teleport.segment_first_order(c, seg)
    g = np.diag(np.exp(1j * boson.mode_frequencies(c) * seg.total_time))
    rel_a = np.abs(g.conj() @ a1.T + a1.conj() @ g).max()
    rel_b = np.abs(g.conj() @ b1.conj().T - b1.conj() @ g.conj()).max()
    assert rel_a < 1e-10
    assert rel_b < 1e-10
    # B swap identity B[k', k] = G_k' conj(G_k) B[k, k']
    gd = np.diag(g)
    assert abs(b1[1, 0] - gd[1] * np.conj(gd[0]) * b1[0, 1]) < 1e-10


def test_two_mode_reduced_state_pure_to_h_squared():
    c = cfg(n_max=12, h=1e-4)
    seg = boson.standard_segment(c.h, 0.31, 0.47, 1.0)
    smap = boson.compose_segment(c, seg)
    state = boson.two_mode_reduced_state(smap, 1, 2)
    assert abs(state.purity_det() - 1.0) < 100 * c.h**2
    with pytest.raises(ValueError):
        boson.two_mode_reduced_state(smap, 1, 1)
    # h = 0 gives the vacuum back
    smap0 = boson.compose_segment(c, boson.TrajectorySegment(((0.0, 0.7),)))
    state0 = boson.two_mode_reduced_state(smap0, 1, 2)
    assert np.abs(state0.covariance - np.eye(4)).max() < 1e-12


def test_full_product_vs_truncated_two_modes():
    c = cfg(n_max=12, h=1e-4)
    seg = boson.standard_segment(c.h, 1.0 / 3.0, 1.0 / 3.0, 1.0)
    smap = boson.compose_segment(c, seg)
    state = boson.two_mode_reduced_state(smap, 1, 2)
    # truncated 2-mode product: the 4x4 sub-block of S restricted to (1, 2)
    idx = np.array([0, 1, c.n_max, c.n_max + 1])
    s_small = smap.matrix[np.ix_(idx, idx)]
    gam_small = s_small @ s_small.conj().T
    assert np.abs(gam_small - state.covariance).max() < 100 * c.h**2


def test_pt_eigenvalue_on_resonance():
    c = cfg(n_max=12, h=1e-4)
    seg = boson.standard_segment(c.h, 1.0 / 3.0, 1.0 / 3.0, 1.0)
    smap = boson.compose_segment(c, seg)
    _, b = boson.segment_blocks(smap)
    state = boson.two_mode_reduced_state(smap, 1, 2)
    tilde = gaussian.partial_transpose(state, 1)
    nus = gaussian.symplectic_spectrum(tilde.covariance, basis=gaussian.COMPLEX)
    assert abs(nus.min() - (1.0 - 2.0 * abs(b[0, 1]))) < 1e-7


def test_resonance_check_cases():
    c = cfg(n_max=12, h=1e-4)
    omega = boson.mode_frequencies(c)
    t_res = 2 * np.pi / (omega[0] + omega[1])
    seg = boson.TrajectorySegment(((c.h, t_res / 2), (0.0, t_res / 2)))
    ok, res = boson.resonance_check(c, seg, 1, 2)
    assert ok and res < 1e-10
    seg_off = boson.TrajectorySegment(((c.h, 0.37), (0.0, 0.21)))
    ok_off, res_off = boson.resonance_check(c, seg_off, 1, 2)
    assert not ok_off and res_off > 1e-8
    # B = 0 at first order for even k + k': resonant for any time, with
    # only an O(h^2) composition residue
    ok_even, res_even = boson.resonance_check(c, seg_off, 1, 3)
    assert ok_even and res_even < 100 * c.h**2


def test_resonance_negativity_special_times():
    c = cfg(n_max=12, h=1e-4)
    omega = boson.mode_frequencies(c)
    s = omega[0] + omega[1]
    assert boson.resonance_negativity(c, boson.standard_segment(c.h, 0.1, 0.1), 1, 2, 0)["negativity"] == 0.0
    # n even and tau2 = 2 pi m / s: negativity vanishes
    tau2 = 2 * np.pi / s
    tau1 = (2 * (2 * np.pi) / s - 2 * tau2) / 2  # T = T_2 (n even)
    seg = boson.standard_segment(c.h, tau1, tau2, 1.0)
    res = boson.resonance_negativity(c, seg, 1, 2, 3)
    assert res["resonant"]
    assert res["negativity"] < 1e-12
    # lam = -1, n even, tau2 = pi(2m+1)/s vanishes; lam = +1 same tau2 maximal
    tau2b = np.pi / s
    tau1b = (2 * (2 * np.pi) / s - 2 * tau2b) / 2
    seg_m = boson.standard_segment(c.h, tau1b, tau2b, -1.0)
    seg_p = boson.standard_segment(c.h, tau1b, tau2b, 1.0)
    neg_m = boson.resonance_negativity(c, seg_m, 1, 2, 3)["negativity"]
    neg_p = boson.resonance_negativity(c, seg_p, 1, 2, 3)["negativity"]
    assert neg_m < 1e-12
    coeffs = boson.bogo_first_order(c)
    max_possible = 3 * 4 * abs(coeffs.beta1[0, 1]) * c.h
    assert abs(neg_p - max_possible) < 1e-3 * max_possible


def test_linear_growth_on_resonance():
    c = cfg(n_max=12, h=1e-4)
    seg = boson.standard_segment(c.h, 1.0 / 3.0, 1.0 / 3.0, 1.0)
    smap = boson.compose_segment(c, seg)
    _, b = boson.segment_blocks(smap)
    slope = abs(b[0, 1])
    for reps in range(1, 6):
        exact = boson.segment_negativity_exact(c, seg, 1, 2, reps)
        assert abs(exact - reps * slope) < 0.01 * reps * slope


def test_validity_warning_for_large_repetitions():
    c = cfg(n_max=8, h=0.02)
    seg = boson.standard_segment(c.h, 1.0 / 3.0, 1.0 / 3.0, 1.0)
    with pytest.warns(boson.PerturbativeValidityWarning):
        boson.resonance_negativity(c, seg, 1, 2, 500)


def test_truncation_convergence_gate():
    c = cfg(n_max=10, h=1e-4)
    seg = boson.standard_segment(c.h, 1.0 / 3.0, 1.0 / 3.0, 1.0)
    assert boson.two_mode_convergence(c, seg, 1, 2) < 1e-6


def test_h_range_validation():
    with pytest.raises(ValueError):
        boson.BosonCavityConfig(h=2.0)
    with pytest.raises(ValueError):
        boson.building_block(cfg(n_max=4), 2.5, 0.1)
