"""Entanglement measures for Gaussian covariance states and small density matrices.

All Gaussian-state measures use the natural logarithm; that choice is forced
by the two-mode squeezed-state results (log-negativity 2r, negativity
(exp(2r) - 1)/2).  The Hilbert-space measures accept a `base` argument since
qubit examples are conventionally quoted in log2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gaussian

EIG_ZERO_TOL = 1e-12


def _entropy_term(x):
    # f(nu) of the Gaussian von Neumann entropy; 0 log 0 := 0
    x = np.asarray(x, dtype=float)
    plus = (x + 1.0) / 2.0
    minus = (x - 1.0) / 2.0
    out = plus * np.log(plus)
    out = out - np.where(minus > EIG_ZERO_TOL, minus * np.log(np.where(minus > 0, minus, 1.0)), 0.0)
    return out


def von_neumann_entropy(state):
    """Gaussian von Neumann entropy sum_k f(nu_k); zero for pure states."""
    if not state.is_physical():
        raise ValueError("state is not physical")
    nus = gaussian.symplectic_spectrum(state)
    nus = np.clip(nus, 1.0, None)
    return float(np.sum(_entropy_term(nus)))


def entropy_of_entanglement(state, partition, check_tol=1e-9):
    """Entropy of either reduced side of a pure bipartite Gaussian state.

    `partition` lists the modes of one side.  Raises for mixed global states;
    the two reduced-side entropies are averaged after an agreement check.
    """
    if abs(state.purity_det() - 1.0) > 1e-6:
        raise ValueError("entropy of entanglement requires a pure global state")
    side_a = sorted(set(int(k) for k in partition))
    side_b = [k for k in range(state.n_modes) if k not in side_a]
    if not side_a or not side_b:
        raise ValueError("partition must split the modes into two non-empty sets")
    ent_a = von_neumann_entropy(gaussian.partial_trace(state, side_a))
    ent_b = von_neumann_entropy(gaussian.partial_trace(state, side_b))
    if abs(ent_a - ent_b) > max(check_tol, 1e-9 * max(ent_a, ent_b, 1.0)):
        raise ValueError(f"reduced-side entropies disagree: {ent_a} vs {ent_b}")
    return 0.5 * (ent_a + ent_b)


def _smallest_pt_eigenvalue(state):
    if state.n_modes != 2:
        raise ValueError("negativity measures are defined for two-mode states here")
    tilde = gaussian.partial_transpose(state, mode=1)
    nus = gaussian.symplectic_spectrum(tilde.covariance, basis=state.basis)
    return float(nus.min())


def negativity_gaussian(state):
    """max[(1 - nu~)/(2 nu~), 0] with nu~ the smallest PT symplectic eigenvalue."""
    nu = _smallest_pt_eigenvalue(state)
    return max((1.0 - nu) / (2.0 * nu), 0.0)


def log_negativity_gaussian(state):
    """max[-log(nu~), 0] (natural log)."""
    nu = _smallest_pt_eigenvalue(state)
    return max(-np.log(nu), 0.0)


@dataclass(frozen=True)
class DensityMatrix:
    """Small explicit density matrix with basis labels.

    Hermitian, unit trace, eigenvalues >= -1e-10 (validated).
    """

    matrix: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError("density matrix must be square")
        if np.abs(rho - rho.conj().T).max() > 1e-10 * max(1.0, np.abs(rho).max()):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-10 or abs(np.trace(rho).imag) > 1e-10:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(rho).min() < -1e-10:
            raise ValueError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "matrix", rho)

    @property
    def dim(self):
        return self.matrix.shape[0]


def partial_transpose_dm(rho, dims, subsystem=1):
    """Partial transpose of a bipartite density matrix with local dims `dims`."""
    rho = np.asarray(rho, dtype=complex)
    da, db = dims
    if rho.shape != (da * db, da * db):
        raise ValueError("density matrix does not match the given dims")
    r = rho.reshape(da, db, da, db)
    if subsystem == 0:
        r = r.transpose(2, 1, 0, 3)
    elif subsystem == 1:
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError("subsystem must be 0 or 1")
    return r.reshape(da * db, da * db)


def negativity_density_matrix(rho, dims, subsystem=1, convention="eigsum"):
    """Negativity |sum of negative eigenvalues| of the partial transpose.

    `convention="trace-norm"` instead returns (||rho^tp||_1 - 1)/2; the two
    agree on unit-trace states.  Eigenvalues within 1e-12 of zero count as 0.
    """
    if isinstance(rho, DensityMatrix):
        rho = rho.matrix
    rho = np.asarray(rho, dtype=complex)
    if np.abs(rho - rho.conj().T).max() > 1e-9 * max(1.0, np.abs(rho).max()):
        raise ValueError("density matrix must be Hermitian")
    pt = partial_transpose_dm(rho, dims, subsystem)
    w = np.linalg.eigvalsh(pt)
    if convention == "eigsum":
        return float(-np.sum(w[w < -EIG_ZERO_TOL]))
    if convention == "trace-norm":
        return float((np.sum(np.abs(w)) - 1.0) / 2.0)
    raise ValueError("convention must be 'eigsum' or 'trace-norm'")


def log_negativity_density_matrix(rho, dims, subsystem=1, base=2.0):
    """log_base of the PT trace norm (qubit convention defaults to log2)."""
    if isinstance(rho, DensityMatrix):
        rho = rho.matrix
    pt = partial_transpose_dm(np.asarray(rho, dtype=complex), dims, subsystem)
    w = np.linalg.eigvalsh(pt)
    return float(np.log(np.sum(np.abs(w))) / np.log(base))


def entropy_eigenvalues(probs, base=np.e):
    """Shannon entropy of a probability vector (0 log 0 := 0)."""
    p = np.asarray(probs, dtype=float)
    p = p[p > EIG_ZERO_TOL]
    return float(-np.sum(p * np.log(p)) / np.log(base))
