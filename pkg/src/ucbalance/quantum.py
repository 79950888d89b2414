"""Exact finite-dimensional quantum mechanics for dimensions 2-6.

Density matrices and sharp (rank-1 projective) measurements with the Born
rule, the dephasing map ``rho -> sum_j P_j rho P_j``, second-measurement
transition matrices, and trace norms.  Random states are drawn from the
Hilbert-Schmidt measure (normalized ``G G^dag`` with ``G`` complex Ginibre)
and random bases from the Haar measure, both through numpy's seedable PCG64
generator so every run is reproducible from an integer seed.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .probability import ProbDist

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
ORTHO_TOL = 1e-10
STOCHASTIC_TOL = 1e-10

MIN_DIM = 2
MAX_DIM = 6


def spawn_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator for (seed, stream); distinct streams never overlap."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def _check_dim(dim: int) -> None:
    if not MIN_DIM <= dim <= MAX_DIM:
        raise ValidationError(f"dimension must be in [{MIN_DIM}, {MAX_DIM}], got {dim}")


class DensityMatrix:
    """A dim x dim density matrix: Hermitian, unit trace, positive semidefinite."""

    __slots__ = ("matrix",)

    def __init__(self, matrix) -> None:
        m = np.asarray(matrix, dtype=complex).copy()
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got shape {m.shape}")
        _check_dim(m.shape[0])
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValidationError("density matrix is not Hermitian")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix has trace {tr!r}, not 1")
        if np.linalg.eigvalsh(m).min() < -PSD_TOL:
            raise ValidationError("density matrix is not positive semidefinite")
        m.flags.writeable = False
        self.matrix = m

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


class ProjectiveMeasurement:
    """A sharp measurement: an orthonormal basis, one rank-1 projector per outcome.

    ``vectors[j]`` is the eigenvector for outcome ``j``; orthonormality and
    completeness are enforced within ``ORTHO_TOL``.
    """

    __slots__ = ("vectors",)

    def __init__(self, vectors) -> None:
        v = np.asarray(vectors, dtype=complex).copy()
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValidationError(f"need dim vectors of length dim, got shape {v.shape}")
        _check_dim(v.shape[0])
        gram = v.conj() @ v.T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > ORTHO_TOL:
            raise ValidationError("basis vectors are not orthonormal")
        completeness = v.T @ v.conj()
        if np.max(np.abs(completeness - np.eye(v.shape[0]))) > ORTHO_TOL:
            raise ValidationError("basis does not resolve the identity")
        v.flags.writeable = False
        self.vectors = v

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def projector(self, outcome: int) -> np.ndarray:
        vec = self.vectors[outcome]
        return np.outer(vec, vec.conj())

    def __repr__(self) -> str:
        return f"ProjectiveMeasurement(dim={self.dim})"


class TransitionMatrix:
    """Outcome statistics of a second measurement on first-measurement eigenstates.

    Entry ``[i][mu]`` is the probability of outcome ``i`` in the second
    measurement given the first produced outcome ``mu``.  Columns are
    normalized distributions; square matrices must additionally have unit row
    sums — measuring the second observable on the uniform ensemble of first
    eigenstates yields an unbiased distribution.
    """

    __slots__ = ("entries",)

    def __init__(self, entries) -> None:
        t = np.asarray(entries, dtype=float).copy()
        if t.ndim != 2:
            raise ValidationError(f"transition matrix must be 2-d, got shape {t.shape}")
        if np.any(t < -STOCHASTIC_TOL) or np.any(t > 1.0 + STOCHASTIC_TOL):
            raise ValidationError("transition probabilities outside [0, 1]")
        np.clip(t, 0.0, 1.0, out=t)
        col_sums = t.sum(axis=0)
        if np.max(np.abs(col_sums - 1.0)) > STOCHASTIC_TOL:
            raise ValidationError(f"columns do not sum to 1: {col_sums}")
        if t.shape[0] == t.shape[1]:
            row_sums = t.sum(axis=1)
            if np.max(np.abs(row_sums - 1.0)) > STOCHASTIC_TOL:
                raise ValidationError(f"square matrix rows do not sum to 1: {row_sums}")
        t.flags.writeable = False
        self.entries = t

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __repr__(self) -> str:
        return f"TransitionMatrix(shape={self.entries.shape})"


def born_probabilities(state: DensityMatrix, meas: ProjectiveMeasurement) -> ProbDist:
    """Outcome distribution ``p_j = <a_j| rho |a_j>`` of measuring ``meas`` on ``state``."""
    if state.dim != meas.dim:
        raise ValidationError(f"dimension mismatch: state {state.dim}, measurement {meas.dim}")
    v = meas.vectors
    p = np.einsum("jk,kl,jl->j", v.conj(), state.matrix, v).real
    np.clip(p, 0.0, None, out=p)
    return ProbDist(p / p.sum())


def dephase(state: DensityMatrix, meas: ProjectiveMeasurement) -> DensityMatrix:
    """Average post-measurement state ``sum_j |a_j><a_j| rho |a_j><a_j|``."""
    if state.dim != meas.dim:
        raise ValidationError(f"dimension mismatch: state {state.dim}, measurement {meas.dim}")
    v = meas.vectors
    diag = np.einsum("jk,kl,jl->j", v.conj(), state.matrix, v).real
    out = (v.T * diag) @ v.conj()
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out)


def transition_matrix(
    first: ProjectiveMeasurement, second: ProjectiveMeasurement
) -> TransitionMatrix:
    """Transition matrix ``[i][mu] = |<a'_i|a_mu>|^2`` between two sharp measurements.

    For equal dimensions the result is doubly stochastic: unitarity of the
    basis change makes both rows and columns normalized.
    """
    if first.dim != second.dim:
        raise ValidationError(f"dimension mismatch: {first.dim} vs {second.dim}")
    overlaps = second.vectors.conj() @ first.vectors.T
    return TransitionMatrix(np.abs(overlaps) ** 2)


def trace_norm(h) -> float:
    """Trace norm ``Tr sqrt(H^dag H)`` of a Hermitian matrix: sum of |eigenvalues|."""
    m = np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"trace norm needs a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise ValidationError("trace norm input is not Hermitian")
    m = 0.5 * (m + m.conj().T)
    return float(np.abs(np.linalg.eigvalsh(m)).sum())


def state_from_rng(rng: np.random.Generator, dim: int) -> DensityMatrix:
    """Hilbert-Schmidt random state: normalized ``G G^dag``, ``G`` complex Ginibre."""
    _check_dim(dim)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho)


def basis_from_rng(rng: np.random.Generator, dim: int) -> ProjectiveMeasurement:
    """Haar-random orthonormal basis via phase-fixed QR of a complex Ginibre matrix."""
    _check_dim(dim)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return ProjectiveMeasurement(q.T)


def random_state(dim: int, seed: int) -> DensityMatrix:
    """Seeded Hilbert-Schmidt random density matrix; identical output per seed."""
    return state_from_rng(spawn_rng(seed), dim)


def random_basis(dim: int, seed: int) -> ProjectiveMeasurement:
    """Seeded Haar-random projective measurement; identical output per seed."""
    return basis_from_rng(spawn_rng(seed), dim)


def computational_basis(dim: int) -> ProjectiveMeasurement:
    return ProjectiveMeasurement(np.eye(dim, dtype=complex))


def qubit_basis(theta: float, phi: float = 0.0) -> ProjectiveMeasurement:
    """Qubit basis along the Bloch direction (theta, phi); outcome 0 is the + eigenvector."""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    plus = np.array([c, np.exp(1j * phi) * s])
    minus = np.array([-np.exp(-1j * phi) * s, c])
    return ProjectiveMeasurement(np.array([plus, minus]))


def pauli_x_basis() -> ProjectiveMeasurement:
    return qubit_basis(np.pi / 2.0, 0.0)


def pauli_z_basis() -> ProjectiveMeasurement:
    return computational_basis(2)
