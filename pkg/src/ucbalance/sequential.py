"""Sequential-measurement statistics and the uncertainty-disturbance balance.

Measuring a sharp observable and then a second one turns the state into the
dephased ensemble first, so the second measurement's statistics generally
shift.  The L1 size of that shift (the disturbance) never exceeds the
uncertainty of the first measurement; the proof passes through a four-term
chain

    D  <=  Tr|rho - rho_dephased|  <=  sum_{i<j} 2|<a_i|rho|a_j>|  <=  delta

which this module computes term by term.  A Monte Carlo estimator for the
infimum of delta/D over states and measurement pairs (the balance strength of
quantum mechanics, equal to 1) is included; finite sampling plus local
refinement can only ever upper-bound that infimum, so the estimate is
reported as an upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoDataError, ValidationError, VerificationError
from .probability import ProbDist, l1_distance, uncertainty
from .quantum import (
    DensityMatrix,
    ProjectiveMeasurement,
    basis_from_rng,
    born_probabilities,
    dephase,
    qubit_basis,
    spawn_rng,
    state_from_rng,
    trace_norm,
    transition_matrix,
)

RATIO_THRESHOLD = 1e-6
CHAIN_TOL = 1e-9

_PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class BalanceReport:
    """Uncertainty, disturbance, their ratio, and the four-term proof chain.

    ``ratio`` is None when the disturbance is below ``RATIO_THRESHOLD``:
    delta/D is ill-conditioned as D -> 0 and the infimum defining the balance
    strength is only meaningful on instances with genuine disturbance.
    """

    uncertainty: float
    disturbance: float
    ratio: float | None
    chain: tuple[float, float, float, float]


def sequential_distribution(
    state: DensityMatrix,
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
) -> ProbDist:
    """Statistics of ``second`` measured after ``first`` on ``state``.

    Computed as the Born distribution of ``second`` on the dephased state;
    equal to the transition matrix applied to the first-measurement
    distribution (see ``sequential_distribution_product``).
    """
    return born_probabilities(dephase(state, first), second)


def sequential_distribution_product(
    state: DensityMatrix,
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
) -> ProbDist:
    """Same statistics via ``transition_matrix(first, second) @ p(.|first)``."""
    t = transition_matrix(first, second)
    p_first = born_probabilities(state, first)
    return ProbDist(t.entries @ p_first.probabilities)


def disturbance(
    state: DensityMatrix,
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
) -> float:
    """L1 shift of the second measurement's statistics caused by the first."""
    undisturbed = born_probabilities(state, second)
    disturbed = sequential_distribution(state, first, second)
    return l1_distance(undisturbed, disturbed)


def _chain_terms(
    state: DensityMatrix,
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
) -> tuple[float, float, float, float]:
    c1 = disturbance(state, first, second)
    rho_a = dephase(state, first)
    c2 = trace_norm(state.matrix - rho_a.matrix)
    v = first.vectors
    offdiag = v.conj() @ state.matrix @ v.T
    iu = np.triu_indices(state.dim, k=1)
    c3 = float(2.0 * np.abs(offdiag[iu]).sum())
    c4 = uncertainty(born_probabilities(state, first))
    return (c1, c2, c3, c4)


def balance_report(
    state: DensityMatrix,
    first: ProjectiveMeasurement,
    second: ProjectiveMeasurement,
) -> BalanceReport:
    """Evaluate the balance chain for one (state, first, second) triple.

    Raises VerificationError if the chain is not monotone within
    ``CHAIN_TOL`` — that would falsify the balance relation.
    """
    chain = _chain_terms(state, first, second)
    c1, c2, c3, c4 = chain
    if c1 > c2 + CHAIN_TOL or c2 > c3 + CHAIN_TOL or c3 > c4 + CHAIN_TOL:
        raise VerificationError(f"balance chain not monotone: {chain}")
    ratio = c4 / c1 if c1 > RATIO_THRESHOLD else None
    return BalanceReport(uncertainty=c4, disturbance=c1, ratio=ratio, chain=chain)


@dataclass(frozen=True)
class ChainVerification:
    """Summary of a Monte Carlo sweep of the balance chain."""

    dim: int
    samples: int
    seed: int
    min_slacks: tuple[float, float, float]
    violations: int

    @property
    def min_slack(self) -> float:
        return min(self.min_slacks)


def verify_balance_chain(dim: int, samples: int, seed: int) -> ChainVerification:
    """Check chain monotonicity on ``samples`` random (state, basis, basis) triples.

    Slack of a link is ``next - previous``; a violation is a slack below
    ``-CHAIN_TOL``.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    rng = spawn_rng(seed)
    min_slacks = [math.inf, math.inf, math.inf]
    violations = 0
    for _ in range(samples):
        state = state_from_rng(rng, dim)
        first = basis_from_rng(rng, dim)
        second = basis_from_rng(rng, dim)
        c1, c2, c3, c4 = _chain_terms(state, first, second)
        for k, slack in enumerate((c2 - c1, c3 - c2, c4 - c3)):
            if slack < min_slacks[k]:
                min_slacks[k] = slack
            if slack < -CHAIN_TOL:
                violations += 1
    return ChainVerification(
        dim=dim,
        samples=samples,
        seed=seed,
        min_slacks=tuple(min_slacks),
        violations=violations,
    )


def _ratio_d2(params: np.ndarray, threshold: float) -> float:
    """delta/D for the Bloch parameterization (rx, ry, rz, th1, ph1, th2, ph2)."""
    r = params[:3].copy()
    norm = np.linalg.norm(r)
    if norm > 1.0:
        r /= norm
    rho = 0.5 * (
        np.eye(2, dtype=complex)
        + r[0] * _PAULIS[0]
        + r[1] * _PAULIS[1]
        + r[2] * _PAULIS[2]
    )
    state = DensityMatrix(rho)
    first = qubit_basis(params[3], params[4])
    second = qubit_basis(params[5], params[6])
    d = disturbance(state, first, second)
    if d <= threshold:
        return math.inf
    return uncertainty(born_probabilities(state, first)) / d


def _bloch_vector(state: DensityMatrix) -> np.ndarray:
    return np.array(
        [float(np.trace(state.matrix @ sigma).real) for sigma in _PAULIS]
    )


def _bloch_angles(meas: ProjectiveMeasurement) -> tuple[float, float]:
    v = meas.vectors[0]
    n = np.array([(v.conj() @ sigma @ v).real for sigma in _PAULIS])
    theta = math.acos(min(1.0, max(-1.0, n[2])))
    phi = math.atan2(n[1], n[0])
    return theta, phi


def _ratio_general(params: np.ndarray, dim: int, threshold: float) -> float:
    """delta/D for a pure state + two QR-orthonormalized bases (d >= 3)."""
    n = 2 * dim
    psi = params[:n:2] + 1j * params[1:n:2]
    norm = np.linalg.norm(psi)
    if norm < 1e-12:
        return math.inf
    psi = psi / norm
    state = DensityMatrix(np.outer(psi, psi.conj()))
    bases = []
    for k in range(2):
        block = params[n + k * 2 * dim * dim : n + (k + 1) * 2 * dim * dim]
        m = (block[0::2] + 1j * block[1::2]).reshape(dim, dim)
        try:
            q, r = np.linalg.qr(m)
            d = np.diagonal(r)
            if np.min(np.abs(d)) < 1e-12:
                return math.inf
            q = q * (d / np.abs(d))
            bases.append(ProjectiveMeasurement(q.T))
        except np.linalg.LinAlgError:
            return math.inf
    d_val = disturbance(state, bases[0], bases[1])
    if d_val <= threshold:
        return math.inf
    return uncertainty(born_probabilities(state, bases[0])) / d_val


def _coordinate_descent(objective, params: np.ndarray, step: float) -> float:
    """Minimize by per-coordinate probes with a halving step; 200 sweeps max."""
    best = objective(params)
    for _ in range(200):
        start = best
        improved = False
        for i in range(params.size):
            for delta in (step, -step):
                trial = params.copy()
                trial[i] += delta
                value = objective(trial)
                if value < best:
                    best = value
                    params = trial
                    improved = True
        if not improved:
            step *= 0.5
            if step < 1e-10:
                break
        elif start - best < 1e-10 * max(abs(best), 1.0):
            break
    return best


def estimate_balance_strength(
    dim: int, samples: int, seed: int, d_threshold: float
) -> float:
    """Upper bound on the balance strength from seeded sampling plus refinement.

    Draws ``samples`` random (state, basis, basis) triples, keeps the minimum
    of delta/D over those with disturbance above ``d_threshold``, then runs
    coordinate descent from the best sample (Bloch parameters for qubits,
    re-orthonormalized raw parameters above).  The true balance strength is an
    infimum over all configurations, so the returned value can only bound it
    from above.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    if d_threshold <= 0.0:
        raise ValidationError(f"d_threshold must be > 0, got {d_threshold}")
    rng = spawn_rng(seed)
    best_ratio = math.inf
    best_config = None
    for _ in range(samples):
        state = state_from_rng(rng, dim)
        first = basis_from_rng(rng, dim)
        second = basis_from_rng(rng, dim)
        d = disturbance(state, first, second)
        if d <= d_threshold:
            continue
        ratio = uncertainty(born_probabilities(state, first)) / d
        if ratio < best_ratio:
            best_ratio = ratio
            best_config = (state, first, second)
    if best_config is None:
        raise NoDataError(
            f"no sample had disturbance above {d_threshold}; cannot form a ratio"
        )
    state, first, second = best_config
    if dim == 2:
        params = np.concatenate(
            [_bloch_vector(state), _bloch_angles(first), _bloch_angles(second)]
        )
        refined = _coordinate_descent(
            lambda p: _ratio_d2(p, d_threshold), params, step=0.1
        )
    else:
        # Refinement over pure states only: still an upper bound on the infimum.
        eigvals, eigvecs = np.linalg.eigh(state.matrix)
        psi = eigvecs[:, -1]
        blocks = [np.empty(2 * dim), ]
        blocks[0][0::2] = psi.real
        blocks[0][1::2] = psi.imag
        for meas in (first, second):
            m = meas.vectors.T
            block = np.empty(2 * dim * dim)
            block[0::2] = m.real.ravel()
            block[1::2] = m.imag.ravel()
            blocks.append(block)
        params = np.concatenate(blocks)
        refined = _coordinate_descent(
            lambda p: _ratio_general(p, dim, d_threshold), params, step=0.05
        )
    return min(best_ratio, refined)
