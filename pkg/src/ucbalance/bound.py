"""Closed-form CHSH upper bounds as a function of the balance strength.

For a theory whose uncertainty-disturbance balance strength is ``alpha``, the
CHSH value is bounded by ``max over (gamma, tau) of n = 2 sqrt(f(alpha, gamma,
tau)) + 2 sqrt(f(alpha, -gamma, -tau))`` where ``gamma`` and ``tau`` are the
two free transition-probability parameters of Alice's sequential-measurement
statistics and

    f = [alpha^2 (tau^2 + gamma^2 - 2) + 2] /
        [(alpha^2 (1+gamma)^2 + 1)(alpha^2 (tau^2 - 1) + 1)
         + (alpha^2 (1+tau)^2 + 1)(alpha^2 (gamma^2 - 1) + 1)].

At ``alpha = 0`` the bound is 4 (PR-box), at ``alpha = 1`` the grid maximum
is about 2.933, and under the extra symmetry assumption (``gamma = 0``) the
bound becomes ``4 / sqrt(alpha^2 + 1)``, which reproduces the Tsirelson bound
``2 sqrt(2)`` at ``alpha = 1``.  ``f`` has a removable singularity (0/0) at
``alpha = 1, gamma = tau = 0`` with direction-independent limit 1/2, handled
by an explicit guard.

``feasible_max_correlator`` is an independent brute-force check of the closed
form: it maximizes ``|A0 +/- A1|`` over the expectation square subject to the
raw per-measurement constraints ``sqrt(1 - A_mu^2) >= alpha |A_mu + gamma_mu
A_other|``, which the closed form must dominate.

Index convention: ``gamma`` pairs with the first measurement's disturbance
expression and ``tau`` with the second's; ``f`` is symmetric under the swap,
so numeric results do not depend on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SingularEvaluationError, ValidationError

SINGULAR_ALPHA_MARGIN = 1e-8
SINGULAR_GUARD_RADIUS = 1e-8
DENOMINATOR_FLOOR = 1e-12
REFINE_MIN_STEP = 1e-8
_MAX_REFINE_EVALS = 100000


@dataclass(frozen=True)
class BoundParams:
    """Balance strength and the two transition parameters of the bound."""

    alpha: float
    gamma: float
    tau: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must lie in [0, 1], got {self.alpha}")
        for name in ("gamma", "tau"):
            value = getattr(self, name)
            if not -1.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [-1, 1], got {value}")


@dataclass(frozen=True)
class ScanResult:
    """Maximum of the nonlocality bound over (gamma, tau) and where it sits."""

    max_value: float
    argmax_gamma: float
    argmax_tau: float
    grid_step: float
    refined: bool

    def __post_init__(self) -> None:
        if not 2.0 - 1e-9 <= self.max_value <= 4.0 + 1e-9:
            raise ValidationError(f"scan maximum {self.max_value} outside [2, 4]")
        for name in ("argmax_gamma", "argmax_tau"):
            value = getattr(self, name)
            if not -1.0 <= value <= 1.0:
                raise ValidationError(f"{name} outside [-1, 1]: {value}")


def _f_array(alpha: float, gamma, tau, sign: int):
    """Vectorized f(alpha, sign*gamma, sign*tau) with the removable-singularity guard."""
    g = np.asarray(gamma, dtype=float)
    t = np.asarray(tau, dtype=float)
    a2 = alpha * alpha
    numerator = a2 * (t * t + g * g - 2.0) + 2.0
    denominator = (a2 * (1.0 + sign * g) ** 2 + 1.0) * (a2 * (t * t - 1.0) + 1.0) + (
        a2 * (1.0 + sign * t) ** 2 + 1.0
    ) * (a2 * (g * g - 1.0) + 1.0)
    guarded = (alpha >= 1.0 - SINGULAR_ALPHA_MARGIN) & (
        g * g + t * t <= SINGULAR_GUARD_RADIUS**2
    )
    if np.any((np.abs(denominator) < DENOMINATOR_FLOOR) & ~guarded):
        raise SingularEvaluationError(
            "f denominator vanished away from the removable singularity at "
            "(alpha=1, gamma=tau=0)"
        )
    safe_denominator = np.where(guarded, 1.0, denominator)
    result = np.where(guarded, 0.5, numerator / safe_denominator)
    return result


def f_value(params: BoundParams, sign: int = 1) -> float:
    """The bound factor ``f``; ``sign=-1`` evaluates ``f(alpha, -gamma, -tau)``.

    Returns the direction-independent limit 1/2 inside the guard around the
    removable singularity at ``alpha = 1, gamma = tau = 0``.
    """
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    return float(_f_array(params.alpha, params.gamma, params.tau, sign))


def n_value(params: BoundParams) -> float:
    """Nonlocality bound ``2 sqrt(f(+)) + 2 sqrt(f(-))`` at the given parameters."""
    return 2.0 * math.sqrt(f_value(params, 1)) + 2.0 * math.sqrt(f_value(params, -1))


def _n_array(alpha: float, gamma, tau):
    return 2.0 * np.sqrt(_f_array(alpha, gamma, tau, 1)) + 2.0 * np.sqrt(
        _f_array(alpha, gamma, tau, -1)
    )


def _grid(step: float) -> np.ndarray:
    count = int(round(2.0 / step)) + 1
    return np.linspace(-1.0, 1.0, count)


def _check_alpha_step(alpha: float, grid_step: float, max_step: float = 0.1) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha}")
    if not 0.0 < grid_step <= max_step:
        raise ValidationError(f"grid_step must lie in (0, {max_step}], got {grid_step}")


def _pattern_search(evaluate, point: list[float], lo: float, hi: float, step: float):
    """Compass search with halving step; returns (best_value, best_point)."""
    best = evaluate(point)
    evals = 0
    while step >= REFINE_MIN_STEP and evals < _MAX_REFINE_EVALS:
        moved = False
        for axis in range(len(point)):
            for delta in (step, -step):
                trial = list(point)
                trial[axis] = min(hi, max(lo, trial[axis] + delta))
                value = evaluate(trial)
                evals += 1
                if value > best:
                    best = value
                    point = trial
                    moved = True
        if not moved:
            step *= 0.5
    return best, point


def max_bound(alpha: float, grid_step: float) -> ScanResult:
    """Grid-plus-refinement maximization of the bound over (gamma, tau) in [-1,1]^2."""
    _check_alpha_step(alpha, grid_step)
    axis = _grid(grid_step)
    gg, tt = np.meshgrid(axis, axis, indexing="ij")
    values = _n_array(alpha, gg, tt)
    flat_index = int(np.argmax(values))
    i, j = np.unravel_index(flat_index, values.shape)
    start = [float(axis[i]), float(axis[j])]

    def evaluate(pt):
        return float(_n_array(alpha, pt[0], pt[1]))

    best, point = _pattern_search(evaluate, start, -1.0, 1.0, grid_step)
    return ScanResult(
        max_value=best,
        argmax_gamma=point[0],
        argmax_tau=point[1],
        grid_step=grid_step,
        refined=True,
    )


def diagonal_bound(alpha: float, grid_step: float) -> ScanResult:
    """Maximization of the bound restricted to the diagonal ``gamma = tau``.

    The full 2-d maximum is attained on this diagonal, so the 1-d scan is the
    cheap route to the same value.
    """
    _check_alpha_step(alpha, grid_step)
    axis = _grid(grid_step)
    values = _n_array(alpha, axis, axis)
    start = [float(axis[int(np.argmax(values))])]

    def evaluate(pt):
        return float(_n_array(alpha, pt[0], pt[0]))

    best, point = _pattern_search(evaluate, start, -1.0, 1.0, grid_step)
    return ScanResult(
        max_value=best,
        argmax_gamma=point[0],
        argmax_tau=point[0],
        grid_step=grid_step,
        refined=True,
    )


def symmetric_bound(alpha: float) -> float:
    """The symmetry-assumption bound ``4 / sqrt(alpha^2 + 1)``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha}")
    return 4.0 * math.sqrt(1.0 / (alpha * alpha + 1.0))


def alpha_from_nonlocality(n0: float) -> float:
    """Largest balance strength compatible with an observed CHSH value ``n0``.

    Inverts the symmetric bound: ``alpha <= sqrt(16 - n0^2) / n0`` on (0, 4].
    """
    if not 0.0 < n0 <= 4.0:
        raise ValidationError(f"n0 must lie in (0, 4], got {n0}")
    return math.sqrt(16.0 - n0 * n0) / n0


@lru_cache(maxsize=4)
def _correlator_grid(resolution: float):
    axis = _grid(resolution)
    return axis, np.sqrt(1.0 - axis * axis)


@lru_cache(maxsize=4)
def _correlator_objective(resolution: float, sign: int):
    axis, _ = _correlator_grid(resolution)
    return np.abs(axis[:, None] + sign * axis[None, :])


def feasible_max_correlator(
    params: BoundParams, sign: int, resolution: float
) -> float:
    """Brute-force maximum of ``|A0 + sign*A1|`` under the raw balance constraints.

    Scans the expectation square for points satisfying the per-measurement
    balance constraints

        sqrt(1 - A0^2) >= alpha |A1 + gamma A0|
        sqrt(1 - A1^2) >= alpha |A0 + tau A1|,

    i.e. measuring A_mu first disturbs the other measurement's statistics by
    ``|A_other + gamma_mu A_mu|``, which the uncertainty of A_mu must cover.
    (Squaring these two and eliminating the cross term in ``A0 +/- A1`` is
    exactly what produces the closed form.)  Every feasible point obeys
    ``|A0 + sign*A1| <= 2 sqrt(f(alpha, sign*gamma, sign*tau))``, so this
    oracle can only ever fall at or below the closed form; it approaches it
    from below as the resolution shrinks.
    """
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    if not 0.0 < resolution <= 0.01:
        raise ValidationError(f"resolution must lie in (0, 0.01], got {resolution}")
    axis, slack = _correlator_grid(resolution)
    alpha, gamma, tau = params.alpha, params.gamma, params.tau
    a0 = axis[:, None]
    a1 = axis[None, :]
    feasible = (slack[:, None] >= alpha * np.abs(a1 + gamma * a0)) & (
        slack[None, :] >= alpha * np.abs(a0 + tau * a1)
    )
    objective = _correlator_objective(resolution, sign)
    return float(np.max(objective, where=feasible, initial=-1.0))
