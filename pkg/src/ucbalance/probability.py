"""Finite probability distributions and the scalar measures built on them.

The uncertainty of a distribution ``p`` over outcomes ``0..d-1`` is
``(sum_a sqrt(p_a))^2 - 1``: zero exactly for deterministic outcomes and
``d - 1`` at the uniform distribution.  Distances between distributions are
measured in L1.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

SUM_TOL = 1e-12
EDGE_TOL = 1e-12


class ProbDist:
    """Probability distribution over outcomes labelled 0..d-1.

    Entries within ``EDGE_TOL`` of 0 or 1 are clipped to the boundary
    (downstream trace computations produce 1e-15-scale negativity); anything
    further outside [0, 1] is rejected, as is a total away from 1 by more
    than ``SUM_TOL``.
    """

    __slots__ = ("probabilities",)

    def __init__(self, probabilities) -> None:
        p = np.asarray(probabilities, dtype=float).copy()
        if p.ndim != 1 or p.size < 2:
            raise ValidationError(
                f"need a 1-d array of at least 2 probabilities, got shape {p.shape}"
            )
        if np.any(p < -EDGE_TOL) or np.any(p > 1.0 + EDGE_TOL):
            raise ValidationError(f"probabilities outside [0, 1]: {p}")
        np.clip(p, 0.0, 1.0, out=p)
        total = p.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        p.flags.writeable = False
        self.probabilities = p

    def __len__(self) -> int:
        return self.probabilities.size

    def __getitem__(self, a: int) -> float:
        return float(self.probabilities[a])

    def __repr__(self) -> str:
        return f"ProbDist({self.probabilities.tolist()})"


def uncertainty(dist: ProbDist) -> float:
    """Return ``(sum_a sqrt(p_a))^2 - 1``.

    Zero iff the distribution is deterministic; for two outcomes this equals
    ``sqrt(4 p0 p1) = sqrt(1 - (p0 - p1)^2)``.
    """
    root_sum = np.sqrt(dist.probabilities).sum()
    return float(root_sum * root_sum - 1.0)


def l1_distance(p: ProbDist, q: ProbDist) -> float:
    """Return ``sum_a |p_a - q_a|`` for equal-length distributions."""
    if len(p) != len(q):
        raise ValidationError(
            f"distributions have different outcome counts: {len(p)} vs {len(q)}"
        )
    return float(np.abs(p.probabilities - q.probabilities).sum())
