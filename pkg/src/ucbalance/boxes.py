"""Bipartite no-signaling boxes for the two-setting, two-outcome Bell scenario.

A box is the conditional-probability table ``p(a, b | mu, nu)`` for Alice's
and Bob's outcomes given their setting choices.  Constructors cover the
maximally nonlocal PR-box, Born-rule boxes from a two-qubit state, and the 16
local deterministic strategies; ``chsh`` evaluates the signed correlator sum
whose classical bound is 2, quantum bound 2*sqrt(2), and no-signaling bound 4.

Conditioning on Bob's outcome steers Alice's side into a conditional state;
for the PR-box those steered states are outcome-deterministic for both of
Alice's settings (zero uncertainty) while a first measurement still disturbs
a second one, which is why the PR-box has vanishing balance strength.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .probability import ProbDist, l1_distance, uncertainty
from .quantum import DensityMatrix, ProjectiveMeasurement

NORMALIZATION_TOL = 1e-12
NO_SIGNALING_TOL = 1e-12
ZERO_WEIGHT_TOL = 1e-12


class Box:
    """No-signaling conditional-probability table ``table[a, b, mu, nu]``."""

    __slots__ = ("table",)

    def __init__(self, table) -> None:
        t = np.asarray(table, dtype=float).copy()
        if t.shape != (2, 2, 2, 2):
            raise ValidationError(f"box table must have shape (2,2,2,2), got {t.shape}")
        if np.any(t < -NORMALIZATION_TOL) or np.any(t > 1.0 + NORMALIZATION_TOL):
            raise ValidationError("box entries outside [0, 1]")
        np.clip(t, 0.0, 1.0, out=t)
        totals = t.sum(axis=(0, 1))
        if np.max(np.abs(totals - 1.0)) > NORMALIZATION_TOL:
            raise ValidationError(f"box not normalized per setting pair: {totals}")
        alice_marg = t.sum(axis=1)  # [a, mu, nu]
        if np.max(np.abs(alice_marg[:, :, 0] - alice_marg[:, :, 1])) > NO_SIGNALING_TOL:
            raise ValidationError("Alice's marginals depend on Bob's setting")
        bob_marg = t.sum(axis=0)  # [b, mu, nu]
        if np.max(np.abs(bob_marg[:, 0, :] - bob_marg[:, 1, :])) > NO_SIGNALING_TOL:
            raise ValidationError("Bob's marginals depend on Alice's setting")
        t.flags.writeable = False
        self.table = t

    def prob(self, a: int, b: int, mu: int, nu: int) -> float:
        return float(self.table[a, b, mu, nu])

    def no_signaling_residuals(self) -> tuple[float, float]:
        """Max marginal shifts (Alice's under Bob's setting, and vice versa)."""
        alice_marg = self.table.sum(axis=1)
        bob_marg = self.table.sum(axis=0)
        return (
            float(np.max(np.abs(alice_marg[:, :, 0] - alice_marg[:, :, 1]))),
            float(np.max(np.abs(bob_marg[:, 0, :] - bob_marg[:, 1, :]))),
        )

    def to_json_dict(self) -> dict:
        """Serialize as ``{"table": nested array indexed [mu][nu][a][b]}``."""
        reordered = np.transpose(self.table, (2, 3, 0, 1))
        return {"table": reordered.tolist()}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Box":
        if not isinstance(obj, dict) or "table" not in obj:
            raise ValidationError('box JSON must be an object with a "table" key')
        arr = np.asarray(obj["table"], dtype=float)
        if arr.shape != (2, 2, 2, 2):
            raise ValidationError(f"box JSON table must be 2x2x2x2, got {arr.shape}")
        return cls(np.transpose(arr, (2, 3, 0, 1)))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "Box":
        return cls.from_json_dict(json.loads(Path(path).read_text()))

    def __repr__(self) -> str:
        return f"Box(chsh={chsh(self):.6g})"


@dataclass(frozen=True)
class ConditionalState:
    """Alice's steered state after Bob gets outcome ``b`` with setting ``nu``.

    ``alice_dists`` holds Alice's outcome distributions for settings A_0 and
    A_1; it is None when the steering outcome has (numerically) zero weight,
    in which case no conditional distribution exists and none is fabricated.
    """

    bob_outcome: int
    bob_setting: int
    weight: float
    alice_dists: tuple[ProbDist, ProbDist] | None

    @property
    def available(self) -> bool:
        return self.alice_dists is not None


def pr_box() -> Box:
    """The PR-box: ``p(a,b|mu,nu) = (1 + (-1)^(a+b+mu*nu)) / 4``; CHSH = 4."""
    t = np.empty((2, 2, 2, 2))
    for a in range(2):
        for b in range(2):
            for mu in range(2):
                for nu in range(2):
                    t[a, b, mu, nu] = (1.0 + (-1.0) ** (a + b + mu * nu)) / 4.0
    return Box(t)


def quantum_box(
    state: DensityMatrix,
    alice: tuple[ProjectiveMeasurement, ProjectiveMeasurement],
    bob: tuple[ProjectiveMeasurement, ProjectiveMeasurement],
) -> Box:
    """Born-rule box ``p(a,b|mu,nu) = Tr[rho (P_a x P_b)]`` from a product measurement."""
    da = alice[0].dim
    db = bob[0].dim
    if alice[1].dim != da or bob[1].dim != db:
        raise ValidationError("each party's two measurements must share a dimension")
    if da != 2 or db != 2:
        raise ValidationError("box measurements must be two-outcome (qubit bases)")
    if state.dim != da * db:
        raise ValidationError(
            f"state dimension {state.dim} does not match {da}x{db} product"
        )
    t = np.empty((2, 2, 2, 2))
    for mu in range(2):
        for nu in range(2):
            for a in range(2):
                for b in range(2):
                    proj = np.kron(alice[mu].projector(a), bob[nu].projector(b))
                    t[a, b, mu, nu] = float(np.trace(state.matrix @ proj).real)
    return Box(t)


def local_deterministic_box(a0: int, a1: int, b0: int, b1: int) -> Box:
    """Deterministic local strategy: Alice answers ``a_mu``, Bob answers ``b_nu``."""
    for bit in (a0, a1, b0, b1):
        if bit not in (0, 1):
            raise ValidationError(f"strategy bits must be 0 or 1, got {bit}")
    t = np.zeros((2, 2, 2, 2))
    answers_a = (a0, a1)
    answers_b = (b0, b1)
    for mu in range(2):
        for nu in range(2):
            t[answers_a[mu], answers_b[nu], mu, nu] = 1.0
    return Box(t)


def chsh(box: Box) -> float:
    """Signed correlator sum ``sum (-1)^(a+b+mu*nu) p(a,b|mu,nu)``."""
    signs = np.empty((2, 2, 2, 2))
    for a in range(2):
        for b in range(2):
            for mu in range(2):
                for nu in range(2):
                    signs[a, b, mu, nu] = (-1.0) ** (a + b + mu * nu)
    return float((signs * box.table).sum())


def conditional_states(box: Box, bob_setting: int) -> list[ConditionalState]:
    """Alice's steered conditional states for each of Bob's outcomes.

    The weight ``p(b|B_nu)`` is Alice-setting independent by no-signaling;
    it is computed from ``mu = 0``, which box validation makes safe.
    """
    if bob_setting not in (0, 1):
        raise ValidationError(f"bob_setting must be 0 or 1, got {bob_setting}")
    out = []
    for b in range(2):
        weight = float(box.table[:, b, 0, bob_setting].sum())
        if weight <= ZERO_WEIGHT_TOL:
            out.append(
                ConditionalState(
                    bob_outcome=b, bob_setting=bob_setting, weight=weight,
                    alice_dists=None,
                )
            )
            continue
        dists = tuple(
            ProbDist(box.table[:, b, mu, bob_setting] / weight) for mu in range(2)
        )
        out.append(
            ConditionalState(
                bob_outcome=b, bob_setting=bob_setting, weight=weight,
                alice_dists=dists,
            )
        )
    return out


def pr_balance_property(q: float) -> tuple[float, float]:
    """Uncertainty and disturbance sums over the PR-box steered states.

    Bob's outcome 0 with setting B_0 or B_1 steers Alice into one of two
    conditional states.  Both are deterministic for A_0, so their uncertainty
    sum vanishes; measuring A_0 first still shifts the A_1 statistics, and
    with ``q`` the unknown probability of outcome 0 for A_1 on the
    post-A_0-measurement state, the two disturbances are ``2(1-q)`` and
    ``2q`` — the sum is 2 regardless of ``q``.
    """
    if not 0.0 <= q <= 1.0:
        raise ValidationError(f"q must lie in [0, 1], got {q}")
    box = pr_box()
    steered = [conditional_states(box, nu)[0] for nu in (0, 1)]
    post_measurement = ProbDist([q, 1.0 - q])
    sum_uncertainty = 0.0
    sum_disturbance = 0.0
    for cond in steered:
        a0_dist, a1_dist = cond.alice_dists
        sum_uncertainty += uncertainty(a0_dist)
        sum_disturbance += l1_distance(a1_dist, post_measurement)
    return (sum_uncertainty, sum_disturbance)
