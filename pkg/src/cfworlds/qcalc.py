"""Complex linear algebra for two-qubit states and joint outcome probabilities.

The scenario is fixed at two particles, two outcomes per measurement: a state
is four complex amplitudes indexed by (left bit, right bit) in row-major
order (00, 01, 10, 11), and each measurement setting is an orthonormal basis
of the single-particle space. Outcome ``+`` is the first basis vector,
``-`` the second; the probability of a joint outcome is the squared magnitude
of the state's projection onto the tensor product of the chosen outcome
vectors.

Everything here is a pure function of immutable inputs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NormError, OrthonormalityError, ConditionImpossible

#: Tolerance for unit-norm and orthonormality checks.
NORM_TOLERANCE = 1e-9

#: Probabilities at or below this threshold count as impossible.
POSSIBILITY_EPSILON = 1e-9


class Outcome(Enum):
    """Result of a single measurement; ``+`` selects the first basis vector."""

    PLUS = "+"
    MINUS = "-"

    def __str__(self) -> str:
        return self.value


#: Canonical outcome order used everywhere output is sorted.
OUTCOME_ORDER = (Outcome.PLUS, Outcome.MINUS)


@dataclass(frozen=True, slots=True)
class StateVector:
    """Two-particle state: amplitudes (a00, a01, a10, a11), left index first."""

    amps: tuple[complex, complex, complex, complex]

    def norm_squared(self) -> float:
        return sum(abs(a) ** 2 for a in self.amps)

    def amplitude(self, left_index: int, right_index: int) -> complex:
        return self.amps[2 * left_index + right_index]

    def with_global_phase(self, phase: float) -> "StateVector":
        """Multiply every amplitude by ``exp(i * phase)``."""
        factor = cmath.exp(1j * phase)
        return StateVector(tuple(factor * a for a in self.amps))  # type: ignore[arg-type]


@dataclass(frozen=True, slots=True)
class SingleParticleBasis:
    """Orthonormal basis of the single-particle space; ``+`` is ``plus_vec``."""

    plus_vec: tuple[complex, complex]
    minus_vec: tuple[complex, complex]

    def vector(self, outcome: Outcome) -> tuple[complex, complex]:
        return self.plus_vec if outcome is Outcome.PLUS else self.minus_vec

    def swapped(self) -> "SingleParticleBasis":
        """Same basis with the outcome labels exchanged."""
        return SingleParticleBasis(self.minus_vec, self.plus_vec)


def _all_finite(values) -> bool:
    return all(math.isfinite(v.real) and math.isfinite(v.imag) for v in values)


def validate_state(state: StateVector) -> StateVector:
    """Return ``state`` unchanged if its amplitudes are finite and unit-norm.

    Raises :class:`NormError` when the squared norm differs from 1 by
    ``NORM_TOLERANCE`` or more; this is how a malformed config surfaces.
    """
    if len(state.amps) != 4:
        raise NormError(f"state requires exactly 4 amplitudes, got {len(state.amps)}")
    if not _all_finite(state.amps):
        raise NormError("state amplitudes must be finite (no NaN/Inf)")
    norm_sq = state.norm_squared()
    if abs(norm_sq - 1.0) >= NORM_TOLERANCE:
        raise NormError(f"state squared norm is {norm_sq!r}, must be 1 within {NORM_TOLERANCE}")
    return state


def validate_basis(basis: SingleParticleBasis) -> SingleParticleBasis:
    """Return ``basis`` unchanged if both vectors are unit-norm and orthogonal."""
    for name, vec in (("plus", basis.plus_vec), ("minus", basis.minus_vec)):
        if len(vec) != 2:
            raise OrthonormalityError(f"{name} vector requires exactly 2 components")
        if not _all_finite(vec):
            raise OrthonormalityError(f"{name} vector components must be finite")
        norm_sq = sum(abs(c) ** 2 for c in vec)
        if abs(norm_sq - 1.0) >= NORM_TOLERANCE:
            raise OrthonormalityError(
                f"{name} vector squared norm is {norm_sq!r}, must be 1 within {NORM_TOLERANCE}"
            )
    overlap = abs(sum(p.conjugate() * m for p, m in zip(basis.plus_vec, basis.minus_vec)))
    if overlap >= NORM_TOLERANCE:
        raise OrthonormalityError(
            f"basis vectors are not orthogonal: |<plus|minus>| = {overlap!r}"
        )
    return basis


def _clamp(p: float) -> float:
    # Roundoff may leave p marginally outside [0, 1]; never by more than ~1e-12.
    return min(1.0, max(0.0, p))


def joint_probability(
    state: StateVector,
    basis_left: SingleParticleBasis,
    basis_right: SingleParticleBasis,
    outcome_left: Outcome,
    outcome_right: Outcome,
) -> float:
    """Probability of the joint outcome under the given bases.

    Computes ``|<b_L(ol) (x) b_R(or) | state>|**2`` and clamps the result
    to [0, 1]. The four probabilities over outcome pairs sum to 1 within
    1e-9 for validated inputs.
    """
    bl = np.asarray(basis_left.vector(outcome_left), dtype=complex)
    br = np.asarray(basis_right.vector(outcome_right), dtype=complex)
    amps = np.asarray(state.amps, dtype=complex)
    amplitude = np.vdot(np.kron(bl, br), amps)
    return _clamp(abs(amplitude) ** 2)


@dataclass(frozen=True, slots=True)
class OutcomeAssignment:
    """Partial assignment of outcomes to the two particles; ``None`` means free."""

    left: Outcome | None = None
    right: Outcome | None = None

    def matches(self, outcome_left: Outcome, outcome_right: Outcome) -> bool:
        return (self.left is None or self.left is outcome_left) and (
            self.right is None or self.right is outcome_right
        )


def _assignment_probability(
    state: StateVector,
    basis_left: SingleParticleBasis,
    basis_right: SingleParticleBasis,
    assignment: OutcomeAssignment,
    also: OutcomeAssignment | None = None,
) -> float:
    total = 0.0
    for ol in OUTCOME_ORDER:
        for orr in OUTCOME_ORDER:
            if assignment.matches(ol, orr) and (also is None or also.matches(ol, orr)):
                total += joint_probability(state, basis_left, basis_right, ol, orr)
    return total


def conditional_probability(
    state: StateVector,
    basis_left: SingleParticleBasis,
    basis_right: SingleParticleBasis,
    given: OutcomeAssignment,
    target: OutcomeAssignment,
    epsilon: float = POSSIBILITY_EPSILON,
) -> float:
    """P(target | given) for one fixed pair of measurement settings.

    Raises :class:`ConditionImpossible` when P(given) is at or below
    ``epsilon``: conditioning on an impossible event is undefined.
    """
    p_given = _assignment_probability(state, basis_left, basis_right, given)
    if p_given <= epsilon:
        raise ConditionImpossible(
            f"conditioning event has probability {p_given!r} <= epsilon {epsilon!r}"
        )
    p_both = _assignment_probability(state, basis_left, basis_right, given, also=target)
    return _clamp(p_both / p_given)
