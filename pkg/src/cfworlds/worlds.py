"""Experiment model, exhaustive world enumeration, and region agreement.

An experiment fixes a two-particle state, two measurement settings per wing
(Left: L1/L2, Right: R1/R2), one spacetime event per wing, and a possibility
threshold epsilon. A *world* is one complete joint assignment: a setting and
an outcome for each wing, weighted by its joint outcome probability. A world
is *possible* when that probability exceeds epsilon. The whole space is
2 x 2 x 2 x 2 = 16 candidate worlds, so everything is enumerated exhaustively.

Two worlds *agree* on a region around an apex wing when every wing whose
event falls inside the region has the same setting and the same outcome in
both worlds. The apex wing itself is never constrained by agreement; the
counterfactual switch governs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import ValidationError
from .qcalc import (
    OUTCOME_ORDER,
    Outcome,
    SingleParticleBasis,
    StateVector,
    joint_probability,
    validate_basis,
    validate_state,
)
from .spacetime import (
    INCLUDE_NULL_BOUNDARY_DEFAULT,
    Event,
    RegionKind,
    classify,
    CausalRelation,
    in_region,
)

#: Upper bound (exclusive) for the possibility threshold.
EPSILON_MAX = 1e-3


class Wing(Enum):
    """One of the two measurement sites."""

    LEFT = "L"
    RIGHT = "R"

    def __str__(self) -> str:
        return self.value


WING_ORDER = (Wing.LEFT, Wing.RIGHT)

#: The fixed setting-label universe; the wing is the label's first letter.
SETTING_LABELS = ("L1", "L2", "R1", "R2")


def wing_of_label(label: str) -> Wing:
    """Wing a setting label belongs to, by its first letter."""
    if label.startswith("L"):
        return Wing.LEFT
    if label.startswith("R"):
        return Wing.RIGHT
    raise ValidationError(f"setting label {label!r} does not start with L or R")


@dataclass(frozen=True, slots=True)
class Setting:
    """A measurement choice: its label, wing, and single-particle basis."""

    label: str
    wing: Wing
    basis: SingleParticleBasis


@dataclass(frozen=True, slots=True)
class Experiment:
    """Immutable experiment description; validate with :func:`validate_experiment`."""

    state: StateVector
    settings: Mapping[str, Setting]
    events: Mapping[Wing, Event]
    epsilon: float = 1e-9
    fix_unswitched_settings: bool = True
    include_null_boundary: bool = INCLUDE_NULL_BOUNDARY_DEFAULT

    def setting_labels(self, wing: Wing) -> tuple[str, ...]:
        """Labels available on a wing, in sorted order."""
        return tuple(sorted(s.label for s in self.settings.values() if s.wing is wing))

    def basis_for(self, label: str) -> SingleParticleBasis:
        return self.settings[label].basis


def validate_experiment(exp: Experiment) -> Experiment:
    """Check structural and numeric invariants; returns ``exp`` unchanged."""
    validate_state(exp.state)
    for label, setting in exp.settings.items():
        if label not in SETTING_LABELS:
            raise ValidationError(f"unknown setting label {label!r}; expected one of {SETTING_LABELS}")
        if label != setting.label:
            raise ValidationError(f"settings map key {label!r} does not match label {setting.label!r}")
        if wing_of_label(label) is not setting.wing:
            raise ValidationError(f"setting {label!r} assigned to wing {setting.wing.value!r}")
        try:
            validate_basis(setting.basis)
        except ValidationError as exc:
            raise ValidationError(f"setting {label}: {exc}") from exc
    for wing in WING_ORDER:
        count = len(exp.setting_labels(wing))
        if count != 2:
            wing_name = "Left" if wing is Wing.LEFT else "Right"
            raise ValidationError(f"wing {wing_name} requires exactly 2 settings, got {count}")
    for wing in WING_ORDER:
        if wing not in exp.events:
            raise ValidationError(f"missing event for wing {wing.value}")
    labels = [e.label for e in exp.events.values()]
    if len(set(labels)) != len(labels):
        raise ValidationError(f"event labels must be unique, got {labels}")
    if not (0.0 < exp.epsilon < EPSILON_MAX) or not math.isfinite(exp.epsilon):
        raise ValidationError(f"epsilon must lie in (0, {EPSILON_MAX}), got {exp.epsilon!r}")
    return exp


@dataclass(frozen=True)
class World:
    """One joint assignment of a setting and an outcome per wing."""

    setting: Mapping[Wing, str]
    outcome: Mapping[Wing, Outcome]
    probability: float

    def is_possible(self, epsilon: float) -> bool:
        return self.probability > epsilon

    def sort_key(self) -> tuple:
        return (
            self.setting[Wing.LEFT],
            self.setting[Wing.RIGHT],
            OUTCOME_ORDER.index(self.outcome[Wing.LEFT]),
            OUTCOME_ORDER.index(self.outcome[Wing.RIGHT]),
        )

    def describe(self) -> str:
        """Compact rendering, e.g. ``L2=+ R1=-``."""
        return " ".join(
            f"{self.setting[w]}={self.outcome[w].value}" for w in WING_ORDER
        )


@dataclass(frozen=True)
class WorldFilter:
    """Partial constraints on a world; empty mappings match everything."""

    setting: Mapping[Wing, str] = field(default_factory=dict)
    outcome: Mapping[Wing, Outcome] = field(default_factory=dict)

    def matches(self, world: World) -> bool:
        return all(world.setting[w] == label for w, label in self.setting.items()) and all(
            world.outcome[w] is out for w, out in self.outcome.items()
        )


def enumerate_candidate_worlds(exp: Experiment) -> list[World]:
    """All 16 candidate worlds with probabilities, in canonical order.

    Canonical order is lexicographic by (left setting, right setting,
    left outcome, right outcome) with ``+`` before ``-``.
    """
    worlds = []
    for left_label in exp.setting_labels(Wing.LEFT):
        for right_label in exp.setting_labels(Wing.RIGHT):
            bl = exp.basis_for(left_label)
            br = exp.basis_for(right_label)
            for ol in OUTCOME_ORDER:
                for orr in OUTCOME_ORDER:
                    p = joint_probability(exp.state, bl, br, ol, orr)
                    worlds.append(
                        World(
                            setting={Wing.LEFT: left_label, Wing.RIGHT: right_label},
                            outcome={Wing.LEFT: ol, Wing.RIGHT: orr},
                            probability=p,
                        )
                    )
    return worlds


def enumerate_possible_worlds(exp: Experiment, filter: WorldFilter | None = None) -> list[World]:
    """Candidate worlds with probability above epsilon, optionally filtered."""
    worlds = [w for w in enumerate_candidate_worlds(exp) if w.is_possible(exp.epsilon)]
    if filter is not None:
        worlds = [w for w in worlds if filter.matches(w)]
    return worlds


def agrees_on(w1: World, w2: World, apex_wing: Wing, kind: RegionKind, exp: Experiment) -> bool:
    """Whether two worlds agree on the region ``kind`` around the apex wing.

    Agreement is equality of setting and outcome on every wing whose event
    lies in the region; the apex wing's event is coincident with itself and
    therefore never constrained.
    """
    apex_event = exp.events[apex_wing]
    for wing in WING_ORDER:
        if wing is apex_wing:
            continue
        if in_region(exp.events[wing], apex_event, kind, exp.include_null_boundary):
            if w1.setting[wing] != w2.setting[wing] or w1.outcome[wing] is not w2.outcome[wing]:
                return False
    return True


# --- reference configuration -------------------------------------------------

_INV_SQRT3 = 1.0 / math.sqrt(3.0)
_INV_SQRT2 = math.sqrt(0.5)  # correctly-rounded 1/sqrt(2); 1/math.sqrt(2) is 1 ulp low

#: Diagonal basis: + is (|0> - |1>)/sqrt(2), - is (|0> + |1>)/sqrt(2).
_DIAGONAL_BASIS = SingleParticleBasis(
    plus_vec=(complex(_INV_SQRT2), complex(-_INV_SQRT2)),
    minus_vec=(complex(_INV_SQRT2), complex(_INV_SQRT2)),
)


def build_reference_hardy_experiment() -> Experiment:
    """The shipped entangled reference configuration.

    State (1/sqrt(3))(|00> + |01> + |10>); L2 measures the computational
    basis with + on |0>, R2 the computational basis with + on |1>, and both
    L1 and R1 measure the diagonal basis with + on (|0> - |1>)/sqrt(2).
    Events sit at equal time, spacelike-separated: Left (0, -1), Right (0, 1).

    The configuration is validated against the six zero/nonzero probability
    conditions in :func:`verify_hardy_conditions` rather than asserted to be
    the unique state with those properties.
    """
    state = StateVector((complex(_INV_SQRT3), complex(_INV_SQRT3), complex(_INV_SQRT3), 0j))
    settings = {
        "L1": Setting("L1", Wing.LEFT, _DIAGONAL_BASIS),
        "L2": Setting(
            "L2",
            Wing.LEFT,
            SingleParticleBasis(plus_vec=(1 + 0j, 0j), minus_vec=(0j, 1 + 0j)),
        ),
        "R1": Setting("R1", Wing.RIGHT, _DIAGONAL_BASIS),
        "R2": Setting(
            "R2",
            Wing.RIGHT,
            SingleParticleBasis(plus_vec=(0j, 1 + 0j), minus_vec=(1 + 0j, 0j)),
        ),
    }
    events = {
        Wing.LEFT: Event("L", 0.0, -1.0),
        Wing.RIGHT: Event("R", 0.0, 1.0),
    }
    return validate_experiment(
        Experiment(
            state=state,
            settings=settings,
            events=events,
            epsilon=1e-9,
            fix_unswitched_settings=True,
        )
    )


@dataclass(frozen=True, slots=True)
class HardyCondition:
    """One zero/nonzero probability requirement with its computed value."""

    name: str
    probability: float
    require_zero: bool  # True: p <= epsilon required; False: p > epsilon
    passed: bool

    def requirement(self) -> str:
        return "<= epsilon" if self.require_zero else "> epsilon"


@dataclass(frozen=True, slots=True)
class HardyReport:
    """Outcome of the six-condition check; failures are reported, not raised."""

    conditions: tuple[HardyCondition, ...]
    epsilon: float

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.conditions)


#: (name, left setting, left outcome, right setting, right outcome, require_zero)
_HARDY_CHECKS = (
    ("P(L2=-, R2=+)", "L2", Outcome.MINUS, "R2", Outcome.PLUS, True),
    ("P(L2=+, R1=+)", "L2", Outcome.PLUS, "R1", Outcome.PLUS, True),
    ("P(L2=+, R2=+)", "L2", Outcome.PLUS, "R2", Outcome.PLUS, False),
    ("P(L2=-, R1=+)", "L2", Outcome.MINUS, "R1", Outcome.PLUS, False),
    ("P(L1=-, R2=+)", "L1", Outcome.MINUS, "R2", Outcome.PLUS, False),
    ("P(L1=-, R1=+)", "L1", Outcome.MINUS, "R1", Outcome.PLUS, False),
)


def verify_hardy_conditions(exp: Experiment) -> HardyReport:
    """Check the six probability conditions the reference argument relies on.

    Two joint outcomes must be impossible (probability at most epsilon) and
    four must be genuinely possible (probability above epsilon). Each check
    is reported pass/fail together with the computed probability.
    """
    conditions = []
    for name, ls, lo, rs, ro, require_zero in _HARDY_CHECKS:
        p = joint_probability(exp.state, exp.basis_for(ls), exp.basis_for(rs), lo, ro)
        passed = (p <= exp.epsilon) if require_zero else (p > exp.epsilon)
        conditions.append(HardyCondition(name, p, require_zero, passed))
    return HardyReport(tuple(conditions), exp.epsilon)


def reference_events_spacelike(exp: Experiment) -> bool:
    """True when the two wing events are spacelike-separated."""
    left = exp.events[Wing.LEFT]
    right = exp.events[Wing.RIGHT]
    return classify(left, right) is CausalRelation.SPACELIKE
