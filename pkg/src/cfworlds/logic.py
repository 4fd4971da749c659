"""Statement AST and evaluation semantics for region-parameterized counterfactuals.

A statement is a boolean formula over two kinds of atoms plus one modal node:

* ``SettingAtom("L2")`` is true at a world when the Left wing measured L2.
* ``OutcomeAtom("R1", MINUS)`` is true at a world when the Right wing's
  result is ``-``. The setting label fixes the wing (and the printed surface
  form) but asserts nothing about which setting was chosen there.
* ``Counterfactual(given, switch, region, consequent)`` at an actual world w:
  if w satisfies ``given``, then every possible world that (a) measures the
  switch setting on the switch wing, (b) agrees with w on every wing whose
  event lies in the agreement region around the switch wing, and (c) keeps
  unswitched wings' settings equal to w's when the experiment fixes them,
  must satisfy ``consequent``. If w does not satisfy ``given`` the node is
  true at w.

A statement as a whole is true when it holds at every quantum-possible
actual world. Falsity is always witnessed: each violating (actual,
hypothetical) pair is collected, with hypothetical = actual for purely
classical violations. Implication is material; counterfactuals cannot nest.

A verdict is *vacuous* when the statement is true but no possible actual
world ever satisfied its antecedents (the left side of each implication on
the path to a consequent, and each counterfactual's ``given``); this flags
configurations where the statement was never actually exercised.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MalformedStatement
from .qcalc import Outcome
from .spacetime import RegionKind, in_region
from .worlds import (
    SETTING_LABELS,
    WING_ORDER,
    Experiment,
    Wing,
    World,
    agrees_on,
    enumerate_possible_worlds,
    wing_of_label,
)

#: Verdicts the four built-in statements take on the reference experiment.
REFERENCE_VERDICTS = {"SF_L2": True, "SB_L2": False, "SF_L1": False, "SB_L1": False}


class Statement:
    """Base class for AST nodes; nodes are immutable and compare structurally."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class SettingAtom(Statement):
    """True at a world when the label's wing chose this setting."""

    label: str

    @property
    def wing(self) -> Wing:
        return wing_of_label(self.label)


@dataclass(frozen=True, slots=True)
class OutcomeAtom(Statement):
    """True at a world when the label's wing produced this outcome.

    The label contributes only its wing (and the surface form); the atom does
    not assert that this setting was the one measured.
    """

    label: str
    outcome: Outcome

    @property
    def wing(self) -> Wing:
        return wing_of_label(self.label)


@dataclass(frozen=True, slots=True)
class Not(Statement):
    operand: Statement


@dataclass(frozen=True, slots=True)
class And(Statement):
    left: Statement
    right: Statement


@dataclass(frozen=True, slots=True)
class Or(Statement):
    left: Statement
    right: Statement


@dataclass(frozen=True, slots=True)
class Implies(Statement):
    """Material implication."""

    antecedent: Statement
    consequent: Statement


@dataclass(frozen=True, slots=True)
class Counterfactual(Statement):
    """Universally quantified switch of one wing's setting under agreement."""

    given: Statement
    switch_label: str
    region: RegionKind
    consequent: Statement

    @property
    def switch_wing(self) -> Wing:
        return wing_of_label(self.switch_label)


def validate_statement(stmt: Statement, exp: Experiment | None = None) -> None:
    """Reject nested counterfactuals and unknown setting labels."""

    def check_label(label: str) -> None:
        if label not in SETTING_LABELS:
            raise MalformedStatement(f"unknown setting label {label!r}")
        if exp is not None and label not in exp.settings:
            raise MalformedStatement(f"setting label {label!r} not defined by the experiment")

    def walk(node: Statement, inside_counterfactual: bool) -> None:
        match node:
            case SettingAtom(label=label):
                check_label(label)
            case OutcomeAtom(label=label):
                check_label(label)
            case Not(operand=s):
                walk(s, inside_counterfactual)
            case And(left=a, right=b) | Or(left=a, right=b):
                walk(a, inside_counterfactual)
                walk(b, inside_counterfactual)
            case Implies(antecedent=a, consequent=b):
                walk(a, inside_counterfactual)
                walk(b, inside_counterfactual)
            case Counterfactual(given=g, switch_label=label, consequent=c):
                if inside_counterfactual:
                    raise MalformedStatement("counterfactuals cannot nest")
                check_label(label)
                walk(g, True)
                walk(c, True)
            case _:
                raise MalformedStatement(f"unknown statement node {node!r}")

    walk(stmt, False)


@dataclass(frozen=True)
class Counterexample:
    """A violating world pair; ``hypothetical is actual`` for classical violations."""

    actual: World
    hypothetical: World
    region: RegionKind | None = None
    switch_label: str | None = None
    locked_wings: tuple[Wing, ...] = ()
    settings_fixed: bool = False

    @property
    def classical(self) -> bool:
        return self.region is None


@dataclass(frozen=True)
class Verdict:
    """Evaluation result: truth value, witnesses, vacuity, and domain size."""

    value: bool
    counterexamples: tuple[Counterexample, ...]
    vacuous: bool
    worlds_checked: int


def constrained_wings(exp: Experiment, switch_label: str, kind: RegionKind) -> tuple[Wing, ...]:
    """Wings whose events fall in the agreement region around the switch wing."""
    switch_wing = wing_of_label(switch_label)
    apex_event = exp.events[switch_wing]
    return tuple(
        wing
        for wing in WING_ORDER
        if wing is not switch_wing
        and in_region(exp.events[wing], apex_event, kind, exp.include_null_boundary)
    )


def hypothetical_worlds(
    exp: Experiment,
    possible_worlds: list[World],
    actual: World,
    switch_label: str,
    region: RegionKind,
) -> list[World]:
    """The quantifier domain of a counterfactual at one actual world."""
    switch_wing = wing_of_label(switch_label)
    domain = []
    for candidate in possible_worlds:
        if candidate.setting[switch_wing] != switch_label:
            continue
        if not agrees_on(actual, candidate, switch_wing, region, exp):
            continue
        if exp.fix_unswitched_settings and any(
            candidate.setting[wing] != actual.setting[wing]
            for wing in WING_ORDER
            if wing is not switch_wing
        ):
            continue
        domain.append(candidate)
    return domain


@dataclass
class _EvalState:
    exp: Experiment
    possible_worlds: list[World]
    violations: list[Counterexample] = field(default_factory=list)


def _truth(stmt: Statement, world: World, state: _EvalState, collect: bool) -> bool:
    # No short-circuiting: every subformula evaluates, so witness collection
    # is exhaustive and independent of operand order.
    match stmt:
        case SettingAtom(label=label):
            return world.setting[wing_of_label(label)] == label
        case OutcomeAtom(label=label, outcome=outcome):
            return world.outcome[wing_of_label(label)] is outcome
        case Not(operand=s):
            return not _truth(s, world, state, collect)
        case And(left=a, right=b):
            left = _truth(a, world, state, collect)
            right = _truth(b, world, state, collect)
            return left and right
        case Or(left=a, right=b):
            left = _truth(a, world, state, collect)
            right = _truth(b, world, state, collect)
            return left or right
        case Implies(antecedent=a, consequent=c):
            holds = _truth(a, world, state, collect)
            conclusion = _truth(c, world, state, collect)
            return (not holds) or conclusion
        case Counterfactual(given=g, switch_label=label, region=region, consequent=c):
            if not _truth(g, world, state, collect=False):
                return True
            locked = constrained_wings(state.exp, label, region)
            ok = True
            for hyp in hypothetical_worlds(
                state.exp, state.possible_worlds, world, label, region
            ):
                if not _truth(c, hyp, state, collect=False):
                    ok = False
                    if collect:
                        state.violations.append(
                            Counterexample(
                                actual=world,
                                hypothetical=hyp,
                                region=region,
                                switch_label=label,
                                locked_wings=locked,
                                settings_fixed=state.exp.fix_unswitched_settings,
                            )
                        )
            return ok
    raise MalformedStatement(f"unknown statement node {stmt!r}")


def _activated(stmt: Statement, world: World, state: _EvalState) -> bool:
    """Whether this world satisfies every antecedent guarding a consequent."""
    match stmt:
        case SettingAtom() | OutcomeAtom():
            return True
        case Not(operand=s):
            return _activated(s, world, state)
        case And(left=a, right=b) | Or(left=a, right=b):
            return _activated(a, world, state) or _activated(b, world, state)
        case Implies(antecedent=a, consequent=c):
            return _truth(a, world, state, collect=False) and _activated(c, world, state)
        case Counterfactual(given=g):
            return _truth(g, world, state, collect=False)
    raise MalformedStatement(f"unknown statement node {stmt!r}")


def evaluate(stmt: Statement, exp: Experiment) -> Verdict:
    """Evaluate a statement against every possible actual world of ``exp``.

    The statement is true iff it holds at every world with probability above
    the experiment's epsilon. Counterexamples are reported in the canonical
    world order: for each failing actual world, every consequent-violating
    hypothetical pair found there, or the world paired with itself when the
    failure is classical.
    """
    validate_statement(stmt, exp)
    possible = enumerate_possible_worlds(exp)
    state = _EvalState(exp=exp, possible_worlds=possible)
    counterexamples: list[Counterexample] = []
    any_activated = False
    for world in possible:
        state.violations = []
        holds = _truth(stmt, world, state, collect=True)
        if not any_activated and _activated(stmt, world, state):
            any_activated = True
        if not holds:
            if state.violations:
                counterexamples.extend(state.violations)
            else:
                counterexamples.append(Counterexample(actual=world, hypothetical=world))
    value = not counterexamples
    return Verdict(
        value=value,
        counterexamples=tuple(counterexamples),
        vacuous=value and not any_activated,
        worlds_checked=len(possible),
    )


def canonical_statements() -> dict[str, Statement]:
    """The four built-in statements, keyed SF_L2, SB_L2, SF_L1, SB_L1.

    Each reads: if the given Left setting is measured, then counterfactually
    (under agreement region F or B) had the Right wing measured R1 instead of
    R2 with result +, the R1 result would have been -.
    """

    def build(left_label: str, region: RegionKind) -> Statement:
        return Implies(
            SettingAtom(left_label),
            Counterfactual(
                given=And(SettingAtom("R2"), OutcomeAtom("R2", Outcome.PLUS)),
                switch_label="R1",
                region=region,
                consequent=OutcomeAtom("R1", Outcome.MINUS),
            ),
        )

    return {
        "SF_L2": build("L2", RegionKind.F),
        "SB_L2": build("L2", RegionKind.B),
        "SF_L1": build("L1", RegionKind.F),
        "SB_L1": build("L1", RegionKind.B),
    }


def format_probability(p: float) -> str:
    """Six significant digits; exact zeros print as ``0``."""
    return "0" if p == 0.0 else f"{p:.6g}"


def explain(verdict: Verdict) -> str:
    """Deterministic trace: world pairs, probabilities, constraints in force."""
    if verdict.vacuous:
        return "TRUE (vacuously: no possible actual world satisfies the antecedent)"
    if verdict.value:
        return f"TRUE ({verdict.worlds_checked} actual worlds checked)"
    n = len(verdict.counterexamples)
    lines = [f"FALSE ({n} counterexample{'s' if n != 1 else ''})"]
    for i, ce in enumerate(verdict.counterexamples, start=1):
        if ce.classical:
            lines.append(
                f"  [{i}] world {ce.actual.describe()}  "
                f"(p={format_probability(ce.actual.probability)}) fails the statement directly"
            )
            continue
        locked = ", ".join(w.value for w in ce.locked_wings) if ce.locked_wings else "none"
        fixed = "held fixed" if ce.settings_fixed else "free"
        assert ce.region is not None and ce.switch_label is not None
        lines.append(
            f"  [{i}] actual       {ce.actual.describe()}  "
            f"(p={format_probability(ce.actual.probability)})"
        )
        lines.append(
            f"      constraint   region {ce.region.value} around wing "
            f"{wing_of_label(ce.switch_label).value}; switch to {ce.switch_label}; "
            f"agreement locks wings: {locked}; unswitched settings {fixed}"
        )
        lines.append(
            f"      hypothetical {ce.hypothetical.describe()}  "
            f"(p={format_probability(ce.hypothetical.probability)})"
        )
    return "\n".join(lines)
