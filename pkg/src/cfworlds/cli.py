"""Command-line front end.

All computation happens in-process through the core modules; the CLI only
parses arguments, formats output, and maps errors to exit codes:

* 0: evaluation completed (regardless of verdict)
* 1: verdict was false and ``--fail-on-false`` was given
* 2: usage or parse error (bad flags, bad statement, bad config syntax)
* 3: validation error (config parsed but is semantically invalid)
* 4: ``paper`` on the built-in reference produced a deviating table

Verdicts and reports go to stdout, diagnostics to stderr. Identical
invocations produce byte-identical stdout.
"""

from __future__ import annotations

import json
import sys

import click

from .dsl import parse_experiment, parse_statement, print_statement
from .errors import MalformedStatement, ParseError, ValidationError
from .logic import (
    REFERENCE_VERDICTS,
    Counterexample,
    Verdict,
    canonical_statements,
    evaluate,
    explain,
    format_probability,
)
from .spacetime import RegionKind, classify, in_region
from .worlds import (
    WING_ORDER,
    Experiment,
    Outcome,
    Wing,
    World,
    WorldFilter,
    build_reference_hardy_experiment,
    enumerate_possible_worlds,
    verify_hardy_conditions,
)

EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_DEVIATION = 4


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_experiment(path: str) -> Experiment:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_USAGE)
    try:
        return parse_experiment(text)
    except ParseError as exc:
        _fail(f"{path}:{exc}", EXIT_USAGE)
    except ValidationError as exc:
        _fail(f"{path}: {exc}", EXIT_VALIDATION)
    raise AssertionError("unreachable")


def _world_json(world: World) -> dict:
    return {
        "settings": {w.value: world.setting[w] for w in WING_ORDER},
        "outcomes": {w.value: world.outcome[w].value for w in WING_ORDER},
        "probability": world.probability,
    }


def _counterexample_json(ce: Counterexample) -> dict:
    return {
        "actual": _world_json(ce.actual),
        "hypothetical": _world_json(ce.hypothetical),
        "probability": ce.hypothetical.probability,
    }


def _verdict_json(statement_text: str, verdict: Verdict) -> dict:
    return {
        "statement": statement_text,
        "value": verdict.value,
        "vacuous": verdict.vacuous,
        "counterexamples": [_counterexample_json(ce) for ce in verdict.counterexamples],
    }


def _emit_json(obj: dict) -> None:
    click.echo(json.dumps(obj, indent=2))


@click.group()
@click.version_option()
def main() -> None:
    """Evaluate counterfactual statements over two-qubit measurement worlds."""


@main.command()
@click.argument("exp_path")
@click.argument("statement_text", required=False)
@click.option("--canonical", "canonical_name", metavar="NAME", help="Use a built-in statement (SF_L2, SB_L2, SF_L1, SB_L1).")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable object.")
@click.option("--fail-on-false", is_flag=True, help="Exit 1 when the verdict is FALSE.")
def check(exp_path: str, statement_text: str | None, canonical_name: str | None, as_json: bool, fail_on_false: bool) -> None:
    """Evaluate one statement against an experiment config.

    STATEMENT_TEXT is statement surface syntax, or '-' to read it from stdin;
    alternatively pick a built-in with --canonical.
    """
    if (statement_text is None) == (canonical_name is None):
        raise click.UsageError("provide exactly one of STATEMENT_TEXT or --canonical NAME")
    exp = _load_experiment(exp_path)
    if canonical_name is not None:
        statements = canonical_statements()
        if canonical_name not in statements:
            raise click.UsageError(
                f"unknown canonical statement {canonical_name!r}; choose from {', '.join(statements)}"
            )
        stmt = statements[canonical_name]
    else:
        text = sys.stdin.read() if statement_text == "-" else statement_text
        try:
            stmt = parse_statement(text)
        except ParseError as exc:
            _fail(f"statement: {exc}", EXIT_USAGE)
    try:
        verdict = evaluate(stmt, exp)
    except MalformedStatement as exc:
        _fail(f"statement: {exc}", EXIT_USAGE)
    printed = print_statement(stmt)
    if as_json:
        _emit_json(_verdict_json(printed, verdict))
    else:
        click.echo(f"statement: {printed}")
        click.echo(f"verdict: {'TRUE' if verdict.value else 'FALSE'}")
        click.echo(f"vacuous: {'true' if verdict.vacuous else 'false'}")
        click.echo(explain(verdict))
    if fail_on_false and not verdict.value:
        sys.exit(EXIT_FALSE)


@main.command()
@click.argument("exp_path", required=False)
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable table.")
def paper(exp_path: str | None, as_json: bool) -> None:
    """Evaluate the four built-in statements and print the verdict table.

    Without EXP_PATH the compiled-in reference experiment is used; if its
    table deviates from the expected reference verdicts, exit status is 4.
    """
    builtin = exp_path is None
    exp = build_reference_hardy_experiment() if builtin else _load_experiment(exp_path)
    rows = []
    for name, stmt in canonical_statements().items():
        verdict = evaluate(stmt, exp)
        rows.append((name, verdict))
    matches = all(verdict.value == REFERENCE_VERDICTS[name] for name, verdict in rows)
    if as_json:
        _emit_json(
            {
                "rows": [
                    {"name": name, "value": v.value, "vacuous": v.vacuous} for name, v in rows
                ],
                "builtin_reference": builtin,
                "matches_reference_table": matches,
            }
        )
    else:
        for name, verdict in rows:
            click.echo(f"{name} = {'TRUE' if verdict.value else 'FALSE'}")
    if builtin and not matches:
        click.echo("error: built-in reference deviates from the expected table", err=True)
        sys.exit(EXIT_DEVIATION)


def _parse_settings_filter(text: str) -> dict[Wing, str]:
    settings: dict[Wing, str] = {}
    for part in text.split(","):
        label = part.strip()
        if label not in ("L1", "L2", "R1", "R2"):
            raise click.UsageError(f"unknown setting label {label!r} in --settings")
        wing = Wing.LEFT if label.startswith("L") else Wing.RIGHT
        if wing in settings:
            raise click.UsageError(f"two settings given for wing {wing.value} in --settings")
        settings[wing] = label
    return settings


def _parse_outcomes_filter(text: str) -> dict[Wing, Outcome]:
    outcomes: dict[Wing, Outcome] = {}
    for part in text.split(","):
        item = part.strip()
        if len(item) != 3 or item[0] not in "LR" or item[1] != "=" or item[2] not in "+-":
            raise click.UsageError(f"bad outcome filter {item!r}; use L=+ or R=-")
        wing = Wing.LEFT if item[0] == "L" else Wing.RIGHT
        if wing in outcomes:
            raise click.UsageError(f"two outcomes given for wing {wing.value} in --outcomes")
        outcomes[wing] = Outcome(item[2])
    return outcomes


@main.command()
@click.argument("exp_path")
@click.option("--settings", "settings_text", metavar="LABELS", help="Keep worlds with these settings, e.g. L2,R2.")
@click.option("--outcomes", "outcomes_text", metavar="OUTCOMES", help="Keep worlds with these outcomes, e.g. L=+,R=-.")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable list.")
def worlds(exp_path: str, settings_text: str | None, outcomes_text: str | None, as_json: bool) -> None:
    """List the possible worlds of an experiment with their probabilities."""
    exp = _load_experiment(exp_path)
    filter_ = WorldFilter(
        setting=_parse_settings_filter(settings_text) if settings_text else {},
        outcome=_parse_outcomes_filter(outcomes_text) if outcomes_text else {},
    )
    found = enumerate_possible_worlds(exp, filter_)
    if as_json:
        _emit_json({"worlds": [_world_json(w) for w in found]})
    else:
        for world in found:
            click.echo(f"{world.describe()}  p={format_probability(world.probability)}")


@main.command()
@click.argument("exp_path")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable report.")
def verify(exp_path: str, as_json: bool) -> None:
    """Check the six zero/nonzero probability conditions of an experiment.

    Failures are reported, not raised; the exit status stays 0.
    """
    exp = _load_experiment(exp_path)
    report = verify_hardy_conditions(exp)
    if as_json:
        _emit_json(
            {
                "epsilon": report.epsilon,
                "all_passed": report.all_passed,
                "checks": [
                    {
                        "name": c.name,
                        "probability": c.probability,
                        "requirement": c.requirement(),
                        "passed": c.passed,
                    }
                    for c in report.conditions
                ],
            }
        )
        return
    for c in report.conditions:
        status = "PASS" if c.passed else "FAIL"
        click.echo(
            f"[{status}] {c.name} = {format_probability(c.probability)}  "
            f"(require {c.requirement()}, epsilon={format_probability(report.epsilon)})"
        )
    passed = sum(1 for c in report.conditions if c.passed)
    click.echo(f"{passed}/{len(report.conditions)} conditions hold")


@main.command()
@click.argument("exp_path")
@click.option("--json", "as_json", is_flag=True, help="Emit a machine-readable table.")
def causal(exp_path: str, as_json: bool) -> None:
    """Classify each wing event against the other and report F/B membership."""
    exp = _load_experiment(exp_path)
    pairs = []
    for apex_wing in WING_ORDER:
        apex = exp.events[apex_wing]
        for wing in WING_ORDER:
            if wing is apex_wing:
                continue
            event = exp.events[wing]
            pairs.append(
                {
                    "event": event.label,
                    "apex": apex.label,
                    "relation": classify(event, apex).value,
                    "in_F": in_region(event, apex, RegionKind.F, exp.include_null_boundary),
                    "in_B": in_region(event, apex, RegionKind.B, exp.include_null_boundary),
                }
            )
    if as_json:
        _emit_json({"pairs": pairs})
        return
    for p in pairs:
        in_f = "yes" if p["in_F"] else "no"
        in_b = "yes" if p["in_B"] else "no"
        click.echo(
            f"{p['event']} relative to {p['apex']}: {p['relation']}; "
            f"in F({p['apex']}): {in_f}; in B({p['apex']}): {in_b}"
        )


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int) -> None:
    """Run the HTTP service wrapping the same evaluation core."""
    import uvicorn

    from .api import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
