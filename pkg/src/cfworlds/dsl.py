"""Surface syntax: the statement language and the experiment config format.

Statement grammar (whitespace insignificant, ``=>`` right-associative,
precedence ``!`` > ``&`` > ``|`` > ``=>``)::

    stmt    := implies
    implies := or ( "=>" implies )?
    or      := and ( "|" and )*
    and     := unary ( "&" unary )*
    unary   := "!" unary | primary
    primary := atom | cf | "(" stmt ")"
    atom    := SETTING | SETTING "=" ("+"|"-")
    cf      := "cf" "[" ("F"|"B") "]" "(" stmt ";" SWITCH ";" stmt ")"
    SWITCH  := ("L"|"R") ":" SETTING

SETTING is one of L1, L2, R1, R2. A bare setting label asserts that the
setting was chosen; ``R1=-`` asserts only the Right outcome and says nothing
about the choice. Counterfactuals cannot appear inside a counterfactual.

The experiment config is line-oriented UTF-8 with ``#`` comments. Complex
numbers are written ``(re, im)``; the wing of a setting is the first letter
of its label; outcome ``+`` is always the first (``plus``) basis vector::

    state = (re, im) (re, im) (re, im) (re, im)
    setting L1 : plus = (re, im) (re, im) ; minus = (re, im) (re, im)
    event L = (t, x)
    epsilon = 1e-9
    fix_unswitched_settings = true
    include_null_boundary = true      # optional, defaults to true

Syntax problems raise :class:`ParseError` with a source span; semantic
problems (norms, orthonormality, duplicates, missing parts) raise
:class:`ValidationError`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib.resources import files

from .errors import ParseError, SourceSpan, ValidationError
from .logic import (
    And,
    Counterfactual,
    Implies,
    Not,
    Or,
    OutcomeAtom,
    SettingAtom,
    Statement,
)
from .qcalc import Outcome, SingleParticleBasis, StateVector  # noqa: F401 (Outcome used in filters)
from .spacetime import Event, RegionKind
from .worlds import (
    SETTING_LABELS,
    Experiment,
    Setting,
    Wing,
    build_reference_hardy_experiment,
    validate_experiment,
    wing_of_label,
)

# --- statement tokenizer ------------------------------------------------------

_PUNCT = {
    "!": "BANG",
    "&": "AMP",
    "|": "PIPE",
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ";": "SEMI",
    ":": "COLON",
    "+": "PLUS",
    "-": "MINUS",
}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        span_start = (line, col, i)

        def span(length: int) -> SourceSpan:
            return SourceSpan(span_start[0], span_start[1], span_start[2], span_start[2] + length)

        if ch == "=" and i + 1 < n and text[i + 1] == ">":
            tokens.append(_Token("ARROW", "=>", span(2)))
            i += 2
            col += 2
            continue
        if ch == "=":
            tokens.append(_Token("EQ", "=", span(1)))
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, span(1)))
            i += 1
            col += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            word = text[i:j]
            tokens.append(_Token("WORD", word, span(len(word))))
            col += len(word)
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", span(1))
    eof_span = SourceSpan(line, col, n, n)
    tokens.append(_Token("EOF", "", eof_span))
    return tokens


# --- statement parser ---------------------------------------------------------


class _StatementParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.inside_counterfactual = False

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, token: _Token, expected: frozenset[str]) -> ParseError:
        return ParseError(message, token.span, expected)

    def expect(self, kind: str, description: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise self.fail(f"unexpected {found!r}", tok, frozenset({description}))
        return self.advance()

    def parse(self) -> Statement:
        node = self.implies()
        tok = self.peek()
        if tok.kind != "EOF":
            raise self.fail(f"unexpected trailing {tok.text!r}", tok, frozenset({"end of input"}))
        return node

    def implies(self) -> Statement:
        left = self.or_()
        if self.peek().kind == "ARROW":
            self.advance()
            return Implies(left, self.implies())
        return left

    def or_(self) -> Statement:
        node = self.and_()
        while self.peek().kind == "PIPE":
            self.advance()
            node = Or(node, self.and_())
        return node

    def and_(self) -> Statement:
        node = self.unary()
        while self.peek().kind == "AMP":
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Statement:
        if self.peek().kind == "BANG":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Statement:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.advance()
            node = self.implies()
            self.expect("RPAREN", "')'")
            return node
        if tok.kind == "WORD":
            if tok.text == "cf":
                return self.counterfactual()
            return self.atom()
        found = tok.text or "end of input"
        raise self.fail(
            f"unexpected {found!r}", tok, frozenset({"setting label", "'cf'", "'('", "'!'"})
        )

    def setting_label(self) -> _Token:
        tok = self.expect("WORD", "setting label")
        if tok.text not in SETTING_LABELS:
            raise self.fail(
                f"unknown setting label {tok.text!r}",
                tok,
                frozenset(SETTING_LABELS),
            )
        return tok

    def atom(self) -> Statement:
        label = self.setting_label()
        if self.peek().kind == "EQ":
            self.advance()
            tok = self.peek()
            if tok.kind == "PLUS":
                self.advance()
                return OutcomeAtom(label.text, Outcome.PLUS)
            if tok.kind == "MINUS":
                self.advance()
                return OutcomeAtom(label.text, Outcome.MINUS)
            found = tok.text or "end of input"
            raise self.fail(f"unexpected {found!r}", tok, frozenset({"'+'", "'-'"}))
        return SettingAtom(label.text)

    def counterfactual(self) -> Statement:
        cf_tok = self.expect("WORD", "'cf'")
        if self.inside_counterfactual:
            raise self.fail(
                "counterfactuals cannot nest", cf_tok, frozenset({"setting label", "'('", "'!'"})
            )
        self.expect("LBRACKET", "'['")
        region_tok = self.expect("WORD", "region F or B")
        if region_tok.text not in ("F", "B"):
            raise self.fail(
                f"unknown region {region_tok.text!r}", region_tok, frozenset({"'F'", "'B'"})
            )
        region = RegionKind(region_tok.text)
        self.expect("RBRACKET", "']'")
        self.expect("LPAREN", "'('")
        self.inside_counterfactual = True
        try:
            given = self.implies()
            self.expect("SEMI", "';'")
            wing_tok = self.expect("WORD", "wing L or R")
            if wing_tok.text not in ("L", "R"):
                raise self.fail(
                    f"unknown wing {wing_tok.text!r}", wing_tok, frozenset({"'L'", "'R'"})
                )
            self.expect("COLON", "':'")
            switch_tok = self.setting_label()
            if not switch_tok.text.startswith(wing_tok.text):
                raise self.fail(
                    f"setting {switch_tok.text!r} does not belong to wing {wing_tok.text!r}",
                    switch_tok,
                    frozenset({f"a setting of wing {wing_tok.text}"}),
                )
            self.expect("SEMI", "';'")
            consequent = self.implies()
        finally:
            self.inside_counterfactual = False
        self.expect("RPAREN", "')'")
        return Counterfactual(given, switch_tok.text, region, consequent)


def parse_statement(text: str) -> Statement:
    """Parse statement surface syntax into an AST; raises :class:`ParseError`."""
    return _StatementParser(text).parse()


# --- statement printer --------------------------------------------------------

_PREC_IMPLIES = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_ATOM = 5


def _precedence(node: Statement) -> int:
    match node:
        case Implies():
            return _PREC_IMPLIES
        case Or():
            return _PREC_OR
        case And():
            return _PREC_AND
        case Not():
            return _PREC_NOT
    return _PREC_ATOM


def _print_node(node: Statement) -> str:
    match node:
        case SettingAtom(label=label):
            return label
        case OutcomeAtom(label=label, outcome=outcome):
            return f"{label}={outcome.value}"
        case Not(operand=s):
            return f"!{_child(s, _PREC_NOT)}"
        case And(left=a, right=b):
            return f"{_child(a, _PREC_AND)} & {_child(b, _PREC_AND + 1)}"
        case Or(left=a, right=b):
            return f"{_child(a, _PREC_OR)} | {_child(b, _PREC_OR + 1)}"
        case Implies(antecedent=a, consequent=c):
            return f"{_child(a, _PREC_IMPLIES + 1)} => {_child(c, _PREC_IMPLIES)}"
        case Counterfactual(given=g, switch_label=label, region=region, consequent=c):
            wing = wing_of_label(label).value
            return f"cf[{region.value}]({_print_node(g)} ; {wing}:{label} ; {_print_node(c)})"
    raise ValueError(f"unknown statement node {node!r}")


def _child(node: Statement, min_precedence: int) -> str:
    text = _print_node(node)
    if _precedence(node) < min_precedence:
        return f"({text})"
    return text


def print_statement(stmt: Statement) -> str:
    """Canonical surface form; ``parse_statement(print_statement(s))`` equals ``s``."""
    return _print_node(stmt)


# --- experiment config --------------------------------------------------------

_COMPLEX_PAIR = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([^\s,()]+)\s*\)")
_SETTING_LINE = re.compile(
    r"^\s*setting\s+(\S+)\s*:\s*plus\s*=\s*(.*?)\s*;\s*minus\s*=\s*(.*?)\s*$"
)
_EVENT_LINE = re.compile(r"^\s*event\s+(\S+)\s*=\s*(.*?)\s*$")
_KEYVALUE_LINE = re.compile(r"^\s*(\w+)\s*=\s*(.*?)\s*$")


class _ConfigReader:
    """Line-oriented reader that reports spans into the original text."""

    def __init__(self, text: str):
        self.text = text
        self.line_starts = [0]
        for idx, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(idx + 1)

    def span(self, lineno: int, col_start: int, col_end: int) -> SourceSpan:
        base = self.line_starts[lineno - 1]
        end = min(base + col_end, len(self.text))
        return SourceSpan(lineno, col_start + 1, base + col_start, end)

    def line_span(self, lineno: int, line: str) -> SourceSpan:
        return self.span(lineno, 0, len(line))


def _parse_float(reader: _ConfigReader, lineno: int, line: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        col = line.find(text)
        col = col if col >= 0 else 0
        raise ParseError(
            f"invalid number {text!r}",
            reader.span(lineno, col, col + len(text)),
            frozenset({"a decimal number"}),
        ) from None
    return value


def _parse_complex_list(
    reader: _ConfigReader, lineno: int, line: str, fragment: str, expected_count: int, what: str
) -> tuple[complex, ...]:
    values = []
    consumed = 0
    for m in _COMPLEX_PAIR.finditer(fragment):
        between = fragment[consumed : m.start()]
        if between.strip():
            col = line.find(fragment) + consumed
            raise ParseError(
                f"unexpected text {between.strip()!r} in {what}",
                reader.span(lineno, col, col + len(between)),
                frozenset({"a '(re, im)' pair"}),
            )
        re_part = _parse_float(reader, lineno, line, m.group(1))
        im_part = _parse_float(reader, lineno, line, m.group(2))
        values.append(complex(re_part, im_part))
        consumed = m.end()
    if fragment[consumed:].strip() or len(values) != expected_count:
        raise ParseError(
            f"{what} requires exactly {expected_count} '(re, im)' pairs, got {len(values)}",
            reader.line_span(lineno, line),
            frozenset({"a '(re, im)' pair"}),
        )
    return tuple(values)


def _parse_bool(reader: _ConfigReader, lineno: int, line: str, text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ParseError(
        f"invalid boolean {text!r}",
        reader.line_span(lineno, line),
        frozenset({"'true'", "'false'"}),
    )


def parse_experiment(text: str) -> Experiment:
    """Parse and validate an experiment config; see the module docstring."""
    reader = _ConfigReader(text)
    state: StateVector | None = None
    settings: dict[str, Setting] = {}
    events: dict[Wing, Event] = {}
    epsilon: float | None = None
    fix_unswitched: bool | None = None
    include_null: bool | None = None

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue

        keyword = line.strip().split()[0].split("=")[0]
        if keyword == "setting":
            m = _SETTING_LINE.match(line)
            if m is None:
                raise ParseError(
                    "malformed setting line",
                    reader.line_span(lineno, line),
                    frozenset({"setting LABEL : plus = (re, im) (re, im) ; minus = ..."}),
                )
            label, plus_text, minus_text = m.group(1), m.group(2), m.group(3)
            plus_vec = _parse_complex_list(reader, lineno, line, plus_text, 2, "plus vector")
            minus_vec = _parse_complex_list(reader, lineno, line, minus_text, 2, "minus vector")
            if label in settings:
                raise ValidationError(f"duplicate setting {label!r} (line {lineno})")
            wing = wing_of_label(label)
            settings[label] = Setting(label, wing, SingleParticleBasis(plus_vec, minus_vec))
            continue
        if keyword == "event":
            m = _EVENT_LINE.match(line)
            if m is None:
                raise ParseError(
                    "malformed event line",
                    reader.line_span(lineno, line),
                    frozenset({"event L = (t, x)"}),
                )
            label, coords_text = m.group(1), m.group(2)
            if label not in ("L", "R"):
                raise ValidationError(f"event label must be L or R, got {label!r} (line {lineno})")
            (pair,) = _parse_complex_list(reader, lineno, line, coords_text, 1, "event coordinates")
            wing = Wing.LEFT if label == "L" else Wing.RIGHT
            if wing in events:
                raise ValidationError(f"duplicate event {label!r} (line {lineno})")
            events[wing] = Event(label, pair.real, pair.imag)
            continue

        m = _KEYVALUE_LINE.match(line)
        if m is None:
            raise ParseError(
                "unrecognized line",
                reader.line_span(lineno, line),
                frozenset({"state", "setting", "event", "epsilon", "fix_unswitched_settings"}),
            )
        key, value = m.group(1), m.group(2)
        if key == "state":
            if state is not None:
                raise ValidationError(f"duplicate state line (line {lineno})")
            amps = _parse_complex_list(reader, lineno, line, value, 4, "state")
            state = StateVector(amps)  # type: ignore[arg-type]
        elif key == "epsilon":
            if epsilon is not None:
                raise ValidationError(f"duplicate epsilon line (line {lineno})")
            epsilon = _parse_float(reader, lineno, line, value)
        elif key == "fix_unswitched_settings":
            if fix_unswitched is not None:
                raise ValidationError(f"duplicate fix_unswitched_settings line (line {lineno})")
            fix_unswitched = _parse_bool(reader, lineno, line, value)
        elif key == "include_null_boundary":
            if include_null is not None:
                raise ValidationError(f"duplicate include_null_boundary line (line {lineno})")
            include_null = _parse_bool(reader, lineno, line, value)
        else:
            raise ParseError(
                f"unrecognized directive {key!r}",
                reader.line_span(lineno, line),
                frozenset({"state", "setting", "event", "epsilon", "fix_unswitched_settings"}),
            )

    if state is None:
        raise ValidationError("missing state line")
    exp = Experiment(
        state=state,
        settings=settings,
        events=events,
        epsilon=1e-9 if epsilon is None else epsilon,
        fix_unswitched_settings=True if fix_unswitched is None else fix_unswitched,
        include_null_boundary=True if include_null is None else include_null,
    )
    return validate_experiment(exp)


def _format_real(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    # repr keeps full round-trip precision; strip the zero-padded exponent.
    return re.sub(r"e([+-])0(\d)", r"e\1\2", repr(v))


def _format_complex(c: complex) -> str:
    return f"({_format_real(c.real)}, {_format_real(c.imag)})"


def print_experiment(exp: Experiment) -> str:
    """Canonical config text; parsing it reproduces ``exp``."""
    lines = ["state = " + " ".join(_format_complex(a) for a in exp.state.amps)]
    for label in sorted(exp.settings):
        basis = exp.settings[label].basis
        plus = " ".join(_format_complex(c) for c in basis.plus_vec)
        minus = " ".join(_format_complex(c) for c in basis.minus_vec)
        lines.append(f"setting {label} : plus = {plus} ; minus = {minus}")
    for wing in (Wing.LEFT, Wing.RIGHT):
        event = exp.events[wing]
        lines.append(f"event {event.label} = ({_format_real(event.t)}, {_format_real(event.x)})")
    lines.append(f"epsilon = {_format_real(exp.epsilon)}")
    lines.append(f"fix_unswitched_settings = {'true' if exp.fix_unswitched_settings else 'false'}")
    if not exp.include_null_boundary:
        lines.append("include_null_boundary = false")
    return "\n".join(lines) + "\n"


def parse_settings_filter(text: str) -> dict[Wing, str]:
    """Parse a world-filter fragment like ``L2,R2``; raises ValueError."""
    settings: dict[Wing, str] = {}
    for part in text.split(","):
        label = part.strip()
        if label not in SETTING_LABELS:
            raise ValueError(f"unknown setting label {label!r} in settings filter")
        wing = wing_of_label(label)
        if wing in settings:
            raise ValueError(f"two settings given for wing {wing.value} in settings filter")
        settings[wing] = label
    return settings


def parse_outcomes_filter(text: str) -> dict[Wing, Outcome]:
    """Parse a world-filter fragment like ``L=+,R=-``; raises ValueError."""
    outcomes: dict[Wing, Outcome] = {}
    for part in text.split(","):
        item = part.strip()
        if len(item) != 3 or item[0] not in "LR" or item[1] != "=" or item[2] not in "+-":
            raise ValueError(f"bad outcome filter {item!r}; use L=+ or R=-")
        wing = Wing.LEFT if item[0] == "L" else Wing.RIGHT
        if wing in outcomes:
            raise ValueError(f"two outcomes given for wing {wing.value} in outcomes filter")
        outcomes[wing] = Outcome(item[2])
    return outcomes


def reference_config_text() -> str:
    """The shipped reference config, byte-identical to the builder's output."""
    return (files("cfworlds") / "data" / "hardy.exp").read_text(encoding="utf-8")


def write_reference_config() -> str:
    """Render the reference experiment through the canonical printer."""
    return print_experiment(build_reference_hardy_experiment())
