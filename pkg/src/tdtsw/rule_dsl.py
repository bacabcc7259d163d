"""Line-oriented text format for linguistic variables and rule bases.

Grammar, one declaration per line, ``#`` starts a comment::

    universe <lo> <hi>
    var <Name>: <Label> = tri(a,b,c) | trap(a,b,c,d) [, <Label> = ...]*
    out <Name>: <same term syntax>
    rule <Id>: IF <Var> IS <Label> [AND <Var> IS <Label>]* THEN <Out> IS <Label>

Keywords are case-sensitive. ``.`` is the only decimal separator.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import TdtswError
from .fuzzy_core import LinguisticVariable, Trapezoidal, Triangular, UniverseInterval
from .rulebase import Rule, RuleAtom, RuleBase

BUNDLED_RULES = "tdtsw.rules"

log = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"(?P<ws>[ \t]+)"
    r"|(?P<num>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?(?![A-Za-z_0-9.]))"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<punct>[:=,()])"
)
_SHAPES = {"tri": (Triangular, 3), "trap": (Trapezoidal, 4)}


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str
    message: str
    line: int
    column: int

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class RuleSyntaxError(TdtswError, ValueError):
    """Raised when a document has at least one error diagnostic."""

    def __init__(self, diagnostics, source: str = "<rules>"):
        self.diagnostics = list(diagnostics)
        self.source = source
        errors = [d for d in self.diagnostics if d.severity == "error"]
        super().__init__("\n".join(f"{source}:{d}" for d in errors))


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


class _LineError(Exception):
    def __init__(self, message, col):
        super().__init__(message)
        self.message = message
        self.col = col


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise _LineError(f"unexpected character {text[pos]!r}", pos + 1)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    return toks


class _Cursor:
    def __init__(self, toks, eol_col):
        self.toks = toks
        self.i = 0
        self.eol_col = eol_col

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def col(self) -> int:
        tok = self.peek()
        return tok.col if tok else self.eol_col

    def take(self, kind=None, text=None, what=None) -> _Tok:
        tok = self.peek()
        if tok is None or (kind and tok.kind != kind) or (text and tok.text != text):
            want = what or repr(text) if text else what or kind
            found = "end of line" if tok is None else repr(tok.text)
            raise _LineError(f"expected {want}, found {found}", self.col())
        self.i += 1
        return tok

    def accept(self, text) -> bool:
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise _LineError(f"unexpected {tok.text!r} after end of declaration", tok.col)


def _number(tok: _Tok) -> float:
    value = float(tok.text)
    if not math.isfinite(value):
        raise _LineError(f"number {tok.text} is not finite", tok.col)
    return value


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.diags: list[ParseDiagnostic] = []
        self.universe: Optional[UniverseInterval] = None
        self.inputs: dict[str, LinguisticVariable] = {}
        self.output: Optional[LinguisticVariable] = None
        self.var_pos: dict[str, tuple[int, int]] = {}
        self.rules: list[Rule] = []
        self.rule_ids: set[str] = set()
        self.used: set[str] = set()
        self.failed: set[str] = set()

    def error(self, line, col, message):
        self.diags.append(ParseDiagnostic("error", message, line, col))

    def warn(self, line, col, message):
        self.diags.append(ParseDiagnostic("warning", message, line, col))

    def run(self) -> Optional[RuleBase]:
        for lineno, raw in enumerate(self.lines, start=1):
            body = raw.split("#", 1)[0].rstrip()
            if not body.strip():
                continue
            try:
                toks = _tokenize(body)
                self.declaration(lineno, _Cursor(toks, len(body) + 1))
            except _LineError as exc:
                self.error(lineno, exc.col, exc.message)
                self.failed.add(body.split(None, 1)[0])
        # Document-level checks point at the last line; skip them when a
        # failed declaration of the same kind already explains the gap.
        end_line = max(len(self.lines), 1)
        if self.output is None and "out" not in self.failed:
            self.error(end_line, 1, "missing 'out' declaration")
        if not self.rules and "rule" not in self.failed:
            self.error(end_line, 1, "rule base is empty")
        for name in self.inputs:
            if name not in self.used and "rule" not in self.failed:
                line, col = self.var_pos[name]
                self.warn(line, col, f"variable {name} is not used by any rule")
        if any(d.severity == "error" for d in self.diags):
            return None
        return RuleBase(tuple(self.rules), tuple(self.inputs.values()), self.output)

    def declaration(self, lineno, cur: _Cursor):
        head = cur.take("ident", what="a declaration keyword")
        if head.text == "universe":
            self.parse_universe(cur, head)
        elif head.text in ("var", "out"):
            self.parse_variable(lineno, cur, head)
        elif head.text == "rule":
            self.parse_rule(cur)
        else:
            raise _LineError(f"unknown declaration {head.text!r}", head.col)

    def parse_universe(self, cur, head):
        if self.universe is not None:
            raise _LineError("duplicate universe declaration", head.col)
        if self.inputs or self.output:
            raise _LineError("universe must be declared before any variable", head.col)
        lo_tok = cur.take("num", what="a number")
        hi_tok = cur.take("num", what="a number")
        cur.done()
        lo, hi = _number(lo_tok), _number(hi_tok)
        if not lo < hi:
            raise _LineError(f"universe requires lo < hi, got {lo_tok.text} {hi_tok.text}", hi_tok.col)
        self.universe = UniverseInterval(lo, hi)

    def parse_variable(self, lineno, cur, head):
        if self.universe is None:
            raise _LineError("variable declared before 'universe'", head.col)
        name_tok = cur.take("ident", what="a variable name")
        name = name_tok.text
        if name in self.inputs or (self.output is not None and self.output.name == name):
            raise _LineError(f"duplicate variable {name}", name_tok.col)
        if head.text == "out" and self.output is not None:
            raise _LineError(f"second 'out' declaration; {self.output.name} is already the output", head.col)
        cur.take(text=":")
        terms, seen = [], set()
        while True:
            label_tok = cur.take("ident", what="a label")
            if label_tok.text in seen:
                raise _LineError(f"duplicate label {label_tok.text!r} for variable {name}", label_tok.col)
            seen.add(label_tok.text)
            cur.take(text="=")
            terms.append((label_tok.text, self.parse_shape(cur)))
            if not cur.accept(","):
                break
        cur.done()
        var = LinguisticVariable(name, self.universe, tuple(terms))
        self.var_pos[name] = (lineno, name_tok.col)
        if head.text == "out":
            self.output = var
        else:
            self.inputs[name] = var

    def parse_shape(self, cur):
        shape_tok = cur.take("ident", what="'tri' or 'trap'")
        if shape_tok.text not in _SHAPES:
            raise _LineError(f"unknown membership shape {shape_tok.text!r}; expected tri or trap", shape_tok.col)
        cls, arity = _SHAPES[shape_tok.text]
        cur.take(text="(")
        toks = [cur.take("num", what="a number")]
        while cur.accept(","):
            toks.append(cur.take("num", what="a number"))
        close_col = cur.col()
        cur.take(text=")")
        if len(toks) != arity:
            raise _LineError(f"{shape_tok.text} takes {arity} breakpoints, got {len(toks)}", close_col)
        values = [_number(t) for t in toks]
        for prev, (tok, value) in zip(values, list(zip(toks, values))[1:]):
            if value < prev:
                raise _LineError(f"breakpoints out of order: {tok.text} follows {prev!r}", tok.col)
        for tok, value in zip(toks, values):
            if not self.universe.contains(value):
                raise _LineError(
                    f"breakpoint {tok.text} outside universe [{self.universe.lo!r}, {self.universe.hi!r}]",
                    tok.col,
                )
        return cls(*values)

    def parse_atom(self, cur, expect_output: bool) -> RuleAtom:
        var_tok = cur.take("ident", what="a variable name")
        cur.take(text="IS")
        label_tok = cur.take("ident", what="a label")
        name = var_tok.text
        if expect_output:
            if self.output is None:
                raise _LineError("rule appears before the 'out' declaration", var_tok.col)
            if name != self.output.name:
                if name in self.inputs:
                    msg = f"rule consequent {name} is not the output variable {self.output.name}"
                else:
                    msg = f"unknown variable {name}"
                raise _LineError(msg, var_tok.col)
            var = self.output
        else:
            if self.output is not None and name == self.output.name:
                raise _LineError(f"output variable {name} cannot appear in a rule antecedent", var_tok.col)
            if name not in self.inputs:
                raise _LineError(f"unknown variable {name}", var_tok.col)
            var = self.inputs[name]
        if label_tok.text not in var.labels:
            raise _LineError(f"unknown label '{label_tok.text}' for variable {name}", label_tok.col)
        return RuleAtom(name, label_tok.text)

    def parse_rule(self, cur):
        id_tok = cur.take("ident", what="a rule id")
        if id_tok.text in self.rule_ids:
            raise _LineError(f"duplicate rule id {id_tok.text}", id_tok.col)
        cur.take(text=":")
        cur.take(text="IF")
        antecedents, seen = [], set()
        while True:
            col = cur.col()
            atom = self.parse_atom(cur, expect_output=False)
            if atom.variable in seen:
                raise _LineError(f"variable {atom.variable} appears twice in rule {id_tok.text}", col)
            seen.add(atom.variable)
            antecedents.append(atom)
            if not cur.accept("AND"):
                break
        cur.take(text="THEN")
        consequent = self.parse_atom(cur, expect_output=True)
        cur.done()
        self.rule_ids.add(id_tok.text)
        self.used.update(seen)
        self.rules.append(Rule(id_tok.text, tuple(antecedents), consequent))


def parse_with_diagnostics(text: str) -> tuple[Optional[RuleBase], list[ParseDiagnostic]]:
    """Parse ``text``; the rule base is None whenever any error was reported."""
    parser = _Parser(text)
    return parser.run(), parser.diags


def parse(text: str, source: str = "<rules>") -> RuleBase:
    rulebase, diags = parse_with_diagnostics(text)
    if rulebase is None:
        raise RuleSyntaxError(diags, source)
    for d in diags:
        log.warning("%s:%s", source, d)
    return rulebase


def load(path) -> RuleBase:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), str(path))


def bundled_text() -> str:
    return resources.files("tdtsw").joinpath("data").joinpath(BUNDLED_RULES).read_text(encoding="utf-8")


def load_bundled() -> RuleBase:
    return parse(bundled_text(), BUNDLED_RULES)


def format_number(x: float) -> str:
    """Shortest decimal that round-trips; integral values print without '.0'."""
    x = float(x)
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _format_terms(var: LinguisticVariable) -> str:
    parts = []
    for label, mf in var.terms:
        shape = "tri" if isinstance(mf, Triangular) else "trap"
        args = ",".join(format_number(p) for p in mf.breakpoints)
        parts.append(f"{label} = {shape}({args})")
    return ", ".join(parts)


def print_canonical(rulebase: RuleBase) -> str:
    """Deterministic text for ``rulebase``; rules keep their declared order."""
    universe = rulebase.output.universe
    if any(var.universe != universe for var in rulebase.inputs):
        raise ValueError("canonical form needs one universe shared by all variables")
    lines = [f"universe {format_number(universe.lo)} {format_number(universe.hi)}"]
    lines += [f"var {var.name}: {_format_terms(var)}" for var in rulebase.inputs]
    lines.append(f"out {rulebase.output.name}: {_format_terms(rulebase.output)}")
    lines += [f"rule {rule.id}: {rule}" for rule in rulebase.rules]
    return "\n".join(lines) + "\n"
