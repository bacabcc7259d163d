"""Propositional forms of the aDTSW axioms, pDTSW postulates and tDTSW theorems.

Decorated symbols are flattened to plain atoms:

    SW↑  -> SW_up        SW↑↑ -> SW_upup      Trust↑ -> Trust_up
    SW↑~P -> P_SW_up     Trust↑~P -> P_Trust_up   EG~P -> P_EG
    (SW ↑ C) -> SW_up AND C_content
    (D↑ ∧ T↑) -> D AND T

C is Citizen Participation in the axioms (C_part) and Citizen Contentment in
the postulates (C_content); E in the postulates is E_engage.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Mapping, Union

from .errors import CapacityError, ConfigurationError, MissingEntryError

VOCABULARY = (
    "D", "T", "SW", "I", "A", "C_part", "R", "E_engage", "RD", "C_content",
    "Trust", "EG", "SW_up", "SW_upup", "Trust_up", "P_SW_up", "P_Trust_up", "P_EG",
)
MAX_MODEL_ATOMS = 16


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if self.name not in VOCABULARY:
            raise ConfigurationError(f"{self.name!r} is not in the atom vocabulary")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self):
        return f"¬{_wrap(self.operand)}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"{_wrap(self.left)} ∧ {_wrap(self.right)}"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"{_wrap(self.left)} ∨ {_wrap(self.right)}"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"{_wrap(self.left)} → {_wrap(self.right)}"


Formula = Union[Atom, Not, And, Or, Implies]


def _wrap(f) -> str:
    return str(f) if isinstance(f, (Atom, Not)) else f"({f})"


def conj(*parts: Formula) -> Formula:
    """Left-nested conjunction of one or more formulas."""
    if not parts:
        raise ConfigurationError("empty conjunction")
    return reduce(And, parts)


def atoms(f: Formula) -> frozenset[str]:
    match f:
        case Atom(name):
            return frozenset((name,))
        case Not(x):
            return atoms(x)
        case And(x, y) | Or(x, y) | Implies(x, y):
            return atoms(x) | atoms(y)
    raise TypeError(f"not a formula: {f!r}")


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Classical two-valued evaluation; ``Implies(p, q)`` is ``¬p ∨ q``."""
    match f:
        case Atom(name):
            try:
                return bool(assignment[name])
            except KeyError:
                raise MissingEntryError(f"assignment has no value for atom {name}") from None
        case Not(x):
            return not evaluate(x, assignment)
        case And(x, y):
            return evaluate(x, assignment) and evaluate(y, assignment)
        case Or(x, y):
            return evaluate(x, assignment) or evaluate(y, assignment)
        case Implies(x, y):
            return (not evaluate(x, assignment)) or evaluate(y, assignment)
    raise TypeError(f"not a formula: {f!r}")


def assignments(names: Iterable[str]) -> Iterator[dict[str, bool]]:
    """All assignments over ``names`` sorted, in lexicographic order (False first)."""
    ordered = sorted(names)
    for values in itertools.product((False, True), repeat=len(ordered)):
        yield dict(zip(ordered, values))


@dataclass(frozen=True)
class ModelCount:
    count: int
    total: int
    atoms: tuple[str, ...]
    listing: tuple[dict[str, bool], ...] = ()


def models(f: Formula, listing: bool = False, max_atoms: int = MAX_MODEL_ATOMS) -> ModelCount:
    names = sorted(atoms(f))
    if len(names) > max_atoms:
        raise CapacityError(f"formula has {len(names)} atoms; exhaustive enumeration is limited to {max_atoms}")
    found = []
    count = 0
    for a in assignments(names):
        if evaluate(f, a):
            count += 1
            if listing:
                found.append(a)
    return ModelCount(count, 2 ** len(names), tuple(names), tuple(found))


def _a(name):
    return Atom(name)


D, T, SW, I, A = (_a(n) for n in ("D", "T", "SW", "I", "A"))
R, RD, TRUST, EG = (_a(n) for n in ("R", "RD", "Trust", "EG"))


POSTULATES: dict[int, Formula] = {
    1: Implies(D, And(T, SW)),
    2: Implies(T, I),
    3: Implies(I, A),
    4: Implies(And(I, A), _a("E_engage")),
    5: Implies(And(D, A), RD),
    6: Implies(D, And(_a("SW_up"), _a("C_content"))),
    7: Implies(T, _a("SW_up")),
    8: Implies(R, And(D, T)),
    9: Implies(And(D, T), _a("SW_upup")),
    10: Implies(T, _a("Trust_up")),
    11: Implies(And(T, TRUST), EG),
    12: Implies(And(D, T), _a("P_SW_up")),
    13: Implies(T, _a("P_Trust_up")),
    14: Implies(And(T, TRUST), _a("P_EG")),
}


def postulate(pid: int) -> Formula:
    try:
        return POSTULATES[pid]
    except KeyError:
        raise MissingEntryError(f"unknown postulate {pid}; expected 1..14") from None


def check_postulate(pid: int, assignment: Mapping[str, bool]) -> bool:
    return evaluate(postulate(pid), assignment)


def _adtsw() -> Formula:
    c = _a("C_part")
    return conj(
        Implies(D, T),
        Implies(T, I),
        Implies(I, A),
        Implies(I, c),
        Implies(And(A, c), D),
        Implies(D, SW),
        Implies(T, SW),
        Implies(R, And(D, T)),
    )


def _pdtsw() -> Formula:
    return conj(*(POSTULATES[i] for i in range(1, 15)))


def _tdtsw() -> Formula:
    # Theorem 1 is the bare atom D; the closing formula stops at theorem 12.
    return conj(D, *(POSTULATES[i] for i in range(2, 13)))


_BUILDERS = {"adtsw": _adtsw, "pdtsw": _pdtsw, "tdtsw": _tdtsw}
FORMULA_NAMES = tuple(_BUILDERS)


def build_formula(name: str) -> Formula:
    try:
        return _BUILDERS[name.lower()]()
    except KeyError:
        raise ConfigurationError(f"unknown formula {name!r}; expected one of {', '.join(FORMULA_NAMES)}") from None


def parse_assignment(text: str) -> dict[str, bool]:
    """Parse ``Name=0,Name=1,...``."""
    out: dict[str, bool] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        name, sep, value = item.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or value not in ("0", "1"):
            raise ConfigurationError(f"bad assignment item {item!r}; expected Name=0 or Name=1")
        if name not in VOCABULARY:
            raise ConfigurationError(f"unknown atom {name!r}")
        if name in out:
            raise ConfigurationError(f"atom {name} assigned twice")
        out[name] = value == "1"
    return out


def format_assignment(assignment: Mapping[str, bool]) -> str:
    return ",".join(f"{k}={int(bool(assignment[k]))}" for k in sorted(assignment))
