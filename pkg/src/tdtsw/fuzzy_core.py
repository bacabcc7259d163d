"""Linguistic variables, piecewise-linear membership functions and fuzzification."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

import numpy as np

from .errors import ConfigurationError, DomainError, MissingEntryError

DEFAULT_LABELS = ("Low", "Medium", "High")


@dataclass(frozen=True)
class UniverseInterval:
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ConfigurationError(f"universe bounds must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ConfigurationError(f"universe requires lo < hi, got [{self.lo}, {self.hi}]")

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def samples(self, n: int = 1001) -> np.ndarray:
        if n < 2:
            raise ConfigurationError("discretization needs at least 2 points")
        return np.linspace(self.lo, self.hi, n)


def _ramp(x, a, b, c, d):
    """Trapezoid a <= b <= c <= d, scalar or array input.

    Degenerate edges (a == b or c == d) are vertical shoulders: the plateau
    value wins at the shared point.
    """
    if np.ndim(x) == 0:
        x = float(x)
        if b <= x <= c:
            return 1.0
        if a < x < b:
            return (x - a) / (b - a)
        if c < x < d:
            return (d - x) / (d - c)
        return 0.0
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    out[(x >= b) & (x <= c)] = 1.0
    if b > a:
        rising = (x > a) & (x < b)
        out[rising] = (x[rising] - a) / (b - a)
    if d > c:
        falling = (x > c) & (x < d)
        out[falling] = (d - x[falling]) / (d - c)
    return out


@dataclass(frozen=True)
class Triangular:
    a: float
    b: float
    c: float

    def __post_init__(self):
        _check_breakpoints(self.breakpoints)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c)

    @property
    def peak(self) -> float:
        return self.b

    def __call__(self, x):
        return _ramp(x, self.a, self.b, self.b, self.c)


@dataclass(frozen=True)
class Trapezoidal:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        _check_breakpoints(self.breakpoints)

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def peak(self) -> float:
        return 0.5 * (self.b + self.c)

    def __call__(self, x):
        return _ramp(x, self.a, self.b, self.c, self.d)


MembershipFunction = Union[Triangular, Trapezoidal]


def _check_breakpoints(points):
    if not all(math.isfinite(p) for p in points):
        raise ConfigurationError(f"breakpoints must be finite: {points}")
    if any(p > q for p, q in zip(points, points[1:])):
        raise ConfigurationError(f"breakpoints out of order: {points}")


def membership(mf: MembershipFunction, x: float, universe: UniverseInterval) -> float:
    """Degree of ``x`` in ``mf``; inputs outside the universe are clamped first."""
    if not math.isfinite(x):
        raise DomainError(f"membership input must be finite, got {x!r}")
    return mf(universe.clamp(float(x)))


@dataclass(frozen=True)
class LinguisticVariable:
    """A named variable whose terms are ordered from lowest to highest rank."""

    name: str
    universe: UniverseInterval
    terms: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self):
        if not self.name:
            raise ConfigurationError("variable name must be non-empty")
        object.__setattr__(self, "terms", tuple((str(k), mf) for k, mf in self.terms))
        if not self.terms:
            raise ConfigurationError(f"variable {self.name} needs at least one term")
        labels = [label for label, _ in self.terms]
        seen = set()
        for label in labels:
            if not label:
                raise ConfigurationError(f"variable {self.name} has an empty label")
            if label in seen:
                raise ConfigurationError(f"duplicate label {label!r} in variable {self.name}")
            seen.add(label)
        for label, mf in self.terms:
            if not all(self.universe.contains(p) for p in mf.breakpoints):
                raise ConfigurationError(
                    f"breakpoints of {self.name}.{label} lie outside "
                    f"[{self.universe.lo}, {self.universe.hi}]"
                )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def __iter__(self) -> Iterator[tuple[str, MembershipFunction]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, label: str) -> MembershipFunction:
        for name, mf in self.terms:
            if name == label:
                return mf
        raise MissingEntryError(f"unknown label {label!r} for variable {self.name}")

    def rank(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MissingEntryError(f"unknown label {label!r} for variable {self.name}") from None


MembershipVector = Mapping[str, float]


def fuzzify(var: LinguisticVariable, x: float) -> dict[str, float]:
    """Membership degree of ``x`` in every term of ``var``, in term order."""
    return {label: membership(mf, x, var.universe) for label, mf in var.terms}


def ruspini_terms(universe: UniverseInterval = UniverseInterval(),
                  labels=DEFAULT_LABELS) -> tuple[tuple[str, Triangular], ...]:
    """Evenly spaced triangles whose degrees sum to one across the universe."""
    n = len(labels)
    if n < 2:
        raise ConfigurationError("a triangular partition needs at least two labels")
    step = (universe.hi - universe.lo) / (n - 1)
    peaks = [universe.lo + i * step for i in range(n - 1)] + [universe.hi]
    terms = []
    for i, label in enumerate(labels):
        left = peaks[max(i - 1, 0)]
        right = peaks[min(i + 1, n - 1)]
        terms.append((label, Triangular(left, peaks[i], right)))
    return tuple(terms)


def default_tdtsw_variables() -> tuple[LinguisticVariable, LinguisticVariable, LinguisticVariable]:
    """Democracy, Transparency and Social Wellbeing over [0, 1] with Low/Medium/High."""
    universe = UniverseInterval(0.0, 1.0)
    terms = ruspini_terms(universe)
    return tuple(LinguisticVariable(name, universe, terms) for name in ("D", "T", "SW"))
