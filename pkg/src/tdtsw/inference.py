"""Mamdani inference: fuzzify, fire, clip, aggregate, defuzzify, classify."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Optional

import numpy as np

from .errors import ConfigurationError, DegenerateOutputError, DomainError, MissingEntryError
from .fuzzy_core import LinguisticVariable, fuzzify
from .rulebase import RuleBase, firing_strength

SAMPLES = 1001
MAX_TOL = 1e-9


class DefuzzMethod(str, enum.Enum):
    CENTROID = "centroid"
    MEAN_OF_MAXIMUM = "mom"

    @classmethod
    def parse(cls, value) -> "DefuzzMethod":
        if isinstance(value, cls):
            return value
        aliases = {"centroid": cls.CENTROID, "mom": cls.MEAN_OF_MAXIMUM,
                   "mean-of-maximum": cls.MEAN_OF_MAXIMUM}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ConfigurationError(f"unknown defuzzification method {value!r}") from None


class Color(str, enum.Enum):
    RED = "red"
    ORANGE = "orange"
    GREEN = "green"

    @classmethod
    def for_rank(cls, rank: int, n_labels: int) -> "Color":
        if rank == 0:
            return cls.RED
        if rank == n_labels - 1:
            return cls.GREEN
        return cls.ORANGE


@dataclass(frozen=True)
class InferenceResult:
    inputs: dict[str, float]
    fuzzified: dict[str, dict[str, float]]
    firings: dict[str, float]
    aggregated: dict[str, float]
    crisp: float
    label: str
    color: Color

    def to_dict(self) -> dict:
        return {
            "inputs": dict(self.inputs),
            "fuzzified": {k: dict(v) for k, v in self.fuzzified.items()},
            "firings": dict(self.firings),
            "aggregated": dict(self.aggregated),
            "crisp": self.crisp,
            "label": self.label,
            "color": self.color.value,
        }


@lru_cache(maxsize=64)
def _term_samples(var: LinguisticVariable, n: int) -> tuple[np.ndarray, np.ndarray]:
    xs = var.universe.samples(n)
    table = np.vstack([mf(xs) for _, mf in var.terms])
    table.setflags(write=False)
    xs.setflags(write=False)
    return xs, table


def output_envelope(var: LinguisticVariable, aggregated: Mapping[str, float],
                    n: int = SAMPLES) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise max of every output term clipped at its aggregated degree.

    Clipping each rule's consequent and taking the max over rules gives the
    same curve, since max over rules of min(f_r, mu) equals min(max f_r, mu).
    """
    xs, table = _term_samples(var, n)
    heights = np.array([aggregated.get(label, 0.0) for label in var.labels])
    return xs, np.minimum(table, heights[:, None]).max(axis=0)


def defuzzify(xs: np.ndarray, mu: np.ndarray, method=DefuzzMethod.CENTROID) -> float:
    """Reduce a sampled envelope to one crisp value.

    ``xs`` must be uniformly spaced. Centroid uses trapezoid weights; mean of
    maximum averages the samples within 1e-9 of the peak.
    """
    method = DefuzzMethod.parse(method)
    xs = np.asarray(xs, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if xs.shape != mu.shape or xs.size < 2:
        raise ConfigurationError("envelope needs at least 2 matching samples")
    peak = mu.max()
    if not peak > 0.0:
        raise DegenerateOutputError("aggregated output is zero everywhere")
    if method is DefuzzMethod.MEAN_OF_MAXIMUM:
        return float(xs[mu >= peak - MAX_TOL].mean())
    weights = np.ones_like(xs)
    weights[0] = weights[-1] = 0.5
    wmu = weights * mu
    area = wmu.sum()
    if not area > 0.0:
        raise DegenerateOutputError("aggregated output has zero area")
    return float(np.dot(wmu, xs) / area)


def classify_label(aggregated: Mapping[str, float], variable: LinguisticVariable) -> str:
    """Highest-degree label; ties go to the lower-ranked label."""
    if not aggregated:
        raise ConfigurationError("cannot classify an empty membership vector")
    best, best_degree = None, -math.inf
    for label in variable.labels:
        degree = aggregated.get(label, 0.0)
        if degree > best_degree:
            best, best_degree = label, degree
    return best


def color_of(label: str, variable: LinguisticVariable) -> Color:
    return Color.for_rank(variable.rank(label), len(variable))


def infer(rulebase: RuleBase, inputs: Mapping[str, float],
          method=DefuzzMethod.CENTROID, samples: int = SAMPLES) -> InferenceResult:
    method = DefuzzMethod.parse(method)
    crisp_in = {}
    for var in rulebase.inputs:
        if var.name not in inputs:
            raise MissingEntryError(f"missing input value for variable {var.name}")
        value = float(inputs[var.name])
        if not math.isfinite(value):
            raise DomainError(f"input {var.name} must be finite, got {value!r}")
        crisp_in[var.name] = value
    fuzzified = {var.name: fuzzify(var, crisp_in[var.name]) for var in rulebase.inputs}

    out = rulebase.output
    firings = {}
    aggregated = {label: 0.0 for label in out.labels}
    for rule in rulebase.rules:
        strength = firing_strength(rule, fuzzified)
        firings[rule.id] = strength
        label = rule.consequent.label
        if strength > aggregated[label]:
            aggregated[label] = strength

    xs, mu = output_envelope(out, aggregated, samples)
    crisp = defuzzify(xs, mu, method)
    label = classify_label(aggregated, out)
    return InferenceResult(crisp_in, fuzzified, firings, aggregated, crisp, label, color_of(label, out))


@dataclass(frozen=True)
class ScenarioCell:
    id: str
    labels: tuple[str, str]
    point: tuple[float, float]
    result: InferenceResult


@dataclass(frozen=True)
class ScenarioTable:
    variables: tuple[str, str]
    cells: tuple[ScenarioCell, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, key):
        if isinstance(key, str):
            for cell in self.cells:
                if cell.id == key:
                    return cell
            raise KeyError(key)
        return self.cells[key]

    @property
    def labels(self) -> list[str]:
        return [cell.result.label for cell in self.cells]

    @property
    def colors(self) -> list[Color]:
        return [cell.result.color for cell in self.cells]


def default_representatives(var: LinguisticVariable) -> dict[str, float]:
    """Peak of every term: 0, 0.5 and 1 for the default partition."""
    return {label: mf.peak for label, mf in var.terms}


def scenario_grid(rulebase: RuleBase,
                  representatives: Optional[Mapping[str, Mapping[str, float]]] = None,
                  method=DefuzzMethod.CENTROID) -> ScenarioTable:
    """Evaluate every pairing of the two input variables' labels, row-major.

    ``representatives`` maps variable name -> {label: crisp point}; missing
    variables fall back to the term peaks.
    """
    if len(rulebase.inputs) != 2:
        raise ConfigurationError("scenario grid needs exactly two input variables")
    row_var, col_var = rulebase.inputs
    reps = {}
    for var in (row_var, col_var):
        given = None if representatives is None else representatives.get(var.name)
        points = default_representatives(var) if given is None else dict(given)
        missing = [label for label in var.labels if label not in points]
        if missing:
            raise ConfigurationError(f"no representative point for {var.name} label(s) {missing}")
        reps[var.name] = points

    cells = []
    for rl in row_var.labels:
        for cl in col_var.labels:
            x, y = reps[row_var.name][rl], reps[col_var.name][cl]
            result = infer(rulebase, {row_var.name: x, col_var.name: y}, method)
            cells.append(ScenarioCell(f"R{len(cells) + 1}", (rl, cl), (x, y), result))
    return ScenarioTable((row_var.name, col_var.name), tuple(cells))
