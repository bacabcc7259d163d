"""Deterministic governance equations and their Monte Carlo expectations.

    W = alpha*D + beta*T + gamma*D*T    (social welfare)
    C = delta*T                         (trust and credibility)
    E = alpha*T + beta*C + gamma*T*C    (governance effectiveness)

W and E each take their own coefficient set. Results are never clamped;
values leaving [0, 1] only produce a logged warning.
"""
from __future__ import annotations

import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigurationError, DomainError

log = logging.getLogger(__name__)

BLOCK_SIZE = 1 << 16
Z95 = 1.96
QUANTITIES = ("w", "c", "e")


@dataclass(frozen=True)
class Coefficients:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError(f"coefficient {name} must be finite")


def welfare(d, t, coef: Coefficients):
    return coef.alpha * d + coef.beta * t + coef.gamma * d * t


def trust_credibility(t, coef: Coefficients):
    return coef.delta * t


def effectiveness(t, c, coef: Coefficients):
    return coef.alpha * t + coef.beta * c + coef.gamma * t * c


def _warn_range(name, value):
    if not 0.0 <= value <= 1.0:
        log.warning("%s = %r lies outside [0, 1]; consider rescaling the coefficients", name, value)


@dataclass(frozen=True)
class GovernanceState:
    d: float
    t: float
    w: float
    c: float
    e: float


def governance_state(d: float, t: float, welfare_coef: Coefficients,
                     trust_coef: Optional[Coefficients] = None,
                     eff_coef: Optional[Coefficients] = None) -> GovernanceState:
    """Evaluate W, C and E at one (D, T) point.

    ``trust_coef`` and ``eff_coef`` default to ``welfare_coef``.
    """
    trust_coef = trust_coef or welfare_coef
    eff_coef = eff_coef or welfare_coef
    for name, value in (("d", d), ("t", t)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite")
        _warn_range(name, value)
    w = welfare(d, t, welfare_coef)
    c = trust_credibility(t, trust_coef)
    e = effectiveness(t, c, eff_coef)
    for name, value in (("w", w), ("c", c), ("e", e)):
        _warn_range(name, value)
    return GovernanceState(d, t, w, c, e)


@dataclass(frozen=True)
class Distribution:
    """One of ``point(v)``, ``uniform(lo, hi)`` or ``tri(a, b, c)``."""

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        arity = {"point": 1, "uniform": 2, "tri": 3}.get(self.kind)
        if arity is None:
            raise ConfigurationError(f"unknown distribution kind {self.kind!r}")
        if len(self.params) != arity:
            raise ConfigurationError(f"{self.kind} takes {arity} parameter(s), got {len(self.params)}")
        if not all(math.isfinite(p) for p in self.params):
            raise ConfigurationError(f"{self} has non-finite parameters")
        if any(p > q for p, q in zip(self.params, self.params[1:])):
            raise ConfigurationError(f"{self} parameters must be non-decreasing")

    @classmethod
    def point(cls, v):
        return cls("point", (v,))

    @classmethod
    def uniform(cls, lo, hi):
        return cls("uniform", (lo, hi))

    @classmethod
    def triangular(cls, a, b, c):
        return cls("tri", (a, b, c))

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        """Parse ``point:v``, ``uniform:lo,hi`` or ``tri:a,b,c``."""
        m = re.fullmatch(r"\s*(point|uniform|tri)\s*:\s*(.+?)\s*", text)
        if m is None:
            raise ConfigurationError(f"bad distribution {text!r}; use point:v, uniform:lo,hi or tri:a,b,c")
        try:
            params = tuple(float(p) for p in m.group(2).split(","))
        except ValueError:
            raise ConfigurationError(f"bad number in distribution {text!r}") from None
        return cls(m.group(1), params)

    @property
    def mean(self) -> float:
        return sum(self.params) / len(self.params)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        p = self.params
        if self.kind == "point" or p[0] == p[-1]:
            return np.full(n, p[0])
        if self.kind == "uniform":
            return rng.uniform(p[0], p[1], n)
        return rng.triangular(p[0], p[1], p[2], n)

    def __str__(self):
        return f"{self.kind}:" + ",".join(repr(p) for p in self.params)


@dataclass(frozen=True)
class Estimate:
    mean: float
    se: float
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class MonteCarloReport:
    n: int
    seed: int
    estimates: dict[str, Estimate] = field(default_factory=dict)

    def __getitem__(self, quantity: str) -> Estimate:
        return self.estimates[quantity]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            **{q: vars(est).copy() for q, est in self.estimates.items()},
        }


def _block_rng(seed: int, block: int) -> np.random.Generator:
    # Draws depend only on (seed, block index); blocks have a fixed size, so
    # every sample index maps to the same draw whatever the worker count.
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _block_values(block, n, seed, dist_d, dist_t, welfare_coef, trust_coef, eff_coef):
    start = block * BLOCK_SIZE
    size = min(BLOCK_SIZE, n - start)
    rng = _block_rng(seed, block)
    d = dist_d.sample(rng, size)
    t = dist_t.sample(rng, size)
    w = welfare(d, t, welfare_coef)
    c = trust_credibility(t, trust_coef)
    e = effectiveness(t, c, eff_coef)
    return {"w": w, "c": c, "e": e}


def expectations_mc(dist_d: Distribution, dist_t: Distribution,
                    welfare_coef: Coefficients,
                    trust_coef: Optional[Coefficients] = None,
                    eff_coef: Optional[Coefficients] = None,
                    n: int = 100_000, seed: int = 0, workers: int = 1) -> MonteCarloReport:
    """Sample D and T independently and estimate E[w], E[c], E[e].

    Each quantity gets its sample mean, standard error (sample stddev over
    sqrt(n)) and a normal 95% interval. Partial sums are taken per block with
    ``math.fsum`` so the report is bit-identical for any ``workers``.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"sample count must be a positive integer, got {n!r}")
    if not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ConfigurationError(f"seed must be a non-negative integer, got {seed!r}")
    if workers < 1:
        raise ConfigurationError("workers must be at least 1")
    n, seed = int(n), int(seed)
    trust_coef = trust_coef or welfare_coef
    eff_coef = eff_coef or welfare_coef
    n_blocks = -(-n // BLOCK_SIZE)

    def run(block):
        values = _block_values(block, n, seed, dist_d, dist_t, welfare_coef, trust_coef, eff_coef)
        return {q: math.fsum(v.tolist()) for q, v in values.items()}

    def run_dev(args):
        block, means = args
        values = _block_values(block, n, seed, dist_d, dist_t, welfare_coef, trust_coef, eff_coef)
        out = {}
        for q, v in values.items():
            dev = v - means[q]
            out[q] = (math.fsum(dev.tolist()), math.fsum((dev * dev).tolist()))
        return out

    with ThreadPoolExecutor(max_workers=workers) as pool:
        sums = list(pool.map(run, range(n_blocks)))
        means = {q: math.fsum(s[q] for s in sums) / n for q in QUANTITIES}
        devs = list(pool.map(run_dev, [(b, means) for b in range(n_blocks)]))

    estimates = {}
    for q in QUANTITIES:
        resid = math.fsum(dv[q][0] for dv in devs)
        sq = math.fsum(dv[q][1] for dv in devs)
        mean = means[q] + resid / n
        var = max(sq - resid * resid / n, 0.0) / (n - 1) if n > 1 else 0.0
        se = math.sqrt(var / n)
        estimates[q] = Estimate(mean, se, mean - Z95 * se, mean + Z95 * se)
        _warn_range(f"E[{q}]", mean)
    return MonteCarloReport(n, seed, estimates)
