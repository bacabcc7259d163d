"""IF-THEN fuzzy rules, min-conjunction firing and the nine default tDTSW rules."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigurationError, MissingEntryError
from .fuzzy_core import LinguisticVariable, default_tdtsw_variables


@dataclass(frozen=True)
class RuleAtom:
    variable: str
    label: str

    def __str__(self):
        return f"{self.variable} IS {self.label}"


@dataclass(frozen=True)
class Rule:
    id: str
    antecedents: tuple[RuleAtom, ...]
    consequent: RuleAtom

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))
        if not self.id:
            raise ConfigurationError("rule id must be non-empty")
        if not self.antecedents:
            raise ConfigurationError(f"rule {self.id} has no antecedents")
        names = [atom.variable for atom in self.antecedents]
        if len(set(names)) != len(names):
            raise ConfigurationError(f"rule {self.id} repeats an antecedent variable")
        if self.consequent.variable in names:
            raise ConfigurationError(
                f"rule {self.id} uses its consequent variable {self.consequent.variable} as an antecedent"
            )

    def __str__(self):
        lhs = " AND ".join(str(atom) for atom in self.antecedents)
        return f"IF {lhs} THEN {self.consequent}"


@dataclass(frozen=True)
class RuleBase:
    """An ordered, single-output rule set together with its vocabulary.

    ``inputs`` keeps declaration order; ``output`` is the one consequent
    variable every rule concludes about.
    """

    rules: tuple[Rule, ...]
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if not self.rules:
            raise ConfigurationError("rule base is empty")
        ids = [rule.id for rule in self.rules]
        if len(set(ids)) != len(ids):
            raise ConfigurationError("rule ids must be unique")
        names = [var.name for var in self.inputs] + [self.output.name]
        if len(set(names)) != len(names):
            raise ConfigurationError("variable names must be unique")
        lookup = self.variables
        for rule in self.rules:
            if rule.consequent.variable != self.output.name:
                raise ConfigurationError(
                    f"rule {rule.id} concludes about {rule.consequent.variable}, "
                    f"expected the output variable {self.output.name}"
                )
            self.output.rank(rule.consequent.label)
            for atom in rule.antecedents:
                if atom.variable not in lookup or atom.variable == self.output.name:
                    raise MissingEntryError(f"unknown input variable {atom.variable!r} in rule {rule.id}")
                lookup[atom.variable].rank(atom.label)

    @property
    def variables(self) -> dict[str, LinguisticVariable]:
        out = {var.name: var for var in self.inputs}
        out[self.output.name] = self.output
        return out

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def rule(self, rule_id: str) -> Rule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise MissingEntryError(f"no rule with id {rule_id!r}")


def firing_strength(rule: Rule, fuzzified: Mapping[str, Mapping[str, float]]) -> float:
    """Minimum of the antecedent degrees named by ``rule``."""
    degrees = []
    for atom in rule.antecedents:
        try:
            degrees.append(fuzzified[atom.variable][atom.label])
        except KeyError:
            raise MissingEntryError(
                f"rule {rule.id}: no degree for {atom.variable} IS {atom.label}"
            ) from None
    return min(degrees)


# (D label, T label) -> SW label, row-major over the label order.
TDTSW_RULE_TABLE = (
    ("Low", "Low", "Low"),
    ("Low", "Medium", "Medium"),
    ("Low", "High", "High"),
    ("Medium", "Low", "Medium"),
    ("Medium", "Medium", "Medium"),
    ("Medium", "High", "High"),
    ("High", "Low", "High"),
    ("High", "Medium", "High"),
    ("High", "High", "High"),
)


def default_tdtsw_rules() -> RuleBase:
    d, t, sw = default_tdtsw_variables()
    rules = tuple(
        Rule(f"R{i}", (RuleAtom("D", dl), RuleAtom("T", tl)), RuleAtom("SW", swl))
        for i, (dl, tl, swl) in enumerate(TDTSW_RULE_TABLE, start=1)
    )
    return RuleBase(rules, (d, t), sw)
