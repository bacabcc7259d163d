"""Fuzzy inference of Social Wellbeing from Democracy and Transparency ratings."""
from .errors import (CapacityError, ConfigurationError, DegenerateOutputError, DomainError,
                     MissingEntryError, TdtswError)
from .fuzzy_core import (LinguisticVariable, Trapezoidal, Triangular, UniverseInterval,
                         default_tdtsw_variables, fuzzify, membership)
from .inference import (Color, DefuzzMethod, InferenceResult, ScenarioTable, classify_label,
                        defuzzify, infer, scenario_grid)
from .rule_dsl import RuleSyntaxError, load, load_bundled, parse, print_canonical
from .rulebase import Rule, RuleAtom, RuleBase, default_tdtsw_rules, firing_strength

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConfigurationError", "DegenerateOutputError", "DomainError",
    "MissingEntryError", "TdtswError",
    "LinguisticVariable", "Trapezoidal", "Triangular", "UniverseInterval",
    "default_tdtsw_variables", "fuzzify", "membership",
    "Color", "DefuzzMethod", "InferenceResult", "ScenarioTable", "classify_label",
    "defuzzify", "infer", "scenario_grid",
    "RuleSyntaxError", "load", "load_bundled", "parse", "print_canonical",
    "Rule", "RuleAtom", "RuleBase", "default_tdtsw_rules", "firing_strength",
]
