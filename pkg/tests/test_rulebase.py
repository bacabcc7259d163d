import itertools

import pytest
from hypothesis import given, strategies as st

from tdtsw.errors import ConfigurationError, MissingEntryError
from tdtsw.rulebase import Rule, RuleAtom, RuleBase, firing_strength

LABELS = ("Low", "Medium", "High")
deg = st.floats(0, 1)


def _fz(d, t):
    return {"D": d, "T": t}


def test_firing_is_min(rulebase):
    r5 = rulebase.rule("R5")
    fz = _fz({"Low": 0, "Medium": 0.5, "High": 0}, {"Low": 0.3, "Medium": 0.7, "High": 0})
    assert firing_strength(r5, fz) == 0.5
    r1 = rulebase.rule("R1")
    assert firing_strength(r1, _fz({"Low": 0.0}, {"Low": 0.9})) == 0.0
    r9 = rulebase.rule("R9")
    assert firing_strength(r9, _fz({"High": 1.0}, {"High": 1.0})) == 1.0


def test_missing_atom_is_named(rulebase):
    with pytest.raises(MissingEntryError, match="T IS Low"):
        firing_strength(rulebase.rule("R1"), {"D": {"Low": 1.0}})


@given(deg, deg, deg)
def test_firing_bounded_and_monotone(a, b, bump):
    rule = Rule("X", (RuleAtom("D", "Low"), RuleAtom("T", "Low")), RuleAtom("SW", "Low"))
    base = firing_strength(rule, _fz({"Low": a}, {"Low": b}))
    raised = firing_strength(rule, _fz({"Low": max(a, bump)}, {"Low": b}))
    assert 0.0 <= base <= 1.0
    assert raised >= base


def test_default_rules_text(rulebase):
    assert len(rulebase) == 9
    assert str(rulebase.rule("R1")) == "IF D IS Low AND T IS Low THEN SW IS Low"
    assert str(rulebase.rule("R7")) == "IF D IS High AND T IS Low THEN SW IS High"
    got = [(r.antecedents[0].label, r.antecedents[1].label, r.consequent.label) for r in rulebase]
    assert got == [
        ("Low", "Low", "Low"), ("Low", "Medium", "Medium"), ("Low", "High", "High"),
        ("Medium", "Low", "Medium"), ("Medium", "Medium", "Medium"), ("Medium", "High", "High"),
        ("High", "Low", "High"), ("High", "Medium", "High"), ("High", "High", "High"),
    ]
    assert [r.id for r in rulebase] == [f"R{i}" for i in range(1, 10)]


def test_default_rules_complete_and_symmetric(rulebase):
    table = {(r.antecedents[0].label, r.antecedents[1].label): r.consequent.label for r in rulebase}
    assert set(table) == set(itertools.product(LABELS, LABELS))
    for a, b in table:
        assert table[a, b] == table[b, a]


def test_rule_invariants(variables):
    d, t, sw = variables
    with pytest.raises(ConfigurationError):
        Rule("R", (), RuleAtom("SW", "Low"))
    with pytest.raises(ConfigurationError):
        Rule("R", (RuleAtom("D", "Low"), RuleAtom("D", "High")), RuleAtom("SW", "Low"))
    with pytest.raises(ConfigurationError):
        Rule("R", (RuleAtom("SW", "Low"),), RuleAtom("SW", "Low"))
    single = Rule("R", (RuleAtom("D", "Low"),), RuleAtom("SW", "Low"))
    assert len(RuleBase((single,), (d,), sw)) == 1
    with pytest.raises(ConfigurationError, match="empty"):
        RuleBase((), (d, t), sw)
    with pytest.raises(ConfigurationError, match="unique"):
        RuleBase((single, single), (d,), sw)
    with pytest.raises(MissingEntryError):
        RuleBase((Rule("R", (RuleAtom("D", "Loww"),), RuleAtom("SW", "Low")),), (d,), sw)
    with pytest.raises(ConfigurationError, match="output"):
        RuleBase((Rule("R", (RuleAtom("D", "Low"),), RuleAtom("T", "Low")),), (d,), sw)
