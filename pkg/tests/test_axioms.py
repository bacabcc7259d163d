import itertools
import random

import pytest
from hypothesis import given, strategies as st

from tdtsw.axioms import (And, Atom, FORMULA_NAMES, Implies, Not, Or, POSTULATES, assignments,
                          atoms, build_formula, check_postulate, evaluate, format_assignment,
                          models, parse_assignment)
from tdtsw.errors import CapacityError, ConfigurationError, MissingEntryError

D, T = Atom("D"), Atom("T")


def adtsw_oracle(D, T, I, A, C, SW, R):
    # Written straight from the printed axiom line, independent of the AST.
    imp = lambda p, q: (not p) or q  # noqa: E731
    return (imp(D, T) and imp(T, I) and imp(I, A) and imp(I, C) and imp(A and C, D)
            and imp(D, SW) and imp(T, SW) and imp(R, D and T))


def to_python(f):
    if isinstance(f, Atom):
        return f"v[{f.name!r}]"
    if isinstance(f, Not):
        return f"(not {to_python(f.operand)})"
    if isinstance(f, And):
        return f"({to_python(f.left)} and {to_python(f.right)})"
    if isinstance(f, Or):
        return f"({to_python(f.left)} or {to_python(f.right)})"
    return f"((not {to_python(f.left)}) or {to_python(f.right)})"


def formulas(names=("D", "T", "I", "A")):
    leaves = st.sampled_from(names).map(Atom)
    return st.recursive(leaves, lambda sub: st.one_of(
        sub.map(Not),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
    ), max_leaves=10)


def test_implication_truth_table():
    assert evaluate(Implies(D, T), {"D": True, "T": False}) is False
    assert evaluate(Implies(D, T), {"D": False, "T": False}) is True
    for v in (True, False):
        assert evaluate(And(D, Not(D)), {"D": v}) is False


def test_missing_atom():
    with pytest.raises(MissingEntryError, match="T"):
        evaluate(Implies(D, T), {"D": True})


@given(formulas())
def test_eval_matches_truth_table_oracle(f):
    src = compile(to_python(f), "<oracle>", "eval")
    for v in assignments(atoms(f)):
        assert evaluate(f, v) == bool(eval(src, {}, {"v": v}))


@given(formulas(), formulas())
def test_de_morgan_and_implication(p, q):
    for v in assignments(atoms(p) | atoms(q)):
        assert evaluate(Not(And(p, q)), v) == evaluate(Or(Not(p), Not(q)), v)
        assert evaluate(Implies(p, q), v) == evaluate(Or(Not(p), q), v)


@given(formulas())
def test_models_complement(f):
    n = len(atoms(f))
    assert models(f).count + models(Not(f)).count == 2 ** n


def test_adtsw_atoms_and_values():
    f = build_formula("adtsw")
    assert atoms(f) == {"D", "T", "I", "A", "C_part", "SW", "R"}
    everything = {a: True for a in atoms(f)}
    assert evaluate(f, everything)
    assert not evaluate(f, {**everything, "T": False})


def test_adtsw_model_count_against_oracle():
    expected = sum(adtsw_oracle(*bits) for bits in itertools.product((False, True), repeat=7))
    result = models(build_formula("adtsw"), listing=True)
    assert expected == 8
    assert (result.count, result.total) == (8, 128)
    for v in result.listing:
        assert adtsw_oracle(v["D"], v["T"], v["I"], v["A"], v["C_part"], v["SW"], v["R"])
    lines = [format_assignment(v) for v in result.listing]
    assert lines == sorted(lines, key=lambda s: [int(c) for c in s if c in "01"])


def test_small_model_counts():
    assert models(And(D, Not(D))).count == 0
    assert (models(D).count, models(D).total) == (1, 2)


def test_capacity_guard():
    f = build_formula("pdtsw")
    assert len(atoms(f)) == 17
    with pytest.raises(CapacityError):
        models(f)
    assert models(build_formula("tdtsw")).total == 2 ** 14


def test_pdtsw_is_conjunction_of_postulates_exhaustive():
    f = build_formula("pdtsw")
    for v in assignments(atoms(f)):
        assert evaluate(f, v) == all(check_postulate(i, v) for i in range(1, 15))


def test_pdtsw_random_assignments():
    f = build_formula("pdtsw")
    names = sorted(atoms(f))
    rng = random.Random(2024)
    for _ in range(1000):
        v = {n: rng.random() < 0.5 for n in names}
        assert evaluate(f, v) == all(check_postulate(i, v) for i in range(1, 15))


def test_tdtsw_requires_d_and_theorems():
    f = build_formula("tdtsw")
    assert "SW" not in atoms(f) and "D" in atoms(f)
    everything = {a: True for a in atoms(f)}
    assert evaluate(f, everything)
    assert not evaluate(f, {**everything, "D": False})
    assert not evaluate(f, {**everything, "P_SW_up": False})


def test_postulate_examples():
    assert check_postulate(2, {"T": True, "I": False}) is False
    assert check_postulate(5, {"D": True, "A": True, "RD": True}) is True
    assert POSTULATES[8] == Implies(Atom("R"), And(D, T))
    with pytest.raises(MissingEntryError):
        check_postulate(15, {})


def test_assignment_text():
    assert parse_assignment("D=1, T=0") == {"D": True, "T": False}
    assert format_assignment({"T": False, "D": True}) == "D=1,T=0"
    for bad in ("D=2", "D", "Q=1", "D=1,D=0"):
        with pytest.raises(ConfigurationError):
            parse_assignment(bad)


def test_formula_names():
    assert FORMULA_NAMES == ("adtsw", "pdtsw", "tdtsw")
    with pytest.raises(ConfigurationError):
        build_formula("aDSGSW")
    with pytest.raises(ConfigurationError):
        Atom("GM")
