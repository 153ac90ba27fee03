from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cnlogic.errors import LengthMismatchError, SizeCapError, UnknownWorldError
from cnlogic.lab import ModelSpec, builtin_ellsberg, builtin_lottery, random_weight_model
from cnlogic.lab.builtins import lottery_world
from cnlogic.semantics import extension as generic_extension
from cnlogic.syntax import TOP, And, Atom, Bel, Geq, Not, Or, parse
from cnlogic.weight_model import (
    WeightModel,
    a4_formula,
    as_fraction,
    check_a4,
    e_holds,
    eval_weight,
    extension,
    induce_cn,
    sure_thing,
    tautological_e,
    validate_weight,
)
from cnlogic.worldset import popcount, submasks

from conftest import formulas

p, q = Atom("p"), Atom("q")


def weight_models(n_max=7):
    return st.tuples(st.integers(1, n_max), st.integers(1, 2), st.integers(1, 6), st.integers(0, 10**6)).map(
        lambda t: random_weight_model(ModelSpec(t[0], t[1], t[2], ("p", "q"), "mixed"), t[3]))


def test_lottery_believes_bought_ticket():
    m = builtin_lottery(4, 1, 5)
    for w in m.worlds:
        assert eval_weight(m, w, Bel("a", TOP, Atom("win_1")))
        assert not eval_weight(m, w, Bel("a", TOP, Atom("win_2")))


def test_two_way_tie_is_not_belief():
    m = WeightModel(["u", "v"], ["a"], {"a": [3]}, {"a": {"u": 1, "v": 1}}, {"p": 1})
    assert not eval_weight(m, "u", Bel("a", TOP, p))
    assert eval_weight(m, "u", Geq("a", p, Not(p)))


def test_exact_rationals_decide_close_calls():
    m = WeightModel(["u", "v", "w"], ["a"], {"a": [7]},
                    {"a": {"u": Fraction(1, 3), "v": Fraction(1, 6), "w": Fraction(1, 6) + Fraction(1, 10**12)}},
                    {"p": 1})
    assert not eval_weight(m, "u", Bel("a", TOP, p))
    assert eval_weight(m, "u", Bel("a", TOP, Not(p)))


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/2") == Fraction(3, 2)


def test_validate_weight_flags_nonpositive_and_missing():
    m = WeightModel(["u", "v"], ["a"], {"a": [3]}, {"a": {"u": 0}}, {})
    assert validate_weight(m).conditions() == {"weight-positive", "weight-missing"}
    assert validate_weight(builtin_lottery(5)).ok


def test_induced_lottery_families():
    m = induce_cn(builtin_lottery(4, 0, 5))
    full = 0b1111
    t = 0b0001
    for key in submasks(full):
        fam = m.nbhd[("a", full, key)]
        if key & t:
            assert fam == frozenset(y for y in submasks(key) if y & t)
        else:
            assert fam == frozenset(y for y in submasks(key) if 2 * popcount(y) > popcount(key))
    assert m.nbhd[("a", full, 0)] == frozenset()
    assert m.nbhd[("a", full, 0b1110)] == frozenset({0b0110, 0b1010, 0b1100, 0b1110})


def test_induce_cap():
    with pytest.raises(SizeCapError):
        induce_cn(builtin_lottery(13))


@given(weight_models(), formulas(atoms=("p", "q"), agents=("a",), comparison=True))
def test_direct_and_induced_agree(m, f):
    assert extension(m, f) == generic_extension(induce_cn(m), f)


@given(weight_models(), formulas(atoms=("p", "q"), agents=("a",), comparison=True))
def test_comparison_paths_agree(m, f):
    assert extension(m, f, geq="direct") == extension(m, f, geq="tr2")


@given(weight_models(), formulas(agents=("a",), max_leaves=5), formulas(agents=("a",), max_leaves=5))
def test_sure_thing_on_weight_models(m, phi, psi):
    assert all(sure_thing(m, w, "a", phi, psi) for w in m.worlds)


def test_sure_thing_fails_on_the_urn():
    m = builtin_ellsberg()
    gr, gg, gy = Atom("Gr"), Atom("Gg"), Atom("Gy")
    assert not any(sure_thing(m, w, "a", Or(gr, gy), Or(gr, gg)) for w in m.worlds)
    assert all(sure_thing(m, w, "a", TOP, Or(gr, gg)) for w in m.worlds)


def test_large_model_uses_array_sums():
    n = 5000
    m = builtin_lottery(n, 3)
    assert eval_weight(m, lottery_world(0, n), Bel("a", TOP, Atom(f"win_{lottery_world(3, n)}")))
    assert m.mass("a", m.full) == 2 * n - 1


def test_e_examples():
    m = random_weight_model(ModelSpec(4, 1, 4, ("p", "q")), 3)
    for w in m.worlds:
        assert e_holds(m, w, "a", [p], [p])
        assert e_holds(m, w, "a", [p, Not(p)], [TOP, Not(TOP)])
    differ = WeightModel(["u", "v"], ["a"], {"a": [3]}, {"a": {"u": 1, "v": 1}}, {"p": 1, "q": 2})
    assert not e_holds(differ, "u", "a", [p], [q])


def test_e_length_mismatch_and_unknown_world():
    m = builtin_lottery(2)
    with pytest.raises(LengthMismatchError):
        e_holds(m, "0", "a", [p], [])
    with pytest.raises(LengthMismatchError):
        a4_formula("a", [], [])
    with pytest.raises(UnknownWorldError):
        e_holds(m, "nowhere", "a", [p], [p])


def test_a4_identical_lists():
    m = random_weight_model(ModelSpec(5, 1, 5, ("p", "q")), 11)
    for w in m.worlds:
        assert check_a4(m, w, "a", [p, q], [p, q])
        assert check_a4(m, w, "a", [p], [p])


@given(weight_models(n_max=6), st.lists(formulas(modal=False, max_leaves=4), min_size=2, max_size=4))
def test_a4_balanced_lists(m, alphas):
    x, y = alphas[0], alphas[1]
    betas = [And(x, y), Or(x, y)] + alphas[2:]
    assert tautological_e(alphas, betas, ["p", "q"])
    for w in m.worlds:
        assert check_a4(m, w, "a", alphas, betas)


def test_tautological_e():
    assert tautological_e([p, q], [And(p, q), Or(p, q)], ["p", "q"])
    assert not tautological_e([p], [q], ["p", "q"])
