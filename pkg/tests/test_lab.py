import json
import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from cnlogic import io
from cnlogic.cn_model import derived_check, is_valid_family, validate
from cnlogic.errors import InfeasibleSpecError, SizeCapError, UnsupportedLanguageError
from cnlogic.lab import (
    CN_AXIOMS,
    SUITES,
    TOTALITY,
    FormulaSpec,
    ModelSpec,
    builtin_ellsberg,
    builtin_lottery,
    enumerate_families,
    find_countermodel,
    fuzz,
    majority_family,
    random_cn_model,
    random_formula,
    random_formulas,
    random_partition,
    random_weight_model,
    weight_representable,
)
from cnlogic.lab.fuzz import shrink
from cnlogic.lab.generators import partition_count
from cnlogic.lab.search import enumerate_cn_models, set_partitions
from cnlogic.semantics import extension, holds
from cnlogic.syntax import AnnValue, Atom, Bel, Geq, Not, parse, size, subformulas
from cnlogic.weight_model import induce_cn, sure_thing_formula
from cnlogic.worldset import popcount, submasks

# -- families ---------------------------------------------------------------------


def test_family_counts_golden():
    assert [len(enumerate_families(n)) for n in range(5)] == [1, 1, 3, 7, 35]


def test_small_families():
    assert enumerate_families(0)[0].members == frozenset()
    assert enumerate_families(1)[0].members == frozenset({1})
    assert [sorted(f.members) for f in enumerate_families(2)] == [[3], [1, 3], [2, 3]]


def test_families_are_sorted_and_valid():
    for n in range(5):
        fams = enumerate_families(n)
        keys = [(len(f), sorted((popcount(y), y) for y in f.members)) for f in fams]
        assert keys == sorted(keys)
        assert all(is_valid_family(f.ground, f.members) for f in fams)


def test_family_cap():
    with pytest.raises(SizeCapError):
        enumerate_families(5)


@pytest.mark.parametrize("ground", [0, 1, 0b11, 0b10110, 0b111111])
def test_majority_family(ground):
    fam = majority_family(ground)
    k = popcount(ground)
    assert fam == frozenset(y for y in submasks(ground) if 2 * popcount(y) > k)
    assert is_valid_family(ground, fam)


# -- exhaustive enumeration -------------------------------------------------------


def test_set_partitions():
    assert [sum(1 for _ in set_partitions(n)) for n in range(6)] == [1, 1, 2, 5, 15, 51]
    assert sum(1 for _ in set_partitions(5, largest=2)) == partition_count(5, 2)


def test_enumerated_models():
    models = list(enumerate_cn_models(2))
    assert len(models) == (3 + 1) * 16
    assert all(validate(m).ok for m in models)
    with pytest.raises(SizeCapError):
        next(enumerate_cn_models(5))


# -- generators -------------------------------------------------------------------


def test_partition_counts():
    assert [partition_count(n, n or 1) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]
    assert partition_count(4, 2) == 10


def test_random_partition_is_uniform():
    rng = random.Random(5)
    seen = {}
    for _ in range(3000):
        key = tuple(random_partition(4, 2, rng))
        seen[key] = seen.get(key, 0) + 1
    assert len(seen) == 10
    assert max(seen.values()) < 2 * min(seen.values())


def test_generators_are_deterministic():
    spec = ModelSpec(6, 2, 3, ("p", "q"), "mixed")
    assert random_cn_model(spec, 42) == random_cn_model(spec, 42)
    assert random_weight_model(spec, 42) == random_weight_model(spec, 42)
    fspec = FormulaSpec(3, ("p", "q"), "pcpm", ("a",))
    assert random_formulas(fspec, 5, 9) == random_formulas(fspec, 5, 9)


def test_infeasible_specs():
    with pytest.raises(InfeasibleSpecError):
        random_cn_model(ModelSpec(3, 1, 5, ("p",)), 0)
    with pytest.raises(InfeasibleSpecError):
        random_cn_model(ModelSpec(0, 1, 2, ("p",)), 0)
    with pytest.raises(InfeasibleSpecError):
        random_cn_model(ModelSpec(3, 1, 2, ("p",), "sideways"), 0)


def test_weight_induced_mode():
    spec = ModelSpec(5, 1, 4, ("p",), "weight-induced")
    m = random_cn_model(spec, 8)
    assert validate(m).ok
    assert weight_representable(m) is not None


def test_formula_languages():
    assert all(size(random_formula(FormulaSpec(0, ("p",), "cn"), s)) == 1 for s in range(20))
    pcpm = random_formulas(FormulaSpec(3, ("p",), "pcpm"), 200, 1)
    assert any(isinstance(g, AnnValue) for f in pcpm for g in subformulas(f))
    qp = random_formulas(FormulaSpec(3, ("p",), "qp"), 200, 1)
    assert any(isinstance(g, Geq) for f in qp for g in subformulas(f))
    assert not any(isinstance(g, Bel) for f in qp for g in subformulas(f))
    with pytest.raises(ValueError):
        random_formula(FormulaSpec(1, ("p",), "xx"), 0)


# -- fuzzing ----------------------------------------------------------------------


def test_fuzz_is_byte_identical():
    a = io.dumps(fuzz("stp-cn-expect-fail", 60, seed=3).to_dict())
    b = io.dumps(fuzz("stp-cn-expect-fail", 60, seed=3).to_dict())
    assert a == b


def test_urn_witness_leads_expected_failures():
    report = fuzz("stp-cn-expect-fail", 50, seed=0)
    assert report.ok and report.failed >= 1
    first = report.failures[0]
    assert first.trial == 0
    assert first.instance == ["Gr | Gy", "Gr | Gg"]
    assert first.model == io.model_to_dict(builtin_ellsberg())


@pytest.mark.parametrize("suite", sorted(s for s in SUITES if SUITES[s].expect == "valid"))
def test_suites_smoke(suite):
    report = fuzz(suite, 40, seed=1)
    assert report.ok, report.to_dict()["witnesses"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        fuzz("nope")


def test_shrink_reaches_small_instance():
    check = next(c for c in SUITES["stp-cn-expect-fail"].checks if c.name == "STP")
    m = builtin_ellsberg()
    big = [parse("(Gr | Gy) & (Gb | ~Gb)"), parse("~~(Gr | Gg)")]
    assert check.failing(m, big) is not None
    small = shrink(m, check, big)
    assert check.failing(m, small) is not None
    assert sum(size(f) for f in small) < sum(size(f) for f in big)


def test_schema_lists():
    assert len(CN_AXIOMS) == 17 and len(TOTALITY) == 7
    assert len({s.name for s in CN_AXIOMS + TOTALITY}) == 24


# -- countermodels and representability --------------------------------------------


def test_axiom_t_has_no_countermodel():
    assert find_countermodel(parse("K{a} p -> p")) is None


def test_belief_in_falsum_refuted_at_once():
    m, w = find_countermodel(parse("B(p, F)"))
    assert len(m.worlds) == 1
    assert not holds(m, w, parse("B(p, F)"))


def test_sure_thing_countermodel():
    f = sure_thing_formula("a", parse("r | y"), parse("r | g"))
    m, w = find_countermodel(f)
    assert validate(m).ok and derived_check(m).ok
    assert not holds(m, w, f)
    assert weight_representable(m) is None


def test_countermodel_guards():
    with pytest.raises(SizeCapError):
        find_countermodel(parse("p"), max_worlds=5)
    with pytest.raises(UnsupportedLanguageError):
        find_countermodel(parse("B{a}(p, q) & B{b}(p, q)"))


def test_countermodel_compiles_announcements():
    assert find_countermodel(parse("[p] B(T, p)")) is None
    m, w = find_countermodel(parse("[p] B(T, ~p)"))
    assert not holds(m, w, parse("[p] B(T, ~p)"))


def test_urn_is_not_weight_representable():
    assert weight_representable(builtin_ellsberg()) is None


@given(st.integers(1, 6), st.integers(1, 4), st.integers(0, 10**6))
def test_weight_models_are_representable(n, k, seed):
    m = induce_cn(random_weight_model(ModelSpec(n, 1, min(k, n), ("p",)), seed))
    w = weight_representable(m)
    assert w is not None
    assert induce_cn(w).nbhd == m.nbhd


def test_lottery_representable():
    m = induce_cn(builtin_lottery(4, 0, 5))
    w = weight_representable(m)
    assert extension(w, Bel("a", Not(Atom("win_0")), Atom("win_1"))) == 0
