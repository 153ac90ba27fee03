import pytest
from hypothesis import given, strategies as st

from cnlogic.comparison import (
    ComparisonModel,
    comparison_principle_holds,
    distinguishing_formula,
    enumerate_formulas,
    eval1,
    eval2,
    expressivity_separation,
    extension1,
    extension2,
    principle_violations,
)
from cnlogic.errors import SizeCapError, UnsupportedLanguageError
from cnlogic.lab import builtin_comparison
from cnlogic.syntax import TOP, And, Atom, Bel, desugar, parse, size, to_text, tr1

from conftest import formulas

PQ, P, Q, Z = 1, 2, 4, 8  # worlds pq, p, q, 0


def comparison_models():
    pair = st.tuples(st.integers(0, 7), st.integers(0, 7))
    return st.lists(pair, max_size=12).map(
        lambda geq: ComparisonModel(["x", "y", "z"], geq, {"p": 0b011, "q": 0b110}))


def test_builtin_models():
    n1, n2 = builtin_comparison()
    assert n1.worlds == ("pq", "p", "q", "0")
    assert n1.geq == {(PQ | P, PQ | Q), (P, Q)}
    assert n2.geq == {(P, Q)}
    assert n1.valuation == n2.valuation == {"p": PQ | P, "q": PQ | Q}


def test_comparison_examples():
    n1, n2 = builtin_comparison()
    f = parse("p >= q")
    assert all(eval2(n1, w, f) for w in n1.worlds)
    assert not any(eval2(n2, w, f) for w in n2.worlds)
    g = parse("B(p <-> ~q, p)")
    for n in (n1, n2):
        assert extension1(n, g) == n.full
        assert extension1(n, parse("B(p, q)")) == 0


def test_distinguishing_formula():
    n1, n2 = builtin_comparison()
    f = distinguishing_formula()
    assert extension2(n2, f) == n2.full
    assert extension2(n1, f) == 0


def test_belief_clause_is_not_strict_comparison_of_translation():
    # the belief clause reads geq directly, the translation asks for strictness
    n1, _ = builtin_comparison()
    f = Bel("a", TOP, TOP)
    assert extension1(n1, f) == 0
    assert extension2(n1, tr1(f)) == n1.full


@given(comparison_models(), formulas(agents=("a",), max_leaves=4), formulas(agents=("a",), max_leaves=4))
def test_belief_clause(n, x, y):
    a, b = extension1(n, x), extension1(n, y)
    expected = n.full if (a & b, a & ~b & n.full) in n.geq else 0
    assert extension1(n, Bel("a", x, y)) == expected


def test_language_guards():
    n1, _ = builtin_comparison()
    # the comparison abbreviation is read through belief under the first semantics
    assert extension1(n1, parse("p >= q")) == extension1(n1, desugar(parse("p >= q"), "cn"))
    with pytest.raises(UnsupportedLanguageError):
        extension2(n1, parse("B(p, q)"))
    with pytest.raises(UnsupportedLanguageError):
        extension1(n1, parse("[p] q"))
    with pytest.raises(UnsupportedLanguageError):
        n1.restrict(1)


def test_principle_examples():
    n1, n2 = builtin_comparison()
    assert comparison_principle_holds(ComparisonModel(["x", "y"], [], {}))
    assert not comparison_principle_holds(n2)
    assert (P | Z, Q | Z) in principle_violations(n1)
    # restricted to the pair the two models differ on, only N2 fails
    pq = [(PQ | P, PQ | Q)]
    assert comparison_principle_holds(n1, pq)
    assert not comparison_principle_holds(n2, pq)


def test_principle_cap():
    big = ComparisonModel([str(i) for i in range(5)], [], {})
    with pytest.raises(SizeCapError):
        comparison_principle_holds(big)


def test_enumeration():
    assert enumerate_formulas(0) == [TOP, Atom("p"), Atom("q")]
    fs = enumerate_formulas(2)
    assert len(fs) == len(set(fs)) == 696
    keys = [(size(f), to_text(f)) for f in fs]
    assert keys == sorted(keys)
    assert (And(Atom("q"), Atom("p")) in fs) != (And(Atom("p"), Atom("q")) in fs)
    with pytest.raises(ValueError):
        enumerate_formulas(1, language="pc")


def test_separation_report():
    report = expressivity_separation(2)
    assert report.separated
    assert report.formulas_checked == 696
    doc = report.to_dict()
    assert doc["qp_formula"] == to_text(distinguishing_formula())
    assert doc["principle_n2"] is False


def test_separation_detects_cn_difference():
    n1, _ = builtin_comparison()
    other = ComparisonModel(n1.worlds, n1.geq | {(PQ | P | Q | Z, 0)}, n1.valuation)
    report = expressivity_separation(1, models=(n1, other))
    assert "B{a}(T, T)" in report.disagreements
    assert not report.separated
