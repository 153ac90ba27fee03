import pytest
from hypothesis import given, strategies as st

from cnlogic.errors import ParseError, UnsupportedLanguageError
from cnlogic.syntax import (
    BOT,
    TOP,
    And,
    AnnFact,
    AnnValue,
    Approx,
    Atom,
    Bel,
    Geq,
    Gt,
    Iff,
    Implies,
    Know,
    Language,
    Not,
    Or,
    Poss,
    depth,
    desugar,
    intern,
    is_core,
    language_of,
    parse,
    subformulas,
    to_text,
    tr1,
    tr2,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")

atom_names = st.sampled_from(["p", "q", "win_0003", "Gr", "x1"])
agent_names = st.sampled_from(["a", "b", "alice"])


def _extend(sub):
    two = lambda cls: st.builds(cls, sub, sub)
    modal = lambda cls: st.builds(cls, agent_names, sub, sub)
    return st.one_of(
        sub.map(Not), two(And), two(Or), two(Implies), two(Iff),
        modal(Bel), modal(Geq), modal(Gt), modal(Approx),
        st.builds(Know, agent_names, sub), st.builds(Poss, agent_names, sub),
        two(AnnFact), two(AnnValue),
    )


any_formula = st.recursive(st.one_of(st.just(TOP), st.just(BOT), atom_names.map(Atom)), _extend, max_leaves=10)


@given(any_formula)
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f


@given(any_formula)
def test_desugar_idempotent_and_core(f):
    for target in ("cn", "qp", "core"):
        g = desugar(f, target)
        assert is_core(g)
        assert desugar(g, target) == g


@given(any_formula)
def test_desugar_cn_has_no_comparisons(f):
    assert not any(isinstance(g, Geq) for g in subformulas(desugar(f, "cn")))


@given(any_formula)
def test_intern_shares_equal_subterms(f):
    table = {}
    a, b = intern(f, table), intern(parse(to_text(f)), table)
    assert a is b and a == f


def test_constructor_examples():
    assert parse("B{a}(p, q)") == Bel("a", p, q)
    assert parse("B(p, q)") == Bel("a", p, q)
    assert parse("K{a} p") == Know("a", p)
    assert parse("p & q | r") == Or(And(p, q), r)
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("[p] q") == AnnFact(p, q)
    assert parse("[+-p] q") == AnnValue(p, q)
    assert parse("p ≽{b} q") == Geq("b", p, q)
    assert parse("¬p ∧ ⊤") == And(Not(p), TOP)


def test_knowledge_desugars_to_belief():
    assert desugar(parse("K{a} p")) == Not(Bel("a", Not(p), TOP))


def test_strict_comparison_desugars_to_belief():
    assert desugar(parse("p >{a} q")) == Bel("a", desugar(Iff(p, Not(q))), p)


def test_weak_comparison_with_top():
    g = desugar(Geq("a", p, TOP), "cn")
    assert g == Not(Bel("a", desugar(Iff(TOP, Not(p))), TOP))


def test_core_formula_is_fixed_point():
    f = Bel("a", p, q)
    assert desugar(f) is f or desugar(f) == f


def test_tr1_examples():
    core = lambda f: desugar(f, "qp")
    assert tr1(Bel("a", p, q)) == core(Gt("a", And(p, q), And(p, Not(q))))
    assert tr1(TOP) == TOP
    assert tr1(Bel("a", TOP, p)) == core(Gt("a", And(TOP, p), And(TOP, Not(p))))


def test_tr2_examples():
    core = lambda f: desugar(f, "cn")
    assert tr2(Geq("a", p, q)) == core(Not(Bel("a", Iff(p, Not(q)), q)))
    assert tr2(BOT) == core(BOT)
    assert tr2(And(Geq("a", p, q), r)) == core(And(Not(Bel("a", Iff(p, Not(q)), q)), r))


def test_translations_reject_foreign_operators():
    with pytest.raises(UnsupportedLanguageError):
        tr2(Bel("a", p, q))
    with pytest.raises(UnsupportedLanguageError):
        tr1(AnnFact(p, q))


def test_language_of():
    assert language_of(parse("p & ~q")) is Language.CN
    assert language_of(parse("B(p, q)")) is Language.CN
    assert language_of(parse("K{a} p")) is Language.CN
    assert language_of(parse("p >= q")) is Language.QP
    assert language_of(parse("[p] B(T, q)")) is Language.PC
    assert language_of(parse("[+-p] B(T, q)")) is Language.PCPM
    assert language_of(parse("[p] [+-q] r")) is Language.MIXED


def test_depth():
    assert depth(p) == 0
    assert depth(parse("B(p, ~q)")) == 2


@pytest.mark.parametrize("text", ["", "p &", "B{a}(p q)", "(p", "p >= q >= r", "p $ q", "[p q"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)
