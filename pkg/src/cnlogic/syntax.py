"""Formulas: abstract syntax, text grammar, desugaring and translations.

One AST serves every language.  The *core* constructors are ``Top``,
``Atom``, ``Not``, ``And``, ``Bel`` (conditional belief), ``Geq`` (comparative
likelihood), ``AnnFact`` (``[f] g``) and ``AnnValue`` (``[+-f] g``).  The
remaining node classes are surface sugar; :func:`desugar` removes them.

Text grammar (ASCII; unicode aliases are accepted on input)::

    T  F  p  ~f  f & g  f | g  f -> g  f <-> g
    B{a}(f, g)  K{a} f  Kd{a} f
    f >{a} g   f >={a} g   f ~={a} g
    [f] g   [+-f] g

Binding strength, tightest first: unary operators and announcements, ``&``,
``|``, the comparisons, ``->`` (right associative), ``<->``.  ``B`` and the
comparisons may omit the ``{a}`` index, meaning agent ``a``; ``K`` and ``Kd``
always need it.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import ParseError, UnsupportedLanguageError

DEFAULT_AGENT = "a"


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Bel:
    """``B_a(cond, body)``: conditional on ``cond``, agent bets on ``body``."""

    agent: str
    cond: "Formula"
    body: "Formula"


@dataclass(frozen=True, slots=True)
class Geq:
    """``left >=_a right``: agent finds ``left`` at least as likely."""

    agent: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class AnnFact:
    announced: "Formula"
    body: "Formula"


@dataclass(frozen=True, slots=True)
class AnnValue:
    announced: "Formula"
    body: "Formula"


# surface sugar


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Know:
    agent: str
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class Poss:
    """Dual of knowledge, ``Kd{a} f`` = ``~K{a} ~f``."""

    agent: str
    sub: "Formula"


@dataclass(frozen=True, slots=True)
class Gt:
    agent: str
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Approx:
    agent: str
    left: "Formula"
    right: "Formula"


Formula = Union[
    Top, Atom, Not, And, Bel, Geq, AnnFact, AnnValue,
    Bot, Or, Implies, Iff, Know, Poss, Gt, Approx,
]

CORE_TYPES = (Top, Atom, Not, And, Bel, Geq, AnnFact, AnnValue)
SUGAR_TYPES = (Bot, Or, Implies, Iff, Know, Poss, Gt, Approx)

TOP = Top()
BOT = Bot()


def children(f: Formula) -> tuple:
    if isinstance(f, (Top, Bot, Atom)):
        return ()
    if isinstance(f, (Not, Know, Poss)):
        return (f.sub,)
    if isinstance(f, Bel):
        return (f.cond, f.body)
    if isinstance(f, (AnnFact, AnnValue)):
        return (f.announced, f.body)
    return (f.left, f.right)


def rebuild(f: Formula, kids: tuple) -> Formula:
    """Same node as ``f`` with its children replaced."""
    if not kids:
        return f
    if isinstance(f, (Not,)):
        return Not(kids[0])
    if isinstance(f, (Know, Poss)):
        return type(f)(f.agent, kids[0])
    if isinstance(f, (Bel, Geq, Gt, Approx)):
        return type(f)(f.agent, kids[0], kids[1])
    return type(f)(kids[0], kids[1])


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for k in children(f):
        yield from subformulas(k)


def size(f: Formula) -> int:
    """Number of AST nodes."""
    return sum(1 for _ in subformulas(f))


def depth(f: Formula) -> int:
    kids = children(f)
    return 1 + max(depth(k) for k in kids) if kids else 0


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def agents(f: Formula) -> set[str]:
    return {g.agent for g in subformulas(f) if hasattr(g, "agent")}


def is_core(f: Formula) -> bool:
    return all(isinstance(g, CORE_TYPES) for g in subformulas(f))


# convenience builders used by the lab and the tests

def conj(*fs: Formula) -> Formula:
    if not fs:
        return TOP
    out = fs[0]
    for g in fs[1:]:
        out = And(out, g)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return BOT
    out = fs[0]
    for g in fs[1:]:
        out = Or(out, g)
    return out


def intern(f: Formula, table: dict) -> Formula:
    """Hash-cons ``f``: structurally equal subterms become one object."""
    kids = tuple(intern(k, table) for k in children(f))
    key = (type(f), getattr(f, "agent", None), getattr(f, "name", None),
           tuple(id(k) for k in kids))
    hit = table.get(key)
    if hit is None:
        # the stored node references its children, keeping their ids unique
        hit = rebuild(f, kids)
        table[key] = hit
    return hit


# ---------------------------------------------------------------------------
# languages


class Language(str, enum.Enum):
    CN = "CN"
    QP = "QP"
    PC = "PC"
    PCPM = "PC+-"
    MIXED = "mixed"


def language_of(f: Formula) -> Language:
    """Least language containing ``f``.

    Purely boolean formulas belong to every language and are reported as
    ``CN``.  Knowledge and the comparisons are abbreviations available in
    both base languages; ``>=`` marks a formula as ``QP`` only when no belief
    operator or announcement occurs.
    """
    raw = {type(g) for g in subformulas(f)}
    fact, value = AnnFact in raw, AnnValue in raw
    if fact and value:
        return Language.MIXED
    if fact:
        return Language.PC
    if value:
        return Language.PCPM
    if Geq in raw and Bel not in raw:
        return Language.QP
    return Language.CN


def in_language(f: Formula, lang: Language) -> bool:
    raw = {type(g) for g in subformulas(f)}
    if lang is Language.QP:
        return not raw & {Bel, AnnFact, AnnValue}
    allowed = {Language.CN: set(), Language.PC: {AnnFact},
               Language.PCPM: {AnnValue}, Language.MIXED: {AnnFact, AnnValue}}[lang]
    return not (raw & {AnnFact, AnnValue}) - allowed


# ---------------------------------------------------------------------------
# desugaring


def desugar(f: Formula, target: str = "cn") -> Formula:
    """Rewrite ``f`` into core constructors.

    ``target="cn"`` eliminates every defined operator in favour of ``Bel``
    (``>=`` included).  ``target="qp"`` keeps ``Geq`` and expresses the
    knowledge and comparison operators through it; belief nodes are left in
    place.  ``target="core"`` is what the evaluators use: knowledge goes to
    ``Bel`` as in ``"cn"``, comparisons go to ``Geq`` as in ``"qp"``.
    """
    if target not in ("cn", "qp", "core"):
        raise ValueError(f"unknown desugaring target {target!r}")
    return _desugar(f, target)


def _implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def _iff(a: Formula, b: Formula) -> Formula:
    return And(_implies(a, b), _implies(b, a))


def _gt_cn(agent, a, b):
    return Bel(agent, _iff(a, Not(b)), a)


def _desugar(f: Formula, mode: str) -> Formula:
    qp = mode == "qp"
    cmp_geq = mode != "cn"
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Bot):
        return Not(TOP)
    if isinstance(f, Not):
        return Not(_desugar(f.sub, mode))
    if isinstance(f, And):
        return And(_desugar(f.left, mode), _desugar(f.right, mode))
    if isinstance(f, Or):
        return Not(And(Not(_desugar(f.left, mode)), Not(_desugar(f.right, mode))))
    if isinstance(f, Implies):
        return _implies(_desugar(f.left, mode), _desugar(f.right, mode))
    if isinstance(f, Iff):
        return _iff(_desugar(f.left, mode), _desugar(f.right, mode))
    if isinstance(f, Bel):
        return Bel(f.agent, _desugar(f.cond, mode), _desugar(f.body, mode))
    if isinstance(f, AnnFact):
        return AnnFact(_desugar(f.announced, mode), _desugar(f.body, mode))
    if isinstance(f, AnnValue):
        return AnnValue(_desugar(f.announced, mode), _desugar(f.body, mode))
    if isinstance(f, Know):
        sub = _desugar(f.sub, mode)
        return Geq(f.agent, sub, TOP) if qp else Not(Bel(f.agent, Not(sub), TOP))
    if isinstance(f, Poss):
        return Not(_desugar(Know(f.agent, Not(f.sub)), mode))
    a, b = _desugar(f.left, mode), _desugar(f.right, mode)
    if isinstance(f, Geq):
        return Geq(f.agent, a, b) if cmp_geq else Not(_gt_cn(f.agent, b, a))
    if isinstance(f, Gt):
        return Not(Geq(f.agent, b, a)) if cmp_geq else _gt_cn(f.agent, a, b)
    if isinstance(f, Approx):
        if cmp_geq:
            return And(Geq(f.agent, a, b), Geq(f.agent, b, a))
        return And(Not(_gt_cn(f.agent, a, b)), Not(_gt_cn(f.agent, b, a)))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# translations


def tr1(f: Formula) -> Formula:
    """Translate a belief formula into the comparative language.

    ``B_a(x, y)`` becomes ``(x & y) >_a (x & ~y)``, expressed with ``Geq``;
    booleans are mapped node for node.
    """
    g = desugar(f, "cn")
    if not in_language(g, Language.CN):
        raise UnsupportedLanguageError("tr1 accepts announcement-free formulas only")
    return _tr1(g)


def _tr1(f):
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_tr1(f.sub))
    if isinstance(f, And):
        return And(_tr1(f.left), _tr1(f.right))
    x, y = _tr1(f.cond), _tr1(f.body)
    # (x&y) > (x&~y)  ==  ~((x&~y) >= (x&y))
    return Not(Geq(f.agent, And(x, Not(y)), And(x, y)))


def tr2(f: Formula) -> Formula:
    """Translate a comparative formula into the belief language.

    ``x >=_a y`` becomes ``~B_a(x <-> ~y, y)``; booleans node for node.
    """
    g = desugar(f, "qp")
    if not in_language(g, Language.QP):
        raise UnsupportedLanguageError("tr2 accepts belief- and announcement-free formulas only")
    return _tr2(g)


def _tr2(f):
    if isinstance(f, (Top, Atom)):
        return f
    if isinstance(f, Not):
        return Not(_tr2(f.sub))
    if isinstance(f, And):
        return And(_tr2(f.left), _tr2(f.right))
    x, y = _tr2(f.left), _tr2(f.right)
    return Not(Bel(f.agent, _iff(x, Not(y)), y))


# ---------------------------------------------------------------------------
# printing

_PREC_IFF, _PREC_IMP, _PREC_CMP, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = range(1, 8)


def _prec(f: Formula) -> int:
    if isinstance(f, Iff):
        return _PREC_IFF
    if isinstance(f, Implies):
        return _PREC_IMP
    if isinstance(f, (Gt, Geq, Approx)):
        return _PREC_CMP
    if isinstance(f, Or):
        return _PREC_OR
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, (Not, Know, Poss, AnnFact, AnnValue)):
        return _PREC_UNARY
    return _PREC_ATOM


_CMP_OPS = {Gt: ">", Geq: ">=", Approx: "~="}
_BIN_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    """Print ``f`` in the ASCII grammar; ``parse(to_text(f)) == f``."""
    return _show(f, 0)


def _wrap(f: Formula, need: int) -> str:
    s = _show(f, need)
    return f"({s})" if _prec(f) < need else s


def _show(f: Formula, need: int) -> str:
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + _wrap(f.sub, _PREC_UNARY)
    if isinstance(f, Know):
        return f"K{{{f.agent}}} " + _wrap(f.sub, _PREC_UNARY)
    if isinstance(f, Poss):
        return f"Kd{{{f.agent}}} " + _wrap(f.sub, _PREC_UNARY)
    if isinstance(f, AnnFact):
        return f"[{_show(f.announced, 0)}] " + _wrap(f.body, _PREC_UNARY)
    if isinstance(f, AnnValue):
        return f"[+-{_show(f.announced, 0)}] " + _wrap(f.body, _PREC_UNARY)
    if isinstance(f, Bel):
        return f"B{{{f.agent}}}({_show(f.cond, 0)}, {_show(f.body, 0)})"
    p = _prec(f)
    if type(f) in _CMP_OPS:
        op = f"{_CMP_OPS[type(f)]}{{{f.agent}}}"
        return f"{_wrap(f.left, p + 1)} {op} {_wrap(f.right, p + 1)}"
    op = _BIN_OPS[type(f)]
    if isinstance(f, Implies):
        return f"{_wrap(f.left, p + 1)} {op} {_wrap(f.right, p)}"
    return f"{_wrap(f.left, p)} {op} {_wrap(f.right, p + 1)}"


# ---------------------------------------------------------------------------
# parsing

_UNICODE = [
    ("¬", "~"), ("∧", "&"), ("∨", "|"), ("↔", "<->"), ("→", "->"),
    ("⊤", "T"), ("⊥", "F"), ("≽", ">="), ("⪰", ">="), ("≻", ">"),
    ("≈", "~="), ("±", "+-"),
]

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<op><->|->|>=|~=|\+-|[~&|>()\[\],])"
    r"|(?P<agent>\{\s*[A-Za-z0-9_]+\s*\})"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r")"
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        value = m.group(kind)
        if kind == "agent":
            value = value[1:-1].strip()
        out.append(_Tok(kind, value, start))
        pos = m.end()
    out.append(_Tok("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.take()
        if tok.text != text or tok.kind not in ("op",):
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return tok

    def is_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in texts

    def agent(self) -> str:
        if self.peek().kind == "agent":
            return self.take().text
        return DEFAULT_AGENT

    def formula(self) -> Formula:
        left = self.implication()
        while self.is_op("<->"):
            self.take()
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.comparison()
        if self.is_op("->"):
            self.take()
            return Implies(left, self.implication())
        return left

    def comparison(self) -> Formula:
        left = self.disjunction()
        if self.is_op(">", ">=", "~="):
            op = self.take().text
            agent = self.agent()
            right = self.disjunction()
            node = {">": Gt, ">=": Geq, "~=": Approx}[op]
            left = node(agent, left, right)
            if self.is_op(">", ">=", "~="):
                raise ParseError("comparisons do not chain; add parentheses", self.peek().pos)
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.is_op("|"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.is_op("&"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if self.is_op("~"):
            self.take()
            return Not(self.unary())
        if self.is_op("["):
            self.take()
            value = self.is_op("+-")
            if value:
                self.take()
            announced = self.formula()
            self.expect("]")
            body = self.unary()
            return AnnValue(announced, body) if value else AnnFact(announced, body)
        if tok.kind == "ident" and tok.text in ("K", "Kd") and self.toks[self.i + 1].kind == "agent":
            self.take()
            agent = self.agent()
            sub = self.unary()
            return Know(agent, sub) if tok.text == "K" else Poss(agent, sub)
        return self.primary()

    def primary(self) -> Formula:
        tok = self.take()
        if tok.kind == "op" and tok.text == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            nxt = self.peek()
            if tok.text == "B" and (nxt.kind == "agent" or (nxt.kind == "op" and nxt.text == "(")):
                agent = self.agent()
                self.expect("(")
                cond = self.formula()
                self.expect(",")
                body = self.formula()
                self.expect(")")
                return Bel(agent, cond, body)
            if tok.text == "T":
                return TOP
            if tok.text == "F":
                return BOT
            return Atom(tok.text)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos)


def parse(text: str) -> Formula:
    """Parse a formula; sugar nodes are kept (see :func:`desugar`)."""
    for uni, ascii_ in _UNICODE:
        text = text.replace(uni, ascii_)
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return f
