"""Seeded property fuzzing over random models.

Each suite is a list of checks.  A check draws formulas for one random
model and reports the first world where the property fails (or a marker
for model-level failures).  Failing instances are shrunk while they keep
failing on the same model.  Every trial gets its own generator seeded from
``(suite, seed, trial)``, so reports are byte-for-byte reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from ..cn_model import derived_check, validate
from ..dynamics import SCHEMAS, announce_cut, compile_announcements, reduction_formula
from ..io import model_to_dict
from ..semantics import extension
from ..syntax import TOP, And, Atom, Formula, Or, children, size, to_text, tr1, tr2
from ..weight_model import _BelGeqView, a4_formula, e_holds, induce_cn
from ..worldset import iter_bits
from .builtins import builtin_ellsberg
from .generators import FormulaSpec, ModelSpec, _gen, random_cn_model, random_weight_model
from .schemas import CN_AXIOMS, STP, TOTALITY, Schema

MODEL_LEVEL = "<model>"


@dataclass(frozen=True)
class Check:
    """``failing(model, fs)`` returns a failing world name, ``MODEL_LEVEL`` or None."""

    name: str
    arity: int | Callable[[random.Random], int]
    language: str
    failing: Callable[[object, Sequence[Formula]], str | None]
    shrink: bool = True


@dataclass
class FuzzFailure:
    check: str
    trial: int
    world: str
    instance: list
    model: dict

    def to_dict(self) -> dict:
        return {"check": self.check, "trial": self.trial, "world": self.world,
                "instance": self.instance, "model": self.model}


@dataclass
class FuzzReport:
    suite: str
    trials: int
    seed: int
    expect: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return sum(f for _, f in self.counts.values())

    @property
    def passed(self) -> int:
        return sum(p for p, _ in self.counts.values())

    @property
    def ok(self) -> bool:
        return self.failed == 0 if self.expect == "valid" else self.failed > 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "expect": self.expect,
            "ok": self.ok,
            "passed": self.passed,
            "failed": self.failed,
            "checks": {k: {"passed": p, "failed": f} for k, (p, f) in sorted(self.counts.items())},
            "witnesses": [f.to_dict() for f in self.failures],
        }


# ---------------------------------------------------------------------------
# failure predicates


def _first_world(m, mask: int) -> str | None:
    mask &= m.full
    return m.worlds[next(iter_bits(mask))] if mask else None


def _validity(schema: Schema):
    def failing(m, fs):
        agent = m.agents[0]
        return _first_world(m, ~extension(m, schema.instance(agent, *fs)))
    return failing


def _schema_checks(schemas, language="cn"):
    return [Check(s.name, s.arity, language, _validity(s)) for s in schemas]


def _reduction_check(schema: str) -> Check:
    arity = 2 if schema in ("pcpm-atom", "pcpm-neg") else 3

    def failing(m, fs):
        if schema == "pcpm-atom":
            fs = (fs[0], Atom(_atoms(m)[0]))
        return _first_world(m, ~extension(m, reduction_formula(schema, fs, m.agents[0])))
    return Check(schema, arity, "pc" if schema.startswith("pc-") else "pcpm", failing)


def _atoms(m) -> list[str]:
    return sorted(m.valuation)


def _differ(m, a: int, b: int) -> str | None:
    return _first_world(m, a ^ b)


def _agree_induced(m, fs):
    return _differ(m, extension(m, fs[0]), extension(induce_cn(m), fs[0]))


def _geq_paths(m, fs):
    return _differ(m, extension(m, fs[0]), extension(_BelGeqView(m), fs[0]))


def _tr1_preserves(m, fs):
    return _differ(m, extension(m, fs[0]), extension(m, tr1(fs[0])))


def _tr2_preserves(m, fs):
    return _differ(m, extension(m, fs[0]), extension(m, tr2(fs[0])))


def _compiled(m, fs):
    return _differ(m, extension(m, fs[0]), extension(m, compile_announcements(fs[0])))


def _closure_delete(m, fs):
    ext = extension(m, fs[0])
    if ext == 0:
        return None
    sub = m.restrict(ext)
    return None if validate(sub).ok and derived_check(sub).ok else MODEL_LEVEL


def _closure_cut(m, fs):
    sub = announce_cut(m, fs[0])
    return None if validate(sub).ok and derived_check(sub).ok else MODEL_LEVEL


def _a4_arity(rng) -> int:
    return 2 * rng.randint(2, 4)


def _a4(m, fs):
    half = len(fs) // 2
    alphas, betas = fs[:half], fs[half:]
    agent = m.agents[0]
    f = a4_formula(agent, alphas, betas)
    ext = extension(m, f)
    bad = 0
    for c in m.cells[agent]:
        w = m.worlds[next(iter_bits(c))]
        if ext & c != c and e_holds(m, w, agent, alphas, betas):
            bad |= c & ~ext
    return _first_world(m, bad)


# ---------------------------------------------------------------------------
# suites


def _cn_model(rng):
    spec = ModelSpec(num_worlds=rng.randint(1, 10), num_agents=rng.choice((1, 2)),
                     cell_size_max=4, atoms=("p", "q", "r"), mode="mixed")
    return random_cn_model(spec, rng)


def _weight_model(rng, max_worlds=8):
    spec = ModelSpec(num_worlds=rng.randint(1, max_worlds), num_agents=rng.choice((1, 2)),
                     cell_size_max=rng.randint(1, 6), atoms=("p", "q", "r"))
    return random_weight_model(spec, rng)


@dataclass(frozen=True)
class Suite:
    name: str
    expect: str
    model: Callable[[random.Random], object]
    checks: list
    fixed: Callable[[], list] | None = None


def _urn_trials():
    m = builtin_ellsberg()
    phi = Or(Atom("Gr"), Atom("Gy"))
    psi = Or(Atom("Gr"), Atom("Gg"))
    return [(m, "STP", (phi, psi))]


_WEIGHT_CHECKS = (
    _schema_checks(CN_AXIOMS) + _schema_checks(TOTALITY)
    + [Check("agree-induced", 1, "cn", _agree_induced),
       Check("geq-paths", 1, "qp", _geq_paths),
       Check("tr1", 1, "cn", _tr1_preserves),
       Check("tr2", 1, "qp", _tr2_preserves)]
)

SUITES = {
    "cn-axioms": Suite("cn-axioms", "valid", _cn_model, _schema_checks(CN_AXIOMS)),
    "totality": Suite("totality", "valid", _cn_model, _schema_checks(TOTALITY)),
    "weight-soundness": Suite("weight-soundness", "valid", _weight_model, _WEIGHT_CHECKS),
    "reductions-pc": Suite("reductions-pc", "valid", _cn_model, [
        _reduction_check("pc-main"), _reduction_check("pc-conj"),
        Check("compile-pc", 1, "pc", _compiled),
        Check("closure-delete", 1, "cn", _closure_delete)]),
    "reductions-pcpm": Suite("reductions-pcpm", "valid", _cn_model, [
        _reduction_check(s) for s in SCHEMAS if s.startswith("pcpm")] + [
        Check("compile-pcpm", 1, "pcpm", _compiled),
        Check("closure-cut", 1, "cn", _closure_cut)]),
    "stp-weight": Suite("stp-weight", "valid", _weight_model, _schema_checks([STP])),
    "stp-cn-expect-fail": Suite("stp-cn-expect-fail", "fail", _cn_model, _schema_checks([STP]),
                                fixed=_urn_trials),
    "translations": Suite("translations", "valid",
                          lambda rng: _weight_model(rng) if rng.random() < 0.5 else _cn_model(rng),
                          [Check("tr1", 1, "cn", _tr1_preserves),
                           Check("tr2", 1, "qp", _tr2_preserves)]),
    "a4-weight": Suite("a4-weight", "valid", _weight_model,
                       [Check("A4", _a4_arity, "prop", _a4)]),
}


# ---------------------------------------------------------------------------
# driver


def _draw(rng, m, check: Check) -> list[Formula]:
    arity = check.arity(rng) if callable(check.arity) else check.arity
    spec = FormulaSpec(depth=0, atoms=tuple(_atoms(m)), language=check.language, agents=tuple(m.agents))
    out = []
    for _ in range(arity):
        depth = rng.randint(0, 2)
        out.append(_gen(rng, depth, FormulaSpec(depth, spec.atoms, check.language, spec.agents)))
    if check.name == "A4" and rng.random() < 0.5:
        out = _balanced_lists(rng, out)
    return out


def _balanced_lists(rng, fs):
    # alphas {x, y, rest}, betas {x & y, x | y, rest}: equal counts everywhere
    half = len(fs) // 2
    alphas = fs[:half]
    x, y = alphas[0], alphas[1]
    betas = [And(x, y), Or(x, y)] + alphas[2:]
    rng.shuffle(betas)
    return list(alphas) + betas


def _shrink_candidates(f: Formula, atom_names) -> list[Formula]:
    if size(f) <= 1:
        return []
    cands = [TOP] + [Atom(p) for p in atom_names] + list(children(f))
    return sorted({c for c in cands if size(c) < size(f)}, key=lambda g: (size(g), to_text(g)))


def shrink(m, check: Check, fs: Sequence[Formula]) -> list[Formula]:
    fs = list(fs)
    names = _atoms(m)
    changed = True
    while changed:
        changed = False
        for i in range(len(fs)):
            for cand in _shrink_candidates(fs[i], names):
                trial = fs[:i] + [cand] + fs[i + 1:]
                try:
                    bad = check.failing(m, trial)
                except Exception:  # shrinking must never invent a new failure mode
                    bad = None
                if bad is not None:
                    fs = trial
                    changed = True
                    break
            if changed:
                break
    return fs


def fuzz(suite: str, trials: int = 1000, seed: int = 0, max_witnesses: int = 3) -> FuzzReport:
    """Run ``trials`` samples of every check in ``suite``."""
    try:
        s = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}") from None
    report = FuzzReport(suite, trials, seed, s.expect, {c.name: [0, 0] for c in s.checks})
    by_name = {c.name: c for c in s.checks}

    def record(check, trial, m, fs, shrinkable=True):
        bad = check.failing(m, fs)
        row = report.counts[check.name]
        if bad is None:
            row[0] += 1
            return
        row[1] += 1
        if sum(1 for f in report.failures if f.check == check.name) >= max_witnesses:
            return
        if shrinkable and check.shrink:
            fs = shrink(m, check, fs)
            bad = check.failing(m, fs)
        report.failures.append(FuzzFailure(check.name, trial, bad, [to_text(f) for f in fs],
                                           model_to_dict(m)))

    fixed = s.fixed() if s.fixed else []
    for trial in range(trials):
        if trial < len(fixed):
            m, name, fs = fixed[trial]
            record(by_name[name], trial, m, list(fs), shrinkable=False)
            continue
        rng = random.Random(f"{suite}/{seed}/{trial}")
        m = s.model(rng)
        for check in s.checks:
            record(check, trial, m, _draw(rng, m, check))
    report.counts = {k: tuple(v) for k, v in report.counts.items()}
    return report
