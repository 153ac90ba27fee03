"""Set-at-a-time truth evaluation shared by every model kind.

A model plugs into :func:`extension` by providing

* ``full`` (mask of all worlds) and ``atom_mask(name)``;
* ``bel_mask(agent, cond, body)`` and ``geq_mask(agent, left, right)``, each
  mapping argument extensions to the extension of the modal formula;
* ``restrict(mask)`` (delete-points update, returns a model whose worlds are
  the members of ``mask`` in the same relative order) and ``cut(mask)``
  (cut-links update, same worlds).

Extensions are computed bottom-up, once per distinct subformula object; pass
the same ``cache`` dict across calls on one model to share work between
hash-consed formulas (see :func:`cnlogic.syntax.intern`).
"""

from __future__ import annotations

from .errors import UnknownWorldError
from .syntax import And, AnnFact, AnnValue, Atom, Bel, Formula, Geq, Not, Top, desugar, is_core
from .worldset import iter_bits


def extension(model, f: Formula, cache: dict | None = None) -> int:
    if cache is None:
        cache = {}
    if not is_core(f):
        f = desugar(f, "core")
    return _ext(model, f, cache)


def _ext(model, f, cache):
    key = id(f)
    hit = cache.get(key)
    if hit is not None:
        return hit[0]
    t = type(f)
    if t is Not:
        out = model.full & ~_ext(model, f.sub, cache)
    elif t is And:
        out = _ext(model, f.left, cache) & _ext(model, f.right, cache)
    elif t is Atom:
        out = model.atom_mask(f.name)
    elif t is Top:
        out = model.full
    elif t is Bel:
        out = model.bel_mask(f.agent, _ext(model, f.cond, cache), _ext(model, f.body, cache))
    elif t is Geq:
        out = model.geq_mask(f.agent, _ext(model, f.left, cache), _ext(model, f.right, cache))
    elif t is AnnFact:
        ann = _ext(model, f.announced, cache)
        if ann == 0:
            out = model.full
        elif ann == model.full:
            out = _ext(model, f.body, cache)
        else:
            sub = model.restrict(ann)
            inner = _ext(sub, f.body, {})
            out = (model.full & ~ann) | embed(inner, ann)
    elif t is AnnValue:
        ann = _ext(model, f.announced, cache)
        sub = model.cut(ann)
        out = _ext(sub, f.body, {}) if sub is not model else _ext(model, f.body, cache)
    else:
        raise TypeError(f"cannot evaluate {f!r}")
    # the tuple keeps ``f`` alive so its id is not reused within this cache
    cache[key] = (out, f)
    return out


def embed(sub_mask: int, positions_mask: int) -> int:
    """Lift a mask over a restricted model back to the parent's indices."""
    out = 0
    for i, pos in enumerate(iter_bits(positions_mask)):
        if sub_mask >> i & 1:
            out |= 1 << pos
    return out


def holds(model, world: str, f: Formula, cache: dict | None = None) -> bool:
    try:
        i = model.index[world]
    except KeyError:
        raise UnknownWorldError(f"no world named {world!r}") from None
    return bool(extension(model, f, cache) >> i & 1)


def valid(model, f: Formula, cache: dict | None = None) -> bool:
    return extension(model, f, cache) == model.full
