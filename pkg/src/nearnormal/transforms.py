"""A transformation group on near-normal quadruples, orbits and canonical forms.

The group is generated by

* ``ALT``: alternate all four sequences,
* ``NEGAB``: negate A and B together,
* ``NEGC``, ``NEGD``: negate C or D,
* ``SWAPCD``: exchange C and D,
* ``REVC``, ``REVD``: reverse C or D.

Reversing A or B is not a generator: it does not respect the coupling between
A and B in general. Class counts reported by this module are counts of orbits
under this group and need not agree with other equivalence notions.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, Sequence, Union

from nearnormal.families import SequenceQuad, check_base, check_near_normal, require
from nearnormal.seq_core import BinarySequence

RawQuad = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]
RawGenerator = Callable[[RawQuad], RawQuad]


def _alt(x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(e if i % 2 == 0 else -e for i, e in enumerate(x))


def _neg(x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-e for e in x)


# The generators act on plain entry tuples so the search can canonicalize
# thousands of quads without building sequence objects.
GENERATORS: dict[str, RawGenerator] = {
    "ALT": lambda q: (_alt(q[0]), _alt(q[1]), _alt(q[2]), _alt(q[3])),
    "NEGAB": lambda q: (_neg(q[0]), _neg(q[1]), q[2], q[3]),
    "NEGC": lambda q: (q[0], q[1], _neg(q[2]), q[3]),
    "NEGD": lambda q: (q[0], q[1], q[2], _neg(q[3])),
    "SWAPCD": lambda q: (q[0], q[1], q[3], q[2]),
    "REVC": lambda q: (q[0], q[1], q[2][::-1], q[3]),
    "REVD": lambda q: (q[0], q[1], q[2], q[3][::-1]),
}

NN_GROUP: tuple[str, ...] = tuple(GENERATORS)
# ALT does not preserve b_i = a_i, so the normal family uses the remaining generators.
NS_GROUP: tuple[str, ...] = tuple(g for g in GENERATORS if g != "ALT")

Word = Union[str, Sequence[str]]


def _word(t: Word) -> list[str]:
    names = t.replace("*", " ").replace(",", " ").split() if isinstance(t, str) else list(t)
    unknown = [g for g in names if g not in GENERATORS]
    if unknown:
        raise ValueError(f"unknown generator {unknown[0]!r}; expected one of {', '.join(GENERATORS)}")
    return names


def to_raw(q: SequenceQuad) -> RawQuad:
    return (q.a.entries, q.b.entries, q.c.entries, q.d.entries)


def from_raw(raw: RawQuad) -> SequenceQuad:
    return SequenceQuad(*(BinarySequence(x) for x in raw))


def apply_unchecked(t: Word, q: SequenceQuad) -> SequenceQuad:
    """Apply the generators of ``t`` left to right without verifying membership."""
    raw = to_raw(q)
    for g in _word(t):
        raw = GENERATORS[g](raw)
    return from_raw(raw)


def apply(t: Word, q: SequenceQuad) -> SequenceQuad:
    """Apply a generator word to a near-normal quad; the result is re-verified."""
    require(check_near_normal(q), "near-normal")
    out = apply_unchecked(t, q)
    require(check_near_normal(out), "near-normal after transformation")
    return out


def raw_order_key(raw: RawQuad) -> tuple[int, ...]:
    return tuple(0 if e == 1 else 1 for x in raw for e in x)


def order_key(q: SequenceQuad) -> tuple[int, ...]:
    """Lexicographic key over A,B,C,D with +1 ordered before -1."""
    return raw_order_key(to_raw(q))


def raw_orbit(raw: RawQuad, group: Iterable[str] = NN_GROUP) -> set[RawQuad]:
    gens = [GENERATORS[g] for g in group]
    seen = {raw}
    queue = deque([raw])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = g(cur)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _require_member(q: SequenceQuad, group: Iterable[str]) -> None:
    # without ALT every generator also preserves normality and plain base membership
    if "ALT" in group:
        require(check_near_normal(q), "near-normal")
    else:
        require(check_base(q), "a base quadruple")


def orbit(q: SequenceQuad, group: Iterable[str] = NN_GROUP) -> set[SequenceQuad]:
    """Breadth-first closure of ``q`` under the generators of ``group``."""
    group = tuple(group)
    _require_member(q, group)
    return {from_raw(r) for r in raw_orbit(to_raw(q), group)}


def raw_canonical(raw: RawQuad, group: Iterable[str] = NN_GROUP) -> RawQuad:
    return min(raw_orbit(raw, group), key=raw_order_key)


def canonical(q: SequenceQuad, group: Iterable[str] = NN_GROUP) -> SequenceQuad:
    """Least member of the orbit of ``q`` in the order of :func:`order_key`."""
    group = tuple(group)
    _require_member(q, group)
    return from_raw(raw_canonical(to_raw(q), group))
