"""Family predicates for base, normal, near-normal and T-sequences.

Each predicate has a ``check_*`` form that returns a :class:`Report` naming
the first violated shift or position. The boolean ``is_*`` functions are thin
wrappers around those reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from nearnormal.seq_core import (
    BinarySequence,
    InvalidInputError,
    TernarySequence,
    alternate,
    concat,
    naf,
    seq_sum,
)


class ConstraintViolation(ValueError):
    """An input does not belong to the family an operation requires."""


@dataclass(frozen=True)
class Report:
    ok: bool
    condition: str
    detail: str = ""
    lag: Optional[int] = None
    position: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok


_PASS = Report(True, "all")


@dataclass(frozen=True)
class SequenceQuad:
    """Binary quadruple (A; B; C; D) with len(A) = len(B) = m and len(C) = len(D) = n."""

    a: BinarySequence
    b: BinarySequence
    c: BinarySequence
    d: BinarySequence

    def __post_init__(self) -> None:
        for name in "abcd":
            if not isinstance(getattr(self, name), BinarySequence):
                raise InvalidInputError(f"component {name.upper()} must be a BinarySequence")
        if len(self.a) != len(self.b):
            raise InvalidInputError(f"len(A)={len(self.a)} differs from len(B)={len(self.b)}")
        if len(self.c) != len(self.d):
            raise InvalidInputError(f"len(C)={len(self.c)} differs from len(D)={len(self.d)}")

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def parts(self) -> tuple[BinarySequence, BinarySequence, BinarySequence, BinarySequence]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def from_text(cls, a: str, b: str, c: str, d: str) -> "SequenceQuad":
        return cls(*(BinarySequence.from_text(s) for s in (a, b, c, d)))

    def texts(self) -> tuple[str, str, str, str]:
        return tuple(x.text() for x in self.parts)  # type: ignore[return-value]

    def key(self) -> tuple[int, ...]:
        """Entries of A, B, C, D concatenated; used for ordering."""
        return self.a.entries + self.b.entries + self.c.entries + self.d.entries


@dataclass(frozen=True)
class TernaryQuad:
    """Four ternary sequences of a common length."""

    a: TernarySequence
    b: TernarySequence
    c: TernarySequence
    d: TernarySequence

    def __post_init__(self) -> None:
        lengths = {len(x) for x in self.parts}
        if len(lengths) != 1:
            raise InvalidInputError(f"T-quad components have unequal lengths {sorted(lengths)}")

    @property
    def parts(self) -> tuple[TernarySequence, ...]:
        return (self.a, self.b, self.c, self.d)

    @property
    def length(self) -> int:
        return len(self.a)

    def texts(self) -> tuple[str, ...]:
        return tuple(x.text() for x in self.parts)


@dataclass(frozen=True)
class QuadSums:
    a: int
    b: int
    c: int
    d: int
    a_star: int
    b_star: int
    c_star: int
    d_star: int

    @property
    def plain(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def starred(self) -> tuple[int, int, int, int]:
        return (self.a_star, self.b_star, self.c_star, self.d_star)


def check_base(q: SequenceQuad) -> Report:
    m, n = q.m, q.n
    na, nb, nc, nd = (naf(x) for x in q.parts)
    peak = na[0] + nb[0] + nc[0] + nd[0]
    if peak != 2 * (m + n):
        return Report(False, "peak", f"shift-0 sum {peak} != {2 * (m + n)}", lag=0)
    for i in range(1, max(m, n)):
        total = (na[i] + nb[i] if i < m else 0) + (nc[i] + nd[i] if i < n else 0)
        if total:
            return Report(False, "off-peak", f"autocorrelation sum {total} at shift {i}", lag=i)
    return _PASS


def _check_coupled(q: SequenceQuad, sign_of) -> Report:
    if q.m != q.n + 1:
        return Report(False, "lengths", f"need m = n+1, got m={q.m}, n={q.n}")
    if q.n < 1:
        return Report(False, "lengths", "n must be >= 1")
    for i in range(q.n):
        if q.b[i] != sign_of(i) * q.a[i]:
            return Report(False, "coupling", f"b_{i + 1} breaks the A/B coupling", position=i + 1)
    return check_base(q)


def check_normal(q: SequenceQuad) -> Report:
    return _check_coupled(q, lambda i: 1)


def check_near_normal(q: SequenceQuad) -> Report:
    # 0-based index i is 1-based position i+1, whose sign is (-1)^i
    return _check_coupled(q, lambda i: -1 if i % 2 else 1)


def check_t_sequences(t: TernaryQuad) -> Report:
    length = t.length
    for pos in range(length):
        nonzero = sum(1 for x in t.parts if x[pos] != 0)
        if nonzero != 1:
            return Report(False, "support", f"{nonzero} nonzero entries at position {pos + 1}", position=pos + 1)
    profiles = [naf(x) for x in t.parts]
    for i in range(length):
        total = sum(p[i] for p in profiles)
        want = length if i == 0 else 0
        if total != want:
            return Report(False, "autocorrelation", f"sum {total} at shift {i}, expected {want}", lag=i)
    return _PASS


def is_base(q: SequenceQuad) -> bool:
    return check_base(q).ok


def is_normal(q: SequenceQuad) -> bool:
    return check_normal(q).ok


def is_near_normal(q: SequenceQuad) -> bool:
    return check_near_normal(q).ok


def is_t_sequences(t: TernaryQuad) -> bool:
    return check_t_sequences(t).ok


def quad_sums(q: SequenceQuad) -> QuadSums:
    plain = [seq_sum(x) for x in q.parts]
    starred = [seq_sum(alternate(x)) for x in q.parts]
    return QuadSums(*plain, *starred)


def golay_to_normal(a: BinarySequence, b: BinarySequence) -> SequenceQuad:
    """Embed a Golay pair (A; B) of length n as (A,+; A,-; B; B) in NS(n)."""
    if len(a) != len(b):
        raise ConstraintViolation(f"Golay pair needs equal lengths, got {len(a)} and {len(b)}")
    na, nb = naf(a), naf(b)
    for i in range(1, len(a)):
        if na[i] + nb[i]:
            raise ConstraintViolation(f"not a Golay pair: autocorrelation sum {na[i] + nb[i]} at shift {i}")
    plus, minus = BinarySequence((1,)), BinarySequence((-1,))
    q = SequenceQuad(concat(a, plus), concat(a, minus), b, b)
    report = check_normal(q)
    if not report:
        raise AssertionError(f"Golay embedding failed verification: {report.detail}")
    return q


def require(report: Report, what: str) -> None:
    """Raise :class:`ConstraintViolation` unless ``report`` passed."""
    if not report:
        raise ConstraintViolation(f"input is not {what}: {report.detail}")
