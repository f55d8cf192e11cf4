"""Constructions between families and the Goethals-Seidel Hadamard builder.

Every function re-verifies its output with the matching family predicate.
A failed re-verification raises :class:`ConstructionError`, since it can only
mean a bug in the construction itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from nearnormal.families import (
    SequenceQuad,
    TernaryQuad,
    check_base,
    check_near_normal,
    check_t_sequences,
    require,
)
from nearnormal.seq_core import BinarySequence, TernarySequence, concat, negate


class ConstructionError(RuntimeError):
    """A construction could not produce a verified output."""


@dataclass(frozen=True, eq=False)
class SquareMatrix:
    """Exact integer square matrix."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.entries.shape, self.entries.tobytes()))

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def is_hadamard(self) -> bool:
        h = self.entries
        if not np.all(np.abs(h) == 1):
            return False
        return bool(np.array_equal(h @ h.T, self.order * np.eye(self.order, dtype=np.int64)))

    def to_text(self) -> str:
        """Portable export: a header line ``order N`` then one '+'/'-' row per line."""
        if not np.all(np.abs(self.entries) == 1):
            raise ValueError("text export needs a +-1 matrix")
        rows = ("".join("+" if e == 1 else "-" for e in row) for row in self.entries.tolist())
        return f"order {self.order}\n" + "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SquareMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("order "):
            raise ValueError("matrix text must start with 'order N'")
        order = int(lines[0].split()[1])
        rows = [[1 if ch == "+" else -1 for ch in ln] for ln in lines[1:]]
        if len(rows) != order or any(len(r) != order for r in rows):
            raise ValueError(f"expected {order} rows of length {order}")
        return cls(np.array(rows))


def bs_double(q: SequenceQuad) -> SequenceQuad:
    """Map BS(m, n) to BS(m+n, m+n) by (A,C; A,-C; B,D; B,-D)."""
    require(check_base(q), "a base quadruple")
    out = SequenceQuad(
        concat(q.a, q.c),
        concat(q.a, negate(q.c)),
        concat(q.b, q.d),
        concat(q.b, negate(q.d)),
    )
    report = check_base(out)
    if not report:
        raise ConstructionError(f"doubling produced a non-base quad: {report.detail}")
    return out


def circulant(row: BinarySequence | Sequence[int]) -> SquareMatrix:
    """Circulant with ``row`` as first row: entry (i, j) = row[(j - i) mod n]."""
    r = np.array(list(row), dtype=np.int64)
    n = len(r)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return SquareMatrix(r[idx])


def back_diagonal(n: int) -> SquareMatrix:
    return SquareMatrix(np.fliplr(np.eye(n, dtype=np.int64)))


GS_SLOTS = ("U", "X", "Y", "Z")


def goethals_seidel(q: SequenceQuad, assignment: Sequence[str] = ("A", "B", "C", "D")) -> SquareMatrix:
    """Hadamard matrix of order 4n from a quad in BS(n, n).

    ``assignment`` names the components placed in the slots U, X, Y, Z of the
    array, e.g. ``("A", "B", "C", "D")`` or ``"BADC"``.
    """
    require(check_base(q), "a base quadruple")
    if q.m != q.n:
        raise ValueError(f"Goethals-Seidel needs m = n, got m={q.m}, n={q.n}")
    names = [s.upper() for s in assignment]
    if sorted(names) != ["A", "B", "C", "D"]:
        raise ValueError(f"assignment must be a permutation of A, B, C, D, got {assignment!r}")
    comp = dict(zip("ABCD", q.parts))
    u, x, y, z = (circulant(comp[name]).entries for name in names)
    r = back_diagonal(q.n).entries
    xr, yr, zr = x @ r, y @ r, z @ r
    xtr, ytr, ztr = x.T @ r, y.T @ r, z.T @ r
    h = np.block(
        [
            [u, xr, yr, zr],
            [-xr, u, -ztr, ytr],
            [-yr, ztr, u, -xtr],
            [-zr, -ytr, xtr, u],
        ]
    )
    out = SquareMatrix(h)
    if not out.is_hadamard():
        raise ConstructionError("Goethals-Seidel output failed the Hadamard check")
    return out


def _halves(x: BinarySequence, y: BinarySequence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    plus = tuple((a + b) // 2 for a, b in zip(x, y))
    minus = tuple((a - b) // 2 for a, b in zip(x, y))
    return plus, minus


def bs_to_ts(q: SequenceQuad) -> TernaryQuad:
    """T-sequences of length m+n: ((A+B)/2, 0), ((A-B)/2, 0), (0, (C+D)/2), (0, (C-D)/2)."""
    require(check_base(q), "a base quadruple")
    m, n = q.m, q.n
    ab_plus, ab_minus = _halves(q.a, q.b)
    cd_plus, cd_minus = _halves(q.c, q.d)
    zm, zn = (0,) * m, (0,) * n
    out = TernaryQuad(
        TernarySequence(ab_plus + zn),
        TernarySequence(ab_minus + zn),
        TernarySequence(zm + cd_plus),
        TernarySequence(zm + cd_minus),
    )
    report = check_t_sequences(out)
    if not report:
        raise ConstructionError(f"halving produced invalid T-sequences: {report.detail}")
    return out


# Yang multiplication by block layouts.
#
# Write the T-sequences derived from one factor as q_1..q_4 (length y) and
# those derived from the other as p_1..p_4 (length t). The output rows are
#
#     U_l(x) = sum_c p_c(x^y) * M[l][c](x).
#
# Column c of the 4x4 layout M sends every q_j to one row, with a sign and
# optionally reversed, such that the pieces in the column cover 0..y-1 exactly
# once. Each output position then carries exactly one nonzero entry. The
# search looks for columns whose autocorrelation terms sum to y*t at shift 0
# and cancel elsewhere. Both orders of the factors are tried.


@dataclass(frozen=True)
class _Column:
    rows: tuple[int, int, int, int]  # target row of q_j
    signs: tuple[int, int, int, int]
    revs: tuple[int, int, int, int]


def _variants(q: np.ndarray) -> np.ndarray:
    # variant 2j + r is q_j, reversed when r = 1
    return np.stack([q[j, ::-1] if r else q[j] for j in range(4) for r in (0, 1)])


def _column_content(col: _Column, variants: np.ndarray) -> np.ndarray:
    out = np.zeros((4, variants.shape[1]), dtype=np.int64)
    for j in range(4):
        out[col.rows[j]] += col.signs[j] * variants[2 * j + col.revs[j]]
    return out


def _is_normalized(col: _Column, live: Sequence[int]) -> bool:
    # rows are introduced in order 0, 1, 2, ... and each row's first piece is positive
    next_row = 0
    for j in live:
        row = col.rows[j]
        if row == next_row:
            if col.signs[j] != 1:
                return False
            next_row += 1
        elif row > next_row:
            return False
    return True


def _layout_columns(variants: np.ndarray, first: bool) -> list[_Column]:
    supports = variants != 0
    live = [j for j in range(4) if supports[2 * j].any()]
    cols: list[_Column] = []
    seen: set[bytes] = set()
    for revs in itertools.product((0, 1), repeat=4):
        cover = sum(supports[2 * j + revs[j]].astype(int) for j in range(4))
        if not np.all(cover == 1):
            continue
        for rows in itertools.product(range(4), repeat=4):
            for signs in itertools.product((1, -1), repeat=4):
                col = _Column(rows, signs, revs)
                if first and not _is_normalized(col, live):
                    continue
                key = _column_content(col, variants).tobytes()
                if key not in seen:
                    seen.add(key)
                    cols.append(col)
    return cols


def _poly_times_conj(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficients of a(x) * b(1/x); index k stands for the power k - (len(b) - 1)."""
    return np.convolve(a, b[::-1])


def _upsample(p: np.ndarray, step: int) -> np.ndarray:
    out = np.zeros((len(p) - 1) * step + 1, dtype=np.int64)
    out[np.arange(len(p)) * step] = p
    return out


def yang_layouts(inner: TernaryQuad, outer: TernaryQuad, budget: float = 4e8) -> Iterator[np.ndarray]:
    """Yield output rows (a 4 x y*t array) for every layout that cancels.

    ``inner`` supplies q_1..q_4 and ``outer`` supplies p_1..p_4. ``budget``
    bounds the number of (layout, shift) cells examined; once it is spent the
    search raises :class:`ConstructionError` instead of running for hours.
    """
    q = np.array([list(x) for x in inner.parts], dtype=np.int64)
    p = np.array([list(x) for x in outer.parts], dtype=np.int64)
    y, t = q.shape[1], p.shape[1]
    used = [c for c in range(4) if p[c].any()]
    variants = _variants(q)
    first_cols = _layout_columns(variants, first=True)
    other_cols = _layout_columns(variants, first=False)
    k = len(used)
    width = 2 * y * t - 1
    spent = [0]

    def charge(cells: int) -> None:
        spent[0] += cells
        if spent[0] > budget:
            raise ConstructionError(f"layout search spent its budget of {budget:.2e} cells without a hit")

    corr = np.array([[_poly_times_conj(variants[v], variants[w]) for w in range(8)] for v in range(8)])
    pconj = {(c, d): _upsample(_poly_times_conj(p[c], p[d]), y) for c in used for d in used}

    o_rows = np.array([col.rows for col in other_cols])
    o_var = np.array([[2 * j + col.revs[j] for j in range(4)] for col in other_cols])
    o_sign = np.array([col.signs for col in other_cols])

    def g_many(a: _Column) -> np.ndarray:
        # sum_l M[l][a] * conj(M[l][X]) for every candidate column X at once
        acc = np.zeros((len(other_cols), 2 * y - 1), dtype=np.int64)
        for i in range(4):
            for j in range(4):
                same = (o_rows[:, j] == a.rows[i]) * o_sign[:, j] * a.signs[i]
                acc += same[:, None] * corr[2 * i + a.revs[i]][o_var[:, j]]
        return acc

    def g_one(a: _Column, b: _Column) -> np.ndarray:
        acc = np.zeros(2 * y - 1, dtype=np.int64)
        for i in range(4):
            for j in range(4):
                if a.rows[i] == b.rows[j]:
                    acc += a.signs[i] * b.signs[j] * corr[2 * i + a.revs[i], 2 * j + b.revs[j]]
        return acc

    def embed(pc: np.ndarray, g: np.ndarray) -> np.ndarray:
        # P(x^y) * G(x); both factors are centred so the product is centred at y*t - 1
        out = np.zeros(g.shape[:-1] + (width,), dtype=np.int64)
        span = g.shape[-1]
        for pos in np.flatnonzero(pc):
            out[..., pos : pos + span] += pc[pos] * g
        return out

    target = np.zeros(width, dtype=np.int64)
    target[y * t - 1] = y * t

    def build(cols: Sequence[_Column]) -> np.ndarray:
        out = np.zeros((4, y * t), dtype=np.int64)
        for c, col in zip(used, cols):
            content = _column_content(col, variants)
            for pos in np.flatnonzero(p[c]):
                out[:, pos * y : (pos + 1) * y] += p[c, pos] * content
        return out

    def pair_terms(fixed: Sequence[_Column], c_new: int, g_of) -> np.ndarray:
        total = 0
        for c_old, col in zip(used, fixed):
            g = g_of(col)
            total = total + embed(pconj[c_old, c_new], g) + embed(pconj[c_new, c_old], g[..., ::-1])
        return total

    def search(fixed: list[_Column], partial: np.ndarray) -> Iterator[np.ndarray]:
        c_new = used[len(fixed)]
        if len(fixed) == k - 1:
            charge(len(other_cols) * width)
            self_terms = embed(pconj[c_new, c_new], g_many_self())
            total = partial[None, :] + self_terms + pair_terms(fixed, c_new, g_many)
            for hit in np.flatnonzero(np.all(total == target[None, :], axis=1)):
                yield build(fixed + [other_cols[hit]])
            return
        for cand in other_cols:
            charge(width)
            extra = partial + embed(pconj[c_new, c_new], g_one(cand, cand))
            extra = extra + pair_terms(fixed, c_new, lambda col: g_one(col, cand))
            yield from search(fixed + [cand], extra)

    self_cache: list[np.ndarray] = []

    def g_many_self() -> np.ndarray:
        if not self_cache:
            self_cache.append(np.stack([g_one(col, col) for col in other_cols]))
        return self_cache[0]

    if not used:
        return
    c0 = used[0]
    for col in first_cols:
        start = embed(pconj[c0, c0], g_one(col, col))
        if k == 1:
            if np.array_equal(start, target):
                yield build([col])
            continue
        yield from search([col], start)


def yang_multiply(nn: SequenceQuad, bs: SequenceQuad, budget: float = 4e8) -> TernaryQuad:
    """Compose NN(s) with BS(m, n) into T-sequences of length (2s+1)(m+n).

    The output is found by the block-layout search above and re-verified.
    Inputs for which no layout in that family cancels raise
    :class:`ConstructionError`.
    """
    require(check_near_normal(nn), "near-normal")
    require(check_base(bs), "a base quadruple")
    length = (2 * nn.n + 1) * (bs.m + bs.n)
    nn_ts, bs_ts = bs_to_ts(nn), bs_to_ts(bs)
    exhausted: list[str] = []
    for inner, outer in ((nn_ts, bs_ts), (bs_ts, nn_ts)):
        try:
            for rows in yang_layouts(inner, outer, budget=budget / 2):
                out = TernaryQuad(*(TernarySequence(tuple(int(v) for v in r)) for r in rows))
                report = check_t_sequences(out)
                if not report or out.length != length:
                    raise ConstructionError(
                        f"layout passed the cancellation test but not verification: {report.detail}"
                    )
                return out
        except ConstructionError as exc:
            if "budget" not in str(exc):
                raise
            exhausted.append(str(exc))
    reason = "; ".join(exhausted) if exhausted else "the layout family has no cancelling member"
    raise ConstructionError(
        f"no block layout composes NN({nn.n}) with BS({bs.m},{bs.n}) into T-sequences of length {length}: {reason}"
    )


def first_hadamard_failure(h: SquareMatrix) -> Optional[tuple[int, int]]:
    """First (row, column) where H H^T differs from order * I, or None."""
    g = h.entries @ h.entries.T
    bad = np.argwhere(g != h.order * np.eye(h.order, dtype=np.int64))
    return tuple(int(v) for v in bad[0]) if len(bad) else None  # type: ignore[return-value]
