"""Exhaustive enumeration of normal and near-normal quadruples.

Two engines are provided. ``mitm`` splits the autocorrelation identity into an
(A, B) half and a (C, D) half and joins them on the lag vector. ``oracle`` is a
direct broadcast over every quadruple and serves as an independent
cross-check for small n.

Why the join is exact: a quad (A; B; C; D) with len(A) = len(B) = m and
len(C) = len(D) = n is a base quad iff for every shift 1 <= i < m

    N_A(i) + N_B(i) = -(N_C(i) + N_D(i)),

with the right side taken as 0 for i >= n. So the (A, B) lag vector must be the
negated (C, D) lag vector on shifts 1..n-1 and must vanish on shifts n..m-1.

Why ``prune_sums`` is valid: evaluating the same identity as a Laurent
polynomial at x = 1 turns each norm into the squared sum of its sequence,
so a^2 + b^2 + c^2 + d^2 = 2(m + n). A sum of k entries equal to +-1 has the
parity of k, which gives the parity conditions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from nearnormal.families import SequenceQuad, check_near_normal, check_normal
from nearnormal.transforms import NN_GROUP, NS_GROUP, RawQuad, from_raw, raw_canonical, raw_orbit

log = logging.getLogger(__name__)

ORACLE_MAX_N = 6
MITM_MAX_N = 16
_MAX_CHUNK_PAIRS = 1 << 21


class Family(str, Enum):
    NS = "ns"
    NN = "nn"


class Mode(str, Enum):
    ORACLE = "oracle"
    MITM = "mitm"


class CostGuardError(RuntimeError):
    """The requested search exceeds the desk-scale budget and no override was given."""


class ChunkPartitionError(RuntimeError):
    """Chunks do not cover the (C, D) space exactly once."""


def prune_sums(sums: Sequence[int], m: int, n: int) -> bool:
    """Necessary condition on the four sums of a base quad with lengths (m, m, n, n)."""
    a, b, c, d = sums
    if a * a + b * b + c * c + d * d != 2 * (m + n):
        return False
    return (a - m) % 2 == 0 and (b - m) % 2 == 0 and (c - n) % 2 == 0 and (d - n) % 2 == 0


def all_sign_vectors(length: int, first_plus: bool = False) -> np.ndarray:
    """All +-1 vectors of ``length`` in lexicographic order with +1 before -1.

    Row r is the binary expansion of r, most significant bit first, with bit 1
    standing for -1. With ``first_plus`` only rows with leading +1 are kept.
    """
    count = 1 << (length - 1 if first_plus else length)
    codes = np.arange(count, dtype=np.int64)
    shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
    bits = (codes[:, None] >> shifts[None, :]) & 1
    return (1 - 2 * bits).astype(np.int8)


def naf_rows(rows: np.ndarray) -> np.ndarray:
    """Autocorrelation at shifts 0..L-1 for every row of a +-1 matrix."""
    rows = rows.astype(np.int32)
    length = rows.shape[1]
    out = np.empty((rows.shape[0], length), dtype=np.int32)
    for i in range(length):
        out[:, i] = np.einsum("ij,ij->i", rows[:, : length - i], rows[:, i:])
    return out


def _b_signs(family: Family, n: int) -> np.ndarray:
    idx = np.arange(n)
    if family is Family.NS:
        return np.ones(n, dtype=np.int8)
    return np.where(idx % 2 == 0, 1, -1).astype(np.int8)


def ab_halves(family: Family, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Every admissible (A, B) for the family, with A of length n+1.

    B is forced on positions 1..n by the family relation, so only A and the
    last entry of B are free: 2^(n+2) candidates. Returns (A rows, B rows,
    lag vectors over shifts 1..n).
    """
    a = all_sign_vectors(n + 1)
    b_head = a[:, :n] * _b_signs(family, n)[None, :]
    rows_a = np.repeat(a, 2, axis=0)
    last = np.tile(np.array([1, -1], dtype=np.int8), len(a))
    rows_b = np.concatenate([np.repeat(b_head, 2, axis=0), last[:, None]], axis=1)
    lags = naf_rows(rows_a)[:, 1:] + naf_rows(rows_b)[:, 1:]
    return rows_a, rows_b, lags


@dataclass(frozen=True)
class SearchTask:
    """One exhaustive search split into chunks of the (C, D) space.

    C always starts with +1 and D with +1, and C <= D in the +1 < -1 order.
    NEGC, NEGD and SWAPCD justify those restrictions; they are undone before
    canonicalization by taking full orbits. Chunk j fixes the ``chunk_bits``
    entries of C that follow its leading +1 to the binary digits of j.
    """

    family: Family
    n: int
    chunks: int = 1
    fix_symmetry: bool = True

    @property
    def chunk_bits(self) -> int:
        return self.chunks.bit_length() - 1

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.chunks < 1 or self.chunks & (self.chunks - 1):
            raise ChunkPartitionError(f"chunk count must be a power of two, got {self.chunks}")
        if self.chunk_bits > self.n - 1:
            raise ChunkPartitionError(
                f"{self.chunks} chunks need {self.chunk_bits} free leading entries of C, only {self.n - 1} exist"
            )

    def chunk_range(self, chunk_id: int) -> tuple[int, int]:
        """Half-open range of C-table row indices belonging to ``chunk_id``."""
        free = self.n - 1 if self.fix_symmetry else self.n
        per_chunk = 1 << (free - self.chunk_bits)
        return chunk_id * per_chunk, (chunk_id + 1) * per_chunk

    def chunk_c_codes(self, chunk_id: int) -> np.ndarray:
        return np.arange(*self.chunk_range(chunk_id), dtype=np.int64)


def _hash_weights(width: int) -> np.ndarray:
    # fixed odd 64-bit multipliers; any collision is caught by exact re-check
    rng = np.random.default_rng(0x5EED)
    return (rng.integers(1, 1 << 62, size=width, dtype=np.int64) | 1).astype(np.int64)


def _hash(vectors: np.ndarray, weights: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return (vectors.astype(np.int64) * weights[None, :]).sum(axis=1)


def _cd_table(task: SearchTask) -> tuple[np.ndarray, np.ndarray]:
    rows = all_sign_vectors(task.n, first_plus=task.fix_symmetry)
    return rows, naf_rows(rows)[:, 1:]


def mitm_join(
    ab_rows: tuple[np.ndarray, np.ndarray, np.ndarray],
    cd_rows: np.ndarray,
    cd_lags: np.ndarray,
    c_codes: np.ndarray,
    d_codes: Optional[np.ndarray] = None,
    require_c_le_d: bool = True,
) -> list[RawQuad]:
    """Join (A, B) halves against the (C, D) pairs with C from ``c_codes``.

    The (C, D) lag vectors of this chunk are hashed and sorted into an index;
    every (A, B) half probes it with its negated vector. Hash hits are then
    compared on the full lag vectors, so the result is exactly the set of base
    quads in this slice.
    """
    a_rows, b_rows, ab_lags = ab_rows
    n = cd_rows.shape[1]
    if len(c_codes) == 0 or len(cd_rows) == 0:
        return []
    # the (C, D) half cannot contribute at shifts >= n
    tail_ok = ~ab_lags[:, n - 1 :].any(axis=1)
    probe_idx = np.flatnonzero(tail_ok)
    probe = -ab_lags[probe_idx, : n - 1]
    if d_codes is None:
        d_codes = np.arange(len(cd_rows), dtype=np.int64)

    pair_c = np.repeat(c_codes, len(d_codes))
    pair_d = np.tile(d_codes, len(c_codes))
    if require_c_le_d:
        keep = pair_c <= pair_d
        pair_c, pair_d = pair_c[keep], pair_d[keep]
    if n == 1:
        # no shared shifts: every (C, D) pairs with every surviving (A, B)
        hits_ab = np.repeat(probe_idx, len(pair_c))
        hits_cd = np.tile(np.arange(len(pair_c)), len(probe_idx))
    else:
        pair_lags = cd_lags[pair_c] + cd_lags[pair_d]
        weights = _hash_weights(n - 1)
        index_keys = _hash(pair_lags, weights)
        order = np.argsort(index_keys, kind="stable")
        sorted_keys = index_keys[order]
        probe_keys = _hash(probe, weights)
        lo = np.searchsorted(sorted_keys, probe_keys, side="left")
        hi = np.searchsorted(sorted_keys, probe_keys, side="right")
        counts = hi - lo
        hits_ab = np.repeat(probe_idx, counts)
        starts = np.repeat(lo, counts)
        offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        hits_cd = order[starts + offsets]
        exact = np.all(ab_lags[hits_ab, : n - 1] + pair_lags[hits_cd] == 0, axis=1)
        hits_ab, hits_cd = hits_ab[exact], hits_cd[exact]

    out: list[RawQuad] = []
    for i, j in zip(hits_ab.tolist(), hits_cd.tolist()):
        out.append(
            (
                tuple(a_rows[i].tolist()),
                tuple(b_rows[i].tolist()),
                tuple(cd_rows[pair_c[j]].tolist()),
                tuple(cd_rows[pair_d[j]].tolist()),
            )
        )
    return out


def run_chunk(task: SearchTask, chunk_id: int) -> list[RawQuad]:
    """All base quads of the family whose C lies in chunk ``chunk_id``."""
    task.validate()
    if not 0 <= chunk_id < task.chunks:
        raise ChunkPartitionError(f"chunk id {chunk_id} outside 0..{task.chunks - 1}")
    ab = ab_halves(task.family, task.n)
    cd_rows, cd_lags = _cd_table(task)
    c_codes = task.chunk_c_codes(chunk_id)
    out: list[RawQuad] = []
    # keep the per-slice pair table bounded in memory
    step = max(1, _MAX_CHUNK_PAIRS // max(1, len(cd_rows)))
    for start in range(0, len(c_codes), step):
        out.extend(
            mitm_join(ab, cd_rows, cd_lags, c_codes[start : start + step], require_c_le_d=task.fix_symmetry)
        )
    return out


def _check_partition(task: SearchTask) -> None:
    expected = 1 << (task.n - 1 if task.fix_symmetry else task.n)
    cursor = 0
    for j in range(task.chunks):
        lo, hi = task.chunk_range(j)
        if lo != cursor or hi <= lo:
            raise ChunkPartitionError(f"chunk {j} covers [{lo},{hi}) but the previous chunk ended at {cursor}")
        cursor = hi
    if cursor != expected:
        raise ChunkPartitionError(f"chunks cover {cursor} of {expected} C values")


def family_group(family: Family) -> tuple[str, ...]:
    return NN_GROUP if family is Family.NN else NS_GROUP


def canonical_set(raws: Iterable[RawQuad], family: Family) -> list[SequenceQuad]:
    """Canonical representatives of the orbits met by ``raws``, sorted by text."""
    group = family_group(family)
    seen: set[RawQuad] = set()
    reps: list[RawQuad] = []
    for raw in raws:
        if raw in seen:
            continue
        orb = raw_orbit(raw, group)
        seen |= orb
        reps.append(raw_canonical(raw, group))
    quads = [from_raw(r) for r in reps]
    checker = check_near_normal if family is Family.NN else check_normal
    for q in quads:
        report = checker(q)
        if not report:
            raise AssertionError(f"search produced a non-member: {report.detail}")
    return sorted(quads, key=lambda q: q.texts())


def enumerate_oracle(family: Family, n: int) -> list[RawQuad]:
    """Every family member of parameter n by direct broadcast, no symmetry fixing."""
    a_rows, b_rows, ab_lags = ab_halves(family, n)
    c = all_sign_vectors(n)
    c_lags = naf_rows(c)[:, 1:]
    cd_lags = c_lags[:, None, :] + c_lags[None, :, :]
    out: list[RawQuad] = []
    for i in range(len(a_rows)):
        if ab_lags[i, n - 1 :].any():
            continue
        target = ab_lags[i, : n - 1]
        ok = np.all(cd_lags + target[None, None, :] == 0, axis=2)
        for ci, di in zip(*np.nonzero(ok)):
            out.append((tuple(a_rows[i].tolist()), tuple(b_rows[i].tolist()), tuple(c[ci].tolist()), tuple(c[di].tolist())))
    return out


def _run_chunk_args(args: tuple[SearchTask, int]) -> list[RawQuad]:
    return run_chunk(*args)


def enumerate_family(
    family: Family | str,
    n: int,
    mode: Mode | str = Mode.MITM,
    *,
    chunks: Optional[int] = None,
    workers: int = 1,
    override_cost_guard: bool = False,
    fix_symmetry: bool = True,
) -> list[SequenceQuad]:
    """Canonical representatives of NS(n) or NN(n), sorted by text rendering.

    NN classes are orbits under the full transformation group; NS classes use
    the subgroup without alternation.
    """
    family = Family(family.lower() if isinstance(family, str) else family)
    mode = Mode(mode.lower() if isinstance(mode, str) else mode)
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode is Mode.ORACLE:
        if n > ORACLE_MAX_N and not override_cost_guard:
            raise CostGuardError(f"oracle mode is limited to n <= {ORACLE_MAX_N}, got n={n}")
        return canonical_set(enumerate_oracle(family, n), family)

    if n > MITM_MAX_N and not override_cost_guard:
        raise CostGuardError(
            f"mitm search for n={n} exceeds the desk-scale limit n <= {MITM_MAX_N}; "
            "pass the cost-guard override to run it anyway"
        )
    if chunks is None:
        chunks = 1
    task = SearchTask(family, n, chunks=chunks, fix_symmetry=fix_symmetry)
    task.validate()
    _check_partition(task)
    log.info("searching %s(%d) in %d chunk(s) with %d worker(s)", family.value.upper(), n, chunks, workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk_args, [(task, j) for j in range(chunks)]))
    else:
        parts = [run_chunk(task, j) for j in range(chunks)]
    raws = [raw for part in parts for raw in part]
    return canonical_set(raws, family)


def estimated_pairs(n: int) -> int:
    """Number of (C, D) pairs visited by mitm after symmetry fixing."""
    half = 1 << (n - 1)
    return half * (half + 1) // 2


@dataclass(frozen=True)
class CostRow:
    n: int
    ab_candidates: int
    cd_pairs: int
    note: str = field(default="")


def cost_table(ns: Iterable[int]) -> list[CostRow]:
    rows = []
    for n in ns:
        note = "" if n <= MITM_MAX_N else "needs the cost-guard override"
        rows.append(CostRow(n, 1 << (n + 2), estimated_pairs(n), note))
    return rows
