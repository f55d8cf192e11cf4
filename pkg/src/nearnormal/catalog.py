"""File formats, compact encoding and the JSON-lines result catalog."""

from __future__ import annotations

import csv
import hashlib
import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Union

from nearnormal.families import (
    QuadSums,
    Report,
    SequenceQuad,
    TernaryQuad,
    check_base,
    check_near_normal,
    check_normal,
    check_t_sequences,
    quad_sums,
)
from nearnormal.seq_core import BinarySequence, InvalidInputError, TernarySequence

FAMILIES = ("bs", "ns", "nn", "ts")
_COMPACT_RE = re.compile(r"^(\d+):([0-9a-f]*)$")


class ParseError(ValueError):
    """Malformed input text; the message names the offending line."""


class CatalogError(ValueError):
    """A catalog record failed digest or family re-verification."""


def encode_compact(x: BinarySequence) -> str:
    """``L:hex`` with entries packed MSB first, +1 -> 1 and -1 -> 0, zero padded to bytes."""
    bits = "".join("1" if e == 1 else "0" for e in x)
    bits += "0" * (-len(bits) % 8)
    return f"{len(x)}:" + "".join(f"{int(bits[i : i + 8], 2):02x}" for i in range(0, len(bits), 8))


def decode_compact(s: str) -> BinarySequence:
    match = _COMPACT_RE.match(s.strip())
    if not match:
        raise ParseError(f"malformed compact string {s!r}; expected 'L:hex' with lowercase hex")
    length, digits = int(match.group(1)), match.group(2)
    if length < 1:
        raise ParseError("compact length must be >= 1")
    if len(digits) % 2:
        raise ParseError(f"hex part of {s!r} is not a whole number of bytes")
    if len(digits) // 2 != (length + 7) // 8:
        raise ParseError(f"length {length} needs {(length + 7) // 8} bytes, got {len(digits) // 2}")
    bits = "".join(f"{int(digits[i : i + 2], 16):08b}" for i in range(0, len(digits), 2))
    if "1" in bits[length:]:
        raise ParseError(f"nonzero padding bits in {s!r}")
    return BinarySequence(tuple(1 if b == "1" else -1 for b in bits[:length]))


def parse_quad_text(text: str, ternary: bool = False) -> Union[SequenceQuad, TernaryQuad]:
    """Read four sequence lines; blank lines and lines starting with '#' are skipped."""
    seqs = []
    kind = TernarySequence if ternary else BinarySequence
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            seqs.append(kind.from_text(line))
        except InvalidInputError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if len(seqs) != 4:
        raise ParseError(f"expected 4 sequence lines, found {len(seqs)}")
    try:
        return TernaryQuad(*seqs) if ternary else SequenceQuad(*seqs)
    except InvalidInputError as exc:
        raise ParseError(str(exc)) from None


def read_quad(path: Union[str, Path], ternary: bool = False) -> Union[SequenceQuad, TernaryQuad]:
    return parse_quad_text(Path(path).read_text(), ternary=ternary)


def format_quad(q: Union[SequenceQuad, TernaryQuad], comments: Iterable[str] = ()) -> str:
    head = "".join(f"# {c}\n" for c in comments)
    return head + "\n".join(q.texts()) + "\n"


def shipped_quad(name: str) -> SequenceQuad:
    """Shipped near-normal quads: ``"nn32"`` or ``"nn34"``."""
    text = resources.files("nearnormal.data").joinpath(f"{name}.quad").read_text()
    return parse_quad_text(text)  # type: ignore[return-value]


def published_sums() -> list[tuple[int, int, QuadSums]]:
    """Published (n, row, sums) data for the NN(32) and NN(34) representatives.

    Only row 1 of each length is also shipped as sequences; the remaining rows
    are kept as sum data because their compact encoding is not reproducible here.
    """
    text = resources.files("nearnormal.data").joinpath("nn_sums.csv").read_text()
    rows = []
    for rec in csv.DictReader(text.splitlines()):
        vals = [int(rec[k]) for k in ("a", "b", "c", "d", "a_star", "b_star", "c_star", "d_star")]
        rows.append((int(rec["n"]), int(rec["row"]), QuadSums(*vals)))
    return rows


def family_report(family: str, q: Union[SequenceQuad, TernaryQuad]) -> Report:
    family = family.lower()
    if family == "ts":
        if not isinstance(q, TernaryQuad):
            raise InvalidInputError("family ts needs a ternary quad")
        return check_t_sequences(q)
    if not isinstance(q, SequenceQuad):
        raise InvalidInputError(f"family {family} needs a binary quad")
    checks = {"bs": check_base, "ns": check_normal, "nn": check_near_normal}
    if family not in checks:
        raise InvalidInputError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return checks[family](q)


def digest_of(texts: Iterable[str]) -> str:
    return hashlib.sha256("\n".join(texts).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class CatalogRecord:
    family: str
    n: int
    m: int
    sequences: tuple[str, str, str, str]
    sums: Optional[QuadSums]
    canonical: bool
    provenance: dict[str, Any] = field(default_factory=dict)
    digest: str = ""

    @classmethod
    def from_quad(
        cls,
        family: str,
        q: SequenceQuad,
        *,
        canonical: bool,
        provenance: dict[str, Any],
    ) -> "CatalogRecord":
        texts = q.texts()
        return cls(family, q.n, q.m, texts, quad_sums(q), canonical, provenance, digest_of(texts))

    def quad(self) -> SequenceQuad:
        return SequenceQuad.from_text(*self.sequences)

    def to_json(self) -> str:
        payload = {
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "sequences": list(self.sequences),
            "sums": None if self.sums is None else {"plain": list(self.sums.plain), "starred": list(self.sums.starred)},
            "canonical": self.canonical,
            "provenance": self.provenance,
            "digest": self.digest,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "CatalogRecord":
        """Parse and re-verify one record; corrupted records raise :class:`CatalogError`."""
        try:
            data = json.loads(line)
            seqs = tuple(data["sequences"])
            record = cls(
                family=data["family"],
                n=int(data["n"]),
                m=int(data["m"]),
                sequences=seqs,  # type: ignore[arg-type]
                sums=None if data["sums"] is None else QuadSums(*data["sums"]["plain"], *data["sums"]["starred"]),
                canonical=bool(data["canonical"]),
                provenance=dict(data["provenance"]),
                digest=data["digest"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"malformed catalog record: {exc}") from None
        record.verify()
        return record

    def verify(self) -> None:
        if digest_of(self.sequences) != self.digest:
            raise CatalogError("digest does not match the stored sequences")
        try:
            q = self.quad()
        except InvalidInputError as exc:
            raise CatalogError(f"stored sequences are invalid: {exc}") from None
        if (q.m, q.n) != (self.m, self.n):
            raise CatalogError(f"stored lengths ({self.m},{self.n}) differ from sequences ({q.m},{q.n})")
        report = family_report(self.family, q)
        if not report:
            raise CatalogError(f"record fails {self.family} verification: {report.detail}")
        if self.sums is not None and self.sums != quad_sums(q):
            raise CatalogError("stored sums differ from the sequences")


def write_catalog(records: Iterable[CatalogRecord], path: Union[str, Path, None] = None, append: bool = False) -> str:
    """Serialize records one per line; returns the text and writes it when ``path`` is given."""
    text = "".join(r.to_json() + "\n" for r in records)
    if path is not None:
        with open(path, "a" if append else "w", encoding="ascii") as fh:
            fh.write(text)
    return text


def read_catalog(path: Union[str, Path]) -> Iterator[CatalogRecord]:
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield CatalogRecord.from_json(line)
            except CatalogError as exc:
                raise CatalogError(f"line {lineno}: {exc}") from None
