"""Binary and ternary sequences and their nonperiodic autocorrelation.

Sequences are immutable values. Every operation returns a new sequence, so
instances can be shared freely between threads and worker processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

_BINARY = frozenset((1, -1))
_TERNARY = frozenset((0, 1, -1))
_SYMBOL = {1: "+", -1: "-", 0: "0"}
_VALUE = {"+": 1, "-": -1, "0": 0}


class InvalidInputError(ValueError):
    """Raised when a sequence or its operands violate a basic invariant."""


@dataclass(frozen=True)
class _Sequence:
    entries: tuple[int, ...]

    _alphabet = _TERNARY

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        if not entries:
            raise InvalidInputError("sequence must have length >= 1")
        bad = [e for e in entries if e not in self._alphabet]
        if bad:
            raise InvalidInputError(
                f"{type(self).__name__} entries must lie in {sorted(self._alphabet)}, got {bad[0]}"
            )
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    @property
    def length(self) -> int:
        return len(self.entries)

    @classmethod
    def from_text(cls, text: str):
        """Parse a '+'/'-' string (and '0' for ternary sequences)."""
        text = text.strip()
        try:
            return cls(tuple(_VALUE[ch] for ch in text))
        except KeyError as exc:
            raise InvalidInputError(f"unexpected symbol {exc.args[0]!r} in {text!r}") from None

    def text(self) -> str:
        return "".join(_SYMBOL[e] for e in self.entries)

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class BinarySequence(_Sequence):
    """A finite sequence over {+1, -1}."""

    _alphabet = _BINARY


@dataclass(frozen=True)
class TernarySequence(_Sequence):
    """A finite sequence over {0, +1, -1}."""

    _alphabet = _TERNARY

    @classmethod
    def zeros(cls, length: int) -> "TernarySequence":
        return cls((0,) * length)


AnySequence = Union[BinarySequence, TernarySequence]


def naf_values(entries: Sequence[int]) -> tuple[int, ...]:
    """Nonperiodic autocorrelation N(i) = sum_j a_j a_{i+j} for i = 0..len-1."""
    n = len(entries)
    return tuple(
        sum(entries[j] * entries[j + i] for j in range(n - i)) for i in range(n)
    )


def naf(x: AnySequence) -> tuple[int, ...]:
    """Autocorrelation profile of ``x``; only nonnegative shifts are stored.

    The profile at shift 0 is the sum of squares, so it equals the length for
    a binary sequence. Negative shifts follow from N(-i) = N(i).
    """
    if not isinstance(x, _Sequence):
        x = _coerce(x)
    return naf_values(x.entries)


def _coerce(values: Iterable[int]) -> AnySequence:
    entries = tuple(values)
    if not entries:
        raise InvalidInputError("sequence must have length >= 1")
    if all(e in _BINARY for e in entries):
        return BinarySequence(entries)
    return TernarySequence(entries)


def _same_kind(x: AnySequence, entries: Iterable[int]) -> AnySequence:
    return type(x)(tuple(entries))


def negate(x: AnySequence) -> AnySequence:
    return _same_kind(x, (-e for e in x.entries))


def alternate(x: AnySequence) -> AnySequence:
    """Multiply the entry at 1-based position i by (-1)^(i-1)."""
    return _same_kind(x, (e if i % 2 == 0 else -e for i, e in enumerate(x.entries)))


def reverse(x: AnySequence) -> AnySequence:
    return _same_kind(x, reversed(x.entries))


def concat(x: AnySequence, y: AnySequence) -> AnySequence:
    if type(x) is not type(y):
        raise InvalidInputError(
            f"cannot concatenate {type(x).__name__} with {type(y).__name__}"
        )
    return _same_kind(x, x.entries + y.entries)


def seq_sum(x: AnySequence) -> int:
    return sum(x.entries)
