"""Alphabet-parametric strings and the quasi-lexicographic bijection.

Strings over an alphabet of size q are sequences of integer symbols in
[0, q-1].  The quasi-lexicographic order lists strings shortest first,
same-length strings in lexicographic order of their symbol values; this
induces a bijection between non-negative integers and strings which the
rest of the package leans on everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class QString:
    """A finite string over the alphabet {0, ..., q-1}."""

    q: int
    symbols: tuple[int, ...] = ()

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.q}")
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        for s in self.symbols:
            if not 0 <= s < self.q:
                raise ValueError(f"symbol {s} out of range for alphabet size {self.q}")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return QString(self.q, self.symbols[i])
        return self.symbols[i]

    def __add__(self, other: "QString") -> "QString":
        if other.q != self.q:
            raise ValueError("alphabet mismatch in concatenation")
        return QString(self.q, self.symbols + other.symbols)

    def startswith(self, other: "QString") -> bool:
        return self.symbols[: len(other.symbols)] == other.symbols

    def is_proper_prefix_of(self, other: "QString") -> bool:
        return len(self) < len(other) and other.symbols[: len(self)] == self.symbols

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Key realizing the quasi-lexicographic order."""
        return (len(self.symbols), self.symbols)

    def render(self) -> str:
        """Digits '0'..'9' then 'a'..'z'; the empty string renders as ''."""
        if self.q > len(_DIGITS):
            raise ValueError(f"no glyphs for alphabet size {self.q} > 36")
        return "".join(_DIGITS[s] for s in self.symbols)

    def __str__(self) -> str:
        return self.render()


def empty(q: int) -> QString:
    return QString(q, ())


def from_text(q: int, text: str) -> QString:
    """Inverse of render() for q <= 36."""
    symbols = []
    for ch in text:
        value = _DIGITS.find(ch.lower())
        if value < 0 or value >= q:
            raise ValueError(f"glyph {ch!r} is not a digit of an alphabet of size {q}")
        symbols.append(value)
    return QString(q, tuple(symbols))


def expected_length(q: int, n: int) -> int:
    """Length of the n-th string: floor(log_q(n*(q-1)+1)), by integer arithmetic."""
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if n < 0:
        raise ValueError("index must be non-negative")
    target = n * (q - 1) + 1
    length = 0
    power = 1
    while power * q <= target:
        power *= q
        length += 1
    return length


def index_to_string(q: int, n: int) -> QString:
    """The n-th string over the q-symbol alphabet in quasi-lexicographic order."""
    length = expected_length(q, n)
    # strings shorter than `length` number (q^length - 1) / (q - 1)
    shorter = (q**length - 1) // (q - 1)
    offset = n - shorter
    symbols = [0] * length
    for i in range(length - 1, -1, -1):
        symbols[i] = offset % q
        offset //= q
    return QString(q, tuple(symbols))


def string_to_index(w: QString) -> int:
    """Inverse of index_to_string."""
    q = w.q
    shorter = (q ** len(w) - 1) // (q - 1)
    offset = 0
    for s in w.symbols:
        offset = offset * q + s
    return shorter + offset
