"""Online Kraft-Chaitin allocation of prefix-free codewords.

The allocator consumes a stream of requested codeword lengths and hands out
codewords of exactly those lengths, keeping the granted set prefix-free.  A
request is refused precisely when granting it would push the exact Kraft sum
above 1.

State is a set of free intervals, each represented by a stem string (the
interval being all extensions of the stem).  The splitting policy is fixed
for reproducibility: take the lexicographically least free stem of length at
most n, allocate its all-zeros depth-n extension, and return the siblings
along the allocated path to the free set.  With this policy the free stems,
read in lexicographic order, have non-increasing lengths, each length is
populated by a single split (hence at most q-1 stems per length), and a
request is therefore satisfiable whenever the Kraft mass allows it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .qstrings import QString


class KraftExceeded(Exception):
    """Raised when a request would push the Kraft sum above 1."""


@dataclass(frozen=True)
class Codeword:
    word: QString
    requested_length: int

    def __post_init__(self):
        if len(self.word) != self.requested_length:
            raise ValueError("codeword length differs from requested length")


def kraft_sum(lengths, q: int) -> Fraction:
    """Exact sum of q**(-n) over the given lengths."""
    total = Fraction(0)
    for n in lengths:
        if n < 0:
            raise ValueError("codeword lengths must be non-negative")
        total += Fraction(1, q**n)
    return total


class Allocator:
    """Sequential Kraft-Chaitin state machine; callers serialize access."""

    def __init__(self, q: int):
        if q < 2:
            raise ValueError(f"alphabet size must be >= 2, got {q}")
        self.q = q
        self._free: list[tuple[int, ...]] = [()]  # stems, kept in lex order
        self.mass_used = Fraction(0)

    def free_stems(self) -> list[QString]:
        return [QString(self.q, stem) for stem in self._free]

    def check_invariants(self) -> None:
        """Stems pairwise prefix-incomparable and mass accounting exact."""
        free_mass = Fraction(0)
        for i, stem in enumerate(self._free):
            free_mass += Fraction(1, self.q ** len(stem))
            for other in self._free[i + 1 :]:
                shorter, longer = sorted((stem, other), key=len)
                if longer[: len(shorter)] == shorter:
                    raise AssertionError(f"free stems {stem} and {other} are comparable")
        if self.mass_used + free_mass != 1:
            raise AssertionError("mass accounting broken")
        if not 0 <= self.mass_used <= 1:
            raise AssertionError("mass_used out of [0, 1]")

    def allocate(self, n: int) -> Codeword:
        """Grant a codeword of length exactly n, or raise KraftExceeded.

        A failed request leaves the allocator state unchanged.
        """
        if n < 0:
            raise ValueError("requested length must be non-negative")
        cost = Fraction(1, self.q**n)
        if self.mass_used + cost > 1:
            raise KraftExceeded(
                f"request of length {n} would raise the Kraft sum above 1"
            )
        index = None
        for i, stem in enumerate(self._free):
            if len(stem) <= n:
                index = i
                break
        # mass_used + q^-n <= 1 guarantees an eligible stem exists: free stems
        # carry at most q-1 intervals per length, so if all were longer than n
        # the free mass would be strictly below q^-n.
        assert index is not None, "no usable interval despite available mass"
        stem = self._free.pop(index)
        word = stem + (0,) * (n - len(stem))
        siblings = []
        for level in range(len(stem), n):
            for symbol in range(1, self.q):
                siblings.append(word[:level] + (symbol,))
        # deeper siblings are lexicographically smaller; insert the whole
        # block, sorted, where the split stem used to sit
        siblings.sort()
        self._free[index:index] = siblings
        self.mass_used += cost
        return Codeword(QString(self.q, word), n)


def allocator_new(q: int) -> Allocator:
    return Allocator(q)


def verify_prefix_free(words) -> bool:
    """True iff no duplicates and no word is a proper prefix of another."""
    seen = set()
    for w in words:
        if w.symbols in seen:
            return False
        seen.add(w.symbols)
    for w in words:
        for k in range(len(w.symbols)):
            if w.symbols[:k] in seen:
                return False
    return True
