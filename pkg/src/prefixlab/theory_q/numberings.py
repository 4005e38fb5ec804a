"""Goedel numberings: injective binary names for formulas.

Two concrete numberings ship with the package:

  * fixed4 - each of the 15 alphabet symbols becomes its 4-bit code, so
    |g(u)| = 4 * |render(u)| exactly;
  * index  - u maps to bin(k) where k is the rank of u in the quasi-lex
    enumeration of all well-formed formulas and bin(n) is the binary
    expansion of n+1 without its leading 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..qstrings import QString
from .ranking import DEFAULT_LENGTH_CAP, rank_formula, unrank_formula
from .syntax import Formula, parse_wff, render


@dataclass(frozen=True)
class GoedelNumbering:
    name: str
    encode: Callable[[Formula], QString]
    decode: Callable[[QString], Formula]


def _fixed4_encode(f: Formula) -> QString:
    bits: list[int] = []
    for code in render(f).symbols:
        bits.extend(((code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1))
    return QString(2, tuple(bits))


def _fixed4_decode(y: QString) -> Formula:
    if len(y) % 4 != 0:
        raise ValueError("fixed4 images have length divisible by 4")
    codes = []
    for i in range(0, len(y), 4):
        value = (
            (y.symbols[i] << 3)
            | (y.symbols[i + 1] << 2)
            | (y.symbols[i + 2] << 1)
            | y.symbols[i + 3]
        )
        if value >= 15:
            raise ValueError("group value 15 is not an alphabet symbol")
        codes.append(value)
    return parse_wff(QString(15, tuple(codes)))


def bin_of_index(n: int) -> QString:
    """The n-th binary string: binary of n+1 without the leading 1."""
    if n < 0:
        raise ValueError("index must be non-negative")
    bits = bin(n + 1)[3:]
    return QString(2, tuple(int(b) for b in bits))


def index_of_bin(y: QString) -> int:
    value = 1
    for b in y.symbols:
        value = value * 2 + b
    return value - 1


def _index_encode(f: Formula) -> QString:
    return bin_of_index(rank_formula(f, DEFAULT_LENGTH_CAP))


def _index_decode(y: QString) -> Formula:
    return unrank_formula(index_of_bin(y), DEFAULT_LENGTH_CAP)


goedel_fixed4 = GoedelNumbering("fixed4", _fixed4_encode, _fixed4_decode)
goedel_index = GoedelNumbering("index", _index_encode, _index_decode)

NUMBERINGS = {"fixed4": goedel_fixed4, "index": goedel_index}
