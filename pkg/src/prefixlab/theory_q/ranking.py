"""Rank and unrank well-formed formulas in the quasi-lex order of their
renders, without enumerating the language.

Counting works over the bracketed grammar

    F -> (T=T) | (!F) | (F&F) | (F|F) | (F>F) | (A V F) | (E V F)
    T -> V | 0 | s(T) | (T+T) | (T.T)
    V -> x | V'

which is unambiguous, so per-length counts are exact and the number of
same-length renders lexicographically below a target decomposes production
by production.  Everything is integer arithmetic; lengths are capped only to
keep accidental huge inputs from looping (the cap is configurable)."""

from __future__ import annotations

from ..qstrings import QString
from . import syntax as S
from .syntax import Formula, parse_wff, render

_F = "F"
_T = "T"
_V = "V"

_F_PRODS = (
    (S.SYM_LPAR, _T, S.SYM_EQ, _T, S.SYM_RPAR),
    (S.SYM_LPAR, S.SYM_NOT, _F, S.SYM_RPAR),
    (S.SYM_LPAR, _F, S.SYM_AND, _F, S.SYM_RPAR),
    (S.SYM_LPAR, _F, S.SYM_OR, _F, S.SYM_RPAR),
    (S.SYM_LPAR, _F, S.SYM_IMPLIES, _F, S.SYM_RPAR),
    (S.SYM_LPAR, S.SYM_FORALL, _V, _F, S.SYM_RPAR),
    (S.SYM_LPAR, S.SYM_EXISTS, _V, _F, S.SYM_RPAR),
)
_T_PRODS = (
    (_V,),
    (S.SYM_ZERO,),
    (S.SYM_S, S.SYM_LPAR, _T, S.SYM_RPAR),
    (S.SYM_LPAR, _T, S.SYM_PLUS, _T, S.SYM_RPAR),
    (S.SYM_LPAR, _T, S.SYM_TIMES, _T, S.SYM_RPAR),
)
_PRODS = {_F: _F_PRODS, _T: _T_PRODS}
_MIN_LEN = {_F: 5, _T: 1, _V: 1}

DEFAULT_LENGTH_CAP = 512


class RankingCapExceeded(ValueError):
    pass


_count_memo: dict = {}


def _count_nt(nt: str, length: int) -> int:
    if length < _MIN_LEN[nt]:
        return 0
    if nt == _V:
        return 1
    key = (nt, length)
    if key not in _count_memo:
        _count_memo[key] = sum(_count_seq(prod, length) for prod in _PRODS[nt])
    return _count_memo[key]


def _count_seq(seq: tuple, length: int) -> int:
    if not seq:
        return 1 if length == 0 else 0
    key = (seq, length)
    if key in _count_memo:
        return _count_memo[key]
    head, rest = seq[0], seq[1:]
    if isinstance(head, int):
        total = _count_seq(rest, length - 1) if length >= 1 else 0
    else:
        total = 0
        rest_min = sum(
            _MIN_LEN[item] if isinstance(item, str) else 1 for item in rest
        )
        for a in range(_MIN_LEN[head], length - rest_min + 1):
            ca = _count_nt(head, a)
            if ca:
                total += ca * _count_seq(rest, length - a)
    _count_memo[key] = total
    return total


def count_formulas(length: int) -> int:
    """Number of well-formed formulas whose render has the given length."""
    return _count_nt(_F, length)


def count_terms(length: int) -> int:
    return _count_nt(_T, length)


class _Query:
    """Per-target memo bundle for the lex-below counting."""

    def __init__(self, codes: tuple[int, ...]):
        self.codes = codes
        self.less_memo: dict = {}
        self.member_memo: dict = {}

    def member(self, nt: str, i: int, j: int) -> bool:
        if j - i < _MIN_LEN[nt]:
            return False
        key = (nt, i, j)
        if key in self.member_memo:
            return self.member_memo[key]
        span = self.codes[i:j]
        if nt == _V:
            ok = span[0] == S.SYM_X and all(c == S.SYM_PRIME for c in span[1:])
        else:
            parser = S._Parser(span)
            try:
                if nt == _F:
                    parser.parse_formula()
                else:
                    parser.parse_term()
                ok = parser.pos == len(span)
            except S.ParseError:
                ok = False
        self.member_memo[key] = ok
        return ok

    def less_nt(self, nt: str, i: int, j: int) -> int:
        """Strings of L(nt) with length j-i lexicographically below codes[i:j]."""
        if j - i < _MIN_LEN[nt]:
            return 0
        if nt == _V:
            # the unique variable of this length: x followed by primes
            span = self.codes[i:j]
            var = (S.SYM_X,) + (S.SYM_PRIME,) * (j - i - 1)
            return 1 if var < span else 0
        key = (nt, i, j)
        if key not in self.less_memo:
            self.less_memo[key] = sum(
                self.less_seq(prod, i, j) for prod in _PRODS[nt]
            )
        return self.less_memo[key]

    def less_seq(self, seq: tuple, i: int, j: int) -> int:
        if not seq:
            return 0  # only the empty string, which is never < itself
        key = (seq, i, j)
        if key in self.less_memo:
            return self.less_memo[key]
        head, rest = seq[0], seq[1:]
        if isinstance(head, int):
            if i >= j:
                total = 0
            elif head < self.codes[i]:
                total = _count_seq(seq, j - i)
            elif head == self.codes[i]:
                total = self.less_seq(rest, i + 1, j)
            else:
                total = 0
        else:
            total = 0
            rest_min = sum(
                _MIN_LEN[item] if isinstance(item, str) else 1 for item in rest
            )
            for a in range(_MIN_LEN[head], (j - i) - rest_min + 1):
                below = self.less_nt(head, i, i + a)
                if below:
                    total += below * _count_seq(rest, j - i - a)
                if self.member(head, i, i + a):
                    total += self.less_seq(rest, i + a, j)
        self.less_memo[key] = total
        return total


def rank_formula(f: Formula, length_cap: int = DEFAULT_LENGTH_CAP) -> int:
    """Position of f in the quasi-lex enumeration of all formula renders."""
    r = render(f)
    if len(r) > length_cap:
        raise RankingCapExceeded(f"render length {len(r)} exceeds cap {length_cap}")
    shorter = sum(count_formulas(l) for l in range(1, len(r)))
    query = _Query(r.symbols)
    return shorter + query.less_nt(_F, 0, len(r.symbols))


def _prefix_count_nt(nt: str, prefix: tuple[int, ...], length: int) -> int:
    if length < _MIN_LEN[nt] or len(prefix) > length:
        return 0
    if nt == _V:
        var = (S.SYM_X,) + (S.SYM_PRIME,) * (length - 1)
        return 1 if var[: len(prefix)] == prefix else 0
    return sum(_prefix_count_seq(prod, prefix, length) for prod in _PRODS[nt])


def _prefix_count_seq(seq: tuple, prefix: tuple[int, ...], length: int) -> int:
    if not prefix:
        return _count_seq(seq, length)
    if not seq:
        return 0
    head, rest = seq[0], seq[1:]
    if isinstance(head, int):
        if prefix[0] != head:
            return 0
        return _prefix_count_seq(rest, prefix[1:], length - 1)
    total = 0
    rest_min = sum(_MIN_LEN[item] if isinstance(item, str) else 1 for item in rest)
    for a in range(_MIN_LEN[head], length - rest_min + 1):
        if a < len(prefix):
            span = prefix[:a]
            if _is_member_codes(head, span):
                total += _prefix_count_seq(rest, prefix[a:], length - a)
        else:
            inner = _prefix_count_nt(head, prefix, a)
            if inner:
                total += inner * _count_seq(rest, length - a)
    return total


def _is_member_codes(nt: str, span: tuple[int, ...]) -> bool:
    if len(span) < _MIN_LEN[nt]:
        return False
    if nt == _V:
        return span[0] == S.SYM_X and all(c == S.SYM_PRIME for c in span[1:])
    parser = S._Parser(span)
    try:
        if nt == _F:
            parser.parse_formula()
        else:
            parser.parse_term()
        return parser.pos == len(span)
    except S.ParseError:
        return False


def unrank_formula(k: int, length_cap: int = DEFAULT_LENGTH_CAP) -> Formula:
    """Inverse of rank_formula."""
    if k < 0:
        raise ValueError("rank must be non-negative")
    length = 1
    remaining = k
    while True:
        if length > length_cap:
            raise RankingCapExceeded(f"rank {k} exceeds the cap of {length_cap} symbols")
        here = count_formulas(length)
        if remaining < here:
            break
        remaining -= here
        length += 1
    prefix: tuple[int, ...] = ()
    while len(prefix) < length:
        for symbol in range(15):
            candidate = prefix + (symbol,)
            n = _prefix_count_nt(_F, candidate, length)
            if remaining < n:
                prefix = candidate
                break
            remaining -= n
        else:
            raise AssertionError("unrank descent failed")
    return parse_wff(QString(15, prefix))
