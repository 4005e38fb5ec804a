"""Well-formed formulas over the 15-symbol arithmetic alphabet.

The grammar is fully parenthesized so every formula render starts with "("
and first returns to paren balance zero exactly at its end; the sentence
language is therefore prefix-free.  Variables are x followed by prime marks,
so the k-th variable costs 1+k symbols.  Quantifier bodies start with "(",
which ends the run of primes unambiguously.

    term    := x'...' | 0 | s( term ) | ( term + term ) | ( term . term )
    formula := ( term = term ) | ( ! formula ) | ( formula & formula )
             | ( formula | formula ) | ( formula > formula )
             | ( A x'...' formula ) | ( E x'...' formula )

shown here in the ASCII alias spelling; the canonical glyphs are
x (prime) 0 s + TIMES = NOT AND OR IMPLIES FORALL EXISTS ( ).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..qstrings import QString

# symbol codes over the 15-letter alphabet
SYM_X = 0
SYM_PRIME = 1
SYM_ZERO = 2
SYM_S = 3
SYM_PLUS = 4
SYM_TIMES = 5
SYM_EQ = 6
SYM_NOT = 7
SYM_AND = 8
SYM_OR = 9
SYM_IMPLIES = 10
SYM_FORALL = 11
SYM_EXISTS = 12
SYM_LPAR = 13
SYM_RPAR = 14

GLYPHS = "x′0s+·=¬∧∨⇒∀∃()"
ASCII = "x'0s+*=!&|>AE()"

_GLYPH_TO_CODE = {ch: i for i, ch in enumerate(GLYPHS)}
_ASCII_TO_CODE = {ch: i for i, ch in enumerate(ASCII)}


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be non-negative")


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Succ:
    arg: "Term"


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Times:
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, Succ, Plus, Times]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: int
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: int
    body: "Formula"


Formula = Union[Eq, Not, And, Or, Implies, ForAll, Exists]

_BINARY = {And: SYM_AND, Or: SYM_OR, Implies: SYM_IMPLIES}
_QUANT = {ForAll: SYM_FORALL, Exists: SYM_EXISTS}


def _render_term(t: Term, out: list[int]) -> None:
    if isinstance(t, Var):
        out.append(SYM_X)
        out.extend([SYM_PRIME] * t.index)
    elif isinstance(t, Zero):
        out.append(SYM_ZERO)
    elif isinstance(t, Succ):
        out.append(SYM_S)
        out.append(SYM_LPAR)
        _render_term(t.arg, out)
        out.append(SYM_RPAR)
    elif isinstance(t, (Plus, Times)):
        out.append(SYM_LPAR)
        _render_term(t.left, out)
        out.append(SYM_PLUS if isinstance(t, Plus) else SYM_TIMES)
        _render_term(t.right, out)
        out.append(SYM_RPAR)
    else:
        raise TypeError(f"not a term: {t!r}")


def _render_formula(f: Formula, out: list[int]) -> None:
    out.append(SYM_LPAR)
    if isinstance(f, Eq):
        _render_term(f.left, out)
        out.append(SYM_EQ)
        _render_term(f.right, out)
    elif isinstance(f, Not):
        out.append(SYM_NOT)
        _render_formula(f.body, out)
    elif isinstance(f, (And, Or, Implies)):
        _render_formula(f.left, out)
        out.append(_BINARY[type(f)])
        _render_formula(f.right, out)
    elif isinstance(f, (ForAll, Exists)):
        out.append(_QUANT[type(f)])
        out.append(SYM_X)
        out.extend([SYM_PRIME] * f.var)
        _render_formula(f.body, out)
    else:
        raise TypeError(f"not a formula: {f!r}")
    out.append(SYM_RPAR)


def render(f: Formula) -> QString:
    out: list[int] = []
    _render_formula(f, out)
    return QString(15, tuple(out))


def render_term(t: Term) -> QString:
    out: list[int] = []
    _render_term(t, out)
    return QString(15, tuple(out))


def render_glyphs(f: Formula) -> str:
    return "".join(GLYPHS[c] for c in render(f).symbols)


def render_ascii(f: Formula) -> str:
    return "".join(ASCII[c] for c in render(f).symbols)


def term_length(t: Term) -> int:
    if isinstance(t, Var):
        return 1 + t.index
    if isinstance(t, Zero):
        return 1
    if isinstance(t, Succ):
        return 3 + term_length(t.arg)
    return 3 + term_length(t.left) + term_length(t.right)


def formula_length(f: Formula) -> int:
    if isinstance(f, Eq):
        return 3 + term_length(f.left) + term_length(f.right)
    if isinstance(f, Not):
        return 3 + formula_length(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 3 + formula_length(f.left) + formula_length(f.right)
    return 4 + f.var + formula_length(f.body)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.position = position


def _to_codes(text) -> tuple[int, ...]:
    if isinstance(text, QString):
        if text.q != 15:
            raise ValueError("formula strings live over the 15-symbol alphabet")
        return text.symbols
    codes = []
    for i, ch in enumerate(text):
        if ch in _GLYPH_TO_CODE:
            codes.append(_GLYPH_TO_CODE[ch])
        elif ch in _ASCII_TO_CODE:
            codes.append(_ASCII_TO_CODE[ch])
        else:
            raise ParseError(f"unknown character {ch!r}", i)
    return tuple(codes)


class _Parser:
    def __init__(self, codes: tuple[int, ...]):
        self.codes = codes
        self.pos = 0

    def peek(self) -> int:
        if self.pos >= len(self.codes):
            raise ParseError("unexpected end of input", self.pos)
        return self.codes[self.pos]

    def take(self, expected: int, what: str) -> None:
        if self.pos >= len(self.codes):
            raise ParseError(f"expected {what}, found end of input", self.pos)
        if self.codes[self.pos] != expected:
            raise ParseError(f"expected {what}", self.pos)
        self.pos += 1

    def parse_var_index(self) -> int:
        self.take(SYM_X, "a variable")
        k = 0
        while self.pos < len(self.codes) and self.codes[self.pos] == SYM_PRIME:
            k += 1
            self.pos += 1
        return k

    def parse_term(self) -> Term:
        c = self.peek()
        if c == SYM_X:
            return Var(self.parse_var_index())
        if c == SYM_ZERO:
            self.pos += 1
            return Zero()
        if c == SYM_S:
            self.pos += 1
            self.take(SYM_LPAR, "'(' after s")
            inner = self.parse_term()
            self.take(SYM_RPAR, "')'")
            return Succ(inner)
        if c == SYM_LPAR:
            self.pos += 1
            left = self.parse_term()
            op = self.peek()
            if op not in (SYM_PLUS, SYM_TIMES):
                raise ParseError("expected '+' or the product sign", self.pos)
            self.pos += 1
            right = self.parse_term()
            self.take(SYM_RPAR, "')'")
            return Plus(left, right) if op == SYM_PLUS else Times(left, right)
        raise ParseError("expected a term", self.pos)

    def parse_formula(self) -> Formula:
        self.take(SYM_LPAR, "'('")
        c = self.peek()
        if c == SYM_NOT:
            self.pos += 1
            body = self.parse_formula()
            self.take(SYM_RPAR, "')'")
            return Not(body)
        if c in (SYM_FORALL, SYM_EXISTS):
            self.pos += 1
            k = self.parse_var_index()
            body = self.parse_formula()
            self.take(SYM_RPAR, "')'")
            return ForAll(k, body) if c == SYM_FORALL else Exists(k, body)
        # either an atomic ( term = term ) or a binary connective; a term and
        # a formula can both start with "(", so try the term reading first
        saved = self.pos
        try:
            left_t = self.parse_term()
            self.take(SYM_EQ, "'='")
            right_t = self.parse_term()
            self.take(SYM_RPAR, "')'")
            return Eq(left_t, right_t)
        except ParseError:
            self.pos = saved
        left = self.parse_formula()
        op = self.peek()
        if op not in _BINARY.values():
            raise ParseError("expected a binary connective", self.pos)
        self.pos += 1
        right = self.parse_formula()
        self.take(SYM_RPAR, "')'")
        if op == SYM_AND:
            return And(left, right)
        if op == SYM_OR:
            return Or(left, right)
        return Implies(left, right)


def parse_wff(text) -> Formula:
    """Parse a formula from glyph text, ASCII alias text, or a QString."""
    parser = _Parser(_to_codes(text))
    f = parser.parse_formula()
    if parser.pos != len(parser.codes):
        raise ParseError("trailing input after formula", parser.pos)
    return f


def parse_term_text(text) -> Term:
    parser = _Parser(_to_codes(text))
    t = parser.parse_term()
    if parser.pos != len(parser.codes):
        raise ParseError("trailing input after term", parser.pos)
    return t


# ---------------------------------------------------------------------------
# Variables, substitution, instances
# ---------------------------------------------------------------------------


def term_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, Succ):
        return term_vars(t.arg)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(f: Formula) -> frozenset[int]:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def subst_term(t: Term, k: int, repl: Term) -> Term:
    if isinstance(t, Var):
        return repl if t.index == k else t
    if isinstance(t, Zero):
        return t
    if isinstance(t, Succ):
        return Succ(subst_term(t.arg, k, repl))
    if isinstance(t, Plus):
        return Plus(subst_term(t.left, k, repl), subst_term(t.right, k, repl))
    return Times(subst_term(t.left, k, repl), subst_term(t.right, k, repl))


def substitute(f: Formula, k: int, repl: Term) -> Formula:
    """f with every free occurrence of variable k replaced by repl.

    Plain textual substitution; use free_for to check it is capture-safe.
    """
    if isinstance(f, Eq):
        return Eq(subst_term(f.left, k, repl), subst_term(f.right, k, repl))
    if isinstance(f, Not):
        return Not(substitute(f.body, k, repl))
    if isinstance(f, And):
        return And(substitute(f.left, k, repl), substitute(f.right, k, repl))
    if isinstance(f, Or):
        return Or(substitute(f.left, k, repl), substitute(f.right, k, repl))
    if isinstance(f, Implies):
        return Implies(substitute(f.left, k, repl), substitute(f.right, k, repl))
    if f.var == k:
        return f
    cls = type(f)
    return cls(f.var, substitute(f.body, k, repl))


def free_for(t: Term, k: int, f: Formula) -> bool:
    """True when substituting t for free k in f captures no variable of t."""
    if isinstance(f, Eq):
        return True
    if isinstance(f, Not):
        return free_for(t, k, f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_for(t, k, f.left) and free_for(t, k, f.right)
    if f.var == k or k not in free_vars(f.body):
        return True
    if f.var in term_vars(t):
        return False
    return free_for(t, k, f.body)


class _NoInstance(Exception):
    pass


def _first_aligned(f: Formula | Term, g: Formula | Term, k: int, bound: frozenset):
    """The g-subtree aligned with the first free occurrence of Var(k) in f."""
    if isinstance(f, Var):
        if f.index == k and k not in bound:
            return g
        if f != g:
            raise _NoInstance
        return None
    if type(f) is not type(g):
        raise _NoInstance
    if isinstance(f, Zero):
        return None
    if isinstance(f, Succ):
        return _first_aligned(f.arg, g.arg, k, bound)
    if isinstance(f, (Plus, Times, Eq, And, Or, Implies)):
        found = _first_aligned(f.left, g.left, k, bound)
        if found is not None:
            return found
        return _first_aligned(f.right, g.right, k, bound)
    if isinstance(f, Not):
        return _first_aligned(f.body, g.body, k, bound)
    if isinstance(f, (ForAll, Exists)):
        if f.var != g.var:
            raise _NoInstance
        return _first_aligned(f.body, g.body, k, bound | {f.var})
    raise TypeError(f"unexpected node {f!r}")


def find_instance_term(f: Formula, k: int, g: Formula):
    """Term t with g == f[t/k] and t free for k in f, or None."""
    try:
        candidate = _first_aligned(f, g, k, frozenset())
    except _NoInstance:
        return None
    if candidate is None:
        # k has no free occurrence: any term instantiates; normalize to 0
        return Zero() if f == g else None
    if not isinstance(candidate, (Var, Zero, Succ, Plus, Times)):
        return None
    if not free_for(candidate, k, f):
        return None
    if substitute(f, k, candidate) != g:
        return None
    return candidate


# ---------------------------------------------------------------------------
# Exhaustive enumeration by rendered length (small lengths only); lists are
# sorted lexicographically by symbol codes so they agree with the global
# quasi-lex order used by the index numbering.
# ---------------------------------------------------------------------------

_TERMS: dict[int, tuple] = {}
_FORMULAS: dict[int, tuple] = {}


def terms_of_length(length: int) -> tuple[Term, ...]:
    if length in _TERMS:
        return _TERMS[length]
    items: list[Term] = []
    if length >= 1:
        items.append(Var(length - 1))
    if length == 1:
        items.append(Zero())
    if length >= 4:
        items.extend(Succ(t) for t in terms_of_length(length - 3))
    if length >= 5:
        for a in range(1, length - 3):
            b = length - 3 - a
            for t1 in terms_of_length(a):
                for t2 in terms_of_length(b):
                    items.append(Plus(t1, t2))
                    items.append(Times(t1, t2))
    items.sort(key=lambda t: render_term(t).symbols)
    _TERMS[length] = tuple(items)
    return _TERMS[length]


def formulas_of_length(length: int) -> tuple[Formula, ...]:
    if length in _FORMULAS:
        return _FORMULAS[length]
    items: list[Formula] = []
    if length >= 5:
        for a in range(1, length - 3):
            b = length - 3 - a
            for t1 in terms_of_length(a):
                for t2 in terms_of_length(b):
                    items.append(Eq(t1, t2))
    if length >= 8:
        items.extend(Not(f) for f in formulas_of_length(length - 3))
    if length >= 13:
        for a in range(5, length - 7):
            b = length - 3 - a
            for f1 in formulas_of_length(a):
                for f2 in formulas_of_length(b):
                    items.append(And(f1, f2))
                    items.append(Or(f1, f2))
                    items.append(Implies(f1, f2))
    if length >= 9:
        for k in range(length - 8):
            for f in formulas_of_length(length - 4 - k):
                items.append(ForAll(k, f))
                items.append(Exists(k, f))
    items.sort(key=lambda f: render(f).symbols)
    _FORMULAS[length] = tuple(items)
    return _FORMULAS[length]
