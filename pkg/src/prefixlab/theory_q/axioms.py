"""Axioms of the arithmetic system: the seven non-logical axioms plus a
fixed Hilbert-style stock of logical axiom schemes.

Scheme choices (the canon for this repo):
  P1  a > (b > a)
  P2  (a > (b > c)) > ((a > b) > (a > c))
  P3  ((!a) > (!b)) > (b > a)
  forall-inst   (Ax a) > a[t/x], t free for x in a
  forall-dist   (Ax (a > b)) > (a > (Ax b)), x not free in a
  eq-refl       t = t
  eq-cong-s     (t=u) > (s(t)=s(u))
  eq-cong-plus-l/r, eq-cong-times-l/r   one-sided congruences
  eq-trans      (t=u) > ((t=v) > (u=v))
  and-intro / and-elim-l / and-elim-r
  or-intro-l / or-intro-r / or-elim
  exists-intro  a[t/x] > (Ex a), t free for x in a
  exists-elim   (Ax (a > b)) > ((Ex a) > b), x not free in b

The seven non-logical axioms match literally up to a consistent renaming of
their variables; scheme instances are recognized structurally.
"""

from __future__ import annotations

from typing import Optional

from .syntax import (
    And,
    Eq,
    Exists,
    ForAll,
    Formula,
    Implies,
    Not,
    Or,
    Plus,
    Succ,
    Term,
    Times,
    Var,
    Zero,
    find_instance_term,
    free_vars,
    render_term,
    term_vars,
)

X = Var(0)
X1 = Var(1)

Q_AXIOMS: dict[int, Formula] = {
    1: Implies(Eq(Succ(X), Succ(X1)), Eq(X, X1)),
    2: Not(Eq(Zero(), Succ(X))),
    3: Implies(Not(Eq(X, Zero())), Exists(1, Eq(X, Succ(X1)))),
    4: Eq(Plus(X, Zero()), X),
    5: Eq(Plus(X, Succ(X1)), Succ(Plus(X, X1))),
    6: Eq(Times(X, Zero()), Zero()),
    7: Eq(Times(X, Succ(X1)), Plus(Times(X, X1), X)),
}


def _match_renaming(pattern, node, mapping: dict[int, int], bound: frozenset) -> bool:
    """Structural match of a non-logical axiom against a formula, where the
    pattern's variables may be renamed injectively (bound and free alike)."""
    if isinstance(pattern, Var):
        if not isinstance(node, Var):
            return False
        if pattern.index in mapping:
            return mapping[pattern.index] == node.index
        if node.index in mapping.values():
            return False
        mapping[pattern.index] = node.index
        return True
    if type(pattern) is not type(node):
        return False
    if isinstance(pattern, Zero):
        return True
    if isinstance(pattern, Succ):
        return _match_renaming(pattern.arg, node.arg, mapping, bound)
    if isinstance(pattern, (Plus, Times, Eq, And, Or, Implies)):
        return _match_renaming(pattern.left, node.left, mapping, bound) and _match_renaming(
            pattern.right, node.right, mapping, bound
        )
    if isinstance(pattern, Not):
        return _match_renaming(pattern.body, node.body, mapping, bound)
    if isinstance(pattern, (ForAll, Exists)):
        if pattern.var in mapping:
            if mapping[pattern.var] != node.var:
                return False
        else:
            if node.var in mapping.values():
                return False
            mapping[pattern.var] = node.var
        return _match_renaming(pattern.body, node.body, mapping, bound)
    raise TypeError(f"unexpected node {pattern!r}")


def match_q_axiom(index: int, f: Formula) -> Optional[dict[int, int]]:
    """The variable renaming under which f is the index-th axiom, if any."""
    mapping: dict[int, int] = {}
    if _match_renaming(Q_AXIOMS[index], f, mapping, frozenset()):
        return mapping
    return None


def _as_implication(f) -> Optional[tuple[Formula, Formula]]:
    if isinstance(f, Implies):
        return f.left, f.right
    return None


def _match_p1(f):
    if isinstance(f, Implies) and isinstance(f.right, Implies) and f.right.right == f.left:
        return {"a": f.left, "b": f.right.left}
    return None


def _match_p2(f):
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)):
        return None
    if not (isinstance(f.left.right, Implies) and isinstance(f.right, Implies)):
        return None
    a, bc = f.left.left, f.left.right
    b, c = bc.left, bc.right
    rhs = f.right
    if (
        isinstance(rhs.left, Implies)
        and isinstance(rhs.right, Implies)
        and rhs.left == Implies(a, b)
        and rhs.right == Implies(a, c)
    ):
        return {"a": a, "b": b, "c": c}
    return None


def _match_p3(f):
    if not isinstance(f, Implies):
        return None
    lhs, rhs = f.left, f.right
    if not (isinstance(lhs, Implies) and isinstance(lhs.left, Not) and isinstance(lhs.right, Not)):
        return None
    if not isinstance(rhs, Implies):
        return None
    if rhs.left == lhs.right.body and rhs.right == lhs.left.body:
        return {"a": lhs.left.body, "b": lhs.right.body}
    return None


def _match_forall_inst(f):
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)):
        return None
    k, body = f.left.var, f.left.body
    t = find_instance_term(body, k, f.right)
    if t is None:
        return None
    return {"var": k, "body": body, "term": t}


def _match_forall_dist(f):
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)):
        return None
    k = f.left.var
    inner = f.left.body
    if not isinstance(inner, Implies):
        return None
    rhs = f.right
    if not (isinstance(rhs, Implies) and isinstance(rhs.right, ForAll)):
        return None
    if rhs.right.var != k:
        return None
    if rhs.left != inner.left or rhs.right.body != inner.right:
        return None
    if k in free_vars(inner.left):
        return None
    return {"var": k, "a": inner.left, "b": inner.right}


def _match_eq_refl(f):
    # variables only: (0=0) is true and derivable but not an axiom
    if isinstance(f, Eq) and isinstance(f.left, Var) and f.left == f.right:
        return {"var": f.left.index}
    return None


def _match_eq_cong(f, build):
    """(t=u) > (C[t] = C[u]) for the one-place context `build`."""
    if not (isinstance(f, Implies) and isinstance(f.left, Eq) and isinstance(f.right, Eq)):
        return None
    t, u = f.left.left, f.left.right
    want_left, extract = build(t, u, f.right)
    if want_left is None:
        return None
    return {"t": t, "u": u, **extract}


def _match_eq_cong_s(f):
    def build(t, u, rhs):
        if rhs == Eq(Succ(t), Succ(u)):
            return True, {}
        return None, {}

    return _match_eq_cong(f, build)


def _match_eq_cong_plus_l(f):
    def build(t, u, rhs):
        if (
            isinstance(rhs.left, Plus)
            and isinstance(rhs.right, Plus)
            and rhs.left.left == t
            and rhs.right.left == u
            and rhs.left.right == rhs.right.right
        ):
            return True, {"context": rhs.left.right}
        return None, {}

    return _match_eq_cong(f, build)


def _match_eq_cong_plus_r(f):
    def build(t, u, rhs):
        if (
            isinstance(rhs.left, Plus)
            and isinstance(rhs.right, Plus)
            and rhs.left.right == t
            and rhs.right.right == u
            and rhs.left.left == rhs.right.left
        ):
            return True, {"context": rhs.left.left}
        return None, {}

    return _match_eq_cong(f, build)


def _match_eq_cong_times_l(f):
    def build(t, u, rhs):
        if (
            isinstance(rhs.left, Times)
            and isinstance(rhs.right, Times)
            and rhs.left.left == t
            and rhs.right.left == u
            and rhs.left.right == rhs.right.right
        ):
            return True, {"context": rhs.left.right}
        return None, {}

    return _match_eq_cong(f, build)


def _match_eq_cong_times_r(f):
    def build(t, u, rhs):
        if (
            isinstance(rhs.left, Times)
            and isinstance(rhs.right, Times)
            and rhs.left.right == t
            and rhs.right.right == u
            and rhs.left.left == rhs.right.left
        ):
            return True, {"context": rhs.left.left}
        return None, {}

    return _match_eq_cong(f, build)


def _match_eq_trans(f):
    # (t=u) > ((t=v) > (u=v))
    if not (isinstance(f, Implies) and isinstance(f.left, Eq) and isinstance(f.right, Implies)):
        return None
    inner = f.right
    if not (isinstance(inner.left, Eq) and isinstance(inner.right, Eq)):
        return None
    t, u = f.left.left, f.left.right
    if inner.left.left != t or inner.right.left != u:
        return None
    if inner.left.right != inner.right.right:
        return None
    return {"t": t, "u": u, "v": inner.left.right}


def _match_and_intro(f):
    if (
        isinstance(f, Implies)
        and isinstance(f.right, Implies)
        and isinstance(f.right.right, And)
        and f.right.right.left == f.left
        and f.right.right.right == f.right.left
    ):
        return {"a": f.left, "b": f.right.left}
    return None


def _match_and_elim_l(f):
    if isinstance(f, Implies) and isinstance(f.left, And) and f.right == f.left.left:
        return {"a": f.left.left, "b": f.left.right}
    return None


def _match_and_elim_r(f):
    if isinstance(f, Implies) and isinstance(f.left, And) and f.right == f.left.right:
        return {"a": f.left.left, "b": f.left.right}
    return None


def _match_or_intro_l(f):
    if isinstance(f, Implies) and isinstance(f.right, Or) and f.right.left == f.left:
        return {"a": f.left, "b": f.right.right}
    return None


def _match_or_intro_r(f):
    if isinstance(f, Implies) and isinstance(f.right, Or) and f.right.right == f.left:
        return {"a": f.right.left, "b": f.left}
    return None


def _match_or_elim(f):
    # (a > c) > ((b > c) > ((a | b) > c))
    if not (isinstance(f, Implies) and isinstance(f.left, Implies)):
        return None
    a, c = f.left.left, f.left.right
    rest = f.right
    if not (isinstance(rest, Implies) and isinstance(rest.left, Implies)):
        return None
    b, c2 = rest.left.left, rest.left.right
    if c2 != c:
        return None
    last = rest.right
    if not (isinstance(last, Implies) and isinstance(last.left, Or)):
        return None
    if last.left != Or(a, b) or last.right != c:
        return None
    return {"a": a, "b": b, "c": c}


def _match_exists_intro(f):
    if not (isinstance(f, Implies) and isinstance(f.right, Exists)):
        return None
    k, body = f.right.var, f.right.body
    t = find_instance_term(body, k, f.left)
    if t is None:
        return None
    return {"var": k, "body": body, "term": t}


def _match_exists_elim(f):
    # (Ax (a > b)) > ((Ex a) > b), x not free in b
    if not (isinstance(f, Implies) and isinstance(f.left, ForAll)):
        return None
    k = f.left.var
    inner = f.left.body
    if not isinstance(inner, Implies):
        return None
    rhs = f.right
    if not (isinstance(rhs, Implies) and isinstance(rhs.left, Exists)):
        return None
    if rhs.left.var != k or rhs.left.body != inner.left or rhs.right != inner.right:
        return None
    if k in free_vars(inner.right):
        return None
    return {"var": k, "a": inner.left, "b": inner.right}


_SCHEME_MATCHERS = {
    "P1": _match_p1,
    "P2": _match_p2,
    "P3": _match_p3,
    "forall-inst": _match_forall_inst,
    "forall-dist": _match_forall_dist,
    "eq-refl": _match_eq_refl,
    "eq-cong-s": _match_eq_cong_s,
    "eq-cong-plus-l": _match_eq_cong_plus_l,
    "eq-cong-plus-r": _match_eq_cong_plus_r,
    "eq-cong-times-l": _match_eq_cong_times_l,
    "eq-cong-times-r": _match_eq_cong_times_r,
    "eq-trans": _match_eq_trans,
    "and-intro": _match_and_intro,
    "and-elim-l": _match_and_elim_l,
    "and-elim-r": _match_and_elim_r,
    "or-intro-l": _match_or_intro_l,
    "or-intro-r": _match_or_intro_r,
    "or-elim": _match_or_elim,
    "exists-intro": _match_exists_intro,
    "exists-elim": _match_exists_elim,
}

SCHEME_IDS = tuple(_SCHEME_MATCHERS)


def match_scheme(scheme: str, f: Formula):
    if scheme not in _SCHEME_MATCHERS:
        raise ValueError(f"unknown scheme {scheme!r}")
    return _SCHEME_MATCHERS[scheme](f)


def is_axiom(f: Formula):
    """(kind, identifier, instantiation) when f is an axiom, else None.

    Non-logical axioms are reported first, then schemes in canon order.
    """
    for index in range(1, 8):
        mapping = match_q_axiom(index, f)
        if mapping is not None:
            return ("Q", index, mapping)
    for scheme in SCHEME_IDS:
        info = match_scheme(scheme, f)
        if info is not None:
            return ("scheme", scheme, info)
    return None
