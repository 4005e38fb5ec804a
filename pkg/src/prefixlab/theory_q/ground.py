"""Checkable proofs of ground equations over numerals.

Sums unfold along the axiom x+0=x and x+s(y)=s(x+y); products along x*0=0
and x*s(y)=(x*y)+x, reusing the sum proofs.  Equalities are chained with the
reflexivity and transport schemes, so each emitted proof passes check_proof
without any meta-level shortcuts.
"""

from __future__ import annotations

from .proofs import (
    Generalization,
    LogicalAxiom,
    ModusPonens,
    Proof,
    ProofStep,
    QAxiom,
)
from .syntax import Eq, ForAll, Formula, Implies, Plus, Succ, Term, Times, Var, Zero


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


class _Builder:
    def __init__(self):
        self.steps: list[ProofStep] = []
        self.index: dict[Formula, int] = {}

    def add(self, formula: Formula, justification) -> int:
        if formula in self.index:
            return self.index[formula]
        self.steps.append(ProofStep(formula, justification))
        self.index[formula] = len(self.steps) - 1
        return self.index[formula]

    def scheme(self, name: str, formula: Formula) -> int:
        return self.add(formula, LogicalAxiom(name))

    def mp(self, antecedent: int, implication: int) -> int:
        conclusion = self.steps[implication].formula.right
        return self.add(conclusion, ModusPonens(antecedent, implication))

    def reflexivity(self, t: Term) -> int:
        """t=t from the variable axiom by generalization and instantiation."""
        target = Eq(t, t)
        if target in self.index:
            return self.index[target]
        var_refl = Eq(Var(0), Var(0))
        base = self.scheme("eq-refl", var_refl)
        closed = self.add(ForAll(0, var_refl), Generalization(base, 0))
        imp = self.scheme("forall-inst", Implies(ForAll(0, var_refl), target))
        return self.mp(closed, imp)

    def symmetry(self, eq_index: int) -> int:
        """From t=u derive u=t via transport through t=t."""
        eq = self.steps[eq_index].formula
        t, u = eq.left, eq.right
        refl = self.reflexivity(t)
        trans = self.scheme("eq-trans", Implies(Eq(t, u), Implies(Eq(t, t), Eq(u, t))))
        inner = self.mp(eq_index, trans)
        return self.mp(refl, inner)

    def transitivity(self, left_index: int, right_index: int) -> int:
        """From t=u and u=v derive t=v."""
        left = self.steps[left_index].formula  # t=u
        right = self.steps[right_index].formula  # u=v
        t, u = left.left, left.right
        v = right.right
        sym = self.symmetry(left_index)  # u=t
        trans = self.scheme("eq-trans", Implies(Eq(u, t), Implies(Eq(u, v), Eq(t, v))))
        inner = self.mp(sym, trans)
        return self.mp(right_index, inner)

    def q_instance(self, index: int, axiom: Formula, terms: list[Term]) -> int:
        """Close the axiom's variables 0..n-1 and instantiate them in order."""
        base = self.add(axiom, QAxiom(index))
        n = len(terms)
        current = axiom
        for k in range(n - 1, -1, -1):
            current = ForAll(k, current)
            base = self.add(current, Generalization(base, k))
        for k, t in enumerate(terms):
            inst = self.steps[base].formula  # ForAll(k, body)
            body = inst.body
            substituted = _subst(body, k, t)
            imp = self.scheme("forall-inst", Implies(inst, substituted))
            base = self.mp(base, imp)
        return base


def _subst(f: Formula, k: int, t: Term) -> Formula:
    from .syntax import substitute

    return substitute(f, k, t)


def _prove_plus(b: _Builder, a: int, c: int) -> int:
    """Index of a step proving numeral(a) + numeral(c) = numeral(a+c)."""
    na = numeral(a)
    if c == 0:
        from .axioms import Q_AXIOMS

        return b.q_instance(4, Q_AXIOMS[4], [na])
    prev = _prove_plus(b, a, c - 1)  # na + n(c-1) = n(a+c-1)
    from .axioms import Q_AXIOMS

    nc1 = numeral(c - 1)
    q5 = b.q_instance(5, Q_AXIOMS[5], [na, nc1])
    # q5: na + s(nc1) = s(na + nc1)
    mid = Plus(na, nc1)
    cong = b.scheme(
        "eq-cong-s", Implies(Eq(mid, numeral(a + c - 1)), Eq(Succ(mid), numeral(a + c)))
    )
    succ_eq = b.mp(prev, cong)  # s(na+nc1) = n(a+c)
    return b.transitivity(q5, succ_eq)


def _prove_times(b: _Builder, a: int, c: int) -> int:
    na = numeral(a)
    from .axioms import Q_AXIOMS

    if c == 0:
        return b.q_instance(6, Q_AXIOMS[6], [na])
    prev = _prove_times(b, a, c - 1)  # na * n(c-1) = n(a(c-1))
    nc1 = numeral(c - 1)
    q7 = b.q_instance(7, Q_AXIOMS[7], [na, nc1])
    # q7: na * s(nc1) = (na * nc1) + na
    prod = Times(na, nc1)
    cong = b.scheme(
        "eq-cong-plus-l",
        Implies(
            Eq(prod, numeral(a * (c - 1))),
            Eq(Plus(prod, na), Plus(numeral(a * (c - 1)), na)),
        ),
    )
    sum_eq = b.mp(prev, cong)  # (na*nc1)+na = n(a(c-1))+na
    plus_done = _prove_plus(b, a * (c - 1), a)  # n(a(c-1)) + na = n(ac)
    first = b.transitivity(q7, sum_eq)
    return b.transitivity(first, plus_done)


def prove_ground_equation(a: int, c: int, op: str) -> Proof:
    """A proof of numeral(a) op numeral(c) = numeral(result), op in {plus, times}."""
    if a < 0 or c < 0:
        raise ValueError("operands must be non-negative")
    builder = _Builder()
    if op == "plus":
        _prove_plus(builder, a, c)
    elif op == "times":
        _prove_times(builder, a, c)
    else:
        raise ValueError("op must be 'plus' or 'times'")
    return Proof(tuple(builder.steps))


def eval_ground_term(t: Term) -> int:
    """Independent evaluation oracle for closed terms."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ):
        return 1 + eval_ground_term(t.arg)
    if isinstance(t, Plus):
        return eval_ground_term(t.left) + eval_ground_term(t.right)
    if isinstance(t, Times):
        return eval_ground_term(t.left) * eval_ground_term(t.right)
    raise ValueError(f"term is not closed: {t!r}")
