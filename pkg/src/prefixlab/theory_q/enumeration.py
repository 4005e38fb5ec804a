"""Budgeted breadth-first enumeration of theorems.

Round zero consists of every axiom instance whose render fits the length
bound; later rounds close the set under modus ponens and generalization.
Conclusions are deduplicated globally, each round is emitted in quasi-lex
order of the conclusion, and the budget counts candidate derivations, so the
stream is deterministic for a given (length bound, budget) pair.
"""

from __future__ import annotations

from typing import Iterator

from .axioms import Q_AXIOMS
from .proofs import (
    Generalization,
    LogicalAxiom,
    ModusPonens,
    Proof,
    ProofStep,
    QAxiom,
)
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
    Times,
    Var,
    Zero,
    formula_length,
    formulas_of_length,
    free_for,
    free_vars,
    render,
    substitute,
    terms_of_length,
)

_MIN_FORMULA = 5  # "(x=x)"


def _rename(node, mapping):
    if isinstance(node, Var):
        return Var(mapping.get(node.index, node.index))
    if isinstance(node, Zero):
        return node
    if isinstance(node, Succ):
        return Succ(_rename(node.arg, mapping))
    if isinstance(node, (Plus, Times, Eq, And, Or, Implies)):
        cls = type(node)
        return cls(_rename(node.left, mapping), _rename(node.right, mapping))
    if isinstance(node, Not):
        return Not(_rename(node.body, mapping))
    if isinstance(node, (ForAll, Exists)):
        cls = type(node)
        return cls(mapping.get(node.var, node.var), _rename(node.body, mapping))
    raise TypeError(f"unexpected node {node!r}")


def _length_tuples(total: int, parts: int, minimum: int):
    """All tuples of `parts` lengths, each >= minimum, summing to <= total."""
    if parts == 0:
        yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _length_tuples(total - first, parts - 1, minimum):
            yield (first,) + rest


def axiom_instances(max_len: int) -> list[tuple[Formula, object]]:
    """All axiom instances with render length <= max_len, deduplicated,
    sorted in quasi-lex order of their renders."""
    found: dict[Formula, object] = {}

    def put(f: Formula, just) -> None:
        if formula_length(f) <= max_len and f not in found:
            found[f] = just

    # non-logical axioms under injective variable renamings
    for index, axiom in Q_AXIOMS.items():
        single = index in (2, 4, 6)
        for i in range(max_len):
            if single:
                f = _rename(axiom, {0: i})
                if formula_length(f) > max_len:
                    break
                put(f, QAxiom(index))
            else:
                done = True
                for j in range(max_len):
                    if i == j:
                        continue
                    f = _rename(axiom, {0: i, 1: j})
                    if formula_length(f) > max_len:
                        break
                    done = False
                    put(f, QAxiom(index))
                if done:
                    break

    def terms_pairs(budget: int, parts: int):
        for lengths in _length_tuples(budget, parts, 1):
            pools = [terms_of_length(l) for l in lengths]
            if parts == 2:
                for t in pools[0]:
                    for u in pools[1]:
                        yield t, u
            else:
                for t in pools[0]:
                    for u in pools[1]:
                        for v in pools[2]:
                            yield t, u, v

    def formula_pairs(budget_a: int, budget_b):
        for la in range(_MIN_FORMULA, budget_a + 1):
            for a in formulas_of_length(la):
                limit = budget_b(la)
                for lb in range(_MIN_FORMULA, limit + 1):
                    for b in formulas_of_length(lb):
                        yield a, b

    # eq-refl: (x=x), variables only; term reflexivity is derived, not axiomatic
    for k in range(max(0, (max_len - 5) // 2) + 1):
        put(Eq(Var(k), Var(k)), LogicalAxiom("eq-refl"))

    # congruences and transport: lengths 2|t|+2|u|(+2|v|)+15
    if max_len >= 19:
        for t, u in terms_pairs((max_len - 15) // 2, 2):
            put(Implies(Eq(t, u), Eq(Succ(t), Succ(u))), LogicalAxiom("eq-cong-s"))
    if max_len >= 21:
        for t, u, v in terms_pairs((max_len - 15) // 2, 3):
            put(Implies(Eq(t, u), Eq(Plus(t, v), Plus(u, v))), LogicalAxiom("eq-cong-plus-l"))
            put(Implies(Eq(t, u), Eq(Plus(v, t), Plus(v, u))), LogicalAxiom("eq-cong-plus-r"))
            put(Implies(Eq(t, u), Eq(Times(t, v), Times(u, v))), LogicalAxiom("eq-cong-times-l"))
            put(Implies(Eq(t, u), Eq(Times(v, t), Times(v, u))), LogicalAxiom("eq-cong-times-r"))
            put(Implies(Eq(t, u), Implies(Eq(t, v), Eq(u, v))), LogicalAxiom("eq-trans"))

    # propositional schemes, length-driven; put() re-filters on exact length
    if max_len >= 2 * _MIN_FORMULA + 6:
        pair_budget = max_len - 6 - _MIN_FORMULA
        for a, b in formula_pairs(pair_budget, lambda la: max_len - 6 - la):
            la, lb = formula_length(a), formula_length(b)
            if 2 * la + lb + 6 <= max_len:
                put(Implies(a, Implies(b, a)), LogicalAxiom("P1"))
                put(Implies(And(a, b), a), LogicalAxiom("and-elim-l"))
                put(Implies(a, Or(a, b)), LogicalAxiom("or-intro-l"))
            if la + 2 * lb + 6 <= max_len:
                put(Implies(And(a, b), b), LogicalAxiom("and-elim-r"))
                put(Implies(b, Or(a, b)), LogicalAxiom("or-intro-r"))
            if 2 * la + 2 * lb + 9 <= max_len:
                put(Implies(a, Implies(b, And(a, b))), LogicalAxiom("and-intro"))
            if 2 * la + 2 * lb + 15 <= max_len:
                put(Implies(Implies(Not(a), Not(b)), Implies(b, a)), LogicalAxiom("P3"))
        if max_len >= 7 * _MIN_FORMULA + 21:
            for a, b in formula_pairs(max_len, lambda la: max_len):
                la, lb = formula_length(a), formula_length(b)
                for lc in range(_MIN_FORMULA, max_len + 1):
                    if (
                        3 * la + 2 * lb + 2 * lc + 21 > max_len
                        and 2 * la + 2 * lb + 3 * lc + 21 > max_len
                    ):
                        break
                    for c in formulas_of_length(lc):
                        put(
                            Implies(
                                Implies(a, Implies(b, c)),
                                Implies(Implies(a, b), Implies(a, c)),
                            ),
                            LogicalAxiom("P2"),
                        )
                        put(
                            Implies(Implies(a, c), Implies(Implies(b, c), Implies(Or(a, b), c))),
                            LogicalAxiom("or-elim"),
                        )

    # quantifier schemes
    for k in range(max(0, max_len - 12 - _MIN_FORMULA) + 1):
        for lbody in range(_MIN_FORMULA, max_len - 7 - k + 1):
            for body in formulas_of_length(lbody):
                quant_len = 4 + k + lbody
                # instance length: quant + |body[t/k]| + 3
                room = max_len - quant_len - 3
                if room < 1:
                    continue
                for lt in range(1, room + 1):
                    for t in terms_of_length(lt):
                        if not free_for(t, k, body):
                            continue
                        inst = substitute(body, k, t)
                        put(Implies(ForAll(k, body), inst), LogicalAxiom("forall-inst"))
                        put(Implies(inst, Exists(k, body)), LogicalAxiom("exists-intro"))
                if isinstance(body, Implies):
                    a, b = body.left, body.right
                    if k not in free_vars(a):
                        put(
                            Implies(ForAll(k, body), Implies(a, ForAll(k, b))),
                            LogicalAxiom("forall-dist"),
                        )
                    if k not in free_vars(b):
                        put(
                            Implies(ForAll(k, body), Implies(Exists(k, a), b)),
                            LogicalAxiom("exists-elim"),
                        )

    return sorted(found.items(), key=lambda kv: render(kv[0]).sort_key())


class _Node:
    __slots__ = ("formula", "justification", "parents")

    def __init__(self, formula, justification, parents):
        self.formula = formula
        self.justification = justification
        self.parents = parents


def enumerate_theorems(
    max_formula_len: int, proof_budget: int
) -> Iterator[tuple[Formula, Proof]]:
    """Stream of (theorem, proof); see the module docstring for the order."""
    nodes: dict[Formula, _Node] = {}

    def proof_for(f: Formula) -> Proof:
        order: list[Formula] = []
        seen: set[Formula] = set()

        def visit(g: Formula) -> None:
            if g in seen:
                return
            seen.add(g)
            for parent in nodes[g].parents:
                visit(parent)
            order.append(g)

        visit(f)
        index = {g: i for i, g in enumerate(order)}
        steps = []
        for g in order:
            node = nodes[g]
            just = node.justification
            if isinstance(just, ModusPonens):
                just = ModusPonens(index[node.parents[0]], index[node.parents[1]])
            elif isinstance(just, Generalization):
                just = Generalization(index[node.parents[0]], just.var)
            steps.append(ProofStep(g, just))
        return Proof(tuple(steps))

    attempts = 0
    exhausted = False

    current_round: list[Formula] = []
    for f, just in axiom_instances(max_formula_len):
        nodes[f] = _Node(f, just, ())
        current_round.append(f)
        yield f, proof_for(f)

    by_antecedent: dict[Formula, list[Formula]] = {}
    for f in nodes:
        if isinstance(f, Implies):
            by_antecedent.setdefault(f.left, []).append(f)

    while current_round and not exhausted:
        fresh: dict[Formula, _Node] = {}

        def consider(formula, justification, parents):
            nonlocal attempts, exhausted
            if exhausted:
                return
            attempts += 1
            if attempts > proof_budget:
                exhausted = True
                return
            if formula_length(formula) > max_formula_len:
                return
            if formula in nodes or formula in fresh:
                return
            fresh[formula] = _Node(formula, justification, parents)

        for f in current_round:
            if exhausted:
                break
            if isinstance(f, Implies) and f.left in nodes:
                consider(f.right, ModusPonens(0, 0), (f.left, f))
            for implication in by_antecedent.get(f, ()):
                consider(implication.right, ModusPonens(0, 0), (f, implication))
            max_var = max_formula_len - 4 - formula_length(f)
            for k in range(max_var + 1):
                consider(ForAll(k, f), Generalization(0, k), (f,))

        ordered = sorted(fresh, key=lambda g: render(g).sort_key())
        for f in ordered:
            nodes[f] = fresh[f]
            if isinstance(f, Implies):
                by_antecedent.setdefault(f.left, []).append(f)
            yield f, proof_for(f)
        current_round = ordered


def theorem_corpus(
    max_formula_len: int, proof_budget: int, limit: int | None = None
) -> list[tuple[Formula, Proof]]:
    corpus = []
    for pair in enumerate_theorems(max_formula_len, proof_budget):
        corpus.append(pair)
        if limit is not None and len(corpus) >= limit:
            break
    return corpus
