"""Hilbert-style proofs: checkable sequences of (formula, justification).

A step is justified as a logical-scheme instance, one of the seven
non-logical axioms (up to variable renaming), modus ponens from two earlier
steps, or generalization of an earlier step.  check_proof validates every
step and reports the first failure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .axioms import match_q_axiom, match_scheme
from .syntax import ForAll, Formula, Implies, parse_wff, render_ascii


@dataclass(frozen=True)
class LogicalAxiom:
    scheme: str


@dataclass(frozen=True)
class QAxiom:
    index: int


@dataclass(frozen=True)
class ModusPonens:
    antecedent: int  # step index proving a
    implication: int  # step index proving (a > b)


@dataclass(frozen=True)
class Generalization:
    premise: int
    var: int


Justification = Union[LogicalAxiom, QAxiom, ModusPonens, Generalization]


@dataclass(frozen=True)
class ProofStep:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple[ProofStep, ...]

    def conclusion(self) -> Formula:
        if not self.steps:
            raise ValueError("empty proof has no conclusion")
        return self.steps[-1].formula


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failed_step: Optional[int] = None
    reason: Optional[str] = None
    conclusion: Optional[Formula] = None


def _check_step(steps: tuple[ProofStep, ...], i: int) -> Optional[str]:
    step = steps[i]
    just = step.justification
    if isinstance(just, LogicalAxiom):
        if match_scheme(just.scheme, step.formula) is None:
            return f"not an instance of scheme {just.scheme}"
        return None
    if isinstance(just, QAxiom):
        if not 1 <= just.index <= 7:
            return f"no axiom Q{just.index}"
        if match_q_axiom(just.index, step.formula) is None:
            return f"not a renaming of axiom Q{just.index}"
        return None
    if isinstance(just, ModusPonens):
        a, b = just.antecedent, just.implication
        if not (0 <= a < i and 0 <= b < i):
            return "modus ponens must cite earlier steps"
        implication = steps[b].formula
        if not isinstance(implication, Implies):
            return "cited implication step is not an implication"
        if implication.left != steps[a].formula:
            return "antecedent does not match the implication"
        if implication.right != step.formula:
            return "conclusion does not match the implication"
        return None
    if isinstance(just, Generalization):
        p = just.premise
        if not 0 <= p < i:
            return "generalization must cite an earlier step"
        if step.formula != ForAll(just.var, steps[p].formula):
            return "formula is not the generalization of the cited step"
        return None
    return f"unknown justification {just!r}"


def check_proof(proof: Proof) -> CheckResult:
    for i in range(len(proof.steps)):
        reason = _check_step(proof.steps, i)
        if reason is not None:
            return CheckResult(False, failed_step=i, reason=reason)
    if not proof.steps:
        return CheckResult(False, failed_step=None, reason="empty proof")
    return CheckResult(True, conclusion=proof.conclusion())


def _just_to_json(just: Justification):
    if isinstance(just, LogicalAxiom):
        return {"rule": "logical", "scheme": just.scheme}
    if isinstance(just, QAxiom):
        return {"rule": "axiom", "index": just.index}
    if isinstance(just, ModusPonens):
        return {"rule": "mp", "antecedent": just.antecedent, "implication": just.implication}
    return {"rule": "gen", "premise": just.premise, "var": just.var}


def _just_from_json(data) -> Justification:
    rule = data["rule"]
    if rule == "logical":
        return LogicalAxiom(data["scheme"])
    if rule == "axiom":
        return QAxiom(data["index"])
    if rule == "mp":
        return ModusPonens(data["antecedent"], data["implication"])
    if rule == "gen":
        return Generalization(data["premise"], data["var"])
    raise ValueError(f"unknown rule {rule!r}")


def proof_to_json(proof: Proof) -> str:
    payload = [
        {"formula": render_ascii(s.formula), **_just_to_json(s.justification)}
        for s in proof.steps
    ]
    return json.dumps(payload, separators=(",", ":"))


def proof_from_json(text: str) -> Proof:
    payload = json.loads(text)
    steps = tuple(
        ProofStep(parse_wff(entry["formula"]), _just_from_json(entry)) for entry in payload
    )
    return Proof(steps)
