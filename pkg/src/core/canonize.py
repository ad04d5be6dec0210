"""Rewriting of PLTLEBR formulas into canonical form.

A canonical formula is a Boolean combination of atoms X^i psi, X^i G psi and
X^i (psi1 R psi2) whose bodies are full-past. ``apply_rules`` pushes next,
globally and release through conjunctions bottom-up and resolves each
conjunct against its enclosing operator; ``flatten`` then collapses the
release chains that are left into a single release per atom.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple, Union

from . import formula as f
from .layers import FragmentError, is_full_past, is_next_past

logger = logging.getLogger(__name__)


class AtomKind(str, Enum):
    PAST = "past"
    GLOBALLY = "globally"
    RELEASE = "release"


class JunctionOp(str, Enum):
    AND = "and"
    OR = "or"


@dataclass(frozen=True)
class CanonicalAtom:
    """X^depth applied to psi, G psi or a release over full-past bodies.

    Release atoms carry the left-to-right chain of release arguments; a
    canonical atom has exactly two, apply_rules may produce longer chains.
    """
    depth: int
    kind: AtomKind
    bodies: Tuple[f.Formula, ...]

    def to_formula(self) -> f.Formula:
        if self.kind is AtomKind.PAST:
            body = self.bodies[0]
        elif self.kind is AtomKind.GLOBALLY:
            body = f.Globally(self.bodies[0])
        else:
            body = _release_chain(self.bodies)
        return f.next_n(body, self.depth)


@dataclass(frozen=True)
class CanonicalJunction:
    op: JunctionOp
    operands: Tuple["CanonicalFormula", ...]

    def to_formula(self) -> f.Formula:
        parts = [operand.to_formula() for operand in self.operands]
        if self.op is JunctionOp.AND:
            return f.conjunction(*parts)
        return f.disjunction(*parts)


CanonicalFormula = Union[CanonicalAtom, CanonicalJunction]


def _release_chain(bodies: Tuple[f.Formula, ...]) -> f.Formula:
    result = bodies[-1]
    for body in reversed(bodies[:-1]):
        result = f.Release(body, result)
    return result


def _shift(formula: f.Formula, n: int) -> f.Formula:
    return f.yesterday_n(formula, n)


def decompose(formula: f.Formula) -> CanonicalAtom:
    """Read a canonical atom candidate, release chains of any length included"""
    depth, body = f.split_next(formula)
    if is_full_past(body):
        return CanonicalAtom(depth, AtomKind.PAST, (body,))
    if isinstance(body, f.Globally) and is_full_past(body.operand):
        return CanonicalAtom(depth, AtomKind.GLOBALLY, (body.operand,))
    if isinstance(body, f.Release):
        chain: List[f.Formula] = []
        current = body
        while isinstance(current, f.Release) and is_full_past(current.left):
            chain.append(current.left)
            current = current.right
        if is_full_past(current):
            chain.append(current)
            return CanonicalAtom(depth, AtomKind.RELEASE, tuple(chain))
    raise FragmentError(f"Not a canonical atom: {formula}")


def conjuncts(formula: f.Formula) -> List[f.Formula]:
    """Top-level conjuncts, keeping full-past conjunctions whole"""
    if isinstance(formula, f.And) and not is_full_past(formula):
        return conjuncts(formula.left) + conjuncts(formula.right)
    return [formula]


def resolve_globally(formula: f.Formula) -> f.Formula:
    """G applied to one canonical atom candidate"""
    atom = decompose(formula)
    # G X^i (psi1 R ... R psin) holds iff X^i G psin does
    return CanonicalAtom(atom.depth, AtomKind.GLOBALLY, (atom.bodies[-1],)).to_formula()


def resolve_release(lhs: f.Formula, formula: f.Formula) -> f.Formula:
    """(X^i psi1) R applied to one canonical atom candidate"""
    i, psi1 = f.split_next(lhs)
    if not is_full_past(psi1):
        raise FragmentError(f"Release left argument is not of the form X^i psi: {lhs}")
    atom = decompose(formula)
    j = atom.depth
    if atom.kind is AtomKind.GLOBALLY:
        if i > j:
            return CanonicalAtom(i, AtomKind.GLOBALLY, (_shift(atom.bodies[0], i - j),)).to_formula()
        return atom.to_formula()
    if i > j:
        chain = (psi1,) + tuple(_shift(body, i - j) for body in atom.bodies)
        return CanonicalAtom(i, AtomKind.RELEASE, chain).to_formula()
    chain = (_shift(psi1, j - i),) + atom.bodies
    return CanonicalAtom(j, AtomKind.RELEASE, chain).to_formula()


def _require_conjunctive(parts: List[f.Formula], operator: str) -> None:
    for part in parts:
        if isinstance(part, f.Or) and not is_full_past(part):
            raise FragmentError(f"Disjunction below {operator} is outside PLTLEBR: {part}")


def apply_rules(formula: f.Formula) -> f.Formula:
    """Bottom-up application of the distribution and resolution rules"""
    if is_full_past(formula):
        return formula
    if isinstance(formula, f.And):
        return f.And(apply_rules(formula.left), apply_rules(formula.right))
    if isinstance(formula, f.Or):
        return f.Or(apply_rules(formula.left), apply_rules(formula.right))
    if isinstance(formula, f.Next):
        parts = conjuncts(apply_rules(formula.operand))
        _require_conjunctive(parts, "next")
        return f.conjunction(*(f.Next(part) for part in parts))
    if isinstance(formula, f.Globally):
        parts = conjuncts(apply_rules(formula.operand))
        _require_conjunctive(parts, "globally")
        return f.conjunction(*(resolve_globally(part) for part in parts))
    if isinstance(formula, f.Release):
        if not is_next_past(formula.left):
            raise FragmentError(f"Release left argument is not of the form X^i psi: {formula.left}")
        parts = conjuncts(apply_rules(formula.right))
        _require_conjunctive(parts, "release")
        return f.conjunction(*(resolve_release(formula.left, part) for part in parts))
    raise FragmentError(f"Formula is not PLTLEBR: {formula}")


def flatten_chain(atom: CanonicalAtom) -> CanonicalAtom:
    """Collapse X^i (psi1 R (psi2 R ... R psin)) into one release"""
    if atom.kind is not AtomKind.RELEASE or len(atom.bodies) < 3:
        return atom
    left = atom.bodies[0]
    if atom.depth > 0:
        left = f.And(left, _shift(f.TRUE, atom.depth))
    for body in atom.bodies[1:-1]:
        left = f.And(body, f.Once(left))
    return CanonicalAtom(atom.depth, AtomKind.RELEASE, (left, atom.bodies[-1]))


def flatten(formula: f.Formula) -> f.Formula:
    if isinstance(formula, (f.And, f.Or)) and not is_full_past(formula):
        return type(formula)(flatten(formula.left), flatten(formula.right))
    return flatten_chain(decompose(formula)).to_formula()


def _collect(formula: f.Formula, kind: type, into: List[f.Formula]) -> None:
    if isinstance(formula, kind) and not is_full_past(formula):
        _collect(formula.left, kind, into)
        _collect(formula.right, kind, into)
    else:
        into.append(formula)


def from_formula(formula: f.Formula) -> CanonicalFormula:
    """Structured view of a canonical formula; n-ary junctions are flattened"""
    for kind, op in ((f.And, JunctionOp.AND), (f.Or, JunctionOp.OR)):
        if isinstance(formula, kind) and not is_full_past(formula):
            operands: List[f.Formula] = []
            _collect(formula, kind, operands)
            return CanonicalJunction(op, tuple(from_formula(operand) for operand in operands))
    atom = decompose(formula)
    if atom.kind is AtomKind.RELEASE and len(atom.bodies) != 2:
        raise FragmentError(f"Release chain is not flattened: {formula}")
    return atom


def canonical_atoms(canonical: CanonicalFormula) -> List[CanonicalAtom]:
    """Leaves in left-to-right order"""
    if isinstance(canonical, CanonicalAtom):
        return [canonical]
    leaves: List[CanonicalAtom] = []
    for operand in canonical.operands:
        leaves.extend(canonical_atoms(operand))
    return leaves


def canonize(formula: f.Formula) -> CanonicalFormula:
    """flatten(apply_rules(phi)) as a structured canonical formula"""
    canonical = from_formula(flatten(apply_rules(formula)))
    logger.info(
        f"Canonized formula of size {f.size(formula)} into {len(canonical_atoms(canonical))} atoms"
    )
    return canonical


# Rule instances for equivalence checking

RulePair = Tuple[f.Formula, f.Formula]


def rule_instances(
    psi1: f.Formula,
    psi2: f.Formula,
    psi3: f.Formula,
    i: int,
    j: int,
) -> Dict[str, RulePair]:
    """Left- and right-hand sides of the rewrite rules for the given bodies"""
    X, Y = f.next_n, f.yesterday_n
    rules: Dict[str, RulePair] = {
        "next-and": (f.Next(f.And(psi1, psi2)), f.And(f.Next(psi1), f.Next(psi2))),
        "release-and": (
            f.Release(psi3, f.And(psi1, psi2)),
            f.And(f.Release(psi3, psi1), f.Release(psi3, psi2)),
        ),
        "globally-globally": (f.Globally(X(f.Globally(psi1), i)), X(f.Globally(psi1), i)),
        "globally-release": (f.Globally(X(f.Release(psi1, psi2), i)), X(f.Globally(psi2), i)),
    }
    if i > j:
        rules["release-next"] = (
            f.Release(X(psi1, i), X(psi2, j)),
            X(f.Release(psi1, Y(psi2, i - j)), i),
        )
        rules["release-chain"] = (
            f.Release(X(psi1, i), X(f.Release(psi2, psi3), j)),
            X(f.Release(psi1, f.Release(Y(psi2, i - j), Y(psi3, i - j))), i),
        )
        rules["release-globally"] = (
            f.Release(X(psi1, i), X(f.Globally(psi2), j)),
            X(f.Globally(Y(psi2, i - j)), i),
        )
    else:
        rules["release-next"] = (
            f.Release(X(psi1, i), X(psi2, j)),
            X(f.Release(Y(psi1, j - i), psi2), j),
        )
        rules["release-chain"] = (
            f.Release(X(psi1, i), X(f.Release(psi2, psi3), j)),
            X(f.Release(Y(psi1, j - i), f.Release(psi2, psi3)), j),
        )
        rules["release-globally"] = (
            f.Release(X(psi1, i), X(f.Globally(psi2), j)),
            X(f.Globally(psi2), j),
        )
    return rules


def flat_rule_instance(bodies: Tuple[f.Formula, ...], i: int) -> RulePair:
    """Release chain of length >= 3 and its flattened form; equivalent at position 0 only"""
    atom = CanonicalAtom(i, AtomKind.RELEASE, tuple(bodies))
    return atom.to_formula(), flatten_chain(atom).to_formula()


def auxiliary_rules(psi1: f.Formula, psi2: f.Formula, i: int) -> Dict[str, RulePair]:
    """Strong equivalences the rewrite rules are proven from"""
    X, Y = f.next_n, f.yesterday_n
    return {
        "release-right-next": (f.Release(psi1, X(psi2, i)), X(f.Release(Y(psi1, i), psi2), i)),
        "release-left-next": (f.Release(X(psi1, i), psi2), X(f.Release(psi1, Y(psi2, i)), i)),
        "yesterday-next": (Y(X(psi1, i), i), f.And(psi1, Y(f.TRUE, i))),
        "yesterday-release": (Y(f.Release(psi1, psi2), i), f.Release(Y(psi1, i), Y(psi2, i))),
        "globally-idempotent": (f.Globally(f.Globally(psi1)), f.Globally(psi1)),
        "globally-absorbs-release": (f.Globally(f.Release(psi1, psi2)), f.Globally(psi2)),
        "release-globally": (f.Release(psi1, f.Globally(psi2)), f.Globally(psi2)),
    }
