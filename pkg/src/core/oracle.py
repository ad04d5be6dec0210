"""Reference semantics on ultimately periodic words.

The word is unrolled to ``stem + R * loop`` positions, where R is large enough
for every past subformula to have become periodic by the last loop copy.
Past operators are evaluated forwards over the unrolled prefix; future
operators are evaluated backwards with the successor of the last position
wrapping to the start of the last loop copy.
"""
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, Iterator, List, Sequence

from . import formula as f
from ..config import settings
from ..schemas.word import LassoWord

logger = logging.getLogger(__name__)


def _periodicity_delay(formula: f.Formula) -> int:
    """Upper bound on the loop copies a past subformula needs to become periodic"""
    delay = 0
    for node in f.subformulas(formula):
        if isinstance(node, (f.BoundedOnce, f.BoundedHistorically)):
            delay += node.upper
        elif isinstance(node, f.PAST):
            delay += 1
    return delay


class _Evaluator:
    """Truth vectors of subformulas over one unrolled word"""

    def __init__(self, word: LassoWord, copies: int):
        self.stem_length = len(word.stem)
        self.loop_length = len(word.loop)
        self.length = self.stem_length + copies * self.loop_length
        self.loop_start = self.length - self.loop_length
        self.states = [word.state_at(i) for i in range(self.length)]
        self._cache: Dict[f.Formula, List[bool]] = {}

    def position(self, j: int) -> int:
        """Map an unbounded position onto the unrolled range"""
        if j < self.length:
            return j
        return self.loop_start + (j - self.loop_start) % self.loop_length

    def successor(self, j: int) -> int:
        return self.position(j + 1)

    def vector(self, formula: f.Formula) -> List[bool]:
        cached = self._cache.get(formula)
        if cached is None:
            cached = self._compute(formula)
            self._cache[formula] = cached
        return cached

    def _compute(self, node: f.Formula) -> List[bool]:
        n = self.length
        if isinstance(node, f.Atom):
            return [node.name in state for state in self.states]
        if isinstance(node, f.Const):
            return [node.value] * n
        if isinstance(node, f.Not):
            return [not v for v in self.vector(node.operand)]
        if isinstance(node, f.And):
            return [a and b for a, b in zip(self.vector(node.left), self.vector(node.right))]
        if isinstance(node, f.Or):
            return [a or b for a, b in zip(self.vector(node.left), self.vector(node.right))]

        # future
        if isinstance(node, f.Next):
            x = self.vector(node.operand)
            return [x[self.successor(j)] for j in range(n)]
        if isinstance(node, f.Until):
            return self._until(self.vector(node.left), self.vector(node.right))
        if isinstance(node, f.Eventually):
            return self._until([True] * n, self.vector(node.operand))
        if isinstance(node, f.Release):
            return self._release(self.vector(node.left), self.vector(node.right))
        if isinstance(node, f.Globally):
            return self._release([False] * n, self.vector(node.operand))
        if isinstance(node, f.BoundedUntil):
            return self._bounded_until(
                self.vector(node.left), self.vector(node.right), node.lower, node.upper
            )
        if isinstance(node, f.BoundedEventually):
            return self._bounded_until([True] * n, self.vector(node.operand), node.lower, node.upper)
        if isinstance(node, f.BoundedGlobally):
            inner = [not v for v in self.vector(node.operand)]
            return [not v for v in self._bounded_until([True] * n, inner, node.lower, node.upper)]

        # past
        if isinstance(node, f.Yesterday):
            x = self.vector(node.operand)
            return [False] + x[:-1]
        if isinstance(node, f.Since):
            return self._since(self.vector(node.left), self.vector(node.right))
        if isinstance(node, f.Once):
            return self._since([True] * n, self.vector(node.operand))
        if isinstance(node, f.Triggered):
            left = [not v for v in self.vector(node.left)]
            right = [not v for v in self.vector(node.right)]
            return [not v for v in self._since(left, right)]
        if isinstance(node, f.Historically):
            inner = [not v for v in self.vector(node.operand)]
            return [not v for v in self._since([True] * n, inner)]
        if isinstance(node, f.BoundedOnce):
            return self._bounded_once(self.vector(node.operand), node.lower, node.upper)
        if isinstance(node, f.BoundedHistorically):
            inner = [not v for v in self.vector(node.operand)]
            return [not v for v in self._bounded_once(inner, node.lower, node.upper)]
        raise TypeError(f"Unknown formula node: {node!r}")

    def _until(self, left: List[bool], right: List[bool]) -> List[bool]:
        # least fixpoint of v = right | (left & X v)
        v = [False] * self.length
        changed = True
        while changed:
            changed = False
            for j in reversed(range(self.length)):
                value = right[j] or (left[j] and v[self.successor(j)])
                if value != v[j]:
                    v[j] = value
                    changed = True
        return v

    def _release(self, left: List[bool], right: List[bool]) -> List[bool]:
        # greatest fixpoint of v = right & (left | X v)
        v = [True] * self.length
        changed = True
        while changed:
            changed = False
            for j in reversed(range(self.length)):
                value = right[j] and (left[j] or v[self.successor(j)])
                if value != v[j]:
                    v[j] = value
                    changed = True
        return v

    def _bounded_until(self, left: List[bool], right: List[bool], a: int, b: int) -> List[bool]:
        result = []
        for j in range(self.length):
            holds = False
            for t in range(a, b + 1):
                if right[self.position(j + t)] and all(
                    left[self.position(k)] for k in range(j, j + t)
                ):
                    holds = True
                    break
            result.append(holds)
        return result

    def _since(self, left: List[bool], right: List[bool]) -> List[bool]:
        v = []
        previous = False
        for j in range(self.length):
            previous = right[j] or (left[j] and previous)
            v.append(previous)
        return v

    def _bounded_once(self, x: List[bool], a: int, b: int) -> List[bool]:
        return [
            any(x[k] for k in range(max(0, j - b), j - a + 1))
            for j in range(self.length)
        ]


def _copies_for(word: LassoWord, formula: f.Formula, position: int) -> int:
    copies = _periodicity_delay(formula) + settings.ORACLE_UNROLL_SLACK
    beyond = position - len(word.stem)
    if beyond >= 0:
        copies = max(copies, beyond // len(word.loop) + 2)
    return copies


def eval_at(word: LassoWord, position: int, formula: f.Formula) -> bool:
    """sigma, i |= phi"""
    if position < 0:
        raise ValueError("Position must be non-negative")
    evaluator = _Evaluator(word, _copies_for(word, formula, position))
    return evaluator.vector(formula)[position]


def truth_vector(word: LassoWord, formula: f.Formula, positions: int) -> List[bool]:
    """Truth values of formula at positions 0..positions-1"""
    evaluator = _Evaluator(word, _copies_for(word, formula, max(positions - 1, 0)))
    vector = evaluator.vector(formula)
    return [vector[i] for i in range(positions)]


def enumerate_words(atoms: Iterable[str], stem_length: int, loop_length: int) -> Iterator[LassoWord]:
    """All lasso words with the given stem and loop lengths, in a fixed order"""
    if loop_length < 1:
        raise ValueError("Loop length must be at least 1")
    names = sorted(set(atoms))
    states: Sequence[FrozenSet[str]] = [
        frozenset(name for name, bit in zip(names, bits) if bit)
        for bits in itertools.product((False, True), repeat=len(names))
    ]
    for combination in itertools.product(states, repeat=stem_length + loop_length):
        yield LassoWord.construct(
            stem=list(combination[:stem_length]),
            loop=list(combination[stem_length:]),
        )


def enumerate_all_words(atoms: Iterable[str], max_stem: int, max_loop: int) -> Iterator[LassoWord]:
    """Every lasso word with stem length <= max_stem and loop length in 1..max_loop"""
    atoms = list(atoms)
    for stem_length in range(max_stem + 1):
        for loop_length in range(1, max_loop + 1):
            yield from enumerate_words(atoms, stem_length, loop_length)


def equivalent_on(
    left: f.Formula,
    right: f.Formula,
    words: Iterable[LassoWord],
    positions: int = 1,
) -> List[LassoWord]:
    """Words on which the two formulas disagree at some position < positions"""
    mismatches = []
    for word in words:
        if truth_vector(word, left, positions) != truth_vector(word, right, positions):
            mismatches.append(word)
    if mismatches:
        logger.debug(f"{len(mismatches)} mismatches between {left} and {right}")
    return mismatches
