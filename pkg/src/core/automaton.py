"""Deterministic symbolic safety automata for canonical formulas.

The automaton has one latch per yesterday operator, a release latch and an
error latch per canonical atom, and a saturating step counter when some atom
has to be checked at a fixed time point or only from a given step on. Every
latch starts false; ``safe`` is the canonical formula with each atom replaced
by the negation of its error latch.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import boolfn as b
from . import formula as f
from .canonize import AtomKind, CanonicalAtom, CanonicalFormula, CanonicalJunction, JunctionOp, canonical_atoms
from .layers import FragmentError
from ..schemas.partition import Partition
from ..schemas.word import LassoWord

logger = logging.getLogger(__name__)

Assignment = Dict[str, bool]


@dataclass
class SymbolicAutomaton:
    """Latches, combinational definitions, next-state functions and the safe predicate"""
    uncontrollable: Tuple[str, ...]
    controllable: Tuple[str, ...]
    latches: Tuple[str, ...]
    definitions: Tuple[Tuple[str, b.BoolFn], ...]
    next_functions: Dict[str, b.BoolFn]
    safe: b.BoolFn
    counter: Tuple[str, ...] = ()
    errors: Tuple[str, ...] = ()
    _compiled: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def inputs(self) -> Tuple[str, ...]:
        return self.uncontrollable + self.controllable

    @property
    def init(self) -> Assignment:
        return {latch: False for latch in self.latches}

    def node_count(self) -> int:
        total = b.node_count(self.safe)
        total += sum(b.node_count(expr) for _, expr in self.definitions)
        total += sum(b.node_count(expr) for expr in self.next_functions.values())
        return total

    def evaluators(self):
        """Compiled definitions, next-state functions and safe predicate"""
        if self._compiled is None:
            self._compiled = (
                [(name, b.compile_fn(expr)) for name, expr in self.definitions],
                [(latch, b.compile_fn(self.next_functions[latch])) for latch in self.latches],
                b.compile_fn(self.safe),
            )
        return self._compiled


class _MonitorBuilder:
    """Accumulates latches and definitions while monitors are requested"""

    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = set(alphabet)
        self.definitions: List[Tuple[str, b.BoolFn]] = []
        self.next_functions: Dict[str, b.BoolFn] = {}
        self.past_latches: List[str] = []
        self.release_latches: List[str] = []
        self.error_latches: List[str] = []
        self.counter: List[str] = []
        self.counter_bound = 0
        self._monitors: Dict[f.Formula, b.BoolFn] = {}
        self._counter_predicates: Dict[Tuple[str, int], b.BoolFn] = {}

    def define(self, expr: b.BoolFn) -> b.BoolFn:
        if expr.is_symbol() or expr.is_bool_constant():
            return expr
        if expr.is_not() and expr.arg(0).is_symbol():
            return expr
        name = f"v_{len(self.definitions)}"
        self.definitions.append((name, expr))
        return b.var(name)

    def latch(self, names: List[str], prefix: str) -> str:
        name = f"{prefix}_{len(names)}"
        names.append(name)
        return name

    # Past monitors

    def monitor(self, formula: f.Formula) -> b.BoolFn:
        cached = self._monitors.get(formula)
        if cached is None:
            cached = self._build(formula)
            self._monitors[formula] = cached
        return cached

    def _build(self, node: f.Formula) -> b.BoolFn:
        if isinstance(node, f.Atom):
            if node.name not in self.alphabet:
                raise FragmentError(f"Atom {node.name} is not declared in the partition")
            return b.var(node.name)
        if isinstance(node, f.Const):
            return b.const(node.value)
        if isinstance(node, f.Not):
            return b.neg(self.monitor(node.operand))
        if isinstance(node, f.And):
            return self.define(b.conj(self.monitor(node.left), self.monitor(node.right)))
        if isinstance(node, f.Or):
            return self.define(b.disj(self.monitor(node.left), self.monitor(node.right)))
        if isinstance(node, f.Yesterday):
            operand = self.monitor(node.operand)
            if operand == b.FALSE:
                return b.FALSE
            name = self.latch(self.past_latches, "y")
            self.next_functions[name] = operand
            return b.var(name)
        if isinstance(node, f.Since):
            left, right = self.monitor(node.left), self.monitor(node.right)
            if right == b.FALSE:
                return b.FALSE
            name = self.latch(self.past_latches, "y")
            value = self.define(b.disj(right, b.conj(left, b.var(name))))
            self.next_functions[name] = value
            return value
        if isinstance(node, f.Once):
            return self.monitor(f.Since(f.TRUE, node.operand))
        if isinstance(node, f.Historically):
            return self.monitor(f.Not(f.Once(f.Not(node.operand))))
        if isinstance(node, f.Triggered):
            return self.monitor(f.Not(f.Since(f.Not(node.left), f.Not(node.right))))
        if isinstance(node, f.BoundedOnce):
            return self.monitor(
                f.disjunction(*(f.yesterday_n(node.operand, k) for k in range(node.lower, node.upper + 1)))
            )
        if isinstance(node, f.BoundedHistorically):
            return self.monitor(f.Not(f.BoundedOnce(f.Not(node.operand), node.lower, node.upper)))
        raise FragmentError(f"Atom body is not full-past: {node}")

    # Counter

    def install_counter(self, bound: int) -> None:
        """Bits counter_0.. (least significant first) saturating at bound"""
        self.counter_bound = bound
        width = bound.bit_length()
        self.counter = [f"counter_{k}" for k in range(width)]
        saturated = self.counter_eq(bound)
        carry = b.TRUE
        for bit in self.counter:
            current = b.var(bit)
            self.next_functions[bit] = b.ite(saturated, current, b.xor(current, carry))
            carry = self.define(b.conj(current, carry))

    def counter_eq(self, value: int) -> b.BoolFn:
        key = ("eq", value)
        if key not in self._counter_predicates:
            literals = [
                b.var(bit) if (value >> k) & 1 else b.neg(b.var(bit))
                for k, bit in enumerate(self.counter)
            ]
            self._counter_predicates[key] = self.define(b.conj(*literals))
        return self._counter_predicates[key]

    def counter_lt(self, value: int) -> b.BoolFn:
        if value == 0:
            return b.FALSE
        key = ("lt", value)
        if key not in self._counter_predicates:
            lt = b.FALSE
            for k, bit in enumerate(self.counter):
                if (value >> k) & 1:
                    lt = b.disj(b.neg(b.var(bit)), lt)
                else:
                    lt = b.conj(b.neg(b.var(bit)), lt)
            self._counter_predicates[key] = self.define(lt)
        return self._counter_predicates[key]

    # Error latches

    def error_latch(self, atom: CanonicalAtom) -> Optional[str]:
        """Error latch of one atom, None when the atom is trivially true"""
        if atom.kind is AtomKind.PAST:
            body = self.monitor(atom.bodies[0])
            if body == b.TRUE:
                return None
            error = self.latch(self.error_latches, "error")
            self.next_functions[error] = b.disj(
                b.var(error), b.conj(self.counter_eq(atom.depth), b.neg(body))
            )
            return error
        started = b.neg(self.counter_lt(atom.depth))
        if atom.kind is AtomKind.GLOBALLY:
            body = self.monitor(atom.bodies[0])
            if body == b.TRUE:
                return None
            error = self.latch(self.error_latches, "error")
            self.next_functions[error] = b.conj(started, b.disj(b.var(error), b.neg(body)))
            return error
        left, right = self.monitor(atom.bodies[0]), self.monitor(atom.bodies[1])
        if right == b.TRUE:
            return None
        released = self.latch(self.release_latches, "rel")
        error = self.latch(self.error_latches, "error")
        self.next_functions[released] = b.conj(
            started, b.disj(b.var(released), b.conj(left, right))
        )
        self.next_functions[error] = b.conj(
            started, b.disj(b.var(error), b.conj(b.neg(b.var(released)), b.neg(right)))
        )
        return error


def _needs_counter(atoms: Iterable[CanonicalAtom]) -> bool:
    return any(atom.kind is AtomKind.PAST or atom.depth > 0 for atom in atoms)


def _safe_predicate(canonical: CanonicalFormula, errors: Mapping[CanonicalAtom, Optional[str]]) -> b.BoolFn:
    if isinstance(canonical, CanonicalAtom):
        error = errors[canonical]
        return b.TRUE if error is None else b.neg(b.var(error))
    parts = [_safe_predicate(operand, errors) for operand in canonical.operands]
    return b.conj(*parts) if canonical.op is JunctionOp.AND else b.disj(*parts)


def compile(canonical: CanonicalFormula, partition: Partition) -> SymbolicAutomaton:
    """Build the deterministic safety automaton of a canonical formula"""
    atoms = canonical_atoms(canonical)
    used = set()
    for atom in atoms:
        for body in atom.bodies:
            used.update(f.atoms(body))
    partition.check_covers(used)

    builder = _MonitorBuilder(partition.alphabet)
    if _needs_counter(atoms):
        builder.install_counter(max(atom.depth for atom in atoms) + 1)

    errors: Dict[CanonicalAtom, Optional[str]] = {}
    for atom in atoms:
        if atom not in errors:
            errors[atom] = builder.error_latch(atom)
    safe = _safe_predicate(canonical, errors)

    latches = tuple(builder.counter + builder.past_latches + builder.release_latches + builder.error_latches)
    automaton = SymbolicAutomaton(
        uncontrollable=tuple(partition.uncontrollable),
        controllable=tuple(partition.controllable),
        latches=latches,
        definitions=tuple(builder.definitions),
        next_functions=dict(builder.next_functions),
        safe=safe,
        counter=tuple(builder.counter),
        errors=tuple(builder.error_latches),
    )
    logger.info(
        f"Compiled automaton with {len(latches)} latches, {len(builder.definitions)} definitions "
        f"and {automaton.node_count()} nodes"
    )
    return automaton


# Execution

def valuation(automaton: SymbolicAutomaton, state: Mapping[str, bool], inputs: Mapping[str, bool]) -> Assignment:
    """State, inputs and every combinational definition at one step"""
    definitions, _, _ = automaton.evaluators()
    env: Assignment = dict(state)
    for name in automaton.inputs:
        env[name] = bool(inputs.get(name, False))
    for name, fn in definitions:
        env[name] = fn(env)
    return env


def step(automaton: SymbolicAutomaton, state: Mapping[str, bool], inputs: Mapping[str, bool]) -> Assignment:
    """The unique successor of state under inputs"""
    _, next_functions, _ = automaton.evaluators()
    env = valuation(automaton, state, inputs)
    return {latch: fn(env) for latch, fn in next_functions}


def is_safe(automaton: SymbolicAutomaton, state: Mapping[str, bool]) -> bool:
    _, _, safe = automaton.evaluators()
    return safe(state)


def letter_inputs(automaton: SymbolicAutomaton, letter: Iterable[str]) -> Assignment:
    letter = set(letter)
    return {name: name in letter for name in automaton.inputs}


def run(automaton: SymbolicAutomaton, input_sequence: Sequence[Mapping[str, bool]]) -> List[Assignment]:
    """Latch states visited while reading the inputs, init included"""
    states = [automaton.init]
    for inputs in input_sequence:
        states.append(step(automaton, states[-1], inputs))
    return states


def accepts(automaton: SymbolicAutomaton, word: LassoWord) -> bool:
    """Whether the trace induced by the word stays safe forever"""
    stem_length, loop_length = len(word.stem), len(word.loop)
    state = automaton.init
    seen = set()
    position = 0
    while True:
        if not is_safe(automaton, state):
            return False
        if position >= stem_length:
            key = (tuple(state[latch] for latch in automaton.latches), (position - stem_length) % loop_length)
            if key in seen:
                return True
            seen.add(key)
        state = step(automaton, state, letter_inputs(automaton, word.state_at(position)))
        position += 1


def dump(automaton: SymbolicAutomaton) -> str:
    """Textual form: definitions, next-state functions and the safe predicate"""
    lines = [
        f"-- inputs: {' '.join(automaton.inputs)}",
        f"-- latches: {' '.join(automaton.latches)}",
        "-- init: every latch false",
    ]
    lines.extend(f"define {name} := {b.to_text(expr)}" for name, expr in automaton.definitions)
    lines.extend(f"next({latch}) := {b.to_text(automaton.next_functions[latch])}" for latch in automaton.latches)
    lines.append(f"safe := {b.to_text(automaton.safe)}")
    return "\n".join(lines) + "\n"
