"""ASCII AIGER export of monitors and strategies.

Literals follow the usual encoding: variable k has literals 2k and 2k+1
(negated), 0 is false and 1 is true. Inputs come first, then latches, then
AND gates, so every gate is defined after its operands. Exported text is
read back and simulated with py-aiger.
"""
import logging
from typing import Dict, List, Mapping, Optional, Tuple

import aiger

from . import boolfn as b
from .automaton import SymbolicAutomaton
from .game import SafetyGameResult, UnrealizableError

logger = logging.getLogger(__name__)


class AigerError(Exception):
    """Raised when AIGER text is malformed"""
    pass


class AigBuilder:
    """And-inverter graph with structural hashing and constant folding"""

    def __init__(self):
        self.max_var = 0
        self.inputs: List[Tuple[int, str]] = []
        self.latches: List[List] = []
        self.outputs: List[Tuple[int, str]] = []
        self.ands: List[Tuple[int, int, int]] = []
        self._gates: Dict[Tuple[int, int], int] = {}

    def _fresh(self) -> int:
        self.max_var += 1
        return 2 * self.max_var

    def add_input(self, name: str) -> int:
        if self.latches or self.ands:
            raise AigerError("Inputs must be declared before latches and gates")
        literal = self._fresh()
        self.inputs.append((literal, name))
        return literal

    def add_latch(self, name: str) -> int:
        if self.ands:
            raise AigerError("Latches must be declared before gates")
        literal = self._fresh()
        self.latches.append([literal, 0, name])
        return literal

    def set_next(self, latch_literal: int, next_literal: int) -> None:
        for latch in self.latches:
            if latch[0] == latch_literal:
                latch[1] = next_literal
                return
        raise AigerError(f"Unknown latch literal {latch_literal}")

    def add_output(self, literal: int, name: str) -> None:
        self.outputs.append((literal, name))

    def and_gate(self, left: int, right: int) -> int:
        if left == 0 or right == 0 or left == right ^ 1:
            return 0
        if left == 1:
            return right
        if right == 1 or left == right:
            return left
        key = (max(left, right), min(left, right))
        literal = self._gates.get(key)
        if literal is None:
            literal = self._fresh()
            self.ands.append((literal,) + key)
            self._gates[key] = literal
        return literal

    def or_gate(self, left: int, right: int) -> int:
        return self.and_gate(left ^ 1, right ^ 1) ^ 1

    def literal(self, fn: b.BoolFn, env: Mapping[str, int], memo: Optional[Dict[b.BoolFn, int]] = None) -> int:
        """Literal computing fn, with variables looked up in env"""
        memo = {} if memo is None else memo
        if fn in memo:
            return memo[fn]
        if fn.is_symbol():
            result = env[fn.symbol_name()]
        elif fn.is_bool_constant():
            result = 1 if fn.constant_value() else 0
        elif fn.is_not():
            result = self.literal(fn.arg(0), env, memo) ^ 1
        else:
            parts = [self.literal(operand, env, memo) for operand in fn.args()]
            gate = self.and_gate if fn.is_and() else self.or_gate
            result = parts[0]
            for part in parts[1:]:
                result = gate(result, part)
        memo[fn] = result
        return result

    def to_text(self) -> str:
        header = f"aag {self.max_var} {len(self.inputs)} {len(self.latches)} {len(self.outputs)} {len(self.ands)}"
        lines = [header]
        lines.extend(str(literal) for literal, _ in self.inputs)
        lines.extend(f"{literal} {next_literal}" for literal, next_literal, _ in self.latches)
        lines.extend(str(literal) for literal, _ in self.outputs)
        lines.extend(f"{lhs} {rhs0} {rhs1}" for lhs, rhs0, rhs1 in self.ands)
        lines.extend(f"i{k} {name}" for k, (_, name) in enumerate(self.inputs))
        lines.extend(f"l{k} {latch[2]}" for k, latch in enumerate(self.latches))
        lines.extend(f"o{k} {name}" for k, (_, name) in enumerate(self.outputs))
        return "\n".join(lines) + "\n"


def _wire_automaton(builder: AigBuilder, automaton: SymbolicAutomaton, env: Dict[str, int]) -> None:
    """Declare latches, then gates for definitions and next-state functions"""
    for latch in automaton.latches:
        env[latch] = builder.add_latch(latch)
    memo: Dict[b.BoolFn, int] = {}
    for name, expr in automaton.definitions:
        env[name] = builder.literal(expr, env, memo)
    for latch in automaton.latches:
        builder.set_next(env[latch], builder.literal(automaton.next_functions[latch], env, memo))


def export_monitor(automaton: SymbolicAutomaton) -> str:
    """Monitor circuit whose single output is the bad-state signal"""
    builder = AigBuilder()
    env: Dict[str, int] = {}
    for name in automaton.inputs:
        env[name] = builder.add_input(name)
    _wire_automaton(builder, automaton, env)
    builder.add_output(builder.literal(automaton.safe, env) ^ 1, "bad")
    logger.info(f"Exported monitor with {len(builder.ands)} AND gates")
    return builder.to_text()


def export_strategy(result: SafetyGameResult, automaton: SymbolicAutomaton) -> str:
    """Controller circuit: uncontrollable inputs in, one output per controllable input"""
    if not result.realizable or result.strategy is None:
        raise UnrealizableError("Cannot export a strategy for an unrealizable specification")
    functions = result.strategy.output_functions()
    builder = AigBuilder()
    env: Dict[str, int] = {}
    for name in automaton.uncontrollable:
        env[name] = builder.add_input(name)
    latch_literals = {latch: builder.add_latch(latch) for latch in automaton.latches}
    env.update(latch_literals)
    memo: Dict[b.BoolFn, int] = {}
    for name in automaton.controllable:
        env[name] = builder.literal(functions[name], env, memo)
    for name, expr in automaton.definitions:
        env[name] = builder.literal(expr, env, memo)
    for latch in automaton.latches:
        builder.set_next(latch_literals[latch], builder.literal(automaton.next_functions[latch], env, memo))
    for name in automaton.controllable:
        builder.add_output(env[name], name)
    logger.info(f"Exported strategy with {len(builder.ands)} AND gates")
    return builder.to_text()


def read_circuit(text: str) -> "aiger.AIG":
    """Parse ASCII AIGER text with py-aiger, the reader used to check exported circuits"""
    try:
        return aiger.parse(text)
    except Exception as e:
        raise AigerError(f"Malformed AIGER text: {e}") from e
