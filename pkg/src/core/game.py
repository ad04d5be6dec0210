"""Safety games on compiled automata.

Controller owns the controllable inputs and reacts to the uncontrollable
ones of the same step. The winning region is the greatest fixpoint
W = safe & forall u exists c. W(next(x, u, c)), computed either over an
explicit enumeration of latch states or symbolically with BDDs. Both
backends pick the same strategy: the least controllable assignment, in
declaration order with false before true, that keeps the successor in W.
"""
import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from dd.autoref import BDD

from . import boolfn as b
from .automaton import Assignment, SymbolicAutomaton, is_safe, step
from ..config import settings

logger = logging.getLogger(__name__)


class ResourceLimitError(Exception):
    """Raised when the latch state space exceeds the configured budget"""
    pass


class UnrealizableError(Exception):
    """Raised when a strategy is requested from an unrealizable game"""
    pass


class StrategyError(Exception):
    """Raised when strategy playback leaves the winning region"""
    pass


class GameBackend(str, Enum):
    EXPLICIT = "explicit"
    SYMBOLIC = "symbolic"
    AUTO = "auto"


class Strategy(ABC):
    """Mealy strategy: controllable outputs from the latch state and current uncontrollable inputs"""

    def __init__(self, automaton: SymbolicAutomaton):
        self.latches = automaton.latches
        self.uncontrollable = automaton.uncontrollable
        self.controllable = automaton.controllable

    @abstractmethod
    def choose(self, state: Mapping[str, bool], inputs: Mapping[str, bool]) -> Assignment:
        pass

    @abstractmethod
    def output_functions(self) -> Dict[str, b.BoolFn]:
        """One Boolean function over latches and uncontrollable inputs per controllable input"""
        pass


@dataclass
class SafetyGameResult:
    realizable: bool
    backend: GameBackend
    iterations: int
    winning_region: Callable[[Mapping[str, bool]], bool] = field(repr=False)
    region_sizes: List[int] = field(default_factory=list)
    strategy: Optional[Strategy] = field(default=None, repr=False)

    def is_winning(self, state: Mapping[str, bool]) -> bool:
        return self.winning_region(state)


def _assignments(names: Sequence[str]) -> List[Assignment]:
    """Every assignment to names, lexicographically ordered with false before true"""
    return [
        dict(zip(names, values))
        for values in itertools.product((False, True), repeat=len(names))
    ]


# Explicit-state backend

class ExplicitStrategy(Strategy):
    def __init__(self, automaton: SymbolicAutomaton, table: Dict[Tuple[int, int], int], winning: Set[int]):
        super().__init__(automaton)
        self.table = table
        self.winning = winning
        self._u_values = _assignments(self.uncontrollable)
        self._u_index = {tuple(sorted(u.items())): i for i, u in enumerate(self._u_values)}
        self._c_values = _assignments(self.controllable)

    def encode(self, state: Mapping[str, bool]) -> int:
        return sum(1 << k for k, latch in enumerate(self.latches) if state[latch])

    def choose(self, state: Mapping[str, bool], inputs: Mapping[str, bool]) -> Assignment:
        u = tuple(sorted((name, bool(inputs.get(name, False))) for name in self.uncontrollable))
        key = (self.encode(state), self._u_index[u])
        if key not in self.table:
            raise StrategyError(f"Strategy undefined outside the winning region: {dict(state)}")
        return dict(self._c_values[self.table[key]])

    def _cube(self, state_index: int, u_index: int) -> b.BoolFn:
        literals = []
        for k, latch in enumerate(self.latches):
            literal = b.var(latch)
            literals.append(literal if (state_index >> k) & 1 else b.neg(literal))
        u_values = self._u_values[u_index]
        for name in self.uncontrollable:
            literal = b.var(name)
            literals.append(literal if u_values[name] else b.neg(literal))
        return b.conj(*literals)

    def output_functions(self) -> Dict[str, b.BoolFn]:
        functions = {}
        for name in self.controllable:
            on = [key for key, c in self.table.items() if self._c_values[c][name]]
            if not on:
                functions[name] = b.FALSE
            elif len(on) == len(self.table):
                functions[name] = b.TRUE
            else:
                functions[name] = b.disj(*(self._cube(s, u) for s, u in sorted(on)))
        return functions


class ExplicitSolver:
    """Bitmask-indexed states, the forall-exists check enumerates the input cube per state"""

    def __init__(self, automaton: SymbolicAutomaton, reachability_prepass: bool = False):
        self.automaton = automaton
        self.reachability_prepass = reachability_prepass
        self.u_values = _assignments(automaton.uncontrollable)
        self.c_values = _assignments(automaton.controllable)
        self._rows: Dict[int, List[List[int]]] = {}

    def decode(self, index: int) -> Assignment:
        return {latch: bool((index >> k) & 1) for k, latch in enumerate(self.automaton.latches)}

    def encode(self, state: Mapping[str, bool]) -> int:
        return sum(1 << k for k, latch in enumerate(self.automaton.latches) if state[latch])

    def successors(self, index: int) -> List[List[int]]:
        """Successor indices by uncontrollable then controllable assignment"""
        row = self._rows.get(index)
        if row is None:
            state = self.decode(index)
            row = []
            for u in self.u_values:
                row.append([
                    self.encode(step(self.automaton, state, {**u, **c})) for c in self.c_values
                ])
            self._rows[index] = row
        return row

    def _reachable(self) -> Set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            index = frontier.pop()
            for row in self.successors(index):
                for successor in row:
                    if successor not in seen:
                        seen.add(successor)
                        frontier.append(successor)
        return seen

    def solve(self) -> SafetyGameResult:
        latches = self.automaton.latches
        if self.reachability_prepass:
            states = self._reachable()
            logger.debug(f"Reachability prepass kept {len(states)} of {2 ** len(latches)} states")
        else:
            states = set(range(2 ** len(latches)))
        winning = {s for s in states if is_safe(self.automaton, self.decode(s))}
        sizes = [len(winning)]
        iterations = 0
        while True:
            iterations += 1
            shrunk = {
                s for s in winning
                if all(any(t in winning for t in row) for row in self.successors(s))
            }
            logger.debug(f"Iteration {iterations}: {len(shrunk)} winning states")
            if shrunk == winning:
                break
            winning = shrunk
            sizes.append(len(winning))

        realizable = 0 in winning
        strategy = None
        if realizable:
            table = {}
            for s in winning:
                for u_index, row in enumerate(self.successors(s)):
                    table[(s, u_index)] = next(c for c, t in enumerate(row) if t in winning)
            strategy = ExplicitStrategy(self.automaton, table, winning)
        region = frozenset(winning)
        return SafetyGameResult(
            realizable=realizable,
            backend=GameBackend.EXPLICIT,
            iterations=iterations,
            winning_region=lambda state: self.encode(state) in region,
            region_sizes=sizes,
            strategy=strategy,
        )


# Symbolic backend

class SymbolicStrategy(Strategy):
    def __init__(self, automaton: SymbolicAutomaton, bdd: BDD, functions: Dict[str, object]):
        super().__init__(automaton)
        self.bdd = bdd
        self.functions = functions

    def choose(self, state: Mapping[str, bool], inputs: Mapping[str, bool]) -> Assignment:
        values = {latch: bool(state[latch]) for latch in self.latches}
        values.update({name: bool(inputs.get(name, False)) for name in self.uncontrollable})
        return {
            name: self.bdd.let(values, self.functions[name]) == self.bdd.true
            for name in self.controllable
        }

    def _to_boolfn(self, node, memo: Dict[int, b.BoolFn]) -> b.BoolFn:
        if node == self.bdd.true:
            return b.TRUE
        if node == self.bdd.false:
            return b.FALSE
        key = int(node)
        if key not in memo:
            name = node.var
            high = self._to_boolfn(self.bdd.let({name: True}, node), memo)
            low = self._to_boolfn(self.bdd.let({name: False}, node), memo)
            memo[key] = b.ite(b.var(name), high, low)
        return memo[key]

    def output_functions(self) -> Dict[str, b.BoolFn]:
        memo: Dict[int, b.BoolFn] = {}
        return {name: self._to_boolfn(self.functions[name], memo) for name in self.controllable}


def variable_order(automaton: SymbolicAutomaton) -> List[str]:
    """BDD variable order: a depth-first walk from the counter bits and then
    each error latch through next-state functions and definitions.

    Each latch is followed by the latches and inputs its next-state function
    reads, so the variables of one conjunct end up on adjacent levels.
    """
    definitions = dict(automaton.definitions)
    declared = set(automaton.latches) | set(automaton.inputs)
    order: List[str] = []
    seen: Set[str] = set()
    stack = list(reversed(automaton.counter + automaton.errors))
    while stack:
        name = stack.pop()
        if name in seen:
            continue
        seen.add(name)
        if name in declared:
            order.append(name)
        fn = definitions.get(name, automaton.next_functions.get(name))
        if fn is not None:
            stack.extend(reversed(b.support(fn)))
    order.extend(name for name in automaton.latches + automaton.inputs if name not in seen)
    return order


class SymbolicSolver:
    def __init__(self, automaton: SymbolicAutomaton):
        self.automaton = automaton
        self.bdd = BDD()
        self.bdd.declare(*variable_order(automaton))

    def to_bdd(self, fn: b.BoolFn, env: Mapping[str, object]):
        if fn.is_symbol():
            return env[fn.symbol_name()]
        if fn.is_bool_constant():
            return self.bdd.true if fn.constant_value() else self.bdd.false
        if fn.is_not():
            return ~self.to_bdd(fn.arg(0), env)
        parts = [self.to_bdd(operand, env) for operand in fn.args()]
        result = parts[0]
        for part in parts[1:]:
            result = (result & part) if fn.is_and() else (result | part)
        return result

    def _count(self, region) -> int:
        return int(self.bdd.count(region, nvars=len(self.automaton.latches)))

    def _preimage(self, region, next_functions):
        if not next_functions:
            return region
        return self.bdd.let(next_functions, region)

    def solve(self) -> SafetyGameResult:
        automaton = self.automaton
        bdd = self.bdd
        env = {name: bdd.var(name) for name in automaton.latches + automaton.inputs}
        for name, expr in automaton.definitions:
            env[name] = self.to_bdd(expr, env)
        next_functions = {latch: self.to_bdd(automaton.next_functions[latch], env) for latch in automaton.latches}
        controllable = list(automaton.controllable)
        uncontrollable = list(automaton.uncontrollable)

        winning = self.to_bdd(automaton.safe, env)
        sizes = [self._count(winning)]
        iterations = 0
        while True:
            iterations += 1
            controllable_pre = self._preimage(winning, next_functions)
            if controllable:
                controllable_pre = bdd.exist(controllable, controllable_pre)
            if uncontrollable:
                controllable_pre = bdd.forall(uncontrollable, controllable_pre)
            shrunk = winning & controllable_pre
            logger.debug(f"Iteration {iterations}: {self._count(shrunk)} winning states")
            if shrunk == winning:
                break
            winning = shrunk
            sizes.append(self._count(winning))

        initial = bdd.let({latch: False for latch in automaton.latches}, winning) if automaton.latches else winning
        realizable = initial == bdd.true
        strategy = None
        if realizable:
            strategy = SymbolicStrategy(automaton, bdd, self._extract(winning, next_functions))

        def region(state: Mapping[str, bool]) -> bool:
            values = {latch: bool(state[latch]) for latch in automaton.latches}
            return (bdd.let(values, winning) if values else winning) == bdd.true

        return SafetyGameResult(
            realizable=realizable,
            backend=GameBackend.SYMBOLIC,
            iterations=iterations,
            winning_region=region,
            region_sizes=sizes,
            strategy=strategy,
        )

    def _extract(self, winning, next_functions) -> Dict[str, object]:
        """Greedy determinization: each output is false unless no completion allows it"""
        bdd = self.bdd
        good = winning & self._preimage(winning, next_functions)
        controllable = list(self.automaton.controllable)
        functions = {}
        for k, name in enumerate(controllable):
            rest = controllable[k + 1:]
            with_false = bdd.let({name: False}, good)
            if rest:
                with_false = bdd.exist(rest, with_false)
            functions[name] = ~with_false
            good = bdd.let({name: functions[name]}, good)
        return functions


def select_backend(automaton: SymbolicAutomaton, backend: GameBackend, work_limit: int) -> GameBackend:
    """Auto enumerates explicitly while the state/input product stays within the work limit"""
    if backend is not GameBackend.AUTO:
        return backend
    if 2 ** (len(automaton.latches) + len(automaton.inputs)) <= work_limit:
        return GameBackend.EXPLICIT
    return GameBackend.SYMBOLIC


def solve(
    automaton: SymbolicAutomaton,
    backend: Optional[str] = None,
    state_budget: Optional[int] = None,
    reachability_prepass: Optional[bool] = None,
) -> SafetyGameResult:
    """Winning region, verdict and strategy of the safety game on the automaton.

    The state budget bounds 2^|latches| whichever backend is used.
    """
    backend = GameBackend(backend or settings.GAME_BACKEND)
    state_budget = settings.STATE_BUDGET if state_budget is None else state_budget
    if reachability_prepass is None:
        reachability_prepass = settings.REACHABILITY_PREPASS

    if 2 ** len(automaton.latches) > state_budget:
        logger.warning(f"{len(automaton.latches)} latches exceed the state budget of {state_budget}")
        raise ResourceLimitError(
            f"2^{len(automaton.latches)} states exceed the state budget of {state_budget}"
        )
    chosen = select_backend(automaton, backend, settings.EXPLICIT_WORK_LIMIT)
    if chosen is GameBackend.EXPLICIT:
        result = ExplicitSolver(automaton, reachability_prepass).solve()
    else:
        result = SymbolicSolver(automaton).solve()
    verdict = "REALIZABLE" if result.realizable else "UNREALIZABLE"
    logger.info(f"{verdict} after {result.iterations} iterations with the {chosen.value} backend")
    return result


def play_strategy(
    result: SafetyGameResult,
    automaton: SymbolicAutomaton,
    input_sequence: Sequence[Mapping[str, bool]],
) -> List[Assignment]:
    """Trace induced by the strategy against the given uncontrollable inputs"""
    if not result.realizable or result.strategy is None:
        raise UnrealizableError("No strategy exists for an unrealizable specification")
    state = automaton.init
    played = []
    for inputs in input_sequence:
        if not result.is_winning(state):
            raise StrategyError(f"Playback left the winning region at step {len(played)}")
        u = {name: bool(inputs.get(name, False)) for name in automaton.uncontrollable}
        c = result.strategy.choose(state, u)
        played.append({**state, **u, **c})
        state = step(automaton, state, {**u, **c})
        if not is_safe(automaton, state):
            raise StrategyError(f"Playback reached an unsafe state after step {len(played)}")
    return played
