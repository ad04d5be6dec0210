"""Boolean expressions over named state and input variables.

Expressions are pysmt formula nodes over Boolean symbols. pysmt hash-conses
its nodes, so structurally equal expressions are the same object and compare
equal. The builders below only fold constants and drop repeated operands, so
that trivially true or false monitors disappear at construction.
"""
from typing import Callable, List, Mapping

from pysmt import shortcuts as smt
from pysmt.fnode import FNode
from pysmt.oracles import SizeOracle

BoolFn = FNode

TRUE = smt.TRUE()
FALSE = smt.FALSE()


def var(name: str) -> BoolFn:
    return smt.Symbol(name)


def const(value: bool) -> BoolFn:
    return smt.Bool(value)


def neg(operand: BoolFn) -> BoolFn:
    if operand.is_bool_constant():
        return const(not operand.constant_value())
    if operand.is_not():
        return operand.arg(0)
    return smt.Not(operand)


def _operands(absorbing: BoolFn, operands) -> List[BoolFn]:
    kept = []
    for operand in dict.fromkeys(operands):
        if operand == absorbing:
            return [absorbing]
        if not operand.is_bool_constant():
            kept.append(operand)
    return kept


def conj(*operands: BoolFn) -> BoolFn:
    return smt.And(_operands(FALSE, operands))


def disj(*operands: BoolFn) -> BoolFn:
    return smt.Or(_operands(TRUE, operands))


def xor(left: BoolFn, right: BoolFn) -> BoolFn:
    return disj(conj(left, neg(right)), conj(neg(left), right))


def ite(condition: BoolFn, then: BoolFn, otherwise: BoolFn) -> BoolFn:
    return disj(conj(condition, then), conj(neg(condition), otherwise))


def support(fn: BoolFn) -> List[str]:
    """Names of the free variables, sorted"""
    return sorted(symbol.symbol_name() for symbol in fn.get_free_variables())


def evaluate(fn: BoolFn, env: Mapping[str, bool]) -> bool:
    assignment = {var(name): const(env[name]) for name in support(fn)}
    return fn.substitute(assignment).simplify().constant_value()


def compile_fn(fn: BoolFn) -> Callable[[Mapping[str, bool]], bool]:
    """Closure equivalent to evaluate(fn, env), for hot loops"""
    if fn.is_symbol():
        name = fn.symbol_name()
        return lambda env: env[name]
    if fn.is_bool_constant():
        value = fn.constant_value()
        return lambda env: value
    if fn.is_not():
        inner = compile_fn(fn.arg(0))
        return lambda env: not inner(env)
    parts = [compile_fn(operand) for operand in fn.args()]
    if fn.is_and():
        return lambda env: all(part(env) for part in parts)
    if fn.is_or():
        return lambda env: any(part(env) for part in parts)
    raise TypeError(f"Unsupported Boolean function node: {fn.serialize()}")


def node_count(fn: BoolFn) -> int:
    """Distinct nodes of the expression DAG"""
    return fn.size(SizeOracle.MEASURE_DAG_NODES)


def to_text(fn: BoolFn) -> str:
    return fn.serialize()
