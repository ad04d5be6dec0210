"""Formula AST for LTL with past and bounded operators.

Nodes are immutable dataclasses; structural equality and hashing come for
free and every rewrite in the pipeline relies on them.
"""
from dataclasses import dataclass
from typing import Iterator, Tuple


@dataclass(frozen=True)
class Formula:
    """Base class of every AST node"""

    def children(self) -> Tuple["Formula", ...]:
        return ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Unary(Formula):
    operand: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.operand,)


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula

    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class BoundedUnary(Formula):
    operand: Formula
    lower: int
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ValueError(f"Invalid bounds [{self.lower},{self.upper}]")

    def children(self) -> Tuple[Formula, ...]:
        return (self.operand,)


@dataclass(frozen=True)
class Not(Unary):
    pass


@dataclass(frozen=True)
class And(Binary):
    pass


@dataclass(frozen=True)
class Or(Binary):
    pass


# Future operators

@dataclass(frozen=True)
class Next(Unary):
    pass


@dataclass(frozen=True)
class Eventually(Unary):
    pass


@dataclass(frozen=True)
class Globally(Unary):
    pass


@dataclass(frozen=True)
class Until(Binary):
    pass


@dataclass(frozen=True)
class Release(Binary):
    pass


@dataclass(frozen=True)
class BoundedUntil(Formula):
    left: Formula
    right: Formula
    lower: int
    upper: int

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ValueError(f"Invalid bounds [{self.lower},{self.upper}]")

    def children(self) -> Tuple[Formula, ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class BoundedEventually(BoundedUnary):
    pass


@dataclass(frozen=True)
class BoundedGlobally(BoundedUnary):
    pass


# Past operators

@dataclass(frozen=True)
class Yesterday(Unary):
    pass


@dataclass(frozen=True)
class Once(Unary):
    pass


@dataclass(frozen=True)
class Historically(Unary):
    pass


@dataclass(frozen=True)
class Since(Binary):
    pass


@dataclass(frozen=True)
class Triggered(Binary):
    pass


@dataclass(frozen=True)
class BoundedOnce(BoundedUnary):
    pass


@dataclass(frozen=True)
class BoundedHistorically(BoundedUnary):
    pass


BOUNDED_FUTURE = (BoundedUntil, BoundedEventually, BoundedGlobally)
PAST = (Yesterday, Once, Historically, Since, Triggered, BoundedOnce, BoundedHistorically)


# Builders

def next_n(formula: Formula, n: int) -> Formula:
    """X^n formula; X^0 is the identity"""
    for _ in range(n):
        formula = Next(formula)
    return formula


def yesterday_n(formula: Formula, n: int) -> Formula:
    """Y^n formula; Y^0 is the identity"""
    for _ in range(n):
        formula = Yesterday(formula)
    return formula


def implies(left: Formula, right: Formula) -> Formula:
    return Or(Not(left), right)


def iff(left: Formula, right: Formula) -> Formula:
    return And(Or(Not(left), right), Or(left, Not(right)))


def conjunction(*formulas: Formula) -> Formula:
    """Right-nested conjunction; the empty conjunction is true"""
    if not formulas:
        return TRUE
    result = formulas[-1]
    for formula in reversed(formulas[:-1]):
        result = And(formula, result)
    return result


def disjunction(*formulas: Formula) -> Formula:
    """Right-nested disjunction; the empty disjunction is false"""
    if not formulas:
        return FALSE
    result = formulas[-1]
    for formula in reversed(formulas[:-1]):
        result = Or(formula, result)
    return result


def split_next(formula: Formula) -> Tuple[int, Formula]:
    """Strip leading next operators: X^i body -> (i, body)"""
    depth = 0
    while isinstance(formula, Next):
        depth += 1
        formula = formula.operand
    return depth, formula


# Structural utilities

def subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order iteration over every node, duplicates included"""
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def size(formula: Formula) -> int:
    """Node count"""
    return sum(1 for _ in subformulas(formula))


def expanded_size(formula: Formula) -> int:
    """Node count with every bounded operator weighed as its unrolling.

    O[a,b] psi unrolls into the disjuncts Y^a psi .. Y^b psi, which share one
    chain of b yesterday operators and need b - a disjunctions, so the
    operator weighs 1 + b + (b - a) on top of psi. The other bounded
    operators are weighed the same way.
    """
    return sum(
        1 + (2 * node.upper - node.lower if hasattr(node, "upper") else 0)
        for node in subformulas(formula)
    )


def max_const(formula: Formula) -> int:
    """Greatest upper bound over bounded operators, 0 if there is none"""
    return max(
        (node.upper for node in subformulas(formula) if hasattr(node, "upper")),
        default=0,
    )


def atoms(formula: Formula) -> Tuple[str, ...]:
    """Atom names in order of first occurrence"""
    seen = {}
    for node in subformulas(formula):
        if isinstance(node, Atom):
            seen.setdefault(node.name, None)
    return tuple(seen)


# Printing. The output is accepted by parser.parse and yields the same AST.

_UNARY_SYMBOLS = {
    Not: "!",
    Next: "X",
    Eventually: "F",
    Globally: "G",
    Yesterday: "Y",
    Once: "O",
    Historically: "H",
}

_BOUNDED_SYMBOLS = {
    BoundedEventually: "F",
    BoundedGlobally: "G",
    BoundedOnce: "O",
    BoundedHistorically: "H",
}

_BINARY_SYMBOLS = {
    And: "&",
    Or: "|",
    Until: "U",
    Release: "R",
    Since: "S",
    Triggered: "T",
}


def to_text(formula: Formula) -> str:
    if isinstance(formula, Atom):
        return formula.name
    if isinstance(formula, Const):
        return "true" if formula.value else "false"
    kind = type(formula)
    if kind in _UNARY_SYMBOLS:
        return f"{_UNARY_SYMBOLS[kind]} {to_text(formula.operand)}"
    if kind in _BOUNDED_SYMBOLS:
        symbol = _BOUNDED_SYMBOLS[kind]
        return f"{symbol}[{formula.lower},{formula.upper}] {to_text(formula.operand)}"
    if kind in _BINARY_SYMBOLS:
        return f"({to_text(formula.left)} {_BINARY_SYMBOLS[kind]} {to_text(formula.right)})"
    if isinstance(formula, BoundedUntil):
        return (
            f"({to_text(formula.left)} U[{formula.lower},{formula.upper}] "
            f"{to_text(formula.right)})"
        )
    raise TypeError(f"Unknown formula node: {formula!r}")
