"""Concrete syntax for LTL-EBR and its past fragment.

Precedence, tightest first: unary operators (``! X Y F G O H`` and their
bounded forms), the binary temporal operators ``U R S T`` (right
associative), ``&``, ``|``, then ``->`` / ``<->``. Implications are
eliminated while parsing.
"""
import logging
from typing import Tuple

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from . import formula as f

logger = logging.getLogger(__name__)


class ParseError(Exception):
    """Raised when a formula does not match the concrete syntax"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class BoundError(ParseError):
    """Raised when a bounded operator has lower bound greater than upper bound"""
    pass


FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: disjunction
            | disjunction "->" formula            -> implies
            | disjunction "<->" disjunction       -> iff

    ?disjunction: conjunction
                | disjunction ("|" | "||") conjunction   -> or_

    ?conjunction: binary
                | conjunction ("&" | "&&") binary        -> and_

    ?binary: unary
           | unary "U" binary                     -> until
           | unary "U" interval binary            -> bounded_until
           | unary "R" binary                     -> release
           | unary "S" binary                     -> since
           | unary "T" binary                     -> triggered

    ?unary: primary
          | ("!" | "~") unary                     -> not_
          | "X" unary                             -> next
          | "X" "[" INT "]" unary                 -> next_n
          | "Y" unary                             -> yesterday
          | "Y" "[" INT "]" unary                 -> yesterday_n
          | "F" unary                             -> eventually
          | "F" interval unary                    -> bounded_eventually
          | "G" unary                             -> globally
          | "G" interval unary                    -> bounded_globally
          | "O" unary                             -> once
          | "O" interval unary                    -> bounded_once
          | "H" unary                             -> historically
          | "H" interval unary                    -> bounded_historically

    ?primary: NAME                                -> atom
            | "true"                              -> true
            | "false"                             -> false
            | "(" formula ")"

    interval: "[" INT "," INT "]"

    NAME: /[a-z_][a-zA-Z0-9_]*/
    COMMENT: /#[^\n]*/

    %import common.INT
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""


@v_args(inline=True)
class TreeToFormula(Transformer):
    """Builds AST nodes bottom-up from the lark parse tree"""

    def atom(self, token):
        return f.Atom(str(token))

    def true(self):
        return f.TRUE

    def false(self):
        return f.FALSE

    def interval(self, lower, upper) -> Tuple[int, int]:
        a, b = int(lower), int(upper)
        if a > b:
            raise BoundError(f"Lower bound {a} exceeds upper bound {b}", lower.line, lower.column)
        return a, b

    def not_(self, operand):
        return f.Not(operand)

    def and_(self, left, right):
        return f.And(left, right)

    def or_(self, left, right):
        return f.Or(left, right)

    def implies(self, left, right):
        return f.implies(left, right)

    def iff(self, left, right):
        return f.iff(left, right)

    def next(self, operand):
        return f.Next(operand)

    def next_n(self, count, operand):
        return f.next_n(operand, int(count))

    def yesterday(self, operand):
        return f.Yesterday(operand)

    def yesterday_n(self, count, operand):
        return f.yesterday_n(operand, int(count))

    def eventually(self, operand):
        return f.Eventually(operand)

    def globally(self, operand):
        return f.Globally(operand)

    def once(self, operand):
        return f.Once(operand)

    def historically(self, operand):
        return f.Historically(operand)

    def bounded_eventually(self, bounds, operand):
        return f.BoundedEventually(operand, *bounds)

    def bounded_globally(self, bounds, operand):
        return f.BoundedGlobally(operand, *bounds)

    def bounded_once(self, bounds, operand):
        return f.BoundedOnce(operand, *bounds)

    def bounded_historically(self, bounds, operand):
        return f.BoundedHistorically(operand, *bounds)

    def until(self, left, right):
        return f.Until(left, right)

    def bounded_until(self, left, bounds, right):
        return f.BoundedUntil(left, right, *bounds)

    def release(self, left, right):
        return f.Release(left, right)

    def since(self, left, right):
        return f.Since(left, right)

    def triggered(self, left, right):
        return f.Triggered(left, right)


_parser = Lark(FORMULA_GRAMMAR, parser="lalr", propagate_positions=False)


def parse(text: str) -> f.Formula:
    """Parse one formula"""
    try:
        tree = _parser.parse(text)
    except UnexpectedEOF as e:
        lines = text.splitlines() or [""]
        raise ParseError("Unexpected end of input", len(lines), len(lines[-1]) + 1) from e
    except (UnexpectedCharacters, UnexpectedInput) as e:
        logger.debug(f"Syntax error in formula {text!r}: {e}")
        raise ParseError("Syntax error", getattr(e, "line", 0), getattr(e, "column", 0)) from e
    try:
        return TreeToFormula().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, ParseError):
            raise e.orig_exc from None
        raise
