"""Layer classification for LTL-EBR, its past counterpart and the canonical form."""
import logging
from enum import Enum
from functools import lru_cache

from . import formula as f

logger = logging.getLogger(__name__)


class FragmentError(Exception):
    """Raised when a formula falls outside the fragment an operation accepts"""
    pass


class LayerTag(str, Enum):
    """Most specific grammar layer generating a formula"""
    FULL_PAST = "FullPast"
    FULL_BOUNDED = "FullBounded"
    CANONICAL_ATOM = "CanonicalAtom"
    FUTURE = "Future"
    BOOLEAN = "Boolean"
    NOT_EBR = "NotEBR"


_BOOLEAN_CONNECTIVES = (f.Not, f.And, f.Or)
_FULL_BOUNDED_OPERATORS = _BOOLEAN_CONNECTIVES + (f.Next,) + f.BOUNDED_FUTURE
_FULL_PAST_OPERATORS = _BOOLEAN_CONNECTIVES + f.PAST


@lru_cache(maxsize=65536)
def is_full_bounded(formula: f.Formula) -> bool:
    """Only next and bounded future operators over atoms"""
    if isinstance(formula, (f.Atom, f.Const)):
        return True
    if not isinstance(formula, _FULL_BOUNDED_OPERATORS):
        return False
    return all(is_full_bounded(child) for child in formula.children())


@lru_cache(maxsize=65536)
def is_full_past(formula: f.Formula) -> bool:
    """Only past operators over atoms"""
    if isinstance(formula, (f.Atom, f.Const)):
        return True
    if not isinstance(formula, _FULL_PAST_OPERATORS):
        return False
    return all(is_full_past(child) for child in formula.children())


def is_next_past(formula: f.Formula) -> bool:
    """Shape X^i psi with psi full-past"""
    _, body = f.split_next(formula)
    return is_full_past(body)


# LTL-EBR

def is_future_ebr(formula: f.Formula) -> bool:
    if is_full_bounded(formula):
        return True
    if isinstance(formula, f.And):
        return is_future_ebr(formula.left) and is_future_ebr(formula.right)
    if isinstance(formula, (f.Next, f.Globally)):
        return is_future_ebr(formula.operand)
    if isinstance(formula, f.Release):
        return is_full_bounded(formula.left) and is_future_ebr(formula.right)
    return False


def is_ltl_ebr(formula: f.Formula) -> bool:
    if isinstance(formula, (f.And, f.Or)) and not is_full_bounded(formula):
        return is_ltl_ebr(formula.left) and is_ltl_ebr(formula.right)
    return is_future_ebr(formula)


# PLTLEBR

def is_future_pltl(formula: f.Formula) -> bool:
    if is_full_past(formula):
        return True
    if isinstance(formula, f.And):
        return is_future_pltl(formula.left) and is_future_pltl(formula.right)
    if isinstance(formula, (f.Next, f.Globally)):
        return is_future_pltl(formula.operand)
    if isinstance(formula, f.Release):
        return is_next_past(formula.left) and is_future_pltl(formula.right)
    return False


def is_pltl_ebr(formula: f.Formula) -> bool:
    if isinstance(formula, (f.And, f.Or)) and not is_full_past(formula):
        return is_pltl_ebr(formula.left) and is_pltl_ebr(formula.right)
    return is_future_pltl(formula)


# Canonical PLTLEBR

def is_canonical_atom(formula: f.Formula) -> bool:
    """X^i psi, X^i G psi or X^i (psi1 R psi2) with full-past bodies"""
    _, body = f.split_next(formula)
    if is_full_past(body):
        return True
    if isinstance(body, f.Globally):
        return is_full_past(body.operand)
    if isinstance(body, f.Release):
        return is_full_past(body.left) and is_full_past(body.right)
    return False


def is_canonical(formula: f.Formula) -> bool:
    if isinstance(formula, (f.And, f.Or)) and not is_full_past(formula):
        return is_canonical(formula.left) and is_canonical(formula.right)
    return is_canonical_atom(formula)


def classify(formula: f.Formula) -> LayerTag:
    """Most specific layer; precedence FullPast > FullBounded > CanonicalAtom > Future > Boolean"""
    if is_full_past(formula):
        return LayerTag.FULL_PAST
    if is_full_bounded(formula):
        return LayerTag.FULL_BOUNDED
    if is_canonical_atom(formula):
        return LayerTag.CANONICAL_ATOM
    if is_future_ebr(formula) or is_future_pltl(formula):
        return LayerTag.FUTURE
    if is_ltl_ebr(formula) or is_pltl_ebr(formula):
        return LayerTag.BOOLEAN
    return LayerTag.NOT_EBR


def require(predicate, formula: f.Formula, fragment: str) -> None:
    if not predicate(formula):
        logger.warning(f"Formula outside {fragment}: {formula}")
        raise FragmentError(f"Formula is not {fragment}: {formula}")
