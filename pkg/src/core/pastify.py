"""Translation of LTL-EBR into its past counterpart.

Every full-bounded subformula phi is replaced by X^D(phi) Pi(phi, D(phi)),
where Pi reads phi backwards from the time point at which it is decided.
"""
import logging
import math

from . import formula as f
from .layers import FragmentError, is_full_bounded, is_full_past, is_future_pltl, is_ltl_ebr, is_next_past, is_pltl_ebr

logger = logging.getLogger(__name__)


def temporal_depth(formula: f.Formula) -> int:
    """Furthest future offset constrained by a full-bounded formula"""
    if is_full_past(formula):
        return 0
    if isinstance(formula, f.Not):
        return temporal_depth(formula.operand)
    if isinstance(formula, (f.And, f.Or)):
        return max(temporal_depth(formula.left), temporal_depth(formula.right))
    if isinstance(formula, f.Next):
        return 1 + temporal_depth(formula.operand)
    if isinstance(formula, f.BoundedUntil):
        return formula.upper + max(temporal_depth(formula.left), temporal_depth(formula.right))
    if isinstance(formula, (f.BoundedEventually, f.BoundedGlobally)):
        return formula.upper + temporal_depth(formula.operand)
    raise FragmentError(f"Temporal depth is defined on full-bounded formulas only: {formula}")


def _historically_upto(formula: f.Formula, bound: int) -> f.Formula:
    """H[0,bound]; a negative bound is the empty range, i.e. true"""
    if bound < 0:
        return f.TRUE
    if bound == 0:
        return formula
    return f.BoundedHistorically(formula, 0, bound)


def _once_upto(formula: f.Formula, bound: int) -> f.Formula:
    if bound == 0:
        return formula
    return f.BoundedOnce(formula, 0, bound)


def _pi(formula: f.Formula, d: int) -> f.Formula:
    if isinstance(formula, f.Atom):
        return f.yesterday_n(formula, d)
    if isinstance(formula, f.Const):
        return formula
    if isinstance(formula, f.Not):
        return f.Not(_pi(formula.operand, d))
    if isinstance(formula, f.And):
        return f.And(_pi(formula.left, d), _pi(formula.right, d))
    if isinstance(formula, f.Or):
        return f.Or(_pi(formula.left, d), _pi(formula.right, d))
    if isinstance(formula, f.Next):
        return _pi(formula.operand, d - 1)
    if isinstance(formula, f.BoundedEventually):
        return _once_upto(_pi(formula.operand, d - formula.upper), formula.upper - formula.lower)
    if isinstance(formula, f.BoundedGlobally):
        return _historically_upto(_pi(formula.operand, d - formula.upper), formula.upper - formula.lower)
    if isinstance(formula, f.BoundedUntil):
        a, b = formula.lower, formula.upper
        right = _pi(formula.right, d - b)
        if formula.left == f.TRUE:
            return _once_upto(right, b - a)
        left = f.Yesterday(_pi(formula.left, d - b))
        disjuncts = []
        for t in range(b - a + 1):
            guard = _historically_upto(left, b - t - 1)
            body = right if guard == f.TRUE else f.And(right, guard)
            disjuncts.append(f.yesterday_n(body, t))
        return f.disjunction(*disjuncts)
    raise FragmentError(f"Cannot pastify non full-bounded formula: {formula}")


def pastify_core(formula: f.Formula, d: int) -> f.Formula:
    """Pi(phi, d): a full-past formula equivalent to phi read d steps later"""
    if not is_full_bounded(formula):
        raise FragmentError(f"Pastification requires a full-bounded formula: {formula}")
    depth = temporal_depth(formula)
    if d < depth:
        raise FragmentError(f"Offset {d} is below the temporal depth {depth} of {formula}")
    return _pi(formula, d)


def pastify(formula: f.Formula) -> f.Formula:
    """X^D Pi(phi, D) with D the temporal depth of phi"""
    depth = temporal_depth(formula)
    return f.next_n(pastify_core(formula, depth), depth)


def pastify_size_bound(formula: f.Formula) -> float:
    """n^2 * M^(log2 n + 1), the asymptotic size bound of pastify"""
    n = f.size(formula)
    m = max(f.max_const(formula), 1)
    return n * n * m ** (math.log2(n) + 1)


def _pastify_subformula(formula: f.Formula) -> f.Formula:
    # formulas already in the past fragment are kept as they are
    if is_future_pltl(formula):
        return formula
    return pastify(formula)


def _pastify_release_lhs(formula: f.Formula) -> f.Formula:
    if is_next_past(formula):
        return formula
    return pastify(formula)


def _descend(formula: f.Formula) -> f.Formula:
    if isinstance(formula, (f.And, f.Next, f.Globally, f.Release)):
        return _to_past(formula, in_future=True)
    return _pastify_subformula(formula)


def _to_past(formula: f.Formula, in_future: bool) -> f.Formula:
    if isinstance(formula, (f.Atom, f.Const)):
        return formula
    if isinstance(formula, f.And):
        return f.And(_to_past(formula.left, in_future), _to_past(formula.right, in_future))
    if isinstance(formula, f.Or):
        if in_future:
            return _pastify_subformula(formula)
        return f.Or(_to_past(formula.left, in_future), _to_past(formula.right, in_future))
    if isinstance(formula, f.Next):
        return f.Next(_descend(formula.operand))
    if isinstance(formula, f.Globally):
        return f.Globally(_descend(formula.operand))
    if isinstance(formula, f.Release):
        return f.Release(_pastify_release_lhs(formula.left), _descend(formula.right))
    return _pastify_subformula(formula)


def to_past_ebr(formula: f.Formula) -> f.Formula:
    """Rewrite an LTL-EBR formula into an equivalent PLTLEBR formula"""
    if is_ltl_ebr(formula):
        result = _to_past(formula, in_future=False)
    elif is_pltl_ebr(formula):
        result = formula
    else:
        logger.warning(f"Rejected formula outside LTL-EBR: {formula}")
        raise FragmentError(f"Formula is not LTL-EBR: {formula}")
    logger.info(f"Pastified formula of size {f.size(formula)} into size {f.size(result)}")
    return result
