"""Hypothesis strategies for random formulas and lasso words."""
from hypothesis import strategies as st

from src.core import formula as f
from src.schemas.word import LassoWord


def _bounds(max_bound: int):
    return st.integers(0, max_bound).flatmap(
        lambda a: st.tuples(st.just(a), st.integers(a, max_bound))
    )


def leaves(names=("p", "q")):
    return st.sampled_from([f.Atom(name) for name in names]) | st.sampled_from([f.TRUE, f.FALSE])


def full_bounded(names=("p", "q"), max_bound: int = 3, max_leaves: int = 4):
    """Next and bounded future operators over atoms"""

    def extend(children):
        return st.one_of(
            children.map(f.Not),
            children.map(f.Next),
            st.tuples(children, children).map(lambda pair: f.And(*pair)),
            st.tuples(children, children).map(lambda pair: f.Or(*pair)),
            st.tuples(children, _bounds(max_bound)).map(lambda x: f.BoundedEventually(x[0], *x[1])),
            st.tuples(children, _bounds(max_bound)).map(lambda x: f.BoundedGlobally(x[0], *x[1])),
            st.tuples(children, children, _bounds(max_bound)).map(
                lambda x: f.BoundedUntil(x[0], x[1], *x[2])
            ),
        )

    return st.recursive(leaves(names), extend, max_leaves=max_leaves)


def full_past(names=("p", "q"), max_bound: int = 2, max_leaves: int = 3):
    """Past operators over atoms"""

    def extend(children):
        return st.one_of(
            children.map(f.Not),
            children.map(f.Yesterday),
            children.map(f.Once),
            children.map(f.Historically),
            st.tuples(children, children).map(lambda pair: f.And(*pair)),
            st.tuples(children, children).map(lambda pair: f.Or(*pair)),
            st.tuples(children, children).map(lambda pair: f.Since(*pair)),
            st.tuples(children, children).map(lambda pair: f.Triggered(*pair)),
            st.tuples(children, _bounds(max_bound)).map(lambda x: f.BoundedOnce(x[0], *x[1])),
            st.tuples(children, _bounds(max_bound)).map(lambda x: f.BoundedHistorically(x[0], *x[1])),
        )

    return st.recursive(leaves(names), extend, max_leaves=max_leaves)


def ltl_ebr(names=("p", "q"), max_bound: int = 2):
    """Boolean combinations of the future layer over small full-bounded formulas"""
    bounded = full_bounded(names, max_bound=max_bound, max_leaves=2)

    def extend_future(children):
        return st.one_of(
            children.map(f.Next),
            children.map(f.Globally),
            st.tuples(children, children).map(lambda pair: f.And(*pair)),
            st.tuples(bounded, children).map(lambda pair: f.Release(*pair)),
        )

    future = st.recursive(bounded, extend_future, max_leaves=3)

    def extend_boolean(children):
        return st.one_of(
            st.tuples(children, children).map(lambda pair: f.And(*pair)),
            st.tuples(children, children).map(lambda pair: f.Or(*pair)),
        )

    return st.recursive(future, extend_boolean, max_leaves=2)


def canonical_atoms(names=("p", "q"), max_depth: int = 2):
    body = full_past(names, max_bound=1, max_leaves=2)
    depth = st.integers(0, max_depth)
    return st.one_of(
        st.tuples(depth, body).map(lambda x: f.next_n(x[1], x[0])),
        st.tuples(depth, body).map(lambda x: f.next_n(f.Globally(x[1]), x[0])),
        st.tuples(depth, body, body).map(lambda x: f.next_n(f.Release(x[1], x[2]), x[0])),
    )


def canonical_formulas(names=("p", "q"), max_depth: int = 2):
    def extend(children):
        return st.one_of(
            st.tuples(children, children).map(lambda pair: f.And(*pair)),
            st.tuples(children, children).map(lambda pair: f.Or(*pair)),
        )

    return st.recursive(canonical_atoms(names, max_depth), extend, max_leaves=3)


def lasso_words(names=("p", "q"), max_stem: int = 4, max_loop: int = 2):
    state = st.frozensets(st.sampled_from(list(names)))
    return st.builds(
        lambda stem, loop: LassoWord.construct(stem=stem, loop=loop),
        st.lists(state, max_size=max_stem),
        st.lists(state, min_size=1, max_size=max_loop),
    )
