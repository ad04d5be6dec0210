import itertools

import pytest

from src.core import boolfn as b


p, q, r = b.var("p"), b.var("q"), b.var("r")


def all_envs(names):
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def test_builders_fold_constants():
    assert b.conj(p, b.TRUE) == p
    assert b.conj(p, b.FALSE, q) == b.FALSE
    assert b.disj(p, b.TRUE) == b.TRUE
    assert b.disj() == b.FALSE
    assert b.conj() == b.TRUE
    assert b.neg(b.neg(p)) == p
    assert b.neg(b.TRUE) == b.FALSE


def test_builders_drop_repeated_operands():
    assert b.conj(p, p) == p
    assert b.disj(p, q, p) == b.disj(p, q)


@pytest.mark.parametrize("fn", [
    b.xor(p, q),
    b.ite(p, q, r),
    b.conj(b.disj(p, b.neg(q)), b.neg(b.conj(q, r))),
])
def test_compiled_functions_agree_with_evaluation(fn):
    compiled = b.compile_fn(fn)
    for env in all_envs(["p", "q", "r"]):
        assert compiled(env) == b.evaluate(fn, env)


def test_ite_selects_a_branch():
    fn = b.ite(p, q, r)
    for env in all_envs(["p", "q", "r"]):
        assert b.evaluate(fn, env) == (env["q"] if env["p"] else env["r"])


def test_support_is_sorted():
    assert b.support(b.ite(r, q, p)) == ["p", "q", "r"]
    assert b.support(b.TRUE) == []


def test_node_count_shares_subexpressions():
    shared = b.conj(p, q)
    assert b.node_count(b.disj(shared, b.neg(shared))) == 5


def test_text_form():
    assert b.to_text(b.disj(p, b.neg(q))) == "(p | (! q))"
