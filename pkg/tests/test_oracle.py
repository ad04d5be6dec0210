import pytest
from hypothesis import given
from pydantic import ValidationError

from src.core import formula as f
from src.core.oracle import enumerate_all_words, enumerate_words, equivalent_on, eval_at, truth_vector
from src.core.parser import parse
from src.schemas.word import LassoWord

from formula_strategies import full_bounded, full_past, lasso_words


def word(stem, loop):
    return LassoWord(stem=[frozenset(s) for s in stem], loop=[frozenset(s) for s in loop])


def test_globally_on_constant_loop():
    assert eval_at(word([], [{"p"}]), 0, parse("G p"))


def test_bounded_eventually_one_step():
    sigma = word([set()], [{"p"}])
    assert eval_at(sigma, 0, parse("F[0,1] p"))
    assert not eval_at(sigma, 0, parse("p"))


def test_positions_beyond_the_stem_follow_the_loop():
    sigma = word([{"p"}], [set(), {"q"}])
    assert [eval_at(sigma, i, parse("q")) for i in range(6)] == [False, False, True, False, True, False]


def test_yesterday_is_false_at_the_origin():
    sigma = word([], [{"p"}])
    assert truth_vector(sigma, parse("Y p"), 3) == [False, True, True]
    assert truth_vector(sigma, parse("Y true"), 2) == [False, True]


def test_negative_position_is_rejected():
    with pytest.raises(ValueError):
        eval_at(word([], [set()]), -1, parse("p"))


def test_empty_loop_is_rejected():
    with pytest.raises(ValidationError):
        LassoWord(stem=[frozenset()], loop=[])


@pytest.mark.parametrize("atoms, stem, loop, count", [
    ({"p"}, 0, 1, 2),
    ({"p", "q"}, 1, 1, 16),
    (set(), 0, 1, 1),
])
def test_enumerate_words_counts(atoms, stem, loop, count):
    words = list(enumerate_words(atoms, stem, loop))
    assert len(words) == count
    assert len({str(w) for w in words}) == count


def test_enumerate_all_words_counts():
    # stems 0..1, loops 1..2 over one atom: 2 + 4 + 4 + 8
    assert len(list(enumerate_all_words(["p"], 1, 2))) == 18


def test_nested_bounded_eventually_against_its_past_form():
    phi = parse("F[0,1](q & F[0,1] p)")
    past = parse("X X O[0,1](Y q & O[0,1] p)")
    assert equivalent_on(phi, past, enumerate_words(["p", "q"], 3, 1)) == []


def test_strictly_later_occurrence():
    sigma = word([set(), set()], [{"q"}])
    assert eval_at(sigma, 0, parse("F[2,3] q"))
    assert not eval_at(sigma, 0, parse("F[0,1] q"))
    assert eval_at(sigma, 0, parse("G[0,1] !q"))


def test_since_and_triggered():
    sigma = word([{"q"}, {"p"}, {"p"}], [set()])
    assert truth_vector(sigma, parse("p S q"), 4) == [True, True, True, False]
    assert truth_vector(sigma, parse("p T q"), 2) == [True, False]


@pytest.mark.parametrize("left, right", [
    ("p U q", "q | (p & X(p U q))"),
    ("p R q", "q & (p | X(p R q))"),
    ("F p", "true U p"),
    ("G p", "false R p"),
    ("p U[1,2] q", "p & X(p U[0,1] q)"),
    ("F[1,3] p", "X F[0,2] p"),
    ("G[0,2] p", "!F[0,2] !p"),
    ("p S q", "q | (p & Y(p S q))"),
    ("O p", "true S p"),
    ("H p", "!O !p"),
    ("p T q", "!(!p S !q)"),
    ("O[1,2] p", "Y O[0,1] p"),
])
def test_expansion_laws(left, right):
    words = enumerate_all_words(["p", "q"], 2, 2)
    assert equivalent_on(parse(left), parse(right), words, positions=5) == []


@given(full_bounded(), lasso_words())
def test_eval_at_agrees_with_truth_vector(phi, sigma):
    vector = truth_vector(sigma, phi, 4)
    assert vector == [eval_at(sigma, i, phi) for i in range(4)]


@given(full_past(), lasso_words())
def test_negation_is_complement(phi, sigma):
    assert truth_vector(sigma, f.Not(phi), 5) == [not v for v in truth_vector(sigma, phi, 5)]
