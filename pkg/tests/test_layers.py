import pytest
from hypothesis import given

from src.core.layers import (
    FragmentError, LayerTag, classify, is_canonical, is_ltl_ebr, is_pltl_ebr, require
)
from src.core.parser import parse

from formula_strategies import canonical_formulas, full_bounded, full_past, ltl_ebr


@pytest.mark.parametrize("text, tag", [
    ("G(p | G q)", LayerTag.NOT_EBR),
    ("X X G(Y Y u1 -> c1)", LayerTag.CANONICAL_ATOM),
    ("p", LayerTag.FULL_PAST),
    ("Y p S q", LayerTag.FULL_PAST),
    ("X p", LayerTag.FULL_BOUNDED),
    ("p U[0,2] q", LayerTag.FULL_BOUNDED),
    ("G p", LayerTag.CANONICAL_ATOM),
    ("X (p R Y q)", LayerTag.CANONICAL_ATOM),
    ("G(r -> F[0,3] g)", LayerTag.FUTURE),
    ("(X X p) R (X q)", LayerTag.FUTURE),
    ("G p | X G q", LayerTag.BOOLEAN),
    ("F p", LayerTag.NOT_EBR),
    ("p U q", LayerTag.NOT_EBR),
])
def test_classify(text, tag):
    assert classify(parse(text)) is tag


@pytest.mark.parametrize("text", [
    "G(r -> F[0,3] g)",
    "p & X X X q",
    "G(u1 -> X X c1) & G(u2 -> X c2)",
    "G(t -> G[0,5] h)",
    "(F[0,2] a) R G(b | X c)",
])
def test_introductory_examples_are_in_the_fragment(text):
    assert classify(parse(text)) is not LayerTag.NOT_EBR


def test_require_raises_fragment_error():
    with pytest.raises(FragmentError):
        require(is_ltl_ebr, parse("F p"), "LTL-EBR")


@given(full_bounded())
def test_full_bounded_formulas_are_ltl_ebr(phi):
    assert is_ltl_ebr(phi)


@given(full_past())
def test_full_past_formulas_are_canonical(phi):
    assert classify(phi) is LayerTag.FULL_PAST
    assert is_canonical(phi)


@given(ltl_ebr())
def test_generated_formulas_are_ltl_ebr(phi):
    assert is_ltl_ebr(phi)


@given(canonical_formulas())
def test_canonical_formulas_are_pltl_ebr(phi):
    assert is_canonical(phi)
    assert is_pltl_ebr(phi)
