from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from randgen import F3, F4, rand_elem, rand_laurent, rand_nonzero, rand_poly, rng_for
from wittforge.funcfield import artin_schreier
from wittforge.valuation import (
    ASVerdict,
    Coset,
    CosetSet,
    ValueVector,
    as_class,
    leading_term,
    value,
)

seeds = st.integers(0, 2**32)
H = Fraction(1, 2)


def test_basic_values():
    assert value(F4("a")) == (0, 0, 0, -1)
    assert value(F4("a+c")) == value(F4("a"))
    assert value(F4("1/(b*c)")) == (0, 1, 1, 0)
    assert str(ValueVector((H, 0, 0, 0))) == "(1/2,0,0,0)"
    with pytest.raises(ValueError):
        value(F4.zero)


def test_order_is_outermost_first():
    assert ValueVector((5, 0, 0, -1)) < ValueVector((0, 0, 0, 0))
    assert ValueVector((-1, 0, 0, 0)) < ValueVector((0, 0, 0, 0))
    assert ValueVector((0, 0, 0, 0)).sign() == 0


def _min_monomial_value(poly, k):
    # exhaustive oracle: every monomial's value, minimum under the outermost-first order
    vals = [ValueVector(tuple(-x for x in e)) for e in poly.terms]
    return min(vals)


@given(seeds)
def test_polynomial_value_is_min_over_monomials(seed):
    rng = rng_for(seed)
    f = rand_poly(F4, rng, terms=5, deg=3)
    assert value(F4(f)) == _min_monomial_value(f, 4)


@given(seeds)
def test_valuation_laws(seed):
    rng = rng_for(seed)
    f, g = rand_nonzero(F4, rng), rand_nonzero(F4, rng)
    assert value(f * g) == value(f) + value(g)
    assert value(f / g) == value(f) - value(g)
    s = f + g
    if not s.is_zero():
        assert value(s) >= min(value(f), value(g))
        if value(f) != value(g):
            assert value(s) == min(value(f), value(g))


def test_leading_term():
    e, c = leading_term(F3("(a+c)/(b+1)"))
    assert e == (0, -1, 1) and c == 1


def test_cosets_canonical():
    assert Coset((Fraction(3, 2), -H, 0)) == Coset((H, H, 0))
    cs = CosetSet.of([(H, 0), (Fraction(3, 2), 0), (0, 0)])
    assert len(cs) == 2 and not cs.distinct
    assert cs.shift((H, 0)).cosets == {Coset((0, 0)), Coset((H, 0))}
    assert (H, 1) in cs


@pytest.mark.parametrize(
    "text, verdict",
    [
        ("a", ASVerdict.NONTRIVIAL),
        ("a^2*b", ASVerdict.NONTRIVIAL),
        ("1", ASVerdict.NONTRIVIAL),
        ("1/a", ASVerdict.TRIVIAL),
        ("a^2+a", ASVerdict.TRIVIAL),
        ("a^2+b", ASVerdict.NONTRIVIAL),
        ("0", ASVerdict.TRIVIAL),
    ],
)
def test_as_class_examples(text, verdict):
    assert as_class(F3(text)).verdict is verdict


def test_as_class_rational_preimage():
    res = as_class(artin_schreier(F4("a/(1+b)")))
    assert res.trivial and res.reason == "rational preimage"


@given(seeds)
def test_as_class_shift_invariance(seed):
    rng = rng_for(seed)
    h = rand_laurent(F4, rng, terms=3, lo=-1, hi=3)
    base = as_class(h)
    if not base.nontrivial:
        return
    g = rand_elem(F4, rng, terms=2, deg=2, frac=0.0)
    assert as_class(artin_schreier(g) + h).verdict is ASVerdict.NONTRIVIAL


@given(seeds)
def test_as_class_trivial_witness(seed):
    rng = rng_for(seed)
    g = rand_laurent(F4, rng, terms=3, lo=-1, hi=3)
    res = as_class(artin_schreier(g))
    assert res.trivial
