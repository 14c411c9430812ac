import pytest
from hypothesis import given, strategies as st

from randgen import F4, rand_block_form, rand_monomial, rng_for
from wittforge.quadform import parse_form, witt_reduce
from wittforge.scenarios import TWISTED_FORM
from wittforge.wittbound import HypothesisError, NormCertificate, bound_for_sum, certify_norm, is_regular, witt_index_bound

seeds = st.integers(0, 2**32)


def P(text):
    return parse_form(text, F4)


def test_certify_norm():
    cert = certify_norm(P("<<b,c,a]]"))
    assert cert.distinct and len(cert.cosets) == 8
    assert not certify_norm(P("[1,a] + [1,a]")).distinct
    assert not certify_norm(P("[1,1/(a)]")).distinct
    assert not certify_norm(P("H")).distinct
    with pytest.raises(ValueError):
        NormCertificate(P("[1,a]"), certify_norm(P("<<b,a]]")).cosets, True, 2)


def test_bound_examples():
    q = P("<<b,c,a]]")
    assert bound_for_sum(q, q).bound == 8
    assert bound_for_sum(q, P("d*[1,a]")).bound == 0
    res = bound_for_sum(P(TWISTED_FORM), P("[1,b]"))
    assert res.bound == len(res.common)


def test_bound_refuses_without_hypotheses():
    with pytest.raises(HypothesisError):
        bound_for_sum(P("[1,a] + [1,a]"), P("[1,b]"))
    with pytest.raises(HypothesisError):
        bound_for_sum(P("[1,a]"), P("<1,b>"))
    with pytest.raises(HypothesisError):
        witt_index_bound(certify_norm(P("H")), certify_norm(P("[1,a]")).cosets)


def test_regularity():
    assert is_regular(P("[1,a] + <1>"))
    assert not is_regular(P("<1,b>"))
    assert not is_regular(P("[1,a] + <0>"))
    assert is_regular(P("<<b,a]]"))


@given(seeds)
def test_monotone_in_the_second_form(seed):
    rng = rng_for(seed)
    q = P("<<b,c,a]]")
    r = rand_block_form(F4, rng, blocks=rng.randint(1, 2))
    extra = rand_block_form(F4, rng, blocks=1)
    try:
        small = bound_for_sum(q, r).bound
        big = bound_for_sum(q, r + extra).bound
    except HypothesisError:
        return
    assert small <= big <= q.dim


@given(seeds)
def test_bound_dominates_certified_planes(seed):
    rng = rng_for(seed)
    q = rand_block_form(F4, rng, blocks=rng.randint(1, 2))
    if not certify_norm(q).distinct:
        return
    # a square multiple of q is isometric to q, so q + r is hyperbolic
    sq = rand_monomial(F4, rng, 0, 1)
    r = q.scaled(sq * sq) if rng.random() < 0.5 else rand_block_form(F4, rng)
    res = bound_for_sum(q, r)
    h = witt_reduce(q + r).hyperbolic
    assert h <= res.bound
    if r.component_key() == q.component_key():
        assert h == res.bound == q.dim
