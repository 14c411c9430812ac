from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from randgen import F3, F4, rand_monomial, rand_nonzero, rng_for
from wittforge import armature
from wittforge.armature import (
    AlgebraPresentation,
    ArmatureOracle,
    Verdict,
    division_certificate,
    generator_values,
    merge_power_identity,
    mu_constraint,
)
from wittforge.lattice import Subgroup
from wittforge.poly import Polynomial
from wittforge.symbolalg import Classification, Symbol
from wittforge.valuation import ValueVector

seeds = st.integers(0, 2**32)
H, Q = Fraction(1, 2), Fraction(1, 4)


def alg(text, cfg=F4):
    return AlgebraPresentation.parse(text, cfg)


def test_generator_values_chain():
    vals = dict(generator_values(alg("[b,c) ⊗ [c,d)")))
    assert vals == {
        "i1": ValueVector((0, 0, -H, 0)),
        "j1": ValueVector((0, -H, 0, 0)),
        "i2": ValueVector((0, -H, 0, 0)),
        "j2": ValueVector((-H, 0, 0, 0)),
        "j1+i2": ValueVector((0, -Q, 0, 0)),
    }


@pytest.mark.parametrize(
    "text, cfg, index, verdict",
    [
        ("[b,c) ⊗ [c,d)", F4, 16, Verdict.DIVISION),
        ("[a,b) ⊗ [b,c)", F3, 16, Verdict.DIVISION),
        ("[a,b) ⊗ [b,c) ⊗ [c,d)", F4, 64, Verdict.DIVISION),
        ("[a,b)", F4, 4, Verdict.DIVISION),
        ("[a,a)", F4, 2, Verdict.INCONCLUSIVE),
        ("[1,b)", F4, 2, Verdict.INCONCLUSIVE),
    ],
)
def test_division_certificate_examples(text, cfg, index, verdict):
    cert = division_certificate(alg(text, cfg))
    assert cert.index == index and cert.verdict is verdict
    assert cert.check()


def test_certificate_tampering_detected():
    from dataclasses import replace

    cert = division_certificate(alg("[a,b) ⊗ [b,c)", F3))
    assert not replace(cert, index=8).check()
    assert not replace(cert, verdict=Verdict.INCONCLUSIVE).check()
    assert not replace(cert, elements=cert.elements[:-1]).check()
    d = cert.to_dict()
    assert d["verdict"] == "Division" and d["index"] == 16 and d["degree"] == 4


@pytest.mark.parametrize("p", [2, 3, 5])
def test_merge_identity(p):
    assert merge_power_identity(p)


def test_wrong_identity_is_rejected():
    # (j + i)^3 under the same relations is not -i
    p = 3
    i = Polynomial.monomial(p, 4, (1, 0, 0, 0))
    j = Polynomial.monomial(p, 4, (0, 1, 0, 0))
    reduced = armature._reduce_relations((j + i) ** p, p)
    assert reduced != -i


def test_mu_constraint():
    center = Subgroup.from_generators([(0, 0, 0, H)], 4)
    a = division_certificate(alg("[b,c) ⊗ [c,d)")).group
    cs = mu_constraint(center, a)
    got = {tuple(c.coords) for c in cs.cosets}
    assert got == {(0, 0, 0, 0), (0, H, 0, 0), (0, 0, 0, H), (0, H, 0, H)}
    assert a.index() % len(cs) == 0
    with pytest.raises(ValueError):
        mu_constraint(Subgroup.from_generators([], 3), a)


@given(seeds)
def test_split_shapes_never_division(seed):
    rng = rng_for(seed)
    beta = rand_monomial(F4, rng, nonconstant=True)
    for s in (Symbol(beta, beta), Symbol(rand_nonzero(F4, rng), F4.one)):
        cert = division_certificate(AlgebraPresentation.of(s))
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert ArmatureOracle().classify(s) is not Classification.DIVISION


def test_oracle():
    o = ArmatureOracle()
    (d,) = AlgebraPresentation.parse("[a,b)", F4).factors
    (s,) = AlgebraPresentation.parse("[a,b^2)", F4).factors
    (u,) = AlgebraPresentation.parse("[1,b)", F4).factors
    assert o.classify(d) is Classification.DIVISION
    assert o.classify(s) is Classification.SPLIT
    assert o.classify(u) is Classification.UNKNOWN


def test_presentation_validation():
    with pytest.raises(ValueError):
        AlgebraPresentation(())
    with pytest.raises(ValueError):
        AlgebraPresentation.of(Symbol(F3("a"), F3("b")), Symbol(F4("a"), F4("b")))
    assert str(alg("[a,b) ⊗ [b,c)")) == "[a, b) ⊗ [b, c)"


@pytest.mark.parametrize("order", [(0, 1, 2), (2, 1, 0), (1, 0, 2), (2, 0, 1)])
def test_index_independent_of_factor_order(order):
    factors = alg("[a,b) ⊗ [b,c) ⊗ [c,d)").factors
    cert = division_certificate(AlgebraPresentation(tuple(factors[i] for i in order)))
    assert cert.index == 64 and cert.check()
