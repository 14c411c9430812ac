import itertools
from fractions import Fraction
from math import lcm

from hypothesis import given, strategies as st

from wittforge.lattice import Subgroup, hnf
from wittforge.valuation import Coset

H, Q = Fraction(1, 2), Fraction(1, 4)
seeds = st.integers(0, 2**32)

fracs = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3, 4, 6]))
gen_lists = st.lists(st.tuples(fracs, fracs, fracs), min_size=0, max_size=3)


def brute_cosets(gens, k=3):
    """Closure of the generators in (Q/Z)^k by exhaustive enumeration of multiples."""
    m = 1
    for g in gens:
        for x in g:
            m = lcm(m, x.denominator)
    reps = set()
    for coeffs in itertools.product(range(m), repeat=len(gens)):
        v = [Fraction(0)] * k
        for c, g in zip(coeffs, gens):
            v = [a + c * b for a, b in zip(v, g)]
        reps.add(Coset(tuple(v)))
    return reps


def test_hnf_shape():
    rows = hnf([(2, 4, 0), (0, 6, 3), (4, 0, 0)], 3)
    for i, r in enumerate(rows):
        piv = next(j for j, x in enumerate(r) if x)
        assert r[piv] > 0
        for prev in rows[:i]:
            assert 0 <= prev[piv] < r[piv]


def test_known_groups():
    gb = Subgroup.from_generators([(H, 0, 0, 0), (0, Q, 0, 0), (0, 0, H, 0)], 4)
    assert gb.index() == 16
    assert len(gb.cosets()) == 16
    assert Subgroup.integers(3).index() == 1
    assert (0, Q, 0, 0) in gb and (0, 0, 0, H) not in gb


@given(gen_lists)
def test_index_matches_brute_force(gens):
    S = Subgroup.from_generators(gens, 3)
    reps = brute_cosets(gens)
    assert S.index() == len(reps)
    assert set(S.cosets()) == reps
    for g in gens:
        assert Coset(g) in set(S.cosets())
        assert S.member(g)


@given(gen_lists, gen_lists)
def test_sum_index_divides_product(a, b):
    S, T = Subgroup.from_generators(a, 3), Subgroup.from_generators(b, 3)
    U = S + T
    assert (S.index() * T.index()) % U.index() == 0
    assert S <= U and T <= U
    assert U == T + S


@given(gen_lists)
def test_scale(gens):
    S = Subgroup.from_generators(gens, 3)
    doubled = S.scale(2)
    assert doubled <= S
    for g in gens:
        assert doubled.member(tuple(2 * x for x in g))


def test_str():
    assert str(Subgroup.integers(2)) == "<(1,0); (0,1)> index 1"
