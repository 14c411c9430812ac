"""Upper bound on the Witt index of an orthogonal sum from value-coset intersections.

If the natural basis of q has pairwise distinct value cosets (so the value
function 1/2 v(q) is a norm whose value set has index dim q over the value
group) and q + r is regular, the Witt index of q + r is at most the number
of cosets shared by the value sets of q and r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import kernel, rank
from .quadform import QuadraticForm, ramified_slots, value_coset_set
from .valuation import CosetSet

__all__ = ["NormCertificate", "HypothesisError", "certify_norm", "witt_index_bound", "is_regular", "bound_for_sum"]


class HypothesisError(ValueError):
    """The bound was requested without its hypotheses being certified."""


@dataclass(frozen=True)
class NormCertificate:
    form: QuadraticForm
    cosets: CosetSet
    distinct: bool
    dim: int

    def __post_init__(self):
        if self.distinct and len(self.cosets) != self.dim:
            raise ValueError("a distinct certificate must list exactly dim cosets")


def certify_norm(q) -> NormCertificate:
    q = q.presented()
    cs = value_coset_set(q)
    distinct = cs.distinct and len(cs.values) == q.dim and ramified_slots(q)
    return NormCertificate(q, cs, distinct, q.dim)


def witt_index_bound(cert: NormCertificate, other: CosetSet) -> int:
    if not cert.distinct:
        raise HypothesisError("value cosets of the form are not certified pairwise distinct")
    return len(cert.cosets.intersection(other))


def is_regular(q) -> bool:
    """Polar form nondegenerate, or a one-dimensional polar radical on which q is nonzero."""
    n = q.dim
    if n == 0:
        return True
    B = q.polar_matrix()
    defect = n - rank(B)
    if defect == 0:
        return True
    if defect == 1:
        (v,) = kernel(B, q.cfg)
        return not q.evaluate(v).is_zero()
    return False


@dataclass
class SumBound:
    bound: int
    left: CosetSet
    right: CosetSet
    common: list
    conditional: bool   # True when the right-hand presentation is not certified distinct


def bound_for_sum(q, r) -> SumBound:
    """Certify q, check regularity of q + r, and intersect the two coset sets."""
    cert = certify_norm(q)
    r = r.presented()
    if not is_regular(q.presented().osum(r)):
        raise HypothesisError("the orthogonal sum is not regular")
    rc = value_coset_set(r)
    common = cert.cosets.intersection(rc)
    return SumBound(witt_index_bound(cert, rc), cert.cosets, rc, common, not certify_norm(r).distinct)
