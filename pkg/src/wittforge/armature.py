"""Division certificates for tensor products of symbols via value groups.

For a symbol [alpha, beta) generated by i, j with i^p - i = alpha, j^p = beta,
the valuation on the algebra gives v(i) = v(alpha)/p when v(alpha) < 0 and
v(j) = v(beta)/p.  If the group generated by the center's values and these
generator values has index p^(2n) over the center for n factors, the tensor
product is totally ramified and hence a division algebra.  A smaller index
proves nothing, so the verdict is then Inconclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .lattice import Subgroup
from .poly import Polynomial
from .symbolalg import Classification, DivisionOracle, Symbol, certify_split, parse_symbols
from .valuation import CosetSet, value

__all__ = [
    "AlgebraPresentation",
    "Verdict",
    "DivisionCert",
    "generator_values",
    "division_certificate",
    "mu_constraint",
    "merge_power_identity",
    "ArmatureOracle",
]


@dataclass(frozen=True)
class AlgebraPresentation:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("an algebra presentation needs at least one factor")
        cfg = self.factors[0].cfg
        if any(s.cfg != cfg for s in self.factors):
            raise ValueError("factors over different fields")

    @classmethod
    def of(cls, *factors):
        return cls(tuple(factors))

    @classmethod
    def parse(cls, text, cfg):
        """Symbols ``[alpha, beta)`` separated by ``⊗``, ``*`` or whitespace."""
        return cls(tuple(parse_symbols(text, cfg)))

    @property
    def cfg(self):
        return self.factors[0].cfg

    @property
    def degree(self):
        return self.cfg.p ** len(self.factors)

    def __str__(self):
        return " ⊗ ".join(str(s) for s in self.factors)


class Verdict(enum.Enum):
    DIVISION = "Division"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


def _reduce_relations(poly, p):
    # variables (i, j, A, B): rewrite j^p -> B and i^p -> i + A until all exponents drop below p
    out = Polynomial.zero(p, 4)
    for e, c in poly.terms.items():
        e0, e1, ea, eb = e
        term = Polynomial.monomial(p, 4, (0, e1 % p, ea, eb + e1 // p), c)
        factor = Polynomial.monomial(p, 4, (1, 0, 0, 0)) + Polynomial.monomial(p, 4, (0, 0, 1, 0))
        term = term * Polynomial.monomial(p, 4, (e0 % p, 0, 0, 0))
        term = term * factor ** (e0 // p)
        out = out + term
    return out


def merge_power_identity(p):
    """Re-derive (j - i)^p = -i from the relations of two adjacent factors.

    i, j commute, i^p = i + A and j^p = B; for equal slots B = A the
    difference j - i has p-th power -i.  Returns True when the symbolic
    computation agrees.
    """
    i = Polynomial.monomial(p, 4, (1, 0, 0, 0))
    j = Polynomial.monomial(p, 4, (0, 1, 0, 0))
    reduced = _reduce_relations((j - i) ** p, p)
    # substitute B = A
    merged = Polynomial.zero(p, 4)
    for (e0, e1, ea, eb), c in reduced.terms.items():
        merged = merged + Polynomial.monomial(p, 4, (e0, e1, ea + eb, 0), c)
    return merged == -i


def generator_values(a: AlgebraPresentation):
    """(pattern, value) for the generators of every factor and the merge elements.

    Patterns: ``i1, j1, i2, ...`` numbered by factor.  Generators from
    different factors commute, so any factor m whose second slot equals the
    first slot of another factor n gives a merge element ``j{m}-i{n}``.  Its
    p-th power is -i{n}, so its value is v(i{n})/p.  The result does not
    depend on the order of the factors beyond naming.  A generator i with
    v(alpha) >= 0 is omitted.
    """
    p = a.cfg.p
    out = []
    ivals = {}
    for m, s in enumerate(a.factors, start=1):
        if not s.alpha.is_zero():
            va = value(s.alpha)
            if va.sign() < 0:
                ivals[m] = va / p
                out.append((f"i{m}", ivals[m]))
        out.append((f"j{m}", value(s.beta) / p))
    identity_ok = None
    for m, left in enumerate(a.factors, start=1):
        for n, right in enumerate(a.factors, start=1):
            if m == n or n not in ivals or left.beta != right.alpha:
                continue
            if identity_ok is None:
                identity_ok = merge_power_identity(p)
            if not identity_ok:
                raise AssertionError("p-th power identity for commuting elements failed")
            name = f"j{m}+i{n}" if p == 2 else f"j{m}-i{n}"
            out.append((name, ivals[n] / p))
    return out


@dataclass(frozen=True)
class DivisionCert:
    presentation: AlgebraPresentation
    elements: tuple
    group: Subgroup
    index: int
    verdict: Verdict
    center: Subgroup = None

    @property
    def degree(self):
        return self.presentation.degree

    def check(self):
        """Recompute group and verdict from the recorded element values."""
        k = self.presentation.cfg.nvars
        gens = [v.coords for _, v in self.elements]
        base = 1
        if self.center is not None:
            gens += self.center.generators()
            base = self.center.index()
        g = Subgroup.from_generators(gens, k)
        if g != self.group or g.index() // base != self.index:
            return False
        expect = Verdict.DIVISION if self.index == self.degree ** 2 else Verdict.INCONCLUSIVE
        return expect is self.verdict

    def to_dict(self):
        return {
            "algebra": str(self.presentation),
            "elements": [[name, str(v)] for name, v in self.elements],
            "group": [[str(x) for x in g] for g in self.group.generators()],
            "index": self.index,
            "degree": self.degree,
            "verdict": str(self.verdict),
        }


def division_certificate(a: AlgebraPresentation, center=None) -> DivisionCert:
    """Certificate from the values of generators over the center's value group.

    ``center`` defaults to Z^k, the value group of the iterated Laurent field.
    """
    k = a.cfg.nvars
    elems = tuple(generator_values(a))
    gens = [v.coords for _, v in elems]
    if center is not None:
        gens += center.generators()
    group = Subgroup.from_generators(gens, k)
    base = center.index() if center is not None else 1
    index = group.index() // base
    verdict = Verdict.DIVISION if index == a.degree ** 2 else Verdict.INCONCLUSIVE
    return DivisionCert(a, elems, group, index, verdict, center)


def mu_constraint(center_values: Subgroup, algebra_values: Subgroup) -> CosetSet:
    """Cosets mod Z^k of center_values + 2 * algebra_values."""
    if center_values.k != algebra_values.k:
        raise ValueError("subgroups of different ambient dimension")
    total = center_values + algebra_values.scale(2)
    return CosetSet.of(total.cosets())


class ArmatureOracle(DivisionOracle):
    """Division when the single-symbol certificate says so, Split when certified split."""

    def classify(self, s: Symbol) -> Classification:
        if certify_split(s) is not None:
            return Classification.SPLIT
        cert = division_certificate(AlgebraPresentation.of(s))
        if cert.verdict is Verdict.DIVISION:
            return Classification.DIVISION
        return Classification.UNKNOWN

