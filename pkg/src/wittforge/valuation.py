"""The iterated Laurent valuation on GF(p)(x_1, ..., x_k).

Values live in Q^k, written in variable order (innermost first).  Comparison
is lexicographic starting from the LAST coordinate: the outermost Laurent
variable is the most significant, so v(a + c) = v(a) when a is outer to c.
A monomial x^e has value -e.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .funcfield import FieldElement, artin_schreier, wp_preimage

__all__ = [
    "ValueVector",
    "Coset",
    "CosetSet",
    "value",
    "unit_residue",
    "leading_term",
    "ASVerdict",
    "ASClassResult",
    "as_class",
]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@total_ordering
class ValueVector:
    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(Fraction(x) for x in coords)

    @classmethod
    def zero(cls, k):
        return cls((0,) * k)

    def _key(self):
        return self.coords[::-1]

    def __lt__(self, other):
        return self._key() < other._key()

    def __eq__(self, other):
        if isinstance(other, ValueVector):
            return self.coords == other.coords
        if isinstance(other, tuple):
            return self.coords == tuple(Fraction(x) for x in other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return ValueVector(a + b for a, b in zip(self.coords, _coords(other)))

    def __sub__(self, other):
        return ValueVector(a - b for a, b in zip(self.coords, _coords(other)))

    def __neg__(self):
        return ValueVector(-a for a in self.coords)

    def __mul__(self, n):
        return ValueVector(a * n for a in self.coords)

    __rmul__ = __mul__

    def __truediv__(self, n):
        return ValueVector(a / n for a in self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sign(self):
        """-1, 0 or 1 according to the most significant nonzero coordinate."""
        for x in reversed(self.coords):
            if x:
                return 1 if x > 0 else -1
        return 0

    def is_integral(self):
        return all(x.denominator == 1 for x in self.coords)

    def divisible_by(self, n):
        return all((x / n).denominator == 1 for x in self.coords)

    def __str__(self):
        return "(" + ",".join(_frac_str(x) for x in self.coords) + ")"

    def __repr__(self):
        return f"ValueVector{self}"


def _coords(v):
    return v.coords if isinstance(v, (ValueVector, Coset)) else tuple(Fraction(x) for x in v)


class Coset:
    """A class in Q^k / Z^k, represented with every coordinate in [0, 1)."""

    __slots__ = ("rep",)

    def __init__(self, v):
        self.rep = tuple(x - (x.numerator // x.denominator) for x in _coords(v))

    @property
    def coords(self):
        return self.rep

    def __add__(self, other):
        return Coset(tuple(a + b for a, b in zip(self.rep, _coords(other))))

    def __eq__(self, other):
        if isinstance(other, Coset):
            return self.rep == other.rep
        if isinstance(other, (tuple, ValueVector)):
            return self.rep == Coset(other).rep
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def __lt__(self, other):
        return self.rep < other.rep

    def __str__(self):
        return "(" + ",".join(_frac_str(x) for x in self.rep) + ")"

    def __repr__(self):
        return f"Coset{self}"


@dataclass(frozen=True)
class CosetSet:
    """Canonical cosets of a list of basis values, with a distinctness flag.

    ``values`` keeps the list in basis order (duplicates included) so that the
    distinctness check can be audited.
    """

    values: tuple
    distinct: bool = field(default=True)

    @classmethod
    def of(cls, values, distinct=None):
        cos = tuple(c if isinstance(c, Coset) else Coset(c) for c in values)
        if distinct is None:
            distinct = len(set(cos)) == len(cos)
        return cls(cos, distinct)

    @property
    def cosets(self):
        return frozenset(self.values)

    def __len__(self):
        return len(self.cosets)

    def __iter__(self):
        return iter(sorted(self.cosets))

    def __contains__(self, c):
        return Coset(c) in self.cosets

    def shift(self, w):
        return CosetSet(tuple(c + w for c in self.values), self.distinct)

    def intersection(self, other):
        return sorted(self.cosets & other.cosets)

    def __or__(self, other):
        return CosetSet.of(self.values + other.values)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self) + "}"


# -- valuation ------------------------------------------------------------

def _lead_v(poly):
    # the monomial of least value, i.e. largest exponent compared from the last coordinate
    e = max(poly.terms, key=lambda t: t[::-1])
    return e, poly.terms[e]


def value(f: FieldElement) -> ValueVector:
    if f.is_zero():
        raise ValueError("the value of zero is infinite")
    en, _ = _lead_v(f.num)
    ed, _ = _lead_v(f.den)
    return ValueVector(b - a for a, b in zip(en, ed))


def leading_term(f: FieldElement):
    """Leading Laurent term (exponent vector, coefficient) of the expansion of f."""
    if f.is_zero():
        raise ValueError("zero has no leading term")
    en, cn = _lead_v(f.num)
    ed, cd = _lead_v(f.den)
    p = f.cfg.p
    return tuple(a - b for a, b in zip(en, ed)), cn * pow(cd, p - 2, p) % p


def unit_residue(f: FieldElement) -> int:
    """Residue in GF(p) of f divided by its leading monomial."""
    return leading_term(f)[1]


# -- Artin-Schreier classes --------------------------------------------------

class ASVerdict(enum.Enum):
    TRIVIAL = "Trivial"
    NONTRIVIAL = "Nontrivial"
    UNDECIDED = "Undecided"

    def __str__(self):
        return self.value


@dataclass
class ASClassResult:
    verdict: ASVerdict
    witness: object = None  # g with f - wp(g) of positive value (or zero)
    trace: list = field(default_factory=list)
    reason: str = ""

    @property
    def trivial(self):
        return self.verdict is ASVerdict.TRIVIAL

    @property
    def nontrivial(self):
        return self.verdict is ASVerdict.NONTRIVIAL


def as_class(f: FieldElement, cap: int = 64) -> ASClassResult:
    """Decide the class of f in F/wp(F) over the henselian Laurent field.

    Leading terms of negative value divisible by p are removed by subtracting
    wp(g) for the matching monomial g; a remainder of positive value is
    trivial by Hensel's lemma.  A negative value outside pZ^k, or value 0
    (nonzero residue, and wp(GF(p)) = 0), is an obstruction.  When the loop
    does not settle within ``cap`` steps, an exact preimage in GF(p)(x) is
    searched before giving up.
    """
    cfg = f.cfg
    p = cfg.p
    g = cfg.zero
    cur = f
    trace = []
    for _ in range(cap):
        if cur.is_zero():
            return ASClassResult(ASVerdict.TRIVIAL, g, trace, "exact image")
        v = value(cur)
        s = v.sign()
        if s > 0:
            return ASClassResult(ASVerdict.TRIVIAL, g, trace, f"positive value {v}")
        if s == 0:
            return ASClassResult(
                ASVerdict.NONTRIVIAL, None, trace, f"unit with residue {unit_residue(cur)} outside wp(F_p)"
            )
        if not v.divisible_by(p):
            return ASClassResult(ASVerdict.NONTRIVIAL, None, trace, f"value {v} not in {p}Z^k")
        e, c = leading_term(cur)
        # c**(1/p) == c in the prime field
        t = cfg.monomial([x // p for x in e], c)
        trace.append(t)
        g = g + t
        cur = cur - artin_schreier(t)
    h = wp_preimage(f)
    if h is not None:
        return ASClassResult(ASVerdict.TRIVIAL, h, trace, "rational preimage")
    return ASClassResult(ASVerdict.UNDECIDED, None, trace, f"no decision after {cap} steps")
