"""Finitely generated subgroups of Q^k containing Z^k, kept in Hermite normal form."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

__all__ = ["hnf", "Subgroup"]


def hnf(rows, k):
    """Row-style Hermite normal form of the integer lattice spanned by ``rows``.

    Returns the nonzero rows: upper triangular, positive pivots, entries above
    each pivot reduced into [0, pivot).
    """
    rows = [list(r) for r in rows if any(r)]
    basis = []
    col = 0
    while rows and col < k:
        live = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not live:
            col += 1
            continue
        # Euclid on the column until a single nonzero entry remains
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
        col += 1
    for i, row in enumerate(basis):
        c = next(j for j, a in enumerate(row) if a)
        for prev in range(i):
            q = basis[prev][c] // row[c]
            if q:
                basis[prev] = [a - q * b for a, b in zip(basis[prev], row)]
    return [tuple(r) for r in basis]


def _as_fractions(v):
    return tuple(Fraction(x) for x in v)


class Subgroup:
    """Subgroup S of Q^k with Z^k <= S, stored as the HNF of the lattice m*S.

    ``m`` is the exponent of S/Z^k (the least m with m*S inside Z^k).
    """

    __slots__ = ("k", "m", "basis")

    def __init__(self, k, m, basis):
        self.k = k
        self.m = m
        self.basis = tuple(basis)

    @classmethod
    def from_generators(cls, gens, k=None):
        gens = [_as_fractions(g) for g in gens]
        if k is None:
            if not gens:
                raise ValueError("dimension needed for an empty generator list")
            k = len(gens[0])
        if any(len(g) != k for g in gens):
            raise ValueError("generators of mixed dimension")
        m = 1
        for g in gens:
            for x in g:
                m = lcm(m, x.denominator)
        rows = [tuple(int(x * m) for x in g) for g in gens]
        rows += [tuple(m if i == j else 0 for j in range(k)) for i in range(k)]
        basis = hnf(rows, k)
        # shrink m to the true exponent of S / Z^k
        g_all = m
        for r in basis:
            for x in r:
                g_all = gcd(g_all, x)
        if g_all > 1:
            m //= g_all
            basis = [tuple(x // g_all for x in r) for r in basis]
        return cls(k, m, basis)

    @classmethod
    def integers(cls, k):
        return cls.from_generators([], k)

    def generators(self):
        """Basis rows as rational vectors."""
        return [tuple(Fraction(x, self.m) for x in r) for r in self.basis]

    def index(self):
        det = 1
        for i, r in enumerate(self.basis):
            det *= r[i]
        return self.m ** self.k // det

    def __add__(self, other):
        return self.sum(other)

    def sum(self, other):
        self._check(other)
        return Subgroup.from_generators(self.generators() + other.generators(), self.k)

    def scale(self, n):
        """The subgroup n*S + Z^k."""
        return Subgroup.from_generators([tuple(n * x for x in g) for g in self.generators()], self.k)

    def member(self, w):
        w = _as_fractions(w)
        if len(w) != self.k:
            raise ValueError("dimension mismatch")
        vec = []
        for x in w:
            y = x * self.m
            if y.denominator != 1:
                return False
            vec.append(int(y))
        for i, r in enumerate(self.basis):
            q, rem = divmod(vec[i], r[i])
            if rem:
                return False
            if q:
                vec = [a - q * b for a, b in zip(vec, r)]
        return not any(vec)

    def __contains__(self, w):
        return self.member(w)

    def cosets(self):
        """All canonical coset representatives of S / Z^k, each coordinate in [0, 1)."""
        from .valuation import Coset

        m = self.m
        gens = [tuple(x % m for x in r) for r in self.basis]
        zero = (0,) * self.k
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = tuple((a + b) % m for a, b in zip(v, g))
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return sorted(Coset(tuple(Fraction(x, m) for x in v)) for v in seen)

    def _check(self, other):
        if self.k != other.k:
            raise ValueError("subgroups of different ambient dimension")

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (self.k, self.m, self.basis) == (other.k, other.m, other.basis)

    def __hash__(self):
        return hash((self.k, self.m, self.basis))

    def __le__(self, other):
        return all(other.member(g) for g in self.generators())

    def __str__(self):
        rows = "; ".join("(" + ",".join(str(x) for x in g) + ")" for g in self.generators())
        return f"<{rows}> index {self.index()}"

    def __repr__(self):
        return f"Subgroup({self})"
