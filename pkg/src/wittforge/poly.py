"""Sparse multivariate polynomials over the prime field GF(p).

A polynomial is a mapping from exponent tuples to nonzero residues mod p.
Exponent tuples follow the variable order of the owning field configuration
(innermost Laurent variable first).  The canonical term order is graded
lexicographic, comparing the total degree first and then the exponents from
the last (outermost) variable to the first.
"""

from __future__ import annotations

import heapq
from functools import lru_cache, reduce

import flint
from flint.utils.flint_exceptions import DomainError

__all__ = ["Polynomial", "poly_gcd", "poly_gcd_prs", "grlex_key"]


def grlex_key(e):
    return (sum(e), e[::-1])


def _heap_key(e):
    # min-heap key whose smallest element is the grlex-largest exponent
    return (-sum(e), tuple(-x for x in reversed(e)))


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over GF(p)."""

    __slots__ = ("p", "nvars", "terms", "_lead", "_hash")

    def __init__(self, p: int, nvars: int, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    e = tuple(e)
                    if len(e) != nvars or min(e, default=0) < 0:
                        raise ValueError(f"bad exponent vector {e!r}")
                    clean[e] = c
        self._set(p, nvars, clean)

    def _set(self, p, nvars, terms):
        self.p = p
        self.nvars = nvars
        self.terms = terms
        self._lead = None
        self._hash = None

    @classmethod
    def _make(cls, p, nvars, terms):
        # trusted constructor: terms already reduced and nonzero
        obj = cls.__new__(cls)
        obj._set(p, nvars, terms)
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p, nvars):
        return cls._make(p, nvars, {})

    @classmethod
    def constant(cls, p, nvars, c):
        c %= p
        return cls._make(p, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def monomial(cls, p, nvars, exps, c=1):
        c %= p
        return cls._make(p, nvars, {tuple(exps): c} if c else {})

    def _like(self, terms):
        return Polynomial._make(self.p, self.nvars, terms)

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self):
        return len(self.terms) == 1 and self.terms.get((0,) * self.nvars) == 1

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_value(self):
        """Value of a constant polynomial as an int in [0, p)."""
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    # -- structure ----------------------------------------------------
    def lead(self):
        """Leading (exponent, coefficient) under the grlex order."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=grlex_key)
            self._lead = (e, self.terms[e])
        return self._lead

    def degree(self, i=None):
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i] for e in self.terms)

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    def min_exponents(self):
        """Componentwise minimum exponent (the monomial content)."""
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other):
        if self.p != other.p or self.nvars != other.nvars:
            raise ValueError("polynomials over different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.nvars, other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        p = self.p
        for e, c in small.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return self._like({e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.p, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c %= self.p
        if not c:
            return self._like({})
        if c == 1:
            return self
        p = self.p
        return self._like({e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        c %= self.p
        if not c:
            return self._like({})
        p = self.p
        return self._like({_add_exp(e, exps): v * c % p for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self._like({})
        if len(a) == 1:
            (e, c), = a.items()
            return other.mul_monomial(e, c)
        if len(b) == 1:
            (e, c), = b.items()
            return self.mul_monomial(e, c)
        if len(a) * len(b) > _FLINT_MUL_TERMS and self.nvars:
            return _from_flint(_to_flint(self) * _to_flint(other), self.p, self.nvars)
        p = self.p
        out = {}
        get = out.get
        bl = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bl:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return self._like({e: c % p for e, c in out.items() if c % p})

    __rmul__ = __mul__

    def frobenius(self, k=1):
        """Raise to the power p**k; coefficients are fixed by Frobenius."""
        q = self.p ** k
        return self._like({tuple(x * q for x in e): c for e, c in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.p, self.nvars, 1)
        base = self
        while n:
            if n % self.p == 0:
                # (f^m)^p computed by Frobenius
                k = 0
                while n % self.p == 0:
                    n //= self.p
                    k += 1
                base = base.frobenius(k)
                continue
            result = result * base
            n -= 1
        return result

    def monic(self):
        if not self.terms:
            return self
        c = self.lead()[1]
        return self.scale(pow(c, self.p - 2, self.p))

    def derivative(self, i):
        p = self.p
        out = {}
        for e, c in self.terms.items():
            k = e[i] % p
            if k:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * k % p
        return self._like(out)

    def div_monomial(self, exps):
        out = {}
        for e, c in self.terms.items():
            ne = tuple(x - y for x, y in zip(e, exps))
            if min(ne) < 0:
                raise ArithmeticError("monomial does not divide polynomial")
            out[ne] = c
        return self._like(out)

    def divmod(self, g):
        """Multivariate division by a single divisor (grlex leading terms)."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        ge, gc = g.lead()
        ginv = pow(gc, p - 2, p)
        gterms = [(e, c) for e, c in g.terms.items() if e != ge]
        r = dict(self.terms)
        q = {}
        rem = {}
        heap = [(_heap_key(e), e) for e in r]
        heapq.heapify(heap)
        while heap:
            _, e = heapq.heappop(heap)
            c = r.pop(e, None)
            if c is None:
                continue
            diff = tuple(x - y for x, y in zip(e, ge))
            if min(diff) < 0:
                rem[e] = c
                continue
            t = c * ginv % p
            q[diff] = t
            for eg, cg in gterms:
                ne = tuple(x + y for x, y in zip(eg, diff))
                v = (r.get(ne, 0) - t * cg) % p
                if v:
                    if ne not in r:
                        heapq.heappush(heap, (_heap_key(ne), ne))
                    r[ne] = v
                else:
                    r.pop(ne, None)
        return self._like(q), self._like(rem)

    def exact_div(self, g):
        if g.is_monomial():
            (e, c), = g.terms.items()
            return self.div_monomial(e).scale(pow(c, self.p - 2, self.p))
        self._check(g)
        try:
            q = _to_flint(self) / _to_flint(g)
        except DomainError:
            raise ArithmeticError("inexact polynomial division") from None
        return _from_flint(q, self.p, self.nvars)

    def pth_root(self):
        """Return g with g**p == self, or None."""
        p = self.p
        out = {}
        for e, c in self.terms.items():
            if any(x % p for x in e):
                return None
            out[tuple(x // p for x in e)] = c
        return self._like(out)

    # -- univariate views ---------------------------------------------
    def coeffs_in(self, i):
        """Coefficients w.r.t. variable i: {degree: polynomial free of x_i}."""
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(d, {})[ne] = c
        return {d: self._like(t) for d, t in out.items()}

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == Polynomial.constant(self.p, self.nvars, other).terms
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.p == other.p and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial(p={self.p}, terms={self.sorted_terms()!r})"


# -- gcd ----------------------------------------------------------------

def _from_univ(parts, i, nvars):
    out = {}
    for d, poly in parts.items():
        for e, c in poly.terms.items():
            out[e[:i] + (d,) + e[i + 1:]] = c
    return out


def _content(parts):
    return reduce(lambda acc, c: poly_gcd_prs(acc, c) if not acc.is_one() else acc, parts.values())


def _prem(a, b, i):
    """Pseudo-remainder of a by b as univariate polynomials in x_i."""
    db = b.degree(i)
    bparts = b.coeffs_in(i)
    lb = bparts[db]
    r = a
    while not r.is_zero():
        dr = r.degree(i)
        if dr < db:
            break
        lr = r.coeffs_in(i)[dr]
        shift = [0] * r.nvars
        shift[i] = dr - db
        r = r * lb - (b * lr).mul_monomial(shift)
    return r


def _primitive(f, i):
    parts = f.coeffs_in(i)
    c = _content(parts)
    return f if c.is_constant() else f.exact_div(c)


def _gcd_no_monomial_content(f, g):
    if f.is_constant() or g.is_constant():
        return Polynomial.constant(f.p, f.nvars, 1)
    vf, vg = f.variables_used(), g.variables_used()
    only_f = vf - vg
    only_g = vg - vf
    if only_f or only_g:
        if only_f:
            big, other, i = f, g, min(only_f)
        else:
            big, other, i = g, f, min(only_g)
        h = other
        for c in big.coeffs_in(i).values():
            h = poly_gcd_prs(h, c)
            if h.is_constant():
                break
        return h
    i = min(vf, key=lambda j: (max(f.degree(j), g.degree(j)), j))
    cf = _content(f.coeffs_in(i))
    cg = _content(g.coeffs_in(i))
    c = poly_gcd_prs(cf, cg)
    a = f if cf.is_constant() else f.exact_div(cf)
    b = g if cg.is_constant() else g.exact_div(cg)
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if r.is_zero():
            break
        if r.degree(i) == 0:
            return c.monic()
        a, b = b, _primitive(r, i)
    return (c * b).monic()


def poly_gcd_prs(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd by primitive pseudo-remainder sequences (pure Python reference)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return _one(f.p, f.nvars)
    if f == g:
        return f.monic()
    mf, mg = f.min_exponents(), g.min_exponents()
    m = tuple(min(x, y) for x, y in zip(mf, mg))
    if f.is_monomial() or g.is_monomial():
        return Polynomial.monomial(f.p, f.nvars, m)
    f1 = f.div_monomial(mf) if any(mf) else f
    g1 = g.div_monomial(mg) if any(mg) else g
    h = _gcd_no_monomial_content(f1, g1)
    return h.mul_monomial(m) if any(m) else h


# products with more term pairs than this go through FLINT; below it conversion costs more than it saves
_FLINT_MUL_TERMS = 256


@lru_cache(maxsize=None)
def _flint_ctx(p, nvars):
    return flint.nmod_mpoly_ctx.get(tuple(f"x{i}" for i in range(max(nvars, 1))), modulus=p)


def _to_flint(f):
    ctx = _flint_ctx(f.p, f.nvars)
    if f.nvars == 0:
        return ctx.from_dict({(0,): c for c in f.terms.values()})
    return ctx.from_dict(dict(f.terms))


def _from_flint(h, p, nvars):
    terms = {}
    for e, c in h.to_dict().items():
        c = int(c)
        if c:
            terms[tuple(int(x) for x in e[:nvars])] = c
    return Polynomial._make(p, nvars, terms)


@lru_cache(maxsize=None)
def _one(p, nvars):
    return Polynomial.constant(p, nvars, 1)


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor of two polynomials (FLINT for the general case)."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return _one(f.p, f.nvars)
    if f == g:
        return f.monic()
    if f.is_monomial() or g.is_monomial():
        m = tuple(min(x, y) for x, y in zip(f.min_exponents(), g.min_exponents()))
        return Polynomial.monomial(f.p, f.nvars, m)
    h = _to_flint(f).gcd(_to_flint(g))
    return _from_flint(h, f.p, f.nvars).monic()
