"""Exact arithmetic in the rational function field GF(p)(x_1, ..., x_k)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .poly import Polynomial, poly_gcd

__all__ = [
    "FieldConfig",
    "FieldElement",
    "DiffForm",
    "parse_elem",
    "pth_root",
    "artin_schreier",
    "differential",
    "dlog",
    "wp_preimage",
    "substitute",
]


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldConfig:
    """Prime p and the variable names, innermost Laurent variable first."""

    p: int
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not (2 <= self.p < 2**16) or not _is_prime(self.p):
            raise ValueError(f"p must be a prime below 2**16, got {self.p}")
        if any(not v for v in self.variables):
            raise ValueError("variable names must be nonempty")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")

    @classmethod
    def parse(cls, text: str) -> "FieldConfig":
        """Parse ``"p=2 vars=d,c,b,a"`` (whitespace or ';' separated)."""
        p = 2
        variables = None
        for item in text.replace(";", " ").split():
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"malformed field option {item!r}")
            if key == "p":
                p = int(value)
            elif key == "vars":
                variables = tuple(v.strip() for v in value.split(",") if v.strip())
            else:
                raise ValueError(f"unknown field option {key!r}")
        if variables is None:
            raise ValueError("field description needs vars=...")
        return cls(p, variables)

    @property
    def nvars(self):
        return len(self.variables)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.variables)}

    def __call__(self, value) -> "FieldElement":
        """Coerce an int, polynomial or expression string into the field."""
        if isinstance(value, FieldElement):
            if value.cfg != self:
                raise ValueError("element belongs to another field")
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return parse_elem(value, self)
        if isinstance(value, Polynomial):
            return FieldElement(self, value, Polynomial.constant(self.p, self.nvars, 1))
        raise TypeError(f"cannot coerce {type(value).__name__} into the field")

    def const(self, c: int) -> "FieldElement":
        return FieldElement._raw(
            self,
            Polynomial.constant(self.p, self.nvars, c),
            Polynomial.constant(self.p, self.nvars, 1),
        )

    def var(self, name: str) -> "FieldElement":
        try:
            i = self.index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None
        return self.monomial({i: 1})

    def monomial(self, exps, c=1) -> "FieldElement":
        """Laurent monomial c * x^e; ``exps`` maps index -> (possibly negative) exponent."""
        k = self.nvars
        if isinstance(exps, dict):
            vec = [0] * k
            for i, x in exps.items():
                vec[i] = x
        else:
            vec = list(exps)
        num = tuple(max(x, 0) for x in vec)
        den = tuple(max(-x, 0) for x in vec)
        return FieldElement._raw(
            self,
            Polynomial.monomial(self.p, k, num, c),
            Polynomial.monomial(self.p, k, den, 1),
        )

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    def describe(self):
        return f"p={self.p} vars={','.join(self.variables)}"


class FieldElement:
    """Reduced fraction num/den with a monic denominator."""

    __slots__ = ("cfg", "num", "den", "_hash")

    def __init__(self, cfg: FieldConfig, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Polynomial.constant(cfg.p, cfg.nvars, 1)
        elif not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
            c = den.lead()[1]
            if c != 1:
                inv = pow(c, cfg.p - 2, cfg.p)
                num = num.scale(inv)
                den = den.scale(inv)
        self.cfg = cfg
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, cfg, num, den):
        obj = cls.__new__(cls)
        obj.cfg = cfg
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.cfg != self.cfg:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.cfg.const(other)
        return NotImplemented

    # -- predicates ---------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_one()

    def is_laurent(self):
        """True when the denominator is a monomial."""
        return self.den.is_monomial()

    def laurent_terms(self):
        """Terms (exponent vector with possibly negative entries, coeff) of a Laurent polynomial."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial")
        (de, _), = self.den.terms.items()
        return {tuple(x - y for x, y in zip(e, de)): c for e, c in self.num.terms.items()}

    def term_count(self):
        return len(self.num.terms) + len(self.den.terms)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return FieldElement(self.cfg, self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            return FieldElement(self.cfg, num, self.den * other.den)
        d1 = self.den.exact_div(g)
        d2 = other.den.exact_div(g)
        num = self.num * d2 + other.num * d1
        return FieldElement(self.cfg, num, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.cfg, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return self.cfg.zero
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else self.num.exact_div(g1)
        d2 = other.den if g1.is_one() else other.den.exact_div(g1)
        n2 = other.num if g2.is_one() else other.num.exact_div(g2)
        d1 = self.den if g2.is_one() else self.den.exact_div(g2)
        num, den = n1 * n2, d1 * d2
        c = den.lead()[1]
        if c != 1:
            inv = pow(c, self.cfg.p - 2, self.cfg.p)
            num, den = num.scale(inv), den.scale(inv)
        return FieldElement._raw(self.cfg, num, den)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.cfg, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        if self.num.is_zero():
            return self.cfg.one if n == 0 else self
        # numerator and denominator stay coprime under powers
        return FieldElement._raw(self.cfg, self.num ** n, self.den ** n)

    def frobenius(self):
        return FieldElement._raw(self.cfg, self.num.frobenius(), self.den.frobenius())

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.cfg.const(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.cfg == other.cfg and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        return format_elem(self)

    def __repr__(self):
        return f"FieldElement({format_elem(self)!r})"


class DiffForm:
    """A differential 1-form sum_i f_i dx_i."""

    __slots__ = ("cfg", "coeffs")

    def __init__(self, cfg: FieldConfig, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != cfg.nvars:
            raise ValueError("one coefficient per variable expected")
        self.cfg = cfg
        self.coeffs = coeffs

    @classmethod
    def zero(cls, cfg):
        return cls(cfg, [cfg.zero] * cfg.nvars)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        return DiffForm(self.cfg, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return DiffForm(self.cfg, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return DiffForm(self.cfg, [-a for a in self.coeffs])

    def __rmul__(self, f):
        f = self.cfg(f)
        return DiffForm(self.cfg, [f * a for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, DiffForm):
            return NotImplemented
        return self.cfg == other.cfg and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for name, c in zip(self.cfg.variables, self.coeffs):
            if c.is_zero():
                continue
            parts.append(f"d{name}" if c.is_one() else f"({c})*d{name}")
        return " + ".join(reversed(parts)) if parts else "0"

    __repr__ = __str__


# -- field operations ---------------------------------------------------

def pth_root(f: FieldElement):
    """Return g with g**p == f, or None when f is not a p-th power."""
    n = f.num.pth_root()
    if n is None:
        return None
    d = f.den.pth_root()
    if d is None:
        return None
    return FieldElement._raw(f.cfg, n, d)


def artin_schreier(f: FieldElement) -> FieldElement:
    """The Artin-Schreier map f -> f^p - f."""
    return f.frobenius() - f


def differential(f: FieldElement) -> DiffForm:
    cfg = f.cfg
    n, d = f.num, f.den
    d2 = d * d
    coeffs = []
    for i in range(cfg.nvars):
        top = n.derivative(i) * d - n * d.derivative(i)
        coeffs.append(FieldElement(cfg, top, d2) if not top.is_zero() else cfg.zero)
    return DiffForm(cfg, coeffs)


def dlog(f: FieldElement) -> DiffForm:
    if f.is_zero():
        raise ZeroDivisionError("dlog of zero")
    return f.inv() * differential(f)


def wp_preimage(f: FieldElement):
    """Find g in GF(p)(x) with g^p - g == f, or return None.

    Writing g = N/D in lowest terms forces den(f) = D^p and
    num(f) = N^p - N*D^(p-1); the map N -> N^p - N*D^(p-1) is GF(p)-linear,
    so N is found by solving a linear system over the prime field.
    """
    cfg = f.cfg
    if f.is_zero():
        return cfg.zero
    D = f.den.pth_root()
    if D is None:
        return None
    p, k = cfg.p, cfg.nvars
    M = f.num
    Dp1 = D ** (p - 1)
    bounds = [max(D.degree(i), M.degree(i) // p) for i in range(k)]
    total = max(D.degree(), M.degree() // p)
    cols = []

    def rec(i, prefix, budget):
        if i == k:
            cols.append(tuple(prefix))
            return
        for x in range(min(bounds[i], budget) + 1):
            prefix.append(x)
            rec(i + 1, prefix, budget - x)
            prefix.pop()

    rec(0, [], total)
    if len(cols) > 20000:
        return None
    images = []
    rows = {}
    for e in cols:
        img = Polynomial.monomial(p, k, tuple(x * p for x in e)) - Dp1.mul_monomial(e)
        images.append(img.terms)
        for re in img.terms:
            rows.setdefault(re, len(rows))
    for re in M.terms:
        if re not in rows:
            rows.setdefault(re, len(rows))
    # equations: one per monomial row, unknowns are coefficients of N
    eqs = [dict() for _ in rows]
    for j, img in enumerate(images):
        for re, c in img.items():
            eqs[rows[re]][j] = c
    rhs = [0] * len(rows)
    for re, c in M.terms.items():
        rhs[rows[re]] = c
    sol = _solve_mod_p(eqs, rhs, len(cols), p)
    if sol is None:
        return None
    N = Polynomial(p, k, {cols[j]: v for j, v in sol.items()})
    g = FieldElement(cfg, N, D)
    return g if artin_schreier(g) == f else None


def _solve_mod_p(eqs, rhs, ncols, p):
    """Solve a sparse linear system over GF(p); returns {col: value} or None.

    Each new pivot is taken in the row's least frequent column to limit
    fill-in.  A stored pivot row never contains the column of an earlier
    pivot, so eliminating in pivot order terminates and back substitution
    runs in reverse pivot order.
    """
    freq = {}
    for row in eqs:
        for j in row:
            freq[j] = freq.get(j, 0) + 1
    rank_of = {}   # column -> pivot position
    pivots = []    # (column, row dict with coefficient 1 at column, rhs)
    order = sorted(range(len(eqs)), key=lambda i: len(eqs[i]))
    for row, b in ((eqs[i], rhs[i]) for i in order):
        row = {j: v % p for j, v in row.items() if v % p}
        b %= p
        while True:
            hits = [rank_of[j] for j in row if j in rank_of]
            if not hits:
                break
            col, prow, pb = pivots[min(hits)]
            c = row[col]
            for j, v in prow.items():
                nv = (row.get(j, 0) - c * v) % p
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            b = (b - c * pb) % p
        if not row:
            if b:
                return None
            continue
        col = min(row, key=lambda j: (freq[j], j))
        inv = pow(row[col], p - 2, p)
        rank_of[col] = len(pivots)
        pivots.append((col, {j: v * inv % p for j, v in row.items()}, b * inv % p))
    # free columns are 0
    sol = {}
    for col, prow, b in reversed(pivots):
        acc = b
        for j, v in prow.items():
            if j != col and j in sol:
                acc = (acc - v * sol[j]) % p
        if acc:
            sol[col] = acc
    return sol


def _eval_poly(poly, images, target):
    acc = target.zero
    powers = {}
    for e, c in poly.terms.items():
        t = target.const(c)
        for i, x in enumerate(e):
            if x:
                key = (i, x)
                if key not in powers:
                    powers[key] = images[i] ** x
                t = t * powers[key]
        acc = acc + t
    return acc


def substitute(f: FieldElement, mapping, target: FieldConfig = None) -> FieldElement:
    """Evaluate f at images of its variables, landing in ``target``.

    ``mapping`` sends variable names to FieldElements (or expression strings)
    of ``target``; unmapped variables go to the target variable of the same
    name.  Raises ZeroDivisionError if the denominator vanishes.
    """
    target = f.cfg if target is None else target
    if target.p != f.cfg.p:
        raise ValueError("substitution between different characteristics")
    images = []
    for name in f.cfg.variables:
        img = mapping.get(name, name) if mapping else name
        images.append(target(img))
    den = _eval_poly(f.den, images, target)
    if den.is_zero():
        raise ZeroDivisionError(f"denominator of {f} vanishes under the substitution")
    return _eval_poly(f.num, images, target) / den


from .parse import format_elem, parse_elem  # noqa: E402
