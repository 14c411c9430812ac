"""Quadratic forms in characteristic 2.

A form is stored as an upper-triangular Gram matrix U with q(x) = x^T U x.
When it carries a presentation, the presentation is a list of components,
each either a binary block lam*[1, alpha] (Gram [[lam, lam], [0, lam*alpha]])
or a one-dimensional quasilinear entry <mu>; the Gram matrix is their
block-diagonal assembly in list order.

Isometries are never searched for.  A claimed isometry or embedding comes
with a matrix T whose columns express the source basis in target
coordinates, and it is accepted iff fold(T^T U_target T) == U_source.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .funcfield import FieldElement, pth_root, wp_preimage
from .matrix import embed, fold, identity, matmul, rank, transpose
from .symbolalg import BrauerClass, Symbol, normalize
from .valuation import CosetSet, as_class, value

__all__ = [
    "Block",
    "Quasi",
    "QuadraticForm",
    "FormParseError",
    "IsometryCert",
    "pfister",
    "hyperbolic",
    "block_decompose",
    "verify_isometry",
    "verify_subform",
    "arf",
    "arf_class",
    "clifford_class",
    "value_coset_set",
    "Anisotropy",
    "anisotropic_by_distinct_cosets",
    "WittRule",
    "WittStep",
    "WittReduction",
    "witt_reduce",
    "parse_form",
]


def _require_char2(cfg):
    if cfg.p != 2:
        raise ValueError("quadratic forms are only implemented in characteristic 2")


def _paren(f):
    s = str(f)
    return f"({s})" if any(ch in s for ch in "+-/") else s


@dataclass(frozen=True)
class Block:
    lam: FieldElement
    alpha: FieldElement

    def __post_init__(self):
        if self.lam.is_zero():
            raise ValueError("block multiplier must be nonzero")

    dim = 2

    def gram(self):
        return ((self.lam, self.lam), (self.lam.cfg.zero, self.lam * self.alpha))

    def key(self):
        return ("block", str(self.lam), str(self.alpha))

    def scaled(self, c):
        return Block(self.lam * c, self.alpha)

    def __str__(self):
        body = f"[1,{self.alpha}]"
        return body if self.lam.is_one() else f"{_paren(self.lam)}*{body}"


@dataclass(frozen=True)
class Quasi:
    mu: FieldElement

    dim = 1

    def gram(self):
        return ((self.mu,),)

    def key(self):
        return ("quasi", str(self.mu))

    def scaled(self, c):
        return Quasi(self.mu * c)

    def __str__(self):
        return f"<{self.mu}>"


def _assemble(cfg, comps):
    n = sum(c.dim for c in comps)
    rows = [[cfg.zero] * n for _ in range(n)]
    off = 0
    for c in comps:
        g = c.gram()
        for i in range(c.dim):
            for j in range(c.dim):
                rows[off + i][off + j] = g[i][j]
        off += c.dim
    return tuple(tuple(r) for r in rows)


class QuadraticForm:
    """Immutable quadratic form, optionally with a block presentation."""

    __slots__ = ("cfg", "gram", "components")

    def __init__(self, cfg, gram, components=None):
        _require_char2(cfg)
        n = len(gram)
        for i in range(n):
            if len(gram[i]) != n:
                raise ValueError("Gram matrix must be square")
            for j in range(i):
                if not gram[i][j].is_zero():
                    raise ValueError("Gram matrix must be upper triangular")
        self.cfg = cfg
        self.gram = tuple(tuple(r) for r in gram)
        self.components = tuple(components) if components is not None else None
        if self.components is not None and _assemble(cfg, self.components) != self.gram:
            raise ValueError("presentation does not reproduce the Gram matrix")

    @classmethod
    def from_components(cls, cfg, comps):
        comps = tuple(comps)
        return cls(cfg, _assemble(cfg, comps), comps)

    @classmethod
    def from_gram(cls, cfg, gram):
        return cls(cfg, fold(gram))

    @classmethod
    def empty(cls, cfg):
        return cls(cfg, (), ())

    @property
    def dim(self):
        return len(self.gram)

    @property
    def has_presentation(self):
        return self.components is not None

    @property
    def blocks(self):
        return [c for c in self._comps() if isinstance(c, Block)]

    @property
    def quasi(self):
        return [c for c in self._comps() if isinstance(c, Quasi)]

    def _comps(self):
        if self.components is None:
            raise ValueError("form has no block presentation; call block_decompose first")
        return self.components

    def presented(self):
        """This form if it has a presentation, otherwise its block decomposition."""
        return self if self.components is not None else block_decompose(self)[0]

    def offsets(self):
        out, off = [], 0
        for c in self._comps():
            out.append(off)
            off += c.dim
        return out

    def evaluate(self, x):
        acc = self.cfg.zero
        for i, row in enumerate(self.gram):
            if x[i].is_zero():
                continue
            for j in range(i, len(row)):
                if not row[j].is_zero() and not x[j].is_zero():
                    acc = acc + row[j] * x[i] * x[j]
        return acc

    def polar(self, x, y):
        acc = self.cfg.zero
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                u = self.gram[i][j]
                if u.is_zero():
                    continue
                t = x[i] * y[j] + x[j] * y[i]
                if not t.is_zero():
                    acc = acc + u * t
        return acc

    def polar_matrix(self):
        U = self.gram
        n = self.dim
        return tuple(tuple(U[i][j] + U[j][i] if i != j else self.cfg.zero for j in range(n)) for i in range(n))

    def osum(self, other):
        """Orthogonal sum; the presentation survives if both have one."""
        if other.cfg != self.cfg:
            raise ValueError("forms over different fields")
        if self.components is not None and other.components is not None:
            return QuadraticForm.from_components(self.cfg, self.components + other.components)
        n, m = self.dim, other.dim
        z = self.cfg.zero
        rows = [list(r) + [z] * m for r in self.gram] + [[z] * n + list(r) for r in other.gram]
        return QuadraticForm(self.cfg, rows)

    __add__ = osum

    def scaled(self, c):
        if isinstance(c, (int, str)):
            c = self.cfg(c)
        if c.is_zero():
            raise ValueError("scaling by zero")
        if self.components is not None:
            return QuadraticForm.from_components(self.cfg, [x.scaled(c) for x in self.components])
        return QuadraticForm(self.cfg, [[u * c for u in r] for r in self.gram])

    def component_key(self):
        """Order-independent description of the presentation (a multiset key)."""
        return tuple(sorted(c.key() for c in self._comps()))

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.cfg == other.cfg and self.gram == other.gram and self.components == other.components

    def __hash__(self):
        return hash(self.gram)

    def gram_strings(self):
        return [[str(u) for u in r] for r in self.gram]

    def __str__(self):
        if self.components is None:
            return "gram" + str(self.gram_strings())
        if not self.components:
            return "0"
        return " + ".join(str(c) for c in self.components)

    def __repr__(self):
        return f"QuadraticForm({self})"


def hyperbolic(cfg, lam=None):
    lam = cfg.one if lam is None else lam
    return QuadraticForm.from_components(cfg, [Block(lam, cfg.zero)])


def pfister(bs, alpha):
    """<<b_m, ..., b_1, alpha]] expanded as [1,alpha] + b_1[1,alpha] + b_2[1,alpha] + b_2 b_1[1,alpha] + ..."""
    cfg = alpha.cfg
    bs = list(bs)
    if any(b.is_zero() for b in bs):
        raise ValueError("zero Pfister slot")
    m = len(bs)
    comps = []
    for idx in range(2 ** m):
        lam = cfg.one
        for j in range(m):
            if idx >> j & 1:
                lam = lam * bs[m - 1 - j]
        comps.append(Block(lam, alpha))
    return QuadraticForm.from_components(cfg, comps)


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class IsometryCert:
    """Columns of T are the source basis vectors written in target coordinates."""

    T: tuple

    @classmethod
    def of(cls, rows, cfg=None):
        if cfg is not None:
            rows = [[cfg(x) if not isinstance(x, FieldElement) else x for x in r] for r in rows]
        return cls(tuple(tuple(r) for r in rows))

    @property
    def shape(self):
        return (len(self.T), len(self.T[0]) if self.T else 0)

    def then(self, other):
        """Compose: if self maps A into B and other maps B into C, the result maps A into C."""
        return IsometryCert(matmul(other.T, self.T))

    def to_strings(self):
        return [[str(x) for x in r] for r in self.T]


def _pulls_back(T, U_target, U_source):
    return fold(matmul(matmul(transpose(T), U_target), T)) == U_source


def verify_isometry(src, dst, cert) -> bool:
    """True iff T is invertible and q_dst(T y) = q_src(y)."""
    n = src.dim
    if dst.dim != n or cert.shape != (n, n):
        raise ValueError(f"dimension mismatch: {src.dim} vs {dst.dim} with T of shape {cert.shape}")
    if n == 0:
        return True
    if rank(cert.T) != n:
        raise ValueError("singular matrix offered as an isometry")
    return _pulls_back(cert.T, dst.gram, src.gram)


def verify_subform(sub, sup, cert) -> bool:
    """True iff T is injective and q_sup(T y) = q_sub(y)."""
    if cert.shape != (sup.dim, sub.dim):
        raise ValueError(f"expected a {sup.dim}x{sub.dim} matrix, got {cert.shape}")
    if sub.dim == 0:
        return True
    if rank(cert.T) != sub.dim:
        return False
    return _pulls_back(cert.T, sup.gram, sub.gram)


# -- block decomposition ------------------------------------------------------------

def block_decompose(q):
    """Symplectic pivoting into lam[1,alpha] blocks and a quasilinear rest.

    Returns ``(presented form, IsometryCert)`` with the certificate mapping the
    presented form onto ``q``.  The first remaining vector is paired with the
    first vector it has nonzero polar value against; if it has none it lies in
    the polar radical and becomes a quasilinear entry (possibly <0> for a
    degenerate form).
    """
    cfg = q.cfg
    n = q.dim
    remaining = [tuple(r) for r in identity(cfg, n)]
    comps, cols = [], []
    while remaining:
        w = remaining[0]
        partner = next((j for j in range(1, len(remaining)) if not q.polar(w, remaining[j]).is_zero()), None)
        if partner is None:
            comps.append(Quasi(q.evaluate(w)))
            cols.append(w)
            remaining = remaining[1:]
            continue
        e, f = w, remaining[partner]
        if q.evaluate(e).is_zero():
            if not q.evaluate(f).is_zero():
                e, f = f, e
            else:
                # q(e + f) = B(e, f) != 0, and B(e + f, f) = B(e, f)
                e = tuple(x + y for x, y in zip(e, f))
        lam = q.evaluate(e)
        scale = lam / q.polar(e, f)
        f = tuple(x * scale for x in f)
        alpha = q.evaluate(f) / lam
        comps.append(Block(lam, alpha))
        cols += [e, f]
        rest = []
        for idx, v in enumerate(remaining):
            if idx in (0, partner):
                continue
            ce = q.polar(v, f) / lam
            cf = q.polar(v, e) / lam
            if not ce.is_zero() or not cf.is_zero():
                v = tuple(x - ce * a - cf * b for x, a, b in zip(v, e, f))
            rest.append(v)
        remaining = rest
    T = transpose(tuple(cols)) if cols else ()
    out = QuadraticForm.from_components(cfg, comps)
    cert = IsometryCert(T)
    if n and not verify_isometry(out, q, cert):
        raise AssertionError("block decomposition failed its own certificate")
    return out, cert


# -- invariants -------------------------------------------------------------------

def arf(q) -> FieldElement:
    """Sum of the alpha slots of a nonsingular even-dimensional presentation.

    Its class in F/wp(F) is the Arf invariant; see :func:`arf_class`.
    """
    q = q.presented()
    if q.dim % 2 or q.quasi:
        raise ValueError("the Arf invariant needs a nonsingular even-dimensional form")
    total = q.cfg.zero
    for b in q.blocks:
        total = total + b.alpha
    return total


def arf_class(q):
    return as_class(arf(q))


def clifford_class(q, normalized=True):
    """Brauer class of the Clifford algebra, in two supported cases.

    Even dimension with trivial Arf invariant: sum of [alpha_i, lam_i).
    Odd dimension with quasilinear part <lam>: sum of [alpha_i, lam*lam_i).
    Symbols [alpha, 1) and [0, beta) are omitted.
    """
    q = q.presented()
    cfg = q.cfg
    quasi = q.quasi
    if not quasi:
        res = arf_class(q)
        if not res.trivial:
            raise ValueError(f"Arf invariant not certified trivial ({res.verdict}: {res.reason})")
        twist = cfg.one
    elif len(quasi) == 1:
        twist = quasi[0].mu
        if twist.is_zero():
            raise ValueError("singular quasilinear part <0>")
    else:
        raise ValueError("odd case needs a quasilinear part of dimension exactly 1")
    syms = []
    for b in q.blocks:
        beta = twist * b.lam
        if b.alpha.is_zero() or beta.is_one():
            continue
        syms.append(Symbol(b.alpha, beta))
    raw = BrauerClass(cfg, syms)
    return normalize(raw) if normalized else raw


def value_coset_set(q) -> CosetSet:
    """Cosets of the natural-basis values 1/2 v(q(e)) of a presentation.

    A hyperbolic block (alpha = 0) has an isotropic basis vector; it
    contributes only its first value and marks the set as not distinct.
    """
    q = q.presented()
    vals = []
    ok = True
    for c in q.components:
        if isinstance(c, Block):
            vals.append(value(c.lam) / 2)
            if c.alpha.is_zero():
                ok = False
            else:
                vals.append(value(c.lam * c.alpha) / 2)
        else:
            if c.mu.is_zero():
                ok = False
            else:
                vals.append(value(c.mu) / 2)
    cs = CosetSet.of(vals)
    return CosetSet(cs.values, cs.distinct and ok)


class Anisotropy(enum.Enum):
    ANISOTROPIC = "Anisotropic"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


def ramified_slots(q):
    # v(alpha) > 0 makes [1, alpha] hyperbolic over the henselian field even with
    # distinct cosets, and v(alpha) = 0 leaves the value of a vector undetermined
    return all(not b.alpha.is_zero() and value(b.alpha).sign() < 0 for b in q.blocks)


def anisotropic_by_distinct_cosets(q) -> Anisotropy:
    q = q.presented()
    cs = value_coset_set(q)
    if cs.distinct and len(cs.values) == q.dim and ramified_slots(q):
        return Anisotropy.ANISOTROPIC
    return Anisotropy.UNKNOWN


# -- Witt reduction -------------------------------------------------------------------

class WittRule(enum.Enum):
    R1 = "AS-shift"          # lam[1, alpha + wp(x)] -> lam[1, alpha], Laurent reduction
    R3 = "AS-hyperbolic"     # lam[1, wp(x)] -> lam[1, 0]
    R2 = "square-multiplier" # lam y^2 -> lam
    R7 = "pair-cancel"       # lam[1,alpha] + lam[1,alpha] -> lam[1,0] + lam[1,0]
    R6 = "slot-shift"        # mu<<beta, alpha]] -> mu<<beta, alpha + beta]]
    R5 = "absorb"            # lam[1,alpha] + <mu> -> lam[1,0] + <mu>
    R4 = "drop-hyperbolic"   # remove lam[1,0]

    def __str__(self):
        return self.name


RULE_ORDER = (WittRule.R1, WittRule.R3, WittRule.R2, WittRule.R7, WittRule.R6, WittRule.R5, WittRule.R4)


@dataclass
class WittStep:
    rule: WittRule
    before: QuadraticForm
    after: QuadraticForm
    cert: IsometryCert = None   # maps `after` onto `before`; None for R4
    index: int = 0
    note: str = ""

    def verify(self) -> bool:
        if self.rule is WittRule.R4:
            comps = list(self.before.components)
            dropped = comps.pop(self.index)
            return (
                isinstance(dropped, Block)
                and dropped.alpha.is_zero()
                and tuple(comps) == self.after.components
            )
        return verify_isometry(self.after, self.before, self.cert)

    def to_dict(self):
        return {
            "rule": self.rule.name,
            "before": str(self.before),
            "after": str(self.after),
            "index": self.index,
            "note": self.note,
            "T": self.cert.to_strings() if self.cert is not None else None,
        }


@dataclass
class WittReduction:
    form: QuadraticForm
    hyperbolic: int
    steps: list = field(default_factory=list)

    def verify(self) -> bool:
        if not self.steps:
            return True
        for a, b in zip(self.steps, self.steps[1:]):
            if a.after != b.before:
                return False
        return all(s.verify() for s in self.steps) and self.steps[-1].after == self.form

    def witt_equivalent(self, other) -> bool:
        """Equal reduced presentations up to reordering."""
        return self.form.component_key() == other.form.component_key()


def _laurent_reduce(alpha):
    """Strip wp-images from Laurent terms: returns (reduced alpha, witness w) with alpha = reduced + wp(w)."""
    cfg = alpha.cfg
    if alpha.is_zero() or not alpha.is_laurent():
        return alpha, cfg.zero
    w = cfg.zero
    out = cfg.zero
    for m, c in alpha.laurent_terms().items():
        m = list(m)
        while any(m) and all(x % 2 == 0 for x in m):
            m = [x // 2 for x in m]
            w = w + cfg.monomial(m, c)
        out = out + cfg.monomial(m, c)
    return out, w


def _square_part(f):
    """y with f / y^2 free of square monomial content (y = 1 when nothing to strip)."""
    cfg = f.cfg
    root = pth_root(f)
    if root is not None and not f.is_one():
        return root
    mn, md = f.num.min_exponents(), f.den.min_exponents()
    return cfg.monomial([(a - b) // 2 for a, b in zip(mn, md)])


class _Reducer:
    def __init__(self, q):
        self.cfg = q.cfg
        self.form = q
        self.steps = []
        self.count = 0
        self._preimage = {}

    def comps(self):
        return list(self.form.components)

    def push(self, rule, comps, local=None, coords=None, index=0, note=""):
        after = QuadraticForm.from_components(self.cfg, comps)
        cert = None
        if local is not None:
            cert = IsometryCert(embed(self.cfg, self.form.dim, local, coords))
        step = WittStep(rule, self.form, after, cert, index, note)
        if not step.verify():
            raise AssertionError(f"Witt step {rule.name} failed its certificate: {note}")
        self.steps.append(step)
        self.form = after

    def coords(self, i):
        off = self.form.offsets()[i]
        c = self.form.components[i]
        return list(range(off, off + c.dim))

    def preimage(self, alpha):
        if alpha not in self._preimage:
            self._preimage[alpha] = wp_preimage(alpha)
        return self._preimage[alpha]

    # each rule returns True when it fired

    def r1(self):
        comps = self.comps()
        for i, c in enumerate(comps):
            if isinstance(c, Block) and not c.alpha.is_zero():
                red, w = _laurent_reduce(c.alpha)
                if not w.is_zero():
                    comps[i] = Block(c.lam, red)
                    o, z = self.cfg.one, self.cfg.zero
                    self.push(WittRule.R1, comps, ((o, w), (z, o)), self.coords(i), i, f"witness {w}")
                    return True
        return False

    def r3(self):
        comps = self.comps()
        for i, c in enumerate(comps):
            if isinstance(c, Block) and not c.alpha.is_zero():
                w = self.preimage(c.alpha)
                if w is not None:
                    comps[i] = Block(c.lam, self.cfg.zero)
                    o, z = self.cfg.one, self.cfg.zero
                    self.push(WittRule.R3, comps, ((o, w), (z, o)), self.coords(i), i, f"witness {w}")
                    return True
        return False

    def r2(self):
        comps = self.comps()
        for i, c in enumerate(comps):
            lam = c.lam if isinstance(c, Block) else c.mu
            if lam.is_zero():
                continue
            y = _square_part(lam)
            if y.is_one():
                continue
            inv = y.inv()
            z = self.cfg.zero
            if isinstance(c, Block):
                comps[i] = Block(lam / (y * y), c.alpha)
                local = ((inv, z), (z, inv))
            else:
                comps[i] = Quasi(lam / (y * y))
                local = ((inv,),)
            self.push(WittRule.R2, comps, local, self.coords(i), i, f"square factor ({y})^2")
            return True
        return False

    def _block_pairs(self):
        comps = self.form.components
        for i, a in enumerate(comps):
            if not isinstance(a, Block) or a.alpha.is_zero():
                continue
            for j, b in enumerate(comps):
                if j != i and isinstance(b, Block) and b.alpha == a.alpha:
                    yield i, j, a, b

    def r7(self):
        for i, j, a, b in self._block_pairs():
            if j > i and a.lam == b.lam:
                comps = self.comps()
                h = Block(a.lam, self.cfg.zero)
                comps[i] = h
                comps[j] = h
                z, o, al = self.cfg.zero, self.cfg.one, a.alpha
                # columns: e1, f1, e2, f2 in coordinates (x_i0, x_i1, x_j0, x_j1)
                cols = ((al, o, o + al, z), (o, z, o, z), (z, z, o, z), (o, o, z, o))
                self.push(WittRule.R7, comps, transpose(cols), self.coords(i) + self.coords(j), i, f"pair {i},{j}")
                return True
        return False

    def r6(self):
        for i, j, a, b in self._block_pairs():
            beta = b.lam / a.lam
            new_alpha = a.alpha + beta
            if new_alpha.term_count() >= a.alpha.term_count():
                continue
            comps = self.comps()
            comps[i] = Block(a.lam, new_alpha)
            comps[j] = Block(b.lam, new_alpha)
            z, o = self.cfg.zero, self.cfg.one
            local = ((o, z, z, beta), (z, o, z, z), (z, o, o, z), (z, z, z, o))
            self.push(WittRule.R6, comps, local, self.coords(i) + self.coords(j), i, f"slot {beta}")
            return True
        return False

    def r5(self):
        comps = self.form.components
        for qi, qc in enumerate(comps):
            if not isinstance(qc, Quasi) or qc.mu.is_zero():
                continue
            for i, c in enumerate(comps):
                if not isinstance(c, Block) or c.alpha.is_zero():
                    continue
                lam, al, mu = c.lam, c.alpha, qc.mu
                z, o = self.cfg.zero, self.cfg.one
                t = pth_root(mu / lam)
                if t is not None:
                    s = o + al / (t * t)
                    local = ((s * t, t, z), (t.inv(), z, z), (s, o, o))
                else:
                    t = pth_root(mu / (lam * al))
                    if t is None:
                        continue
                    s = o + (t * t).inv()
                    local = ((t.inv(), z, z), (s * t, t, z), (s, o, o))
                new = list(comps)
                new[i] = Block(lam, z)
                self.push(WittRule.R5, new, local, self.coords(i) + self.coords(qi), i, f"absorbed by <{mu}>")
                return True
        return False

    def r4(self):
        comps = self.comps()
        for i, c in enumerate(comps):
            if isinstance(c, Block) and c.alpha.is_zero():
                del comps[i]
                self.push(WittRule.R4, comps, index=i, note=f"hyperbolic plane {c}")
                self.count += 1
                return True
        return False


def witt_reduce(q, max_steps=10000) -> WittReduction:
    """Apply the certified rules R1, R3, R2, R7, R6, R5, R4 (first applicable, leftmost first) to a fixpoint."""
    red = _Reducer(q.presented())
    rules = [getattr(red, r.name.lower()) for r in RULE_ORDER]
    for _ in range(max_steps):
        if not any(rule() for rule in rules):
            break
    else:
        raise RuntimeError("Witt reduction did not reach a fixpoint")
    return WittReduction(red.form, red.count, red.steps)


# -- parsing -------------------------------------------------------------------------

class FormParseError(ValueError):
    pass


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise FormParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _prefix(text, cut, cfg):
    pre = text[:cut].strip()
    if not pre:
        return cfg.one
    if not pre.endswith("*"):
        raise FormParseError(f"expected '*' between multiplier and form in {text!r}")
    lam = cfg(pre[:-1])
    if lam.is_zero():
        raise FormParseError("zero multiplier")
    return lam


def _summand(text, cfg):
    if text == "H":
        return [Block(cfg.one, cfg.zero)]
    if text.endswith("]]"):
        cut = text.find("<<")
        if cut < 0:
            raise FormParseError(f"Pfister form without '<<': {text!r}")
        lam = _prefix(text, cut, cfg)
        args = _split_top(text[cut + 2:-2], ",")
        slots = [cfg(a) for a in args]
        return [c.scaled(lam) for c in pfister(slots[:-1], slots[-1]).components]
    if text.endswith("]"):
        cut = text.rfind("[")
        lam = _prefix(text, cut, cfg)
        args = _split_top(text[cut + 1:-1], ",")
        if len(args) != 2 or not cfg(args[0]).is_one():
            raise FormParseError(f"binary blocks are written [1,alpha]: {text!r}")
        return [Block(lam, cfg(args[1]))]
    if text.endswith(">"):
        cut = text.find("<")
        lam = _prefix(text, cut, cfg)
        return [Quasi(lam * cfg(a)) for a in _split_top(text[cut + 1:-1], ",")]
    raise FormParseError(f"cannot parse form summand {text!r}")


def parse_form(text, cfg) -> QuadraticForm:
    """Parse block syntax such as ``c*[1,a+b] + b*[1,a] + <1>`` or ``d*<<c,a]] + H``."""
    _require_char2(cfg)
    comps = []
    for part in _split_top(text.strip(), "+"):
        if not part:
            raise FormParseError(f"empty summand in {text!r}")
        comps += _summand(part, cfg)
    return QuadraticForm.from_components(cfg, comps)
