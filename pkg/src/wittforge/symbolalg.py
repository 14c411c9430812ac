"""Cyclic p-algebra symbols [alpha, beta), formal Brauer classes and chain presentations.

Brauer classes are never compared directly.  Every rewrite is recorded as a
:class:`RewriteStep` whose certificate is checked against the differential
form alpha*dlog(beta): additivity, multiplicativity and the two rewriting
identities preserve the total form literally, an Artin-Schreier shift moves
one first slot by wp(x) for a recorded x, and a split drop removes an exact
form d(h) (or symbols that are certified split).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .funcfield import DiffForm, FieldElement, artin_schreier, differential, dlog, pth_root
from .valuation import as_class

__all__ = [
    "Symbol",
    "BrauerClass",
    "Rule",
    "RewriteStep",
    "CertificateError",
    "ChainError",
    "OracleError",
    "symbol_form",
    "normalize",
    "apply_mainid",
    "apply_easyid",
    "certify_split",
    "Classification",
    "DivisionOracle",
    "AssumeDivision",
    "chain_pair",
    "chain_list",
    "ChainResult",
    "parse_symbols",
]


class CertificateError(AssertionError):
    """A rewrite step whose certificate does not check."""


class ChainError(ValueError):
    pass


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Symbol:
    alpha: FieldElement
    beta: FieldElement

    def __post_init__(self):
        if self.beta.is_zero():
            raise ValueError("second slot of a symbol must be nonzero")
        if self.alpha.cfg != self.beta.cfg:
            raise ValueError("slots from different fields")

    @property
    def cfg(self):
        return self.alpha.cfg

    @property
    def p(self):
        return self.alpha.cfg.p

    def form(self) -> DiffForm:
        return symbol_form(self)

    def sort_key(self):
        return (str(self.beta), str(self.alpha))

    def __str__(self):
        return f"[{self.alpha}, {self.beta})"


def symbol_form(s: Symbol) -> DiffForm:
    """The 1-form alpha * dlog(beta) representing the symbol."""
    if s.alpha.is_zero():
        return DiffForm.zero(s.cfg)
    return s.alpha * dlog(s.beta)


class BrauerClass:
    """A formal sum of symbols (a multiset; order carries no meaning)."""

    __slots__ = ("cfg", "symbols")

    def __init__(self, cfg, symbols=()):
        self.cfg = cfg
        self.symbols = tuple(symbols)

    @classmethod
    def of(cls, *symbols):
        if not symbols:
            raise ValueError("use BrauerClass(cfg) for the empty class")
        return cls(symbols[0].cfg, symbols)

    def form(self) -> DiffForm:
        total = DiffForm.zero(self.cfg)
        for s in self.symbols:
            total = total + symbol_form(s)
        return total

    def __add__(self, other):
        if isinstance(other, Symbol):
            other = BrauerClass(self.cfg, [other])
        return BrauerClass(self.cfg, self.symbols + other.symbols)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def is_empty(self):
        return not self.symbols

    def sorted(self):
        return BrauerClass(self.cfg, sorted(self.symbols, key=Symbol.sort_key))

    def __eq__(self, other):
        # equality of presentations as multisets
        if not isinstance(other, BrauerClass):
            return NotImplemented
        return sorted(self.symbols, key=Symbol.sort_key) == sorted(other.symbols, key=Symbol.sort_key)

    def __hash__(self):
        return hash(tuple(sorted(self.symbols, key=Symbol.sort_key)))

    def __str__(self):
        return " + ".join(str(s) for s in self.symbols) if self.symbols else "0"

    def __repr__(self):
        return f"BrauerClass({self})"


class Rule(enum.Enum):
    ADDITIVITY = "Additivity"
    MULTIPLICATIVITY = "Multiplicativity"
    AS_SHIFT = "ASShift"
    MAIN_ID = "MainId"
    EASY_ID = "EasyId"
    SPLIT_DROP = "SplitDrop"

    def __str__(self):
        return self.value


_LITERAL_RULES = {Rule.ADDITIVITY, Rule.MULTIPLICATIVITY, Rule.MAIN_ID, Rule.EASY_ID}


@dataclass
class RewriteStep:
    rule: Rule
    before: BrauerClass
    after: BrauerClass
    certificate: dict = field(default_factory=dict)

    def verify(self) -> bool:
        if self.rule in _LITERAL_RULES:
            return self.before.form() == self.after.form()
        if self.rule is Rule.AS_SHIFT:
            i = self.certificate["index"]
            x = self.certificate["witness"]
            b, a = self.before.symbols, self.after.symbols
            if len(a) != len(b):
                return False
            for j, (s, t) in enumerate(zip(b, a)):
                if j == i:
                    if s.beta != t.beta or t.alpha - s.alpha != artin_schreier(x):
                        return False
                elif s != t:
                    return False
            return True
        if self.rule is Rule.SPLIT_DROP:
            if "exact" in self.certificate:
                h = self.certificate["exact"]
                return self.before.form() - self.after.form() == differential(h)
            if "split" in self.certificate:
                return all(certify_split(s) is not None for s in self.before.symbols + self.after.symbols)
        return False

    def check(self):
        if not self.verify():
            raise CertificateError(f"{self.rule} step failed: {self.before} -> {self.after}")
        return self

    def to_dict(self):
        cert = {k: str(v) for k, v in self.certificate.items()}
        return {"rule": str(self.rule), "before": str(self.before), "after": str(self.after), "certificate": cert}


# -- single-symbol identities ---------------------------------------------

def apply_mainid(s: Symbol, x: FieldElement):
    """[alpha, beta) -> [(beta + x^p) alpha / beta, beta + x^p)."""
    b = s.beta + x.frobenius()
    if b.is_zero():
        raise ChainError("beta + x^p vanishes")
    new = Symbol(b * s.alpha / s.beta, b)
    step = RewriteStep(Rule.MAIN_ID, BrauerClass(s.cfg, [s]), BrauerClass(s.cfg, [new]), {"x": x})
    return new, step.check()


def apply_easyid(s1: Symbol, s2: Symbol):
    """([alpha, beta), [gamma, delta)) -> ([alpha + gamma, beta), [gamma, delta / beta))."""
    t1 = Symbol(s1.alpha + s2.alpha, s1.beta)
    t2 = Symbol(s2.alpha, s2.beta / s1.beta)
    step = RewriteStep(Rule.EASY_ID, BrauerClass(s1.cfg, [s1, s2]), BrauerClass(s1.cfg, [t1, t2]))
    return t1, t2, step.check()


def certify_split(s: Symbol):
    """A reason string when the symbol is certainly split, otherwise None."""
    if s.alpha.is_zero():
        return "alpha = 0"
    if s.beta.is_one():
        return "beta = 1"
    if s.alpha == s.beta:
        return "alpha = beta"
    if pth_root(s.beta) is not None:
        return "beta is a p-th power"
    if pth_root(s.alpha / s.beta) is not None:
        return "alpha / beta is a p-th power"
    res = as_class(s.alpha)
    if res.trivial:
        return f"alpha is in wp(F) ({res.reason})"
    return None


# -- normalization ----------------------------------------------------------

def _split_beta(s: Symbol):
    """Write beta = c * x^e * P/Q and expand multiplicatively over the monomial part."""
    cfg = s.cfg
    num, den = s.beta.num, s.beta.den
    mn, md = num.min_exponents(), den.min_exponents()
    P = num.div_monomial(mn)
    Q = den.div_monomial(md)
    lc = P.lead()[1]
    P = P.scale(pow(lc, cfg.p - 2, cfg.p))
    rest = FieldElement._raw(cfg, P, Q)
    e = [a - b for a, b in zip(mn, md)]
    out = [Symbol(s.alpha * ei, cfg.monomial({i: 1})) for i, ei in enumerate(e) if ei % cfg.p]
    if not rest.is_one():
        out.append(Symbol(s.alpha, rest))
    return [t for t in out if not t.alpha.is_zero()]


def _single_variable(beta):
    if not (beta.den.is_one() and beta.num.is_monomial()):
        return None
    (e, c), = beta.num.terms.items()
    if c != 1 or sum(e) != 1:
        return None
    return e.index(1)


def _reduce_alpha(s: Symbol):
    """Return (alpha after AS shifts, AS witness, dropped part) for one symbol."""
    cfg = s.cfg
    p = cfg.p
    i = _single_variable(s.beta)
    if i is None or not s.alpha.is_laurent():
        if pth_root(s.alpha / s.beta) is not None:
            return s.alpha, cfg.zero, s.alpha
        return s.alpha, cfg.zero, cfg.zero
    witness = cfg.zero
    dropped = cfg.zero
    shifted = cfg.zero
    for m, c in s.alpha.laurent_terms().items():
        m = list(m)
        while True:
            if all((x - (1 if j == i else 0)) % p == 0 for j, x in enumerate(m)):
                dropped = dropped + cfg.monomial(m, c)
                shifted = shifted + cfg.monomial(m, c)
                break
            if any(m) and all(x % p == 0 for x in m):
                root = [x // p for x in m]
                # c x^m - wp(c x^root) = c x^root
                witness = witness - cfg.monomial(root, c)
                m = root
                continue
            shifted = shifted + cfg.monomial(m, c)
            break
    return shifted, witness, dropped


def normalize(c: BrauerClass, trace: bool = False):
    """Canonical presentation of a formal class under the implemented relations.

    Monomial parts of second slots are expanded multiplicatively, symbols with
    equal second slot are merged, first slots over a single variable x are
    reduced modulo wp and modulo the split terms x*y^p, and split symbols are
    dropped.  With ``trace=True`` returns ``(class, steps)``; every step is
    checked before it is recorded.
    """
    cfg = c.cfg
    steps = []
    cur = list(c.symbols)

    def record(rule, before, after, cert=None):
        st = RewriteStep(rule, BrauerClass(cfg, before), BrauerClass(cfg, after), cert or {})
        steps.append(st.check())

    # 1. multiplicativity on second slots
    expanded = []
    changed = False
    for s in cur:
        if s.alpha.is_zero():
            changed = True
            continue
        parts = _split_beta(s)
        if parts != [s]:
            changed = True
        expanded.extend(parts)
    if changed:
        record(Rule.MULTIPLICATIVITY, cur, expanded)
        cur = expanded

    # 2. additivity: merge equal second slots
    groups = {}
    for s in cur:
        groups.setdefault(s.beta, []).append(s.alpha)
    merged = []
    for beta, alphas in groups.items():
        total = cfg.zero
        for a in alphas:
            total = total + a
        if not total.is_zero():
            merged.append(Symbol(total, beta))
    merged.sort(key=Symbol.sort_key)
    if sorted(cur, key=Symbol.sort_key) != merged:
        record(Rule.ADDITIVITY, cur, merged)
    cur = merged

    # 3. first-slot reduction and split drops
    idx = 0
    while idx < len(cur):
        s = cur[idx]
        shifted, witness, dropped = _reduce_alpha(s)
        if not witness.is_zero():
            new = cur[:idx] + [Symbol(shifted, s.beta)] + cur[idx + 1:]
            record(Rule.AS_SHIFT, cur, new, {"index": idx, "witness": witness})
            cur = new
        if not dropped.is_zero():
            rest = cur[idx].alpha - dropped
            if rest.is_zero():
                new = cur[:idx] + cur[idx + 1:]
            else:
                new = cur[:idx] + [Symbol(rest, s.beta)] + cur[idx + 1:]
                idx += 1
            record(Rule.SPLIT_DROP, cur, new, {"exact": dropped})
            cur = new
        else:
            idx += 1
    # an AS shift can empty a first slot
    kept = [s for s in cur if not s.alpha.is_zero()]
    if len(kept) != len(cur):
        record(Rule.SPLIT_DROP, cur, kept, {"exact": cfg.zero})
        cur = kept
    cur.sort(key=Symbol.sort_key)
    result = BrauerClass(cfg, cur)
    return (result, steps) if trace else result


# -- division oracles and chains -----------------------------------------------

class Classification(enum.Enum):
    DIVISION = "Division"
    SPLIT = "Split"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


class DivisionOracle:
    """Classifies a symbol as Division, Split or Unknown."""

    def classify(self, s: Symbol) -> Classification:
        raise NotImplementedError


class AssumeDivision(DivisionOracle):
    """User-asserted mode: every symbol not certified split is taken to be division."""

    def classify(self, s):
        return Classification.SPLIT if certify_split(s) is not None else Classification.DIVISION


def _chain_pair(A1: Symbol, A2: Symbol):
    x = A2.alpha - A1.beta
    try:
        new1, main = apply_mainid(A1, x)
    except ChainError:
        raise ChainError("beta + x^p = 0: the first symbol has a p-th power second slot") from None
    b = new1.beta
    new2 = Symbol(b, A2.beta)
    shift = RewriteStep(
        Rule.AS_SHIFT,
        BrauerClass(A1.cfg, [A2]),
        BrauerClass(A1.cfg, [new2]),
        {"index": 0, "witness": x},
    ).check()
    return new1.alpha, b, [main, shift]


def chain_pair(A1: Symbol, A2: Symbol, div: DivisionOracle):
    """Rewrite two division symbols as [a, b), [b, delta)."""
    for s in (A1, A2):
        verdict = div.classify(s)
        if verdict is not Classification.DIVISION:
            raise OracleError(f"{s} is not certified division ({verdict})")
    return _chain_pair(A1, A2)


@dataclass
class ChainResult:
    elements: list          # a_0, ..., a_n
    presentation: list      # [a_{i-1}, a_i) for each algebra, in output order
    order: list             # input index of each output algebra
    originals: list         # input symbols in output order
    steps: list             # per output algebra, the rewrite steps taken
    kinds: list             # Classification per output algebra

    def verify(self) -> bool:
        n = len(self.presentation)
        if len(self.elements) != n + 1:
            return False
        for i, s in enumerate(self.presentation):
            if s.alpha != self.elements[i] or s.beta != self.elements[i + 1]:
                return False
        for orig, pres, steps in zip(self.originals, self.presentation, self.steps):
            cur = BrauerClass(orig.cfg, [orig])
            for st in steps:
                if st.before != cur or not st.verify():
                    return False
                cur = st.after
            if cur != BrauerClass(orig.cfg, [pres]):
                return False
        return True

    def __str__(self):
        return ", ".join(str(s) for s in self.presentation)


def chain_list(algs, div: DivisionOracle) -> ChainResult:
    """Present n symbols as [a_0, a_1), [a_1, a_2), ..., [a_{n-1}, a_n).

    Division symbols come first in input order, folded right to left with
    :func:`chain_pair`; split symbols follow with a_i = 1.
    """
    algs = list(algs)
    if not algs:
        raise ValueError("empty symbol list")
    cfg = algs[0].cfg
    kinds = [div.classify(s) for s in algs]
    for s, k in zip(algs, kinds):
        if k is Classification.UNKNOWN:
            raise OracleError(f"cannot classify {s}")
    division = [i for i, k in enumerate(kinds) if k is Classification.DIVISION]
    split = [i for i, k in enumerate(kinds) if k is Classification.SPLIT]
    order = division + split
    originals = [algs[i] for i in order]
    pres = [algs[i] for i in division]
    steps = [[] for _ in order]
    for i in range(len(pres) - 2, -1, -1):
        a, b, (main, shift) = _chain_pair(pres[i], pres[i + 1])
        pres[i] = main.after.symbols[0]
        pres[i + 1] = shift.after.symbols[0]
        steps[i].append(main)
        steps[i + 1].append(shift)
    if pres:
        elements = [pres[0].alpha] + [s.beta for s in pres]
    else:
        elements = [cfg.one]
    for j in range(len(split)):
        orig = originals[len(division) + j]
        new = Symbol(elements[-1], cfg.one)
        elements.append(cfg.one)
        pres.append(new)
        if new != orig:
            st = RewriteStep(
                Rule.SPLIT_DROP,
                BrauerClass(cfg, [orig]),
                BrauerClass(cfg, [new]),
                {"split": certify_split(orig)},
            )
            steps[len(division) + j].append(st.check())
    result = ChainResult(elements, pres, order, originals, steps, [kinds[i] for i in order])
    if not result.verify():
        raise CertificateError("chain presentation failed verification")
    return result


def parse_symbols(text: str, cfg):
    """Parse symbols written as ``[alpha, beta)`` separated by anything outside brackets."""
    out = []
    i = 0
    while True:
        start = text.find("[", i)
        if start < 0:
            break
        depth = 0
        comma = None
        j = start + 1
        while j < len(text):
            ch = text[j]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            elif ch == "," and depth == 0 and comma is None:
                comma = j
            j += 1
        if j >= len(text) or comma is None:
            raise ValueError(f"unterminated symbol starting at position {start}")
        out.append(Symbol(cfg(text[start + 1:comma]), cfg(text[comma + 1:j])))
        i = j + 1
    if not out:
        raise ValueError("no symbols found")
    return out
