"""Seeded generators of random field elements, symbols and forms for the test suites."""

import random

from wittforge.funcfield import FieldConfig
from wittforge.poly import Polynomial
from wittforge.quadform import Block, QuadraticForm
from wittforge.symbolalg import Symbol

F4 = FieldConfig(2, ("d", "c", "b", "a"))
F3 = FieldConfig(2, ("c", "b", "a"))


def rand_poly(cfg, rng, terms=3, deg=2, nonzero=True):
    while True:
        t = {}
        for _ in range(rng.randint(1, terms)):
            e = tuple(rng.randint(0, deg) for _ in range(cfg.nvars))
            t[e] = (t.get(e, 0) + rng.randint(1, cfg.p - 1)) % cfg.p
        poly = Polynomial(cfg.p, cfg.nvars, {e: c for e, c in t.items() if c})
        if not nonzero or not poly.is_zero():
            return poly


def rand_elem(cfg, rng, terms=3, deg=2, frac=0.5):
    num = cfg(rand_poly(cfg, rng, terms, deg))
    if rng.random() < frac:
        return num / cfg(rand_poly(cfg, rng, 2, deg))
    return num


def rand_nonzero(cfg, rng, **kw):
    while True:
        f = rand_elem(cfg, rng, **kw)
        if not f.is_zero():
            return f


def rand_monomial(cfg, rng, lo=-1, hi=2, nonconstant=False):
    while True:
        e = [rng.randint(lo, hi) for _ in range(cfg.nvars)]
        if not nonconstant or any(e):
            return cfg.monomial(e)


def rand_laurent(cfg, rng, terms=2, lo=-1, hi=2):
    f = cfg.zero
    for _ in range(rng.randint(1, terms)):
        f = f + rand_monomial(cfg, rng, lo, hi)
    return f


def rand_symbol(cfg, rng, **kw):
    return Symbol(rand_elem(cfg, rng, **kw), rand_nonzero(cfg, rng, **kw))


def rand_block_form(cfg, rng, blocks=None, quasi=0):
    """Blocks lam[1, alpha] with monomial multipliers and Laurent slots."""
    comps = []
    for _ in range(blocks if blocks is not None else rng.randint(1, 3)):
        comps.append(Block(rand_monomial(cfg, rng), rand_laurent(cfg, rng)))
    from wittforge.quadform import Quasi

    for _ in range(quasi):
        comps.append(Quasi(rand_monomial(cfg, rng)))
    return QuadraticForm.from_components(cfg, comps)


def rand_invertible(cfg, rng, n):
    """Random unipotent-times-permutation matrix over GF(2)[x] (always invertible)."""
    from wittforge.matrix import matmul

    z, o = cfg.zero, cfg.one
    L = [[o if i == j else (rand_monomial(cfg, rng, 0, 1) if i > j and rng.random() < 0.5 else z) for j in range(n)] for i in range(n)]
    U = [[o if i == j else (rand_monomial(cfg, rng, 0, 1) if i < j and rng.random() < 0.5 else z) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[o if perm[i] == j else z for j in range(n)] for i in range(n)]
    return matmul(matmul(tuple(map(tuple, L)), tuple(map(tuple, U))), tuple(map(tuple, P)))


def rng_for(seed):
    return random.Random(seed)
