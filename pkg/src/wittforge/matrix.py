"""Dense matrices over a FieldConfig, as tuples of row tuples."""

from __future__ import annotations

__all__ = ["identity", "zeros", "transpose", "matmul", "fold", "rank", "kernel", "embed", "parse_matrix"]


def zeros(cfg, n, m=None):
    m = n if m is None else m
    z = cfg.zero
    return tuple(tuple(z for _ in range(m)) for _ in range(n))


def identity(cfg, n):
    z, o = cfg.zero, cfg.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matmul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = None
            for a, b in zip(row, col):
                if a.is_zero() or b.is_zero():
                    continue
                t = a * b
                acc = t if acc is None else acc + t
            new.append(acc if acc is not None else row[0].cfg.zero)
        out.append(tuple(new))
    return tuple(out)


def fold(M):
    """Move every below-diagonal entry onto its mirror: q(x) = x^T M x is unchanged."""
    n = len(M)
    out = [list(r) for r in M]
    for i in range(n):
        for j in range(i):
            if not out[i][j].is_zero():
                out[j][i] = out[j][i] + out[i][j]
                out[i][j] = out[i][j] - out[i][j]
    return tuple(tuple(r) for r in out)


def _echelon(A):
    rows = [list(r) for r in A]
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(A):
    if not A:
        return 0
    return len(_echelon(A)[1])


def kernel(A, cfg):
    """Basis of {x : A x = 0}."""
    m = len(A[0])
    rows, pivots = _echelon(A)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [cfg.zero] * m
        v[f] = cfg.one
        for r, c in enumerate(pivots):
            v[c] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def embed(cfg, n, local, coords):
    """n x n identity with the square ``local`` matrix placed on ``coords``."""
    M = [list(r) for r in identity(cfg, n)]
    for a, i in enumerate(coords):
        for b, j in enumerate(coords):
            M[i][j] = local[a][b]
    return tuple(tuple(r) for r in M)


def parse_matrix(rows, cfg):
    """Matrix from nested lists of expression strings (or ints)."""
    return tuple(tuple(cfg(x) if not isinstance(x, int) else cfg.const(x) for x in r) for r in rows)
