"""Exact linear algebra over Z, Z/p and Z/N.

Integer work uses plain Python ints (no overflow); the prime-field routines
use int64 numpy arrays, which is safe because every entry stays below p.
"""
from __future__ import annotations

import math

import numpy as np


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _to_lists(a):
    return [[int(v) for v in row] for row in np.asarray(a, dtype=object).tolist()] if len(a) else []


class SmithForm:
    """``U @ A @ V == diag(d)`` with unimodular integer ``U`` and ``V``.

    Attributes
    ----------
    d : list[int]
        Nonnegative invariant factors, each dividing the next, one per
        diagonal position (``min(rows, cols)`` of them).
    U, V : list[list[int]]
    """

    def __init__(self, d, U, V, shape):
        self.d = d
        self.U = U
        self.V = V
        self.shape = shape

    @property
    def rank(self):
        return sum(1 for v in self.d if v != 0)


def smith_form(A, rows=None, cols=None):
    """Smith normal form with transforms of an integer matrix.

    ``rows``/``cols`` give the shape when ``A`` has no rows or columns.
    """
    M = _to_lists(A)
    m = len(M) if rows is None else rows
    n = (len(M[0]) if M else 0) if cols is None else cols
    if not M:
        M = [[0] * n for _ in range(m)]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_comb(i, j, a, b, c, d):
        # rows (i, j) <- (a*ri + b*rj, c*ri + d*rj), determinant +-1
        for T in (M, U):
            ri, rj = T[i], T[j]
            T[i] = [a * x + b * y for x, y in zip(ri, rj)]
            T[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def col_comb(i, j, a, b, c, d):
        for T in (M, V):
            for r in T:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = c * x + d * y

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_comb(t, i, 0, 1, 1, 0)
        if j != t:
            col_comb(t, j, 0, 1, 1, 0)
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    a, b = M[t][t], M[i][t]
                    if b % a == 0:
                        q = b // a
                        row_comb(t, i, 1, 0, -q, 1)
                    else:
                        g, s, r = _xgcd(a, b)
                        row_comb(t, i, s, r, -b // g, a // g)
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    a, b = M[t][t], M[t][j]
                    if b % a == 0:
                        q = b // a
                        col_comb(t, j, 1, 0, -q, 1)
                    else:
                        g, s, r = _xgcd(a, b)
                        col_comb(t, j, s, r, -b // g, a // g)
                        done = False
            if not done:
                continue
            p = M[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if M[i][j] % p), None)
            if bad is None:
                break
            row_comb(t, bad[0], 1, 1, 0, 1)
        if M[t][t] < 0:
            U[t] = [-x for x in U[t]]
            M[t] = [-x for x in M[t]]
    d = [M[i][i] for i in range(min(m, n))]
    return SmithForm(d, U, V, (m, n))


def _xgcd(a, b):
    """``g, s, t`` with ``s*a + t*b = g = gcd(a, b)`` (g may be negative)."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def invariant_factors(A, rows=None, cols=None):
    return [v for v in smith_form(A, rows, cols).d if v != 1]


def integer_kernel(A, cols):
    """Basis (as columns of a list-of-lists matrix) of ``{x in Z^cols: A x = 0}``."""
    sf = smith_form(A, cols=cols, rows=len(A))
    r = sf.rank
    return [[sf.V[i][j] for j in range(r, cols)] for i in range(cols)]


def lattice_quotient(big, small, dim):
    """Invariant factors of ``L_big / L_small`` for lattices in ``Z^dim``.

    Both arguments are generator lists (each generator a length-``dim``
    sequence).  ``L_big`` must be full rank and contain ``L_small``.
    Returns the nontrivial invariant factors; a 0 marks a free summand.
    """
    G = [[int(g[i]) for g in big] for i in range(dim)]
    sf = smith_form(G, rows=dim, cols=len(big))
    if sf.rank != dim:
        raise ValueError("ambient lattice is not full rank")
    coords = []
    for v in small:
        w = [sum(sf.U[i][k] * int(v[k]) for k in range(dim)) for i in range(dim)]
        c = []
        for i in range(dim):
            q, rem = divmod(w[i], sf.d[i])
            if rem:
                raise ValueError("sublattice is not contained in the lattice")
            c.append(q)
        coords.append(c)
    C = [[c[i] for c in coords] for i in range(dim)]
    d = smith_form(C, rows=dim, cols=len(coords)).d
    d = d + [0] * (dim - len(d))
    return sorted((v for v in d if v != 1), key=lambda v: (v == 0, v))


def rank_mod_p(A, p):
    return len(_rref_mod_p(A, p)[1])


def _rref_mod_p(A, p):
    M = np.array(A, dtype=np.int64) % p
    if M.ndim != 2 or M.size == 0:
        return M.reshape(M.shape if M.ndim == 2 else (0, 0)), []
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        others = np.flatnonzero(M[:, c])
        others = others[others != r]
        if len(others):
            M[others] = (M[others] - np.outer(M[others, c], M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def nullspace_mod_p(A, p, cols=None):
    """Basis of the right kernel over F_p as rows of an int64 array."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 and A.size else (cols or 0)
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, pivots = _rref_mod_p(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, fc]) % p
    return basis


def kernel_mod_n(A, N, cols):
    """Generators and invariant factors of ``{x in (Z/N)^cols : A x = 0}``.

    Returns ``(gens, orders)``: ``gens[k]`` generates a cyclic summand of
    order ``orders[k]`` (orders equal to 1 are dropped).
    """
    rows = len(A)
    sf = smith_form(A, rows=rows, cols=cols)
    gens, orders = [], []
    for j in range(cols):
        dj = sf.d[j] if j < len(sf.d) else 0
        g = math.gcd(dj, N) if dj else N
        if g == 1:
            continue
        scale = N // g
        gens.append([(sf.V[i][j] * scale) % N for i in range(cols)])
        orders.append(int(g))
    return gens, orders
