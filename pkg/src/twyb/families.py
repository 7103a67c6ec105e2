"""Built-in families of Yang-Baxter operators and a small fixture corpus."""
from __future__ import annotations

import itertools
import math

import numpy as np

from .yb import (QuandleAxiomError, StructureError, YBOperator, classify,
                 make_twisted)


class FiniteGroup:
    """A finite group given by its multiplication table on ``0..order-1``.

    ``labels[i]`` is a printable name for element ``i``.
    """

    def __init__(self, table, labels=None):
        self.table = np.asarray(table, dtype=np.int64)
        n = self.table.shape[0]
        self.order = n
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        ident = [e for e in range(n) if (self.table[e] == np.arange(n)).all()]
        if len(ident) != 1:
            raise StructureError("table has no unique identity")
        self.identity = ident[0]
        self.inv = np.array([int(np.flatnonzero(self.table[g] == self.identity)[0])
                             for g in range(n)])

    def mul(self, a, b):
        return int(self.table[a, b])


def cyclic_group(n):
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(table)


def symmetric_group(k):
    """S_k with permutations in lexicographic order; ``(p*q)(i) = p(q(i))``."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    labels = ["".join(str(v + 1) for v in p) for p in perms]
    return FiniteGroup(table, labels)


def cyclic_biquandle(n, shift=1):
    """``R(x, y) = (y + shift, x - shift)`` on Z_n."""
    return YBOperator.from_function(n, lambda x, y: ((y + shift) % n, (x - shift) % n))


def permutation_operator(sigma, tau):
    """``R(x, y) = (sigma(y), tau(x))``; braid relation iff sigma, tau commute."""
    n = len(sigma)
    return YBOperator.from_function(n, lambda x, y: (sigma[y], tau[x]))


def check_quandle(table):
    q = np.asarray(table, dtype=np.int64)
    n = q.shape[0]
    if q.shape != (n, n) or ((q < 0) | (q >= n)).any():
        raise StructureError("quandle table must be square with entries in range")
    for x in range(n):
        if q[x, x] != x:
            raise QuandleAxiomError("idempotence", (x,))
    for y in range(n):
        if len(set(q[:, y].tolist())) != n:
            raise QuandleAxiomError("right invertibility", (y,))
    for x, y, z in itertools.product(range(n), repeat=3):
        if q[q[x, y], z] != q[q[x, z], q[y, z]]:
            raise QuandleAxiomError("self-distributivity", (x, y, z))
    return q


def from_quandle(mult_table):
    """``R(x, y) = (y, x * y)`` for a quandle operation ``x * y``."""
    q = check_quandle(mult_table)
    n = q.shape[0]
    x, y = np.indices((n, n))
    return YBOperator(y, q)


def dihedral_quandle(n):
    return (2 * np.arange(n)[None, :] - np.arange(n)[:, None]) % n


def trivial_quandle(n):
    return np.tile(np.arange(n)[:, None], (1, n))


def gf4_mul(a, b):
    """Product in GF(4) = {0, 1, w, w + 1} encoded as 2-bit integers."""
    r = 0
    for i in range(2):
        if b >> i & 1:
            r ^= a << i
    return r ^ 0b111 if r & 4 else r


def tetrahedral_quandle():
    """Alexander quandle ``x * y = w x + (1 + w) y`` over GF(4)."""
    w = 2
    return np.array([[gf4_mul(w, x) ^ gf4_mul(w ^ 1, y) for y in range(4)]
                     for x in range(4)])


def gf4_affine(a, b):
    return [gf4_mul(a, x) ^ b for x in range(4)]


def alexander_biquandle(N, alpha, beta):
    """``R(x, y) = ((1-alpha) x + alpha y, beta x + (1-beta) y)`` over Z_N."""
    if math.gcd(alpha, N) != 1 or math.gcd(beta, N) != 1:
        raise ValueError(f"alpha={alpha} and beta={beta} must be units mod {N}")
    if ((1 - alpha) * (1 - beta)) % N != 0:
        raise ValueError(f"(1-alpha)(1-beta) = {(1 - alpha) * (1 - beta)} is not 0 mod {N}")
    return YBOperator.from_function(
        N, lambda x, y: (((1 - alpha) * x + alpha * y) % N,
                         (beta * x + (1 - beta) * y) % N))


def wada(group):
    """First Wada operator ``R(x, y) = (y^-1, y x y)``."""
    g = group
    return YBOperator.from_function(
        g.order, lambda x, y: (int(g.inv[y]), g.mul(g.mul(y, x), y)))


def wada_prime(group):
    """Second Wada operator ``R(x, y) = (x^-1 y^-1 x, y^2 x)``."""
    g = group
    return YBOperator.from_function(
        g.order, lambda x, y: (g.mul(g.mul(int(g.inv[x]), int(g.inv[y])), x),
                               g.mul(g.mul(y, y), x)))


def group_automorphism(group, a):
    """Conjugation ``x -> a x a^-1`` as a permutation."""
    return [group.mul(group.mul(a, x), int(group.inv[a])) for x in range(group.order)]


def affine_map(N, a, b):
    return [(a * x + b) % N for x in range(N)]


def _units(N):
    return [a for a in range(1, N) if math.gcd(a, N) == 1] or [0]


def fixture_corpus(max_size=4):
    """Named twisted biquandles with carriers of size at most ``max_size``.

    Returns a list of ``(name, TwistedYBSet)``.  Twists are chosen among maps
    known to commute with each family (translations, affine units), and only
    pairs that actually commute are kept.
    """
    out = []

    def add(name, op, perm):
        try:
            tw = make_twisted(op, perm)
        except ValueError:
            return
        if classify(tw.op).is_biquandle:
            out.append((name, tw))

    add("point", cyclic_biquandle(1), [0])
    for n in range(2, max_size + 1):
        op = cyclic_biquandle(n)
        for c in range(n):
            add(f"cyclic{n}+f(x)=x+{c}", op, affine_map(n, 1, c))
        if n == 2:
            continue
        op = from_quandle(dihedral_quandle(n))
        for a in _units(n):
            for b in range(n):
                add(f"dihedral{n}+f(x)={a}x+{b}", op, affine_map(n, a, b))
    for N in range(2, max_size + 1):
        for alpha in _units(N):
            for beta in _units(N):
                if ((1 - alpha) * (1 - beta)) % N:
                    continue
                op = alexander_biquandle(N, alpha, beta)
                for a in _units(N):
                    add(f"alexander{N}({alpha},{beta})+f(x)={a}x", op, affine_map(N, a, 0))
    if max_size >= 4:
        op = from_quandle(tetrahedral_quandle())
        for a in (1, 2, 3):
            for b in range(4):
                add(f"tetrahedral+f(x)={a}x+{b}", op, gf4_affine(a, b))
    return out
