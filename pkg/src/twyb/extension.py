"""Abelian extensions ``V = M x X`` of a twisted Yang-Baxter set.

Given maps ``phi1, phi2 : X x X -> M`` the operator on ``V`` is

    S((a, x), (b, y)) = ((b + T^m1 phi1(x, y), R1(x, y)),
                         (a + T^m2 phi2(x, y), R2(x, y))).

The pair ``(a, x)`` is ranked as ``a * |X| + x``.  If ``S`` satisfies the
braid relation, the three M-component identities hold and their sum says
that ``T^m1 phi1 + T^m2 phi2`` is an untwisted-shift 2-cocycle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cochain import (MAX_MATRIX_ENTRIES, Cochain, CoefficientModule,
                      SizeGuardError, TwistParams, cocycle_check,
                      equivariance_witness)
from .yb import TwistedYBSet, YBOperator, verify_ybe


class NonEquivariantMapError(ValueError):
    def __init__(self, name, witness):
        super().__init__(f"{name}(f x, f y) != T {name}(x, y) at {witness}")
        self.witness = witness


@dataclass(frozen=True)
class ExtensionData:
    base: TwistedYBSet
    module: CoefficientModule
    phi1: Cochain
    phi2: Cochain
    m1: int = 0
    m2: int = 0

    def __post_init__(self):
        for name, phi in (("phi1", self.phi1), ("phi2", self.phi2)):
            if phi.degree != 2 or phi.size != self.base.size \
                    or phi.modulus != self.module.modulus:
                raise ValueError(f"{name} must be a degree-2 map on X x X into Z_N")
            w = equivariance_witness(self.base, phi, self.module)
            if w is not None:
                raise NonEquivariantMapError(name, w)

    @property
    def single_map(self):
        return self.phi1 == self.phi2

    def weights(self):
        """``(T^m1 phi1, T^m2 phi2)`` as size x size integer tables."""
        s, M = self.base.size, self.module
        w1 = (M.power(self.m1) * self.phi1.values.reshape(s, s)) % M.modulus
        w2 = (M.power(self.m2) * self.phi2.values.reshape(s, s)) % M.modulus
        return w1, w2


class Extension(NamedTuple):
    op: YBOperator
    is_yb: bool


def build_extension(ext):
    """The operator S on ``M x X`` and whether it satisfies the braid relation."""
    s, N = ext.base.size, ext.module.modulus
    n = N * s
    if n * n * n > MAX_MATRIX_ENTRIES:
        raise SizeGuardError(f"|M||X| = {n} is too large for an exhaustive check")
    w1, w2 = ext.weights()
    r1, r2 = ext.base.op.r1, ext.base.op.r2
    a, x, b, y = np.meshgrid(np.arange(N), np.arange(s), np.arange(N), np.arange(s),
                             indexing="ij")
    first = ((b + w1[x, y]) % N) * s + r1[x, y]
    second = ((a + w2[x, y]) % N) * s + r2[x, y]
    # rows of the result are indexed by the rank of (a, x), columns by (b, y)
    op = YBOperator(first.reshape(n, n), second.reshape(n, n))
    return Extension(op, verify_ybe(op))


class ExtensionCocycle(NamedTuple):
    cochain: Cochain
    is_cocycle: bool
    shifted_claim: bool | None

    def __bool__(self):
        return self.is_cocycle


def extension_cocycle(ext, extension=None):
    """``phi = T^m1 phi1 + T^m2 phi2`` and its cocycle status.

    ``is_cocycle`` checks ``phi`` against the (0, 0) complex.  For a single
    map (``phi1 == phi2``) ``shifted_claim`` additionally reports whether
    ``phi`` lies in the (m1, m2) complex; it is None for distinct maps.
    When S satisfies the braid relation ``is_cocycle`` must hold, and a
    failure raises AssertionError.
    """
    w1, w2 = ext.weights()
    s, M = ext.base.size, ext.module
    phi = Cochain(2, s, M.modulus, (w1 + w2).ravel())
    ok = cocycle_check(ext.base, TwistParams(), phi, M).ok
    claim = None
    if ext.single_map:
        claim = cocycle_check(ext.base, TwistParams(0, ext.m1, ext.m2), phi, M).ok
    extension = extension or build_extension(ext)
    if extension.is_yb and not ok:
        raise AssertionError("S satisfies the braid relation but phi is not a cocycle")
    return ExtensionCocycle(phi, ok, claim)


def componentwise_equations(ext, x, y, z):
    """The c-, b- and a-factor identities at ``(x, y, z)`` as (lhs, rhs) pairs in Z_N."""
    w1, w2 = ext.weights()
    r1, r2 = ext.base.op.r1, ext.base.op.r2
    N = ext.module.modulus
    p, q = r1[x, y], r2[x, y]
    s_, t_ = r1[y, z], r2[y, z]
    c = (w1[q, z] + w1[p, r1[q, z]], w1[y, z] + w1[x, s_])
    b = (w1[x, y] + w2[p, r1[q, z]], w2[y, z] + w1[r2[x, s_], t_])
    a = (w2[x, y] + w2[q, z], w2[x, s_] + w2[r2[x, s_], t_])
    return [(int(lhs) % N, int(rhs) % N) for lhs, rhs in (c, b, a)]


def componentwise_witness(ext):
    """First ``(x, y, z, factor)`` where an identity fails, or None."""
    s = ext.base.size
    for x, y, z in itertools.product(range(s), repeat=3):
        for k, (lhs, rhs) in enumerate(componentwise_equations(ext, x, y, z)):
            if lhs != rhs:
                return x, y, z, "cba"[k]
    return None
