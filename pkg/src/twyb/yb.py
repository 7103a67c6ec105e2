"""Finite set-theoretic Yang-Baxter operators, twists and the twisted operator.

Carriers are always ``{0, ..., size-1}``; an operator is a pair of lookup
tables ``r1[x, y]``, ``r2[x, y]``.  Everything here is immutable after
construction.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class StructureError(ValueError):
    """Malformed operator tables (shape, range, or non-invertibility)."""


class QuandleAxiomError(ValueError):
    def __init__(self, axiom, witness):
        super().__init__(f"quandle axiom '{axiom}' fails at {witness}")
        self.axiom = axiom
        self.witness = witness


class EquivarianceError(ValueError):
    """The twist does not commute with the operator."""

    def __init__(self, witness):
        super().__init__(f"(f x f) o R != R o (f x f) at {witness}")
        self.witness = witness


class InternalConsistencyError(RuntimeError):
    pass


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class YBOperator:
    """An invertible map ``R = (R1, R2)`` of ``X x X`` given by tables.

    Parameters
    ----------
    r1, r2 : array-like, (size, size)
        ``R(x, y) = (r1[x][y], r2[x][y])``.

    Raises
    ------
    StructureError
        If the tables are not square, hold out-of-range entries, or do not
        define a bijection of ``X x X``.
    """

    def __init__(self, r1, r2):
        r1 = np.asarray(r1, dtype=np.int64)
        r2 = np.asarray(r2, dtype=np.int64)
        if r1.ndim != 2 or r1.shape[0] != r1.shape[1] or r1.shape != r2.shape:
            raise StructureError(
                f"r1/r2 must be equal square tables, got {r1.shape} and {r2.shape}")
        n = r1.shape[0]
        if n == 0:
            raise StructureError("carrier must be non-empty")
        for name, t in (("r1", r1), ("r2", r2)):
            bad = np.argwhere((t < 0) | (t >= n))
            if len(bad):
                x, y = bad[0]
                raise StructureError(
                    f"{name}[{x}][{y}] = {t[x, y]} is outside 0..{n - 1}")
        flat = (r1 * n + r2).ravel()
        inv = np.full(n * n, -1, dtype=np.int64)
        inv[flat] = np.arange(n * n)
        if (inv < 0).any():
            a, b = divmod(int(np.flatnonzero(inv < 0)[0]), n)
            raise StructureError(f"R is not invertible: ({a}, {b}) has no preimage")
        self.size = n
        self.r1 = _frozen(r1)
        self.r2 = _frozen(r2)
        self.r1inv = _frozen((inv // n).reshape(n, n))
        self.r2inv = _frozen((inv % n).reshape(n, n))

    @classmethod
    def from_function(cls, size, fn):
        r1 = np.empty((size, size), dtype=np.int64)
        r2 = np.empty((size, size), dtype=np.int64)
        for x in range(size):
            for y in range(size):
                r1[x, y], r2[x, y] = fn(x, y)
        return cls(r1, r2)

    def __call__(self, x, y):
        return int(self.r1[x, y]), int(self.r2[x, y])

    def inverse(self, a, b):
        return int(self.r1inv[a, b]), int(self.r2inv[a, b])

    def __eq__(self, other):
        return (isinstance(other, YBOperator)
                and np.array_equal(self.r1, other.r1)
                and np.array_equal(self.r2, other.r2))

    def __hash__(self):
        return hash((self.r1.tobytes(), self.r2.tobytes()))

    def __repr__(self):
        return f"YBOperator(size={self.size})"

    @cached_property
    def fixed_pairs(self):
        """Boolean table, True where ``R(x, y) = (x, y)``."""
        x, y = np.indices((self.size, self.size))
        return (self.r1 == x) & (self.r2 == y)


def _ybe_sides(op):
    n = op.size
    x, y, z = np.indices((n, n, n))
    r1, r2 = op.r1, op.r2
    # (R x id)(id x R)(R x id), rightmost factor first
    a, b, c = r1[x, y], r2[x, y], z
    b, c = r1[b, c], r2[b, c]
    a, b = r1[a, b], r2[a, b]
    left = (a, b, c)
    a, b, c = x, r1[y, z], r2[y, z]
    a, b = r1[a, b], r2[a, b]
    b, c = r1[b, c], r2[b, c]
    return left, (a, b, c)


def ybe_witness(op):
    """First triple ``(x, y, z)`` where the braid relation fails, or None."""
    left, right = _ybe_sides(op)
    bad = np.zeros(left[0].shape, dtype=bool)
    for p, q in zip(left, right):
        bad |= p != q
    if not bad.any():
        return None
    return tuple(int(v) for v in np.argwhere(bad)[0])


def verify_ybe(op):
    """True iff ``(R x id)(id x R)(R x id) = (id x R)(R x id)(id x R)`` on X^3."""
    return ybe_witness(op) is None


def component_equations_hold(op):
    """Check the three coordinate identities of the braid relation one triple
    at a time.  Deliberately written as a plain loop so it can serve as an
    independent cross-check of :func:`verify_ybe`."""
    R1 = lambda a, b: int(op.r1[a, b])  # noqa: E731
    R2 = lambda a, b: int(op.r2[a, b])  # noqa: E731
    n = op.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if R1(R1(a, b), R1(R2(a, b), c)) != R1(a, R1(b, c)):
                    return False
                if R2(R1(a, b), R1(R2(a, b), c)) != R1(R2(a, R1(b, c)), R2(b, c)):
                    return False
                if R2(R2(a, b), c) != R2(R2(a, R1(b, c)), R2(b, c)):
                    return False
    return True


class Structure(enum.IntEnum):
    NONE = 0
    YB_SET = 1
    BIRACK = 2
    BIQUANDLE = 3


@dataclass(frozen=True)
class StructureClass:
    kind: Structure
    twisted: bool = False

    @property
    def is_birack(self):
        return self.kind >= Structure.BIRACK

    @property
    def is_biquandle(self):
        return self.kind >= Structure.BIQUANDLE

    def __str__(self):
        name = self.kind.name.replace("_", "-").lower()
        return f"twisted {name}" if self.twisted else name


def _is_permutation_rows(table):
    n = table.shape[1]
    return all(len(set(row.tolist())) == n for row in table)


def is_birack(op):
    # R1(x, .) bijective for each x; R2(., y) bijective for each y
    return _is_permutation_rows(op.r1) and _is_permutation_rows(op.r2.T)


def type_one_holds(op):
    """Type I condition, checked in both orientations.

    Raises InternalConsistencyError if the two orientations disagree, since
    for biracks they are supposed to be equivalent.
    """
    fixed = op.fixed_pairs
    # column a of `fixed` lists the x with R(x, a) = (x, a)
    left = bool((fixed.sum(axis=0) == 1).all())
    right = bool((fixed.sum(axis=1) == 1).all())
    if left != right and is_birack(op):
        raise InternalConsistencyError(
            "type I condition holds in one orientation only")
    return left and right


def classify(op, twisted=False):
    if not verify_ybe(op):
        return StructureClass(Structure.NONE, twisted)
    if not is_birack(op):
        return StructureClass(Structure.YB_SET, twisted)
    if not type_one_holds(op):
        return StructureClass(Structure.BIRACK, twisted)
    return StructureClass(Structure.BIQUANDLE, twisted)


class Twist:
    """A permutation ``f`` of the carrier with cached powers."""

    def __init__(self, perm):
        perm = np.asarray(perm, dtype=np.int64)
        n = len(perm)
        if perm.ndim != 1 or sorted(perm.tolist()) != list(range(n)):
            raise StructureError(f"twist {perm.tolist()} is not a permutation")
        self.perm = _frozen(perm)
        self.size = n
        inv = np.empty(n, dtype=np.int64)
        inv[perm] = np.arange(n)
        self._inv = _frozen(inv)
        self._powers = {0: _frozen(np.arange(n)), 1: self.perm, -1: self._inv}

    @classmethod
    def identity(cls, size):
        return cls(np.arange(size))

    @cached_property
    def order(self):
        order = 1
        seen = np.zeros(self.size, dtype=bool)
        for start in range(self.size):
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.perm[x]
                length += 1
            if length:
                order = order * length // math.gcd(order, length)
        return order

    def power(self, k):
        """``f^k`` as an index array (negative k allowed)."""
        k = k % self.order
        if k not in self._powers:
            p = np.arange(self.size)
            for _ in range(k):
                p = self.perm[p]
            self._powers[k] = _frozen(p)
        return self._powers[k]

    def __call__(self, x):
        return int(self.perm[x])

    def __eq__(self, other):
        return isinstance(other, Twist) and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    def __repr__(self):
        return f"Twist({self.perm.tolist()})"


def equivariance_witness(op, perm):
    f = np.asarray(perm)
    x, y = np.indices((op.size, op.size))
    bad = (f[op.r1] != op.r1[f[x], f[y]]) | (f[op.r2] != op.r2[f[x], f[y]])
    if bad.any():
        return tuple(int(v) for v in np.argwhere(bad)[0])
    return None


@dataclass(frozen=True, eq=False)
class TwistedYBSet:
    """A Yang-Baxter operator together with an automorphism ``f``.

    Use :func:`make_twisted` to build one; the constructor validates that
    ``f`` commutes with ``R``.
    """
    op: YBOperator
    twist: Twist

    def __post_init__(self):
        if self.twist.size != self.op.size:
            raise StructureError("twist and operator have different carriers")
        w = equivariance_witness(self.op, self.twist.perm)
        if w is not None:
            raise EquivarianceError(w)
        self._check_derived_squares()

    def _check_derived_squares(self):
        # commuting squares for f^-1 with R, and f^{+-1} with R-bar
        op = self.op
        inv = YBOperator(op.r1inv, op.r2inv)
        for table_op, perm in ((op, self.twist.power(-1)),
                               (inv, self.twist.perm),
                               (inv, self.twist.power(-1))):
            if equivariance_witness(table_op, perm) is not None:
                raise InternalConsistencyError(
                    "derived commuting square fails although f commutes with R")

    @property
    def size(self):
        return self.op.size

    @property
    def f(self):
        return self.twist

    def __eq__(self, other):
        return (isinstance(other, TwistedYBSet) and self.op == other.op
                and self.twist == other.twist)

    def __hash__(self):
        return hash((self.op, self.twist))

    def __repr__(self):
        return f"TwistedYBSet(size={self.size}, f={self.twist.perm.tolist()})"


def make_twisted(op, f=None):
    """Pair ``op`` with the twist ``f`` (a Twist, a permutation, or None for
    the identity).  Raises EquivarianceError with a witness pair if ``f`` does
    not commute with ``R``, and StructureError if ``op`` fails the braid
    relation."""
    if not verify_ybe(op):
        raise StructureError(f"operator fails the braid relation at {ybe_witness(op)}")
    if f is None:
        f = Twist.identity(op.size)
    elif not isinstance(f, Twist):
        f = Twist(f)
    return TwistedYBSet(op, f)


def twisted_operator(tw, t=1):
    """The deformed operator ``(x, y) -> (R1(x, f^t y), R2(f^-t x, y))``."""
    n = tw.size
    ft = tw.twist.power(t)
    fmt = tw.twist.power(-t)
    x, y = np.indices((n, n))
    return YBOperator(tw.op.r1[x, ft[y]], tw.op.r2[fmt[x], y])


def twisted_inverse_tables(tw, t=1):
    """Closed-form inverse of the deformed operator,
    ``(a, b) -> (R1bar(a, f^t b), R2bar(f^-t a, b))``."""
    n = tw.size
    ft = tw.twist.power(t)
    fmt = tw.twist.power(-t)
    a, b = np.indices((n, n))
    return tw.op.r1inv[a, ft[b]], tw.op.r2inv[fmt[a], b]


def twisted_set(tw, t=1):
    """The twisted triple built on the deformed operator (same ``f``)."""
    return TwistedYBSet(twisted_operator(tw, t), tw.twist)


def is_homomorphism(src, dst, phi):
    """True iff ``phi`` intertwines both the operators and the twists."""
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (src.size,) or (phi < 0).any() or (phi >= dst.size).any():
        return False
    x, y = np.indices((src.size, src.size))
    r_ok = (np.array_equal(phi[src.op.r1], dst.op.r1[phi[x], phi[y]])
            and np.array_equal(phi[src.op.r2], dst.op.r2[phi[x], phi[y]]))
    f_ok = np.array_equal(phi[src.twist.perm], dst.twist.perm[phi])
    return bool(r_ok and f_ok)
