"""Twisted Yang-Baxter chain and cochain complexes with Z_N coefficients.

Tuples in X^n are indexed by lexicographic rank, ``x_1`` most significant.

Face maps
---------
``face_left(i)`` slides strand ``i`` leftwards across strands ``i-1, ..., 1``.
At a crossing with the stationary strand ``s`` on the left, the pair
``(s, moving)`` goes through the crossing operator ``Q``; the moving strand
continues as ``Q1(s, moving)`` and the stationary one keeps ``Q2(s, moving)``.
``face_right(i)`` slides strand ``i`` rightwards; the pair is ``(moving, s)``,
the stationary strand keeps ``Q1`` and the moving one continues as ``Q2``.
The moving strand is then deleted.  ``Q`` is the deformed operator of
exponent ``t`` (plain ``R`` when ``t = 0``).

The twist exponents enter in one of two ways:

* COORDINATE: the left face applies ``f^m1`` and the right face ``f^m2`` to
  every surviving coordinate.  On ``Z[T, T^-1]``-linear cochains this is the
  same as multiplying by ``u^m1`` / ``u^m2``.
* SCALAR: coordinates are untouched and the right face carries the scalar
  ``T^m`` (``m = m2``; ``m1`` must be 0).

The boundary is ``sum_i (-1)^i (face_left(i) - face_right(i))`` and ``C_0 = 0``.
"""
from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .yb import classify, twisted_operator

MAX_MATRIX_ENTRIES = 20_000_000


class SizeGuardError(ValueError):
    pass


class NonPrimeModulusError(ValueError):
    pass


class Variant(enum.Enum):
    TYB = "tyb"
    TBQ = "tbq"
    TD = "td"


class TwistMode(enum.Enum):
    COORDINATE = "coord"
    SCALAR = "scalar"


@dataclass(frozen=True)
class CoefficientModule:
    """``Z_N`` with ``T`` acting as multiplication by the unit ``u``."""
    modulus: int
    unit: int = 1

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if math.gcd(self.unit, self.modulus) != 1:
            raise ValueError(f"u={self.unit} is not a unit mod {self.modulus}")
        object.__setattr__(self, "unit", self.unit % self.modulus)

    @property
    def t_order(self):
        if self.modulus == 1:
            return 1
        k, v = 1, self.unit
        while v != 1:
            v = v * self.unit % self.modulus
            k += 1
        return k

    def power(self, k):
        """``u^k mod N`` for any integer k."""
        if self.modulus == 1:
            return 0
        return pow(self.unit, k, self.modulus)

    def act(self, m, k=1):
        return self.power(k) * m % self.modulus

    @property
    def is_prime(self):
        return linalg.is_prime(self.modulus)

    def __str__(self):
        return f"Z_{self.modulus}(T={self.unit})"


@dataclass(frozen=True)
class TwistParams:
    t: int = 0
    m1: int = 0
    m2: int = 0
    variant: Variant = Variant.TYB
    mode: TwistMode = TwistMode.COORDINATE

    def __post_init__(self):
        if self.mode is TwistMode.SCALAR and self.m1 != 0:
            raise ValueError("scalar-twist mode uses m1 = 0 and m = m2")

    @property
    def m(self):
        return self.m2

    def exponents(self, lifted=True):
        """Scalar exponents carried by (left, right) faces."""
        if self.mode is TwistMode.SCALAR:
            return 0, self.m2
        if lifted:
            return self.m1, self.m2
        return 0, 0


# --------------------------------------------------------------------------
# tuple indexing

def all_tuples(size, n):
    """Coordinates of every tuple in X^n as a list of n index arrays."""
    if n == 0:
        return []
    return [a.ravel() for a in np.indices((size,) * n)]


def tuple_rank(coords, size):
    idx = np.zeros_like(coords[0]) if len(coords) else np.zeros(1, dtype=np.int64)
    for c in coords:
        idx = idx * size + c
    return idx


def unrank(index, size, n):
    out = []
    for _ in range(n):
        index, r = divmod(index, size)
        out.append(r)
    return tuple(reversed(out))


# --------------------------------------------------------------------------
# face maps

def _slide(coords, i, q1, q2, left):
    """Generic face: works on ints, numpy arrays, or symbolic strings."""
    n = len(coords)
    moving = coords[i - 1]
    out = list(coords[:i - 1]) + list(coords[i:])
    if left:
        for j in range(i - 2, -1, -1):
            s = coords[j]
            moving, out[j] = q1(s, moving), q2(s, moving)
    else:
        for j in range(i, n):
            s = coords[j]
            out[j - 1], moving = q1(moving, s), q2(moving, s)
    return out


def crossing_operator(tw, params):
    if params.t == 0:
        return tw.op
    return twisted_operator(tw, params.t)


def _table_ops(op):
    return (lambda a, b: op.r1[a, b]), (lambda a, b: op.r2[a, b])


def _check_index(i, n):
    if not 1 <= i <= n:
        raise IndexError(f"face index {i} outside 1..{n}")


def face_left(tw, params, i, x):
    x = tuple(int(v) for v in x)
    _check_index(i, len(x))
    q1, q2 = _table_ops(crossing_operator(tw, params))
    out = _slide(x, i, q1, q2, left=True)
    if params.mode is TwistMode.COORDINATE and params.m1:
        f = tw.twist.power(params.m1)
        out = [f[v] for v in out]
    return tuple(int(v) for v in out)


def face_right(tw, params, i, x):
    x = tuple(int(v) for v in x)
    _check_index(i, len(x))
    q1, q2 = _table_ops(crossing_operator(tw, params))
    out = _slide(x, i, q1, q2, left=False)
    if params.mode is TwistMode.COORDINATE and params.m2:
        f = tw.twist.power(params.m2)
        out = [f[v] for v in out]
    return tuple(int(v) for v in out)


# --------------------------------------------------------------------------
# formal chains

class FormalChain:
    """Element of the free Z[T, T^-1]-module on tuples.

    ``terms`` maps ``(tuple, t_exponent)`` to an integer coefficient.  Like
    terms are merged and zero coefficients dropped.
    """

    def __init__(self, degree, terms=None):
        self.degree = degree
        self.terms = {}
        for (tup, e), c in (terms or {}).items():
            self.add(tup, c, e)

    def add(self, tup, coeff=1, exponent=0):
        key = (tuple(int(v) for v in tup), int(exponent))
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __iadd__(self, other):
        for (tup, e), c in other.terms.items():
            self.add(tup, c, e)
        return self

    def __add__(self, other):
        out = FormalChain(self.degree, self.terms)
        out += other
        return out

    def __neg__(self):
        return FormalChain(self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, FormalChain) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __iter__(self):
        for (tup, e), c in sorted(self.terms.items()):
            yield tup, c, e

    def __len__(self):
        return len(self.terms)

    def evaluate(self, cochain, module):
        """``sum c * u^e * cochain(tuple)`` in Z_N."""
        N = module.modulus
        total = 0
        for tup, c, e in self:
            total += c * module.power(e) * int(cochain(*tup))
        return total % N

    def __repr__(self):
        parts = [f"{c:+d}*T^{e}{tup}" if e else f"{c:+d}*{tup}" for tup, c, e in self]
        return f"FormalChain({' '.join(parts) or '0'})"


def boundary(tw, params, x, lifted=False):
    """The boundary of a single tuple as a FormalChain of degree ``n - 1``.

    In COORDINATE mode the twist is applied to coordinates unless ``lifted``
    is set, in which case it is carried as a T-exponent instead.
    """
    x = tuple(int(v) for v in x)
    n = len(x)
    out = FormalChain(n - 1)
    if n < 2:
        return out
    q1, q2 = _table_ops(crossing_operator(tw, params))
    el, er = params.exponents(lifted)
    coord = params.mode is TwistMode.COORDINATE and not lifted
    fl = tw.twist.power(params.m1) if coord else None
    fr = tw.twist.power(params.m2) if coord else None
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        lft = _slide(x, i, q1, q2, True)
        rgt = _slide(x, i, q1, q2, False)
        if coord:
            lft = [fl[v] for v in lft]
            rgt = [fr[v] for v in rgt]
        out.add(lft, sign, el)
        out.add(rgt, -sign, er)
    return out


def boundary_of_chain(tw, params, chain, lifted=False):
    """Linear extension of :func:`boundary`; T-exponents add up."""
    out = FormalChain(chain.degree - 1)
    for tup, c, e in chain:
        for tup2, c2, e2 in boundary(tw, params, tup, lifted):
            out.add(tup2, c * c2, e + e2)
    return out


def symbolic_boundary(n, params=None, names=("x", "R1", "R2", "f")):
    """Boundary of ``(x1, ..., xn)`` with symbolic entries.

    Returns a sorted list of ``(sign, t_exponent, args)`` where ``args`` is a
    tuple of expression strings such as ``"R1(x1,x2)"``.  With the default
    (lifted) form the twist shows up as a T-exponent.
    """
    params = params or TwistParams()
    var, n1, n2, _ = names
    q1 = lambda a, b: f"{n1}({a},{b})"  # noqa: E731
    q2 = lambda a, b: f"{n2}({a},{b})"  # noqa: E731
    x = [f"{var}{k}" for k in range(1, n + 1)]
    el, er = params.exponents(lifted=True)
    terms = defaultdict(int)
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        terms[(el, tuple(_slide(x, i, q1, q2, True)))] += sign
        terms[(er, tuple(_slide(x, i, q1, q2, False)))] -= sign
    return sorted((c, e, args) for (e, args), c in terms.items() if c)


def symbolic_boundary_coordinates(n, m1, m2, names=("x", "R1", "R2", "f")):
    """Set-level boundary with ``f^m`` applied to coordinates, symbolically.

    Each term is ``(sign, args)`` and the twist appears as ``f^k(...)``
    wrapped around every coordinate.
    """
    var, n1, n2, fname = names
    q1 = lambda a, b: f"{n1}({a},{b})"  # noqa: E731
    q2 = lambda a, b: f"{n2}({a},{b})"  # noqa: E731
    wrap = lambda k, a: a if k == 0 else f"{fname}^{k}({a})"  # noqa: E731
    x = [f"{var}{k}" for k in range(1, n + 1)]
    terms = defaultdict(int)
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        terms[tuple(wrap(m1, a) for a in _slide(x, i, q1, q2, True))] += sign
        terms[tuple(wrap(m2, a) for a in _slide(x, i, q1, q2, False))] -= sign
    return sorted((c, args) for args, c in terms.items() if c)


# --------------------------------------------------------------------------
# vectorized matrices

def _guard(rows, cols):
    if rows * cols > MAX_MATRIX_ENTRIES:
        raise SizeGuardError(
            f"{rows} x {cols} matrix exceeds the size guard ({MAX_MATRIX_ENTRIES} entries)")


def face_images(tw, params, n, lifted=False):
    """Ranks of all face images of all n-tuples.

    Returns a list of ``(sign, exponent, target_ranks)`` with one entry per
    (face index, side); ``target_ranks[k]`` is the image of tuple ``k``.
    """
    size = tw.size
    op = crossing_operator(tw, params)
    q1, q2 = _table_ops(op)
    coords = all_tuples(size, n)
    el, er = params.exponents(lifted)
    coord = params.mode is TwistMode.COORDINATE and not lifted
    out = []
    for i in range(1, n + 1):
        sign = -1 if i % 2 else 1
        for left, e, m in ((True, el, params.m1), (False, er, params.m2)):
            img = _slide(coords, i, q1, q2, left)
            if coord and m:
                f = tw.twist.power(m)
                img = [f[v] for v in img]
            ranks = tuple_rank(img, size) if n > 1 else np.zeros(size ** n, dtype=np.int64)
            out.append((sign if left else -sign, e, ranks))
    return out


def degenerate_mask(tw, params, n):
    """True for tuples with a consecutive pair fixed by the crossing operator."""
    size = tw.size
    fixed = crossing_operator(tw, params).fixed_pairs
    coords = all_tuples(size, n)
    mask = np.zeros(size ** n, dtype=bool)
    for k in range(n - 1):
        mask |= fixed[coords[k], coords[k + 1]]
    return mask


def _basis(tw, params, n, variant=None):
    """Sorted tuple ranks spanning the chain group of the given variant."""
    variant = variant or params.variant
    total = tw.size ** n
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    if variant is Variant.TYB:
        return np.arange(total)
    mask = degenerate_mask(tw, params, n)
    if variant is Variant.TD:
        return np.flatnonzero(mask)
    return np.flatnonzero(~mask)


def _require_biquandle(tw, params, variant):
    if variant is not Variant.TYB:
        op = crossing_operator(tw, params)
        if not classify(op).is_biquandle:
            raise ValueError("degenerate/quotient complexes need a biquandle")


def boundary_matrices(tw, params, n, lifted=False, variant=None):
    """``{exponent: integer matrix}`` of the boundary ``C_n -> C_{n-1}``.

    Rows/columns are the basis tuples of the variant in lexicographic order.
    In the quotient (TBQ) complex, terms landing on degenerate tuples vanish.
    """
    variant = variant or params.variant
    _require_biquandle(tw, params, variant)
    cols = _basis(tw, params, n, variant)
    rows = _basis(tw, params, n - 1, variant)
    _guard(len(rows), len(cols))
    out = {}
    if n < 2:
        return {0: np.zeros((0, len(cols)), dtype=np.int64)}
    pos = np.full(tw.size ** (n - 1), -1, dtype=np.int64)
    pos[rows] = np.arange(len(rows))
    colpos = np.arange(len(cols))
    for sign, e, ranks in face_images(tw, params, n, lifted):
        tgt = pos[ranks[cols]]
        keep = tgt >= 0
        mat = out.setdefault(e, np.zeros((len(rows), len(cols)), dtype=np.int64))
        np.add.at(mat, (tgt[keep], colpos[keep]), sign)
    return out


def boundary_squared_is_zero(tw, params, n, lifted=False, variant=None):
    """Formal check that ``d_{n-1} d_n = 0`` coefficient-wise in Z[T, T^-1]."""
    if n < 3:
        return True
    outer = boundary_matrices(tw, params, n - 1, lifted, variant)
    inner = boundary_matrices(tw, params, n, lifted, variant)
    prod = defaultdict(lambda: 0)
    for e1, a in outer.items():
        for e2, b in inner.items():
            prod[e1 + e2] = prod[e1 + e2] + a @ b
    return all(not np.any(m) for m in prod.values())


def degenerate_subcomplex_witness(tw, params, n):
    """A degenerate n-tuple whose boundary leaves the degenerate span, or None.

    Only the nonvanishing (merged) coefficients count.
    """
    if n < 2:
        return None
    mats = boundary_matrices(tw, params, n, lifted=True, variant=Variant.TYB)
    deg_cols = degenerate_mask(tw, params, n)
    nondeg_rows = ~degenerate_mask(tw, params, n - 1)
    for m in mats.values():
        bad = m[np.ix_(nondeg_rows, deg_cols)]
        if bad.any():
            col = np.flatnonzero(deg_cols)[np.argwhere(bad)[0][1]]
            return unrank(int(col), tw.size, n)
    return None


def coboundary_matrix(tw, params, n, module, variant=None):
    """Matrix of ``delta^n : C^n -> C^{n+1}`` over Z_N in tuple bases.

    A boundary term ``(w, s, e)`` contributes ``s * u^e``.  The COORDINATE
    twist is carried as ``u^m`` (the lifted form), which is exactly the
    coboundary on T-equivariant cochains.  For TBQ, rows and columns run over
    non-degenerate tuples only.
    """
    mats = boundary_matrices(tw, params, n + 1, lifted=True, variant=variant)
    N = module.modulus
    shape = next(iter(mats.values())).shape
    total = np.zeros(shape, dtype=np.int64)
    for e, m in mats.items():
        total = (total + module.power(e) * (m % N)) % N
    return total.T.copy()


# --------------------------------------------------------------------------
# cochains

@dataclass(frozen=True, eq=False)
class Cochain:
    """A map ``X^n -> Z_N`` stored densely by tuple rank."""
    degree: int
    size: int
    modulus: int
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64) % self.modulus
        if v.shape != (self.size ** self.degree,):
            raise ValueError(
                f"degree-{self.degree} cochain on {self.size} points needs "
                f"{self.size ** self.degree} values, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def zero(cls, size, degree, modulus):
        return cls(degree, size, modulus, np.zeros(size ** degree, dtype=np.int64))

    @classmethod
    def from_function(cls, size, degree, modulus, fn):
        coords = all_tuples(size, degree)
        vals = [fn(*(int(c[k]) for c in coords)) for k in range(size ** degree)]
        return cls(degree, size, modulus, np.array(vals, dtype=np.int64))

    def __call__(self, *x):
        r = 0
        for v in x:
            r = r * self.size + int(v)
        return int(self.values[r])

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.modulus == other.modulus
                and np.array_equal(self.values, other.values))

    def __add__(self, other):
        return Cochain(self.degree, self.size, self.modulus, self.values + other.values)

    def scale(self, k):
        return Cochain(self.degree, self.size, self.modulus, self.values * k)

    def items(self):
        for r, v in enumerate(self.values):
            yield unrank(r, self.size, self.degree), int(v)


def equivariance_witness(tw, c, module):
    """A tuple ``w`` with ``c(f w) != u c(w)``, or None."""
    coords = all_tuples(tw.size, c.degree)
    f = tw.twist.perm
    img = tuple_rank([f[v] for v in coords], tw.size)
    bad = c.values[img] != (module.unit * c.values) % module.modulus
    if bad.any():
        return unrank(int(np.flatnonzero(bad)[0]), tw.size, c.degree)
    return None


def coboundary(tw, params, eta, module):
    """``delta(eta)`` as a cochain of degree ``n + 1`` (lifted form)."""
    if params.mode is TwistMode.COORDINATE and equivariance_witness(tw, eta, module):
        raise ValueError("COORDINATE-mode cochains must satisfy c(f w) = u c(w)")
    mat = coboundary_matrix(tw, params, eta.degree, module, Variant.TYB)
    vals = (mat @ eta.values) % module.modulus
    return Cochain(eta.degree + 1, tw.size, module.modulus, vals)


class CocycleCheck(NamedTuple):
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def cocycle_check(tw, params, c, module):
    """Decide whether ``c`` is a cocycle of the complex described by params.

    TBQ cochains must vanish on degenerate tuples; COORDINATE-mode cochains
    must be T-equivariant.  On failure the witness is the offending tuple.
    """
    if c.size != tw.size or c.modulus != module.modulus:
        raise ValueError("cochain carrier or modulus does not match")
    n = c.degree
    if params.variant is Variant.TBQ:
        _require_biquandle(tw, params, Variant.TBQ)
        deg = degenerate_mask(tw, params, n)
        nz = np.flatnonzero(deg & (c.values != 0))
        if len(nz):
            return CocycleCheck(False, unrank(int(nz[0]), tw.size, n),
                                "nonzero on a degenerate tuple")
    if params.mode is TwistMode.COORDINATE:
        w = equivariance_witness(tw, c, module)
        if w is not None:
            return CocycleCheck(False, w, "not T-equivariant")
    mat = coboundary_matrix(tw, params, n, module, Variant.TYB)
    d = (mat @ c.values) % module.modulus
    nz = np.flatnonzero(d)
    if len(nz):
        return CocycleCheck(False, unrank(int(nz[0]), tw.size, n + 1),
                            "coboundary is nonzero")
    return CocycleCheck(True)


# --------------------------------------------------------------------------
# (co)homology

class _Coordinates:
    """Orbit coordinates for one degree.

    COORDINATE mode: one coordinate per f-orbit of basis tuples; a cochain is
    determined by its values on orbit representatives, constrained by
    ``(u^L - 1) a = 0`` for an orbit of length L.  SCALAR mode: one
    coordinate per tuple, no constraint.
    """

    def __init__(self, tw, params, n, module, variant):
        self.basis = _basis(tw, params, n, variant)
        N = module.modulus
        total = tw.size ** n if n > 0 else 0
        pos = np.full(total, -1, dtype=np.int64)
        pos[self.basis] = np.arange(len(self.basis))
        if params.mode is TwistMode.SCALAR or n <= 0:
            self.reps = self.basis
            self.ann = np.zeros(len(self.basis), dtype=np.int64)
            self.P = np.eye(len(self.basis), dtype=np.int64)
            return
        f = tw.twist.perm
        coords = all_tuples(tw.size, n)
        fmap = tuple_rank([f[v] for v in coords], tw.size)
        orbit = np.full(total, -1, dtype=np.int64)
        expo = np.zeros(total, dtype=np.int64)
        reps, ann = [], []
        for r in self.basis:
            if orbit[r] >= 0:
                continue
            k, w = 0, r
            while orbit[w] < 0:
                orbit[w] = len(reps)
                expo[w] = k
                w = fmap[w]
                k += 1
            reps.append(r)
            ann.append((module.power(k) - 1) % N)
        self.reps = np.array(reps, dtype=np.int64)
        self.ann = np.array(ann, dtype=np.int64)
        P = np.zeros((len(self.basis), len(reps)), dtype=np.int64)
        for j, r in enumerate(self.basis):
            P[j, orbit[r]] = module.power(int(expo[r]))
        self.P = P
        self._pos = pos

    def __len__(self):
        return len(self.reps)

    def expand(self, a, module):
        """Dense tuple-indexed values of the cochain with coordinates ``a``."""
        return (self.P @ np.asarray(a, dtype=np.int64)) % module.modulus

    def rep_rows(self):
        """Row positions (within the basis) of the orbit representatives."""
        return np.searchsorted(self.basis, self.reps)


def _rep_coboundary(tw, params, n, module, variant, lo, hi):
    """delta^n in orbit coordinates: rows = degree n+1 orbits, cols = degree n."""
    if len(lo) == 0 or len(hi) == 0:
        return np.zeros((len(hi), len(lo)), dtype=np.int64)
    full = coboundary_matrix(tw, params, n, module, variant)
    N = module.modulus
    return (full[hi.rep_rows()] @ lo.P) % N


@dataclass
class CohomologyResult:
    """Structure of cocycles/cycles, coboundaries/boundaries and their quotient.

    ``*_orders`` list invariant factors (cyclic summand orders, 1s dropped);
    ``basis`` generates the (co)cycle group.
    """
    kind: str
    degree: int
    module: CoefficientModule
    params: TwistParams
    variant: Variant
    cycle_orders: list
    boundary_orders: list
    homology_orders: list
    basis: list

    def _dim(self, orders):
        if not self.module.is_prime:
            raise NonPrimeModulusError(
                f"dimensions need a prime modulus; N={self.module.modulus} "
                "-- use the *_orders invariant factors instead")
        return len(orders)

    @property
    def dim_cocycles(self):
        return self._dim(self.cycle_orders)

    @property
    def dim_coboundaries(self):
        return self._dim(self.boundary_orders)

    @property
    def betti(self):
        return self._dim(self.homology_orders)

    @property
    def order(self):
        return math.prod(self.homology_orders)

    @property
    def cocycle_group_order(self):
        return math.prod(self.cycle_orders)


def _lift_unit_vectors(k, scale):
    return [[int(scale[i]) if j == i else 0 for j in range(k)] for i in range(k)]


def cohomology(tw, params, n, module, variant=None):
    """Cocycles, coboundaries and cohomology in degree ``n``."""
    variant = variant or params.variant
    _require_biquandle(tw, params, variant)
    N = module.modulus
    lo = _Coordinates(tw, params, n - 1, module, variant)
    mid = _Coordinates(tw, params, n, module, variant)
    hi = _Coordinates(tw, params, n + 1, module, variant)
    D_in = _rep_coboundary(tw, params, n - 1, module, variant, lo, mid) if n >= 2 else \
        np.zeros((len(mid), 0), dtype=np.int64)
    D_out = _rep_coboundary(tw, params, n, module, variant, mid, hi)
    k = len(mid)
    if module.is_prime:
        allowed = np.flatnonzero(mid.ann % N == 0)
        lo_allowed = np.flatnonzero(lo.ann % N == 0) if len(lo) else np.zeros(0, dtype=np.int64)
        ker = linalg.nullspace_mod_p(D_out[:, allowed], N, cols=len(allowed))
        basis = []
        for row in ker:
            a = np.zeros(k, dtype=np.int64)
            a[allowed] = row
            basis.append(Cochain(n, tw.size, N, _dense(mid, a, module, tw, n)))
        rb = linalg.rank_mod_p(D_in[:, lo_allowed], N) if D_in.size and len(lo_allowed) else 0
        zdim = len(ker)
        return CohomologyResult("cohomology", n, module, params, variant,
                                [N] * zdim, [N] * rb, [N] * (zdim - rb), basis)
    stacked = np.vstack([D_out, np.diag(mid.ann)]) if k else np.zeros((0, 0), dtype=np.int64)
    gens, _ = linalg.kernel_mod_n(stacked.tolist(), N, k) if k else ([], [])
    basis = [Cochain(n, tw.size, N, _dense(mid, g, module, tw, n)) for g in gens]
    nlat = _lift_unit_vectors(k, [N] * k)
    zlat = [list(g) for g in gens] + nlat
    bgens = []
    for j in range(len(lo)):
        g = N // math.gcd(int(lo.ann[j]), N) if lo.ann[j] else 1
        bgens.append([int(v) * g % N for v in D_in[:, j]])
    blat = bgens + nlat
    if k == 0:
        return CohomologyResult("cohomology", n, module, params, variant, [], [], [], [])
    return CohomologyResult(
        "cohomology", n, module, params, variant,
        linalg.lattice_quotient(zlat, nlat, k),
        linalg.lattice_quotient(blat, nlat, k),
        linalg.lattice_quotient(zlat, blat, k),
        basis)


def _dense(coords, a, module, tw, n):
    vals = np.zeros(tw.size ** n, dtype=np.int64)
    vals[coords.basis] = coords.expand(a, module)
    return vals


def homology(tw, params, n, module, variant=None):
    """Cycles, boundaries and homology of ``C_* (x) M`` in degree ``n``."""
    variant = variant or params.variant
    _require_biquandle(tw, params, variant)
    if variant is Variant.TD:
        for deg in (n, n + 1):
            w = degenerate_subcomplex_witness(tw, params, deg)
            if w is not None:
                raise ValueError(f"degenerate tuples are not closed under the boundary at {w}")
    N = module.modulus
    lo = _Coordinates(tw, params, n - 1, module, variant)
    mid = _Coordinates(tw, params, n, module, variant)
    hi = _Coordinates(tw, params, n + 1, module, variant)
    # the chain boundary in orbit coordinates is the transpose of delta
    d_n = (_rep_coboundary(tw, params, n - 1, module, variant, lo, mid).T if n >= 2
           else np.zeros((0, len(mid)), dtype=np.int64))
    d_up = _rep_coboundary(tw, params, n, module, variant, mid, hi).T
    k = len(mid)
    if k == 0:
        return CohomologyResult("homology", n, module, params, variant, [], [], [], [])
    if module.is_prime:
        allowed = np.flatnonzero(mid.ann % N == 0)
        lo_allowed = np.flatnonzero(lo.ann % N == 0) if len(lo) else np.zeros(0, dtype=np.int64)
        hi_allowed = np.flatnonzero(hi.ann % N == 0) if len(hi) else np.zeros(0, dtype=np.int64)
        sub_n = d_n[np.ix_(lo_allowed, allowed)] if len(lo_allowed) else np.zeros((0, len(allowed)))
        r_n = linalg.rank_mod_p(sub_n, N) if sub_n.size else 0
        sub_up = d_up[np.ix_(allowed, hi_allowed)]
        r_up = linalg.rank_mod_p(sub_up, N) if sub_up.size else 0
        z = len(allowed) - r_n
        return CohomologyResult("homology", n, module, params, variant,
                                [N] * z, [N] * r_up, [N] * (z - r_up), [])
    q = [math.gcd(int(c), N) for c in mid.ann]
    q_lo = [math.gcd(int(c), N) for c in lo.ann]
    qlat = _lift_unit_vectors(k, q)
    if len(lo):
        aug = [list(map(int, d_n[i])) + [q_lo[i] if j == i else 0 for j in range(len(lo))]
               for i in range(len(lo))]
        ker = linalg.integer_kernel(aug, k + len(lo))
        zlat = [[ker[i][j] for i in range(k)] for j in range(len(ker[0]))] if ker and ker[0] else []
        zlat += qlat
    else:
        zlat = _lift_unit_vectors(k, [1] * k)
    blat = [list(map(int, d_up[:, j])) for j in range(d_up.shape[1])] + qlat
    return CohomologyResult(
        "homology", n, module, params, variant,
        linalg.lattice_quotient(zlat, qlat, k),
        linalg.lattice_quotient(blat, qlat, k),
        linalg.lattice_quotient(zlat, blat, k),
        [])


def cocycle_space(tw, params, n, module):
    return cohomology(tw, params, n, module)


def homology_dims(tw, params, n, module, variant=None):
    """Homology and cohomology of degree ``n`` as a ``(homology, cohomology)`` pair.

    ``variant`` may be TYB, TBQ or TD; for TD the closure of degenerate
    tuples under the boundary is verified first.
    """
    variant = variant or params.variant
    hom = homology(tw, params, n, module, variant)
    if variant is Variant.TD:
        return hom, None
    return hom, cohomology(tw, params, n, module, variant)


# --------------------------------------------------------------------------
# precubical identities

class PrecubicalResult(NamedTuple):
    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def precubical_check(tw, params, n):
    """Check ``d^k_i d^l_j = d^l_{j-1} d^k_i`` for all ``i < j`` on X^n.

    Uses the set-level faces (twist applied to coordinates in COORDINATE
    mode).  The witness is ``(tuple, i, j, k, l)``.
    """
    size = tw.size
    q1, q2 = _table_ops(crossing_operator(tw, params))
    coord = params.mode is TwistMode.COORDINATE
    fl = tw.twist.power(params.m1) if coord else None
    fr = tw.twist.power(params.m2) if coord else None

    def face(c, i, left):
        out = _slide(c, i, q1, q2, left)
        f = fl if left else fr
        if f is not None:
            out = [f[v] for v in out]
        return out

    coords = all_tuples(size, n)
    for j in range(2, n + 1):
        for i in range(1, j):
            for k in (True, False):
                for l in (True, False):
                    a = face(face(coords, j, l), i, k)
                    b = face(face(coords, i, k), j - 1, l)
                    bad = np.zeros(len(coords[0]), dtype=bool)
                    for p, q in zip(a, b):
                        bad |= p != q
                    if bad.any():
                        w = unrank(int(np.flatnonzero(bad)[0]), size, n)
                        return PrecubicalResult(False, (w, i, j, "l" if k else "r",
                                                        "l" if l else "r"))
    return PrecubicalResult(True)
