"""Group-ring valued cocycle state sums for knots and knotted surfaces.

The module ``M = Z_N`` is written additively here; the multiplicative
``phi(x, y)^eps`` of the weight becomes ``eps * phi(x, y)`` and ``T^k`` acts
as multiplication by ``u^k``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .cochain import (Cochain, CoefficientModule, TwistMode, TwistParams,
                      Variant, cocycle_check)
from .diagram import alexander_numbering, boltzmann_inputs, enumerate_colorings


class InvalidCocycleError(ValueError):
    def __init__(self, check):
        super().__init__(f"not a cocycle: {check.reason} at {check.witness}")
        self.check = check


class GroupRingElement:
    """Element of ``Z[Z_N]`` stored as ``{group element: nonzero integer}``."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus, coeffs=None):
        self.modulus = modulus
        acc = Counter()
        for m, c in (coeffs or {}).items():
            acc[int(m) % modulus] += int(c)
        self.coeffs = {m: c for m, c in sorted(acc.items()) if c}

    @classmethod
    def zero(cls, modulus):
        return cls(modulus)

    @classmethod
    def identity(cls, modulus):
        return cls(modulus, {0: 1})

    @classmethod
    def singleton(cls, modulus, m, coeff=1):
        return cls(modulus, {m: coeff})

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("group ring elements over different groups")

    def __add__(self, other):
        self._check(other)
        acc = Counter(self.coeffs)
        acc.update(other.coeffs)
        return GroupRingElement(self.modulus, acc)

    def __mul__(self, other):
        self._check(other)
        acc = Counter()
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                acc[(a + b) % self.modulus] += c * d
        return GroupRingElement(self.modulus, acc)

    def scale(self, k):
        return GroupRingElement(self.modulus, {m: k * c for m, c in self.coeffs.items()})

    def act(self, module, k=1):
        """Apply ``T^k`` to every group element; coefficients are unchanged."""
        return GroupRingElement(self.modulus,
                                {module.act(m, k): c for m, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def augmentation(self):
        return sum(self.coeffs.values())

    def key(self):
        return tuple(self.coeffs.items())

    def __eq__(self, other):
        return (isinstance(other, GroupRingElement) and self.modulus == other.modulus
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.modulus, self.key()))

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{m}]" for m, c in self.coeffs.items())

    def __repr__(self):
        return f"GroupRingElement(Z_{self.modulus}: {self})"

    @classmethod
    def parse(cls, modulus, text):
        """Inverse of ``str``: ``"2*[0] + 1*[3]"`` or ``"0"``."""
        text = text.strip()
        if text == "0":
            return cls(modulus)
        coeffs = Counter()
        for part in text.split("+"):
            c, m = part.strip().split("*")
            coeffs[int(m.strip().strip("[]"))] += int(c)
        return cls(modulus, coeffs)


@dataclass(frozen=True)
class StateSumSpec:
    """Cocycle data for a state sum.

    ``cocycle`` has degree 2 (knots) or 3 (surfaces) and must lie in the
    quotient complex with twist exponents ``(0, n)``.
    """
    cocycle: Cochain
    n: int
    module: CoefficientModule
    mode: TwistMode = TwistMode.COORDINATE
    variant: Variant = field(default=Variant.TBQ)

    def __post_init__(self):
        if self.cocycle.modulus != self.module.modulus:
            raise ValueError("cocycle values and module disagree on N")

    @property
    def params(self):
        return TwistParams(0, 0, self.n, self.variant, self.mode)

    def validate(self, tw):
        check = cocycle_check(tw, self.params, self.cocycle, self.module)
        if not check.ok:
            raise InvalidCocycleError(check)


def boltzmann_weight(spec, args, sign, L):
    """``T^{-nL}(eps * value)`` as a singleton group-ring element.

    ``args`` are the cocycle arguments (two for knots, three for surfaces).
    """
    M = spec.module
    value = spec.cocycle(*args)
    return GroupRingElement.singleton(M.modulus, M.act(sign * value, -spec.n * L))


def _weight_element(spec, args, sign, L):
    M = spec.module
    return M.act(sign * spec.cocycle(*args), -spec.n * L)


def coloring_weight(d, spec, coloring, crossing_numbers):
    """Sum in M of all crossing weights of one coloring."""
    total = 0
    for k, sign in enumerate(d.signs):
        total += _weight_element(spec, boltzmann_inputs(d, coloring, k), sign,
                                 crossing_numbers[k])
    return total % spec.module.modulus


def state_sum(d, tw, spec, colorings=None, numbers=None):
    """``sum over colorings of the product of Boltzmann weights`` in ``Z[M]``."""
    spec.validate(tw)
    if colorings is None:
        colorings = enumerate_colorings(d, tw)
    if numbers is None:
        numbers = alexander_numbering(d).crossing_numbering if d.crossings else []
    acc = Counter()
    for col in colorings:
        acc[coloring_weight(d, spec, col, numbers)] += 1
    return GroupRingElement(spec.module.modulus, acc)


@dataclass(frozen=True)
class TriplePoint:
    x: int
    y: int
    z: int
    sign: int
    L: int


@dataclass
class TriplePointData:
    """Triple points of a colored broken surface diagram, grouped by coloring."""
    colorings: dict = field(default_factory=dict)

    def add(self, coloring_id, point=None):
        group = self.colorings.setdefault(coloring_id, [])
        if point is not None:
            group.append(point)

    def validate(self, size):
        if not self.colorings:
            raise ValueError("no colorings supplied")
        counts = {k: len(v) for k, v in self.colorings.items()}
        if any(c == 0 for c in counts.values()) and any(c for c in counts.values()):
            empty = next(k for k, c in counts.items() if c == 0)
            raise ValueError(f"coloring {empty!r} has no triple points while others do")
        for cid, group in self.colorings.items():
            for p in group:
                if not all(0 <= v < size for v in (p.x, p.y, p.z)):
                    raise ValueError(f"color out of range in coloring {cid!r}: {p}")
                if p.sign not in (1, -1):
                    raise ValueError(f"triple point sign must be +1 or -1: {p}")


def surface_state_sum(triples, tw, spec):
    """State sum of a knotted surface from externally supplied triple points."""
    if spec.cocycle.degree != 3:
        raise ValueError("surface state sums need a degree-3 cocycle")
    triples.validate(tw.size)
    spec.validate(tw)
    acc = Counter()
    for group in triples.colorings.values():
        total = sum(_weight_element(spec, (p.x, p.y, p.z), p.sign, p.L) for p in group)
        acc[total % spec.module.modulus] += 1
    return GroupRingElement(spec.module.modulus, acc)


def normalize_up_to_T(e, module):
    """Canonical representative of the orbit of ``e`` under ``T``."""
    best = e
    cur = e
    for _ in range(module.t_order - 1):
        cur = cur.act(module)
        if cur.key() < best.key():
            best = cur
    return best


class UndefinedNumbering:
    """Marker for a diagram whose mod-p Alexander numbering does not exist."""


UNDEFINED = UndefinedNumbering()


def mod_p_state_sum(d, tw, spec, p, numbering=None):
    """State sum with crossing numbers in ``Z_p``, up to the action of T.

    ``p`` must be the order of the twist and ``u^(n p) = 1`` in ``Z_N`` so
    that ``T^(-n L)`` only depends on ``L mod p``.  ``numbering`` lists one
    residue per crossing; ``None`` reduces the planar numbering and
    ``UNDEFINED`` yields the zero element.
    """
    if p != tw.twist.order:
        raise ValueError(f"p = {p} but the twist has order {tw.twist.order}")
    M = spec.module
    if M.power(spec.n * p) != 1 % M.modulus:
        raise ValueError(f"u^(n p) = {M.power(spec.n * p)} is not 1 mod {M.modulus}; "
                         "weights would depend on the integer lift of the numbering")
    if numbering is UNDEFINED:
        return GroupRingElement.zero(M.modulus)
    if numbering is None:
        numbering = alexander_numbering(d).crossing_numbering if d.crossings else []
    if len(numbering) != d.n_crossings:
        raise ValueError("need one residue per crossing")
    residues = [int(v) % p for v in numbering]
    return normalize_up_to_T(state_sum(d, tw, spec, numbers=residues), M)
