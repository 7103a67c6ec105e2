"""
Twisted cohomology of a small biquandle
=======================================

Compute cocycle groups in the twisted Yang-Baxter (TYB) and twisted
biquandle (TBQ) complexes, compare with a brute-force count and check the
exponent shift.
"""
import itertools

from twyb import cochain as cc
from twyb.cochain import Cochain, CoefficientModule, TwistParams, Variant
from twyb.families import affine_map, cyclic_biquandle
from twyb.yb import make_twisted

tw = make_twisted(cyclic_biquandle(2))
M = CoefficientModule(2, 1)

# the symbolic coboundary of a 1-cochain, term by term
for term in cc.symbolic_boundary(2, TwistParams(0, 0, 1)):
    print(term)

# Z^2 and H^2 in both complexes
for variant in (Variant.TYB, Variant.TBQ):
    res = cc.cohomology(tw, TwistParams(0, 0, 0, variant), 2, M)
    print(f"{variant.value}: dim Z^2={res.dim_cocycles} dim B^2={res.dim_coboundaries} "
          f"dim H^2={res.betti}")

# the same count by enumerating all 16 maps X x X -> Z_2
p = TwistParams(0, 0, 0, Variant.TBQ)
count = sum(cc.cocycle_check(tw, p, Cochain(2, 2, 2, v), M).ok
            for v in itertools.product(range(2), repeat=4))
print("brute-force TBQ cocycles:", count)

# shifting both exponents by k multiplies the coboundary by u^k
tw3 = make_twisted(cyclic_biquandle(3), affine_map(3, 1, 1))
M7 = CoefficientModule(7, 2)
for m1, m2 in ((0, 0), (1, 1), (2, 2)):
    res = cc.cohomology(tw3, TwistParams(0, m1, m2), 2, M7)
    print(f"(m1, m2)=({m1}, {m2}): dim Z^2={res.dim_cocycles}")

# over Z_4 the groups are not vector spaces; orders come from Smith normal form
res = cc.cohomology(tw, TwistParams(0, 0, 1), 2, CoefficientModule(4, 3))
print("Z_4 (u=3) cocycle orders:", res.cycle_orders, "cohomology:", res.homology_orders)
