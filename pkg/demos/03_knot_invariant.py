"""
Cocycle state sums of knots
===========================

Color PD diagrams, number their regions and evaluate the state sum with a
twisted cocycle. Reidemeister variants of a knot give the same value.
"""
from twyb import cochain as cc
from twyb.cochain import Cochain, CoefficientModule, TwistParams, Variant
from twyb.diagram import (FIXTURE_FAMILIES, STANDARD_TREFOIL_PD, alexander_numbering,
                          enumerate_colorings, fixture, parse_pd)
from twyb.families import dihedral_quandle, from_quandle, gf4_affine, tetrahedral_quandle
from twyb.statesum import StateSumSpec, mod_p_state_sum, normalize_up_to_T, state_sum
from twyb.yb import make_twisted

trefoil = parse_pd(STANDARD_TREFOIL_PD)
rm = alexander_numbering(trefoil)
print("signs:", trefoil.signs, "region numbers:", rm.numbering)

# Fox 3-colorings: 9 colorings of the trefoil by the dihedral quandle of order 3
d3 = make_twisted(from_quandle(dihedral_quandle(3)))
print("colorings:", len(enumerate_colorings(trefoil, d3)))

# a coboundary only counts colorings
M3 = CoefficientModule(3, 1)
p = TwistParams(0, 0, 1, Variant.TBQ)
phi = cc.coboundary(d3, p, Cochain(1, 3, 3, [0, 1, 2]), M3)
print("coboundary:", state_sum(trefoil, d3, StateSumSpec(phi, 1, M3)))

# a nontrivial cocycle on the tetrahedral quandle with f of order 3
tw = make_twisted(from_quandle(tetrahedral_quandle()), gf4_affine(2, 0))
M = CoefficientModule(4, 3)
basis = cc.cohomology(tw, TwistParams(0, 0, 2, Variant.TBQ), 2, M).basis
spec = StateSumSpec(basis[0], 2, M)
for family, names in FIXTURE_FAMILIES.items():
    for name in names:
        print(f"{name:18s} {state_sum(fixture(name), tw, spec)}")

# the mod-p numbering agrees with the planar value up to the action of T
print("mod p:  ", mod_p_state_sum(trefoil, tw, spec, tw.twist.order))
print("planar: ", normalize_up_to_T(state_sum(trefoil, tw, spec), M))
