"""
Triple points from a braid movie
================================

A loop of braid words, closed by Reidemeister III and commutation moves,
traces a knotted surface. Each RIII move is a triple point; the state sum of
a 3-coboundary counts the colorings.
"""
import numpy as np

from twyb import cochain as cc
from twyb.cochain import Cochain, CoefficientModule, TwistMode, TwistParams, Variant
from twyb.families import cyclic_biquandle
from twyb.formats import write_triple_points
from twyb.movie import braid_loop, loop_triple_data
from twyb.statesum import StateSumSpec, surface_state_sum
from twyb.yb import make_twisted

loop = braid_loop((1, 2, 1, 3, 2, 1))
print(len(loop) - 1, "moves:", " -> ".join("".join(map(str, w)) for w in loop[:4]), "...")

tw = make_twisted(cyclic_biquandle(3))
data = loop_triple_data(tw.op, loop, 4)
print(len(data.colorings), "colorings")
print(write_triple_points(data).splitlines()[:4])

# scalar twisting: T acts on values only, so any 2-cochain will do
M = CoefficientModule(5, 2)
p = TwistParams(0, 0, 1, Variant.TBQ, TwistMode.SCALAR)
rng = np.random.default_rng(0)
psi = Cochain(2, 3, 5, np.where(cc.degenerate_mask(tw, p, 2), 0, rng.integers(0, 5, 9)))
theta = cc.coboundary(tw, p, psi, M)
print("theta = delta psi:", surface_state_sum(data, tw, StateSumSpec(theta, 1, M, TwistMode.SCALAR)))
