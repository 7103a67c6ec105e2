"""
Yang-Baxter sets, biquandles and twists
=======================================

Build the example operators, check the braid relation and the biquandle
axioms, and deform an operator by an automorphism.
"""
from twyb.families import (alexander_biquandle, affine_map, cyclic_biquandle,
                           dihedral_quandle, from_quandle, symmetric_group, wada)
from twyb.yb import (YBOperator, classify, make_twisted, twisted_operator, verify_ybe,
                     ybe_witness)

# R(x, y) = (y + 1, x - 1) on Z_n is a biquandle for every n
for n in range(2, 6):
    op = cyclic_biquandle(n)
    print(f"cyclic Z_{n}: ybe={verify_ybe(op)} class={classify(op)}")

# quandles give operators R(x, y) = (y, x * y)
print("dihedral Z_5:", classify(from_quandle(dihedral_quandle(5))))
print("Wada on S_3: ", classify(wada(symmetric_group(3))))
print("Alexander Z_5 (1, 2):", classify(alexander_biquandle(5, 1, 2)))

# an automorphism f commuting with R makes a twisted set
tw = make_twisted(cyclic_biquandle(3), affine_map(3, 1, 1))
print("f =", tw.twist.perm.tolist(), "order", tw.twist.order)

# the twisted operator (R1(x, f^t y), R2(f^-t x, y)) is again a solution
for t in (-1, 1, 2):
    op = twisted_operator(tw, t)
    print(f"t={t:+d}: R(0, 0) = {op(0, 0)}, ybe={verify_ybe(op)}")

# a broken table is caught with an explicit witness triple
r1 = cyclic_biquandle(3).r1.copy()
r1[0, [0, 1]] = r1[0, [1, 0]]
print("witness:", ybe_witness(YBOperator(r1, cyclic_biquandle(3).r2)))
