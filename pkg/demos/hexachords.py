"""
Hexachords on the chromatic cycle
=================================

"""

from fractions import Fraction

from hexalab import check_cvc, check_hex, hex_defect_profile
from hexalab.constructions import cycle, cyclic_cayley
from hexalab.hexcvc import check_patterson_equality, patterson

# the twelve pitch classes as a 12-cycle with path distance
z12 = cycle(12)
verdict = check_cvc(z12)
print("constant volume:", verdict.holds)
print("ball volumes:", [str(verdict.rho(r)) for r in range(7)])

# a hexachord and its complement share one distance law
a = z12.subset([0, 1, 2, 4, 7, 9])
hv = check_hex(z12, a)
print("hexachord law:", {int(r): str(m) for r, m in hv.distA.entries})
print("complement law:", {int(r): str(m) for r, m in hv.distAc.entries})

# with unequal halves the gap is the volume function times the imbalance
tetrachord = z12.subset([0, 1, 4, 6])
for r, gap in hex_defect_profile(z12, tetrachord):
    print(f"r={r}: defect {gap}")

# Patterson functions of A and its complement differ by a constant
group = cyclic_cayley([12])
pat = patterson(group, [(0,), (1,), (4,), (6,)])
print("Pat at the tritone:", pat[(6,)])
chk = check_patterson_equality(group, [(x,) for x in (0, 1, 2, 4, 7, 9)])
print("constant difference:", chk.holds, chk.expected == Fraction(0))
