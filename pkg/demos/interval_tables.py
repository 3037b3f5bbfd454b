"""
Abstract interval tables
========================

A table assigns a symbol to every ordered pair of points. The three
independence-style properties are decided exactly and cross-checked by
sampling random balanced perturbations of the measure.
"""

from hexalab.cli import fixture_path
from hexalab.groups import CyclicProduct
from hexalab.symbolic import (
    IntervalTable,
    check_hex_doubleprime,
    check_hex_prime,
    check_ind,
    conditional_interval_distribution,
    group_interval_table,
    is_latin_square,
    loop_is_group,
    sample_decomposition_oracle,
)

# the three 4-point tables shipped as fixtures
for which in ("left", "middle", "right"):
    t = IntervalTable.load(fixture_path(f"table43_{which}.csv"))
    row = (check_ind(t).holds, check_hex_prime(t).holds, check_hex_doubleprime(t).holds)
    print(which, "Ind, Hex', Hex'':", row)

right = IntervalTable.load(fixture_path("table43_right.csv"))
print("witness:", check_hex_doubleprime(right).witness)
oracle = sample_decomposition_oracle(right, trials=500, seed=0, mode="hexdd")
print("oracle found a violation:", not oracle.holds)

# x^-1 y on Z/3 x Z/4, conditioned on a six-point subset
g = CyclicProduct([3, 4])
table = group_interval_table(g, "left_quotient")
a = table.subset(["1,0", "1,2", "2,0", "2,1", "2,2", "2,3"])
law = conditional_interval_distribution(table, a)
print({v: str(p) for v, p in law.items()})
print("same on the complement:", law == conditional_interval_distribution(table, a.complement()))

# a Latin square that is not a group table
latin = IntervalTable.load(fixture_path("table44.csv"))
print("latin:", is_latin_square(latin), "ind:", check_ind(latin).holds, "group:", loop_is_group(latin))
