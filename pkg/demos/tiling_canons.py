"""
Rhythmic tilings of a cyclic group
==================================

"""

from hexalab.tiling import (
    CyclicSubset,
    direct_sum_check,
    find_complements,
    find_spectrum,
    is_tiling_pair,
    is_vuza_pair,
    tiling_agreement,
    zero_set,
)

a = CyclicSubset.of(12, [0, 1, 2])
b = CyclicSubset.of(12, [0, 3, 6, 9])

# zero sets of the discrete Fourier transform
print("Z_A =", zero_set(a).sorted())
print("Z_B =", zero_set(b).sorted())

# two criteria for A + B = Z12, one via zeros and one by summing
print("tiling:", is_tiling_pair(a, b), direct_sum_check(a, b))

# every complement of A that contains 0
print([str(c) for c in find_complements(a)])

# a spectrum for A
print("spectrum:", find_spectrum(a))

# the smallest aperiodic factorization lives in Z72
va = CyclicSubset.of(72, [0, 1, 5, 6, 12, 25, 29, 36, 42, 48, 49, 53])
vb = CyclicSubset.of(72, [0, 8, 16, 18, 26, 34])
print("Vuza pair:", is_vuza_pair(va, vb))

# exhaustive agreement of the two criteria on Z16
rep = tiling_agreement(16)
print(f"n=16: {rep.pairs} candidate pairs, {rep.tilings} tilings, agree={rep.agree}")
