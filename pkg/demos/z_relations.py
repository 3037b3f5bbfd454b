"""
Z-related chords
================

"""

from hexalab.tiling import CyclicSubset
from hexalab.zrelation import complement_homometry_check, homometry_classes, interval_content, z_related

# the all-interval tetrachords
a = CyclicSubset.of(12, [0, 1, 4, 6])
b = CyclicSubset.of(12, [0, 1, 3, 7])
print(interval_content(a), interval_content(b), "z-related:", z_related(a, b))

# hexachords: every one matches its complement
print(complement_homometry_check(12))

# class sizes for tetrachords and hexachords
for k in (4, 6):
    rep = homometry_classes(12, k)
    print(f"k={k}: {rep.ti_classes} T/I classes, sizes {rep.histogram}")

# twelve-note chords in a quarter-tone scale
rep = homometry_classes(24, 12)
print("n=24 histogram:", rep.histogram)
for cls in rep.of_size(12):
    print(cls.vector, cls.subsets(24)[0])
