"""
Latitude band on the sphere
===========================

"""

import math

from hexalab.montecarlo import (
    ContinuousSpaceSpec,
    band_experiment,
    estimate_volume_function,
    mean_chord,
    sample_pairs,
    three_sample_heuristic,
)

# a million pairs, points tagged by |latitude| < 30 degrees
exp = band_experiment(count=10**6, seed=42, workers=4)
print(f"in band: {exp.band_fraction.value:.4f}")
print(f"P(d <= sqrt 2 | caps) = {exp.caps.value:.4f} +- {exp.caps.stderr:.4f}")
print(f"P(d <= sqrt 2 | band) = {exp.band.value:.4f} +- {exp.band.stderr:.4f}")
print(f"KS band vs caps: D={exp.ks.statistic:.5f}, critical {exp.ks.critical:.5f}")
print("three-sample check:", exp.three.passed)

# the volume function against r^2/4
s2 = ContinuousSpaceSpec.sphere(2)
for pt in estimate_volume_function(s2, [0.5, 1.0, math.sqrt(2), 1.9], count=200_000, seed=7):
    print(f"r={pt.r:.3f}  {pt.estimate.value:.4f}  exact {pt.closed_form:.4f}")

print("mean chord:", mean_chord(s2, count=200_000, seed=1).value, "vs", 4 / 3)

# a flat torus and a half strip
torus = ContinuousSpaceSpec.torus(1, 1)
print("torus strip:", three_sample_heuristic(sample_pairs(torus, "strip", 200_000, seed=3)).passed)
