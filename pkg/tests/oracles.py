"""Naive reference computations used as test oracles.

Everything here is written from the definitions with plain Python loops and
Fractions, sharing no code with the package.
"""

from collections import Counter, deque
from fractions import Fraction
import cmath
import itertools


def bfs_matrix(n, adj):
    out = []
    for s in range(n):
        dist = [None] * n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if dist[v] is None:
                    dist[v] = dist[u] + 1
                    q.append(v)
        out.append(dist)
    return out


def cycle_adj(n):
    return [[(i - 1) % n, (i + 1) % n] for i in range(n)]


def circulant_adj(n, gens):
    return [sorted({(i + g) % n for g in gens} | {(i - g) % n for g in gens}) for i in range(n)]


def law(dist, weights, a=None, b=None):
    n = len(dist)
    a = range(n) if a is None else a
    b = range(n) if b is None else b
    c = Counter()
    for i in a:
        for j in b:
            m = Fraction(weights[i]) * Fraction(weights[j])
            if m:
                c[Fraction(dist[i][j])] += m
    return dict(sorted(c.items()))


def ball(dist, weights, x, r):
    return sum((Fraction(weights[y]) for y in range(len(dist)) if dist[x][y] <= r), Fraction(0))


def cvc(dist, weights):
    vals = sorted({Fraction(v) for row in dist for v in row})
    supp = [i for i in range(len(dist)) if weights[i] > 0]
    for r in vals:
        if len({ball(dist, weights, x, r) for x in supp}) > 1:
            return False
    return True


def exact_zero(a, n, t, tol=1e-9):
    """Float DFT zero test; reliable for the small moduli used in tests."""
    return abs(sum(cmath.exp(-2j * cmath.pi * k * t / n) for k in a)) < tol


def is_direct_sum(a, b, n):
    sums = Counter((x + y) % n for x in a for y in b)
    return len(sums) == n and all(v == 1 for v in sums.values())


def interval_vector(a, n):
    v = [0] * (n // 2)
    for x, y in itertools.combinations(sorted(a), 2):
        d = (y - x) % n
        v[min(d, n - d) - 1] += 1
    return tuple(v)


def dihedral_images(a, n):
    for s in range(n):
        yield frozenset((x + s) % n for x in a)
        yield frozenset((s - x) % n for x in a)


def mask(a):
    return sum(1 << x for x in a)


def canonical(a, n):
    return min(mask(img) for img in dihedral_images(a, n))
