"""Constant volume condition, hexachordal checks, homometry and Patterson functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    SQUARED,
    DistanceDistribution,
    FiniteMetricMeasureSpace,
    HexalabError,
    MeasureError,
    SubsetMask,
    VolumeFunction,
    as_fraction,
    distance_distribution,
    restricted_distribution,
    restricted_pair_masses,
)


class CVCRequiredError(HexalabError):
    """The operation needs a space satisfying the constant volume condition."""


@dataclass(frozen=True)
class CvcVerdict:
    holds: bool
    rho: VolumeFunction | None = None
    witness: tuple[int, int, Fraction] | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class HexVerdict:
    holds: bool
    distA: DistanceDistribution
    distAc: DistanceDistribution
    first_divergence: Fraction | None = None

    def __bool__(self):
        return self.holds


def check_cvc(space: FiniteMetricMeasureSpace) -> CvcVerdict:
    """Decide whether every ball volume depends on the radius only.

    Zero-weight points are ignored. On failure the witness ``(x, y, r)`` has
    ``mu(B(x, r)) != mu(B(y, r))`` at the smallest such realized radius.
    """
    supp = space.support
    rows = space.row_masses[supp]
    ref = rows[0]
    diff = np.any(rows != ref, axis=1)
    if diff.any():
        k = int(np.argmax(diff))
        c = int(np.argmax(rows[k] != ref))
        return CvcVerdict(False, witness=(int(supp[0]), int(supp[k]), space.values[c]))
    cum = np.cumsum(ref)
    d = space.denominator
    rho = VolumeFunction(tuple((r, Fraction(int(m), d)) for r, m in zip(space.values, cum.tolist())))
    return CvcVerdict(True, rho=rho)


def check_hex(space: FiniteMetricMeasureSpace, a: SubsetMask) -> HexVerdict:
    """Compare the distance laws on ``A x A`` and ``A^c x A^c`` for ``mu(A) = 1/2``."""
    if a.measure != Fraction(1, 2):
        raise MeasureError(f"hexachordal check needs mu(A) = 1/2, got {a.measure}")
    ac = a.complement()
    ma = restricted_pair_masses(space, a, a)
    mc = restricted_pair_masses(space, ac, ac)
    da = restricted_distribution(space, a, a)
    dc = restricted_distribution(space, ac, ac)
    neq = np.flatnonzero(np.asarray(ma != mc))
    if len(neq):
        return HexVerdict(False, da, dc, space.values[int(neq[0])])
    return HexVerdict(True, da, dc)


def hex_defect_profile(space: FiniteMetricMeasureSpace, a: SubsetMask, rho: VolumeFunction | None = None):
    """Defect ``mu2{A^2, d<=r} - mu2{(A^c)^2, d<=r}`` at every realized radius.

    Returns ``[(r, defect)]``. Each entry is checked against
    ``rho(r) * (mu(A) - mu(A^c))``; a mismatch raises ``AssertionError``.
    """
    if rho is None:
        verdict = check_cvc(space)
        if not verdict.holds:
            raise CVCRequiredError("defect identity needs a CVC space")
        rho = verdict.rho
    ac = a.complement()
    diff = np.cumsum(restricted_pair_masses(space, a, a)) - np.cumsum(restricted_pair_masses(space, ac, ac))
    d2 = space.denominator**2
    imbalance = a.measure - ac.measure
    out = []
    for (r, vol), num in zip(rho.steps, diff.tolist()):
        defect = Fraction(int(num), d2)
        if defect != vol * imbalance:
            raise AssertionError(f"defect identity fails at r={r}: {defect} != {vol} * {imbalance}")
        out.append((r, defect))
    return out


def hex_defect(space: FiniteMetricMeasureSpace, a: SubsetMask, r) -> Fraction:
    """Defect of the hexachordal identity at radius ``r`` (CVC spaces only)."""
    r = as_fraction(r)
    verdict = check_cvc(space)
    if not verdict.holds:
        raise CVCRequiredError("defect identity needs a CVC space")
    ac = a.complement()
    lhs = restricted_distribution(space, a, a).cdf(r) - restricted_distribution(space, ac, ac).cdf(r)
    expected = verdict.rho(r) * (a.measure - ac.measure)
    if lhs != expected:
        raise AssertionError(f"defect identity fails at r={r}: {lhs} != {expected}")
    return lhs


def _law(x) -> DistanceDistribution:
    if isinstance(x, FiniteMetricMeasureSpace):
        return distance_distribution(x)
    space, mask = x
    return restricted_distribution(space, mask, mask)


def homometric(x1, x2) -> bool:
    """Equality of distance laws of two spaces, or of two ``(space, subset)`` pairs.

    Subset laws are compared unnormalized. Plain and squared value kinds are
    compared on squared values.
    """
    d1, d2 = _law(x1), _law(x2)
    if d1.value_kind != d2.value_kind:
        d1, d2 = d1.in_kind(SQUARED), d2.in_kind(SQUARED)
    return d1.entries == d2.entries


# -- Patterson functions -------------------------------------------------


def _group_of(obj):
    return getattr(obj, "group", obj)


def _member_array(group, a) -> np.ndarray:
    n = len(group)
    if isinstance(a, SubsetMask):
        if a.size != n:
            raise ValueError("subset size does not match the group order")
        return a.array()
    inside = np.zeros(n, dtype=bool)
    for e in a:
        inside[group.index(e)] = True
    return inside


def patterson(group_space, a) -> dict:
    """``g -> mu(A & g.A)`` for the uniform measure on a finite group.

    ``group_space`` is a :class:`~hexalab.groups.FiniteGroup` or anything with
    a ``group`` attribute (a ``CayleySpec``). ``a`` is a
    :class:`~hexalab.core.SubsetMask` over the group's elements in order, or
    an iterable of elements.
    """
    group = _group_of(group_space)
    inside = _member_array(group, a)
    idx = np.flatnonzero(inside)
    n = len(group)
    if len(idx) == 0:
        counts = np.zeros(n, dtype=np.int64)
    else:
        counts = inside[group.table[:, idx]].sum(axis=1)
    return {g: Fraction(int(c), n) for g, c in zip(group.elements, counts.tolist())}


@dataclass(frozen=True)
class PattersonCheck:
    holds: bool
    difference: dict
    expected: Fraction
    inverse_symmetric: bool


def check_patterson_equality(group_space, a) -> PattersonCheck:
    """Check ``Pat_A - Pat_{A^c} == mu(A) - mu(A^c)`` pointwise and ``Pat_A(g^-1) == Pat_A(g)``."""
    group = _group_of(group_space)
    inside = _member_array(group, a)
    n = len(group)
    pa = patterson(group, [e for e, m in zip(group.elements, inside) if m])
    pc = patterson(group, [e for e, m in zip(group.elements, inside) if not m])
    measure = Fraction(int(inside.sum()), n)
    expected = measure - (1 - measure)
    difference = {g: pa[g] - pc[g] for g in group.elements}
    constant = all(v == expected for v in difference.values())
    inv = group.inverse_index
    symmetric = all(pa[group.elements[inv[i]]] == pa[g] for i, g in enumerate(group.elements))
    return PattersonCheck(constant and symmetric, difference, expected, symmetric)


# -- transitivity ---------------------------------------------------------


def _profiles(space: FiniteMetricMeasureSpace) -> list:
    keys = []
    rm = space.row_masses
    for i in range(space.n):
        keys.append((space.weights[i], tuple(rm[i].tolist())))
    return keys


def find_isometry(space: FiniteMetricMeasureSpace, x: int, y: int) -> list[int] | None:
    """A measure-preserving isometry ``f`` with ``f(x) = y``, found by backtracking."""
    n = space.n
    codes = space.codes
    prof = _profiles(space)
    if prof[x] != prof[y]:
        return None
    ids = {}
    pid = np.array([ids.setdefault(p, len(ids)) for p in prof])
    cand = pid[:, None] == pid[None, :]

    def assign(cand, i, j):
        c = cand & (codes[:, i][:, None] == codes[j][None, :])
        c[i, :] = False
        c[:, j] = False
        c[i, j] = True
        return c

    perm = [-1] * n

    def solve(cand, todo):
        if not todo:
            return True
        counts = cand[todo].sum(axis=1)
        if counts.min() == 0:
            return False
        k = int(np.argmin(counts))
        i = todo[k]
        rest = todo[:k] + todo[k + 1 :]
        for j in np.flatnonzero(cand[i]).tolist():
            perm[i] = j
            if solve(assign(cand, i, j), rest):
                return True
        perm[i] = -1
        return False

    cand = assign(cand, x, y)
    perm[x] = y
    if solve(cand, [i for i in range(n) if i != x]):
        return perm
    return None


def is_transitive(space: FiniteMetricMeasureSpace) -> bool:
    """True iff measure-preserving isometries act transitively on the points.

    Isometries found along the way are merged into an orbit partition so
    each orbit needs only one search.
    """
    n = space.n
    if n <= 1:
        return True
    if len(set(_profiles(space))) != 1:
        return False
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for y in range(1, n):
        if find(y) == find(0):
            continue
        f = find_isometry(space, 0, y)
        if f is None:
            return False
        for i, j in enumerate(f):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return True
