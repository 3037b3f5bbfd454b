"""Interval content of subsets of Z_n, T/I classes and homometry classes.

Subsets are handled as integer bit masks (bit ``i`` set iff ``i`` is in the
set). The canonical T/I representative is the smallest mask among the ``2n``
dihedral images, i.e. the lexicographically smallest bit string read from the
highest residue down; with this choice ``{0,4,8}`` in Z12 is its own
representative.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import HexalabError
from .tiling import CyclicSubset


class BudgetExceeded(HexalabError):
    """Enumeration larger than the configured budget."""


DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class IntervalVector:
    n: int
    counts: tuple[int, ...]

    def __sub__(self, other: "IntervalVector") -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.counts, other.counts))

    def __str__(self):
        return "[" + ",".join(map(str, self.counts)) + "]"


def interval_content(a: CyclicSubset) -> IntervalVector:
    """Counts of unordered pairs at circular interval ``1 .. n//2``."""
    n = a.n
    counts = [0] * (n // 2)
    el = a.elements
    for i, x in enumerate(el):
        for y in el[i + 1 :]:
            d = (y - x) % n
            counts[min(d, n - d) - 1] += 1
    return IntervalVector(n, tuple(counts))


# -- mask arithmetic --------------------------------------------------------


def _rot(m, s: int, n: int, full):
    s %= n
    if s == 0:
        return m
    return ((m << s) | (m >> (n - s))) & full


def _reflect(m, n: int):
    """Image under ``x -> -x``: bit ``i`` moves to bit ``(n - i) % n``."""
    if isinstance(m, np.ndarray):
        out = m & 1
        for i in range(1, n):
            out = out | (((m >> i) & 1) << (n - i))
        return out
    out = m & 1
    for i in range(1, n):
        if m >> i & 1:
            out |= 1 << (n - i)
    return out


def ti_canonical_mask(m, n: int):
    """Smallest mask among all rotations and reflections (scalar or array)."""
    full = (1 << n) - 1
    if isinstance(m, np.ndarray):
        full = m.dtype.type(full)
    best = m
    for base in (m, _reflect(m, n)):
        for s in range(n):
            r = _rot(base, s, n, full)
            best = np.minimum(best, r) if isinstance(m, np.ndarray) else min(best, r)
    return best


def ti_canonical(a: CyclicSubset) -> CyclicSubset:
    return CyclicSubset.from_mask(a.n, ti_canonical_mask(a.mask, a.n))


def interval_vectors(masks: np.ndarray, n: int) -> np.ndarray:
    """Interval vectors of many masks at once: ``popcount(m & rot(m, i))``."""
    full = masks.dtype.type((1 << n) - 1)
    out = np.empty((len(masks), n // 2), dtype=np.int64)
    for i in range(1, n // 2 + 1):
        c = np.bitwise_count(masks & _rot(masks, i, n, full)).astype(np.int64)
        out[:, i - 1] = c // 2 if 2 * i == n else c
    return out


def k_subset_masks(n: int, k: int) -> np.ndarray:
    """All ``k``-subsets of Z_n as ``uint64`` masks, in increasing order."""
    if not 0 <= k <= n:
        return np.zeros(0, dtype=np.uint64)
    if n <= 26:
        allm = np.arange(1 << n, dtype=np.uint64)
        return allm[np.bitwise_count(allm) == k]
    # grow masks by appending an element above the current highest one
    masks = np.zeros(1, dtype=np.uint64)
    top = np.full(1, -1, dtype=np.int64)
    for step in range(k):
        parts_m, parts_t = [], []
        for t in range(step, n - k + step + 1):
            sel = top < t
            parts_m.append(masks[sel] | np.uint64(1 << t))
            parts_t.append(np.full(int(sel.sum()), t, dtype=np.int64))
        masks, top = np.concatenate(parts_m), np.concatenate(parts_t)
    return np.sort(masks)


# -- homometry classes ------------------------------------------------------


@dataclass(frozen=True)
class HomometryClass:
    vector: tuple[int, ...]
    members: tuple[int, ...]  # canonical T/I masks

    @property
    def size(self) -> int:
        return len(self.members)

    def subsets(self, n: int) -> list[CyclicSubset]:
        return [CyclicSubset.from_mask(n, m) for m in self.members]


@dataclass
class HomometryClassReport:
    n: int
    k: int
    classes: list[HomometryClass]
    histogram: dict[int, int]
    subsets: int
    ti_classes: int

    @property
    def max_size(self) -> int:
        return max(self.histogram) if self.histogram else 0

    def of_size(self, size: int) -> list[HomometryClass]:
        return [c for c in self.classes if c.size == size]


def homometry_classes(n: int, k: int, budget: int = DEFAULT_BUDGET) -> HomometryClassReport:
    """Group T/I classes of ``k``-subsets of Z_n by interval vector.

    Class size counts distinct T/I classes sharing a vector.
    """
    if n > 62:
        raise BudgetExceeded(f"n = {n} does not fit in 64-bit masks")
    total = math.comb(n, k)
    if total > budget:
        raise BudgetExceeded(f"C({n},{k}) = {total} exceeds budget {budget}")
    masks = k_subset_masks(n, k)
    canon = np.unique(ti_canonical_mask(masks, n))
    vecs = interval_vectors(canon, n)
    keys, inverse = np.unique(vecs, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(keys) + 1))
    classes = []
    for j, key in enumerate(keys.tolist()):
        members = tuple(int(m) for m in canon[order[bounds[j] : bounds[j + 1]]])
        classes.append(HomometryClass(tuple(key), members))
    hist: dict[int, int] = {}
    for c in classes:
        hist[c.size] = hist.get(c.size, 0) + 1
    return HomometryClassReport(n, k, classes, dict(sorted(hist.items())), len(masks), len(canon))


def z_tuple_report(n: int, k: int, min_size: int = 2, budget: int = DEFAULT_BUDGET) -> str:
    """CSV of homometry classes with at least ``min_size`` T/I classes."""
    report = homometry_classes(n, k, budget)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["interval_vector", "class_size", "representatives"])
    for c in report.classes:
        if c.size >= min_size:
            reps = " ".join(str(s) for s in c.subsets(n))
            w.writerow(["[" + ",".join(map(str, c.vector)) + "]", c.size, reps])
    return buf.getvalue()


# -- complement identity ----------------------------------------------------


@dataclass(frozen=True)
class ComplementCheck:
    holds: bool
    checked: int
    difference: tuple[int, ...] | None
    counterexample: CyclicSubset | None = None

    def __bool__(self):
        return self.holds


def complement_homometry_check(
    n: int, k: int | None = None, sample: int | None = None, seed: int = 0
) -> ComplementCheck:
    """``interval_content(A) - interval_content(A^c)`` is one vector for all ``k``-subsets.

    ``k`` defaults to ``n/2``, where the difference is zero. With ``sample``
    the subsets are drawn at random instead of enumerated.
    """
    if k is None:
        if n % 2:
            raise ValueError("n must be even when k is omitted")
        k = n // 2
    full = (1 << n) - 1
    if sample is None:
        masks = k_subset_masks(n, k)
    else:
        rng = np.random.default_rng(seed)
        picks = np.argsort(rng.random((sample, n)), axis=1)[:, :k]
        masks = (np.uint64(1) << picks.astype(np.uint64)).sum(axis=1, dtype=np.uint64)
    if len(masks) == 0:
        return ComplementCheck(True, 0, None)
    diff = interval_vectors(masks, n) - interval_vectors(masks ^ np.uint64(full), n)
    ref = diff[0]
    bad = np.flatnonzero(np.any(diff != ref, axis=1))
    if len(bad):
        return ComplementCheck(False, len(masks), tuple(ref.tolist()), CyclicSubset.from_mask(n, int(masks[bad[0]])))
    return ComplementCheck(True, len(masks), tuple(ref.tolist()))


def same_homometry_class(a: CyclicSubset, b: CyclicSubset) -> bool:
    return a.n == b.n and interval_content(a) == interval_content(b)


def ti_equivalent(a: CyclicSubset, b: CyclicSubset) -> bool:
    return a.n == b.n and ti_canonical_mask(a.mask, a.n) == ti_canonical_mask(b.mask, b.n)


def z_related(a: CyclicSubset, b: CyclicSubset) -> bool:
    """Homometric but not related by a transposition or inversion."""
    return same_homometry_class(a, b) and not ti_equivalent(a, b)


def masks_to_subsets(n: int, masks: Iterable[int]) -> list[CyclicSubset]:
    return [CyclicSubset.from_mask(n, int(m)) for m in masks]
