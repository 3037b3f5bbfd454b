"""Fourier zero sets of subsets of Z_n, tilings, Vuza pairs and spectra.

Zeros are decided exactly: ``F_A(t) = 0`` iff the cyclotomic polynomial
``Phi_d`` with ``d = n / gcd(t, n)`` divides the mask polynomial
``A(x) = sum_{k in A} x^k``. Because ``Phi_d`` divides ``x^d - 1`` the mask
polynomial is first folded modulo ``x^d - 1``, which keeps the division short
and its coefficients small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator

import numpy as np


@dataclass(frozen=True)
class CyclicSubset:
    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if any(not 0 <= e < self.n for e in self.elements):
            raise ValueError(f"residues must lie in [0, {self.n})")
        if list(self.elements) != sorted(set(self.elements)):
            raise ValueError("elements must be sorted and distinct")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "CyclicSubset":
        return cls(n, tuple(sorted({int(e) % n for e in elements})))

    @classmethod
    def parse(cls, text: str, n: int) -> "CyclicSubset":
        text = text.strip().strip("{}[]")
        return cls.of(n, [int(x) for x in text.split(",") if x.strip()])

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "CyclicSubset":
        return cls(n, tuple(i for i in range(n) if mask >> i & 1))

    @property
    def mask(self) -> int:
        return sum(1 << e for e in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e % self.n in self.elements

    def translate(self, c: int) -> "CyclicSubset":
        return CyclicSubset.of(self.n, (e + c for e in self.elements))

    def scale(self, u: int) -> "CyclicSubset":
        return CyclicSubset.of(self.n, (e * u for e in self.elements))

    def complement(self) -> "CyclicSubset":
        return CyclicSubset(self.n, tuple(i for i in range(self.n) if i not in set(self.elements)))

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class ZeroSet:
    n: int
    zeros: frozenset

    def __contains__(self, t):
        return t % self.n in self.zeros

    def __len__(self):
        return len(self.zeros)

    def sorted(self) -> list[int]:
        return sorted(self.zeros)


def _same_modulus(a: CyclicSubset, b: CyclicSubset):
    if a.n != b.n:
        raise ValueError(f"modulus mismatch: {a.n} vs {b.n}")


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Integer coefficients of ``Phi_d``, lowest degree first."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        num, rem = _divmod_monic(num, list(cyclotomic(e)))
        assert not any(rem)
    return tuple(num)


def _divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = list(num)
    k = len(den) - 1
    q = [0] * max(len(num) - k, 1)
    for i in range(len(num) - 1, k - 1, -1):
        c = num[i]
        if c:
            q[i - k] = c
            for j, dj in enumerate(den):
                num[i - k + j] -= c * dj
    return q, num[:k]


def dft_eval(a: CyclicSubset, t: int) -> complex:
    """``sum_{k in A} exp(-2 pi i k t / n)`` in floating point (display only)."""
    if not a.elements:
        return 0j
    k = np.asarray(a.elements, dtype=float)
    return complex(np.exp(-2j * np.pi * k * t / a.n).sum())


def _order_classes(n: int) -> dict[int, list[int]]:
    """``d -> [t : n / gcd(t, n) = d]`` for every divisor ``d`` of ``n``."""
    out: dict[int, list[int]] = {d: [] for d in divisors(n)}
    for t in range(n):
        out[n // math.gcd(t, n)].append(t)
    return out


def _phi_divides(a: CyclicSubset, d: int) -> bool:
    folded = [0] * d
    for e in a.elements:
        folded[e % d] += 1
    phi = list(cyclotomic(d))
    _, rem = _divmod_monic(folded, phi) if d >= len(phi) else (None, folded)
    return not any(rem)


def zero_set(a: CyclicSubset) -> ZeroSet:
    """Exact zero set ``{t : F_A(t) = 0}``."""
    zeros = set()
    for d, ts in _order_classes(a.n).items():
        if _phi_divides(a, d):
            zeros.update(ts)
    return ZeroSet(a.n, frozenset(zeros))


def is_tiling_pair(a: CyclicSubset, b: CyclicSubset) -> bool:
    """Zero-set criterion: ``Z_A | Z_B = Z_n \\ {0}`` and ``|A| |B| = n``."""
    _same_modulus(a, b)
    if len(a) * len(b) != a.n:
        return False
    return (zero_set(a).zeros | zero_set(b).zeros) == frozenset(range(1, a.n))


def direct_sum_check(a: CyclicSubset, b: CyclicSubset) -> bool:
    """Every residue is ``x + y`` for exactly one ``(x, y)`` in ``A x B``."""
    _same_modulus(a, b)
    counts = [0] * a.n
    for x in a.elements:
        for y in b.elements:
            counts[(x + y) % a.n] += 1
    return all(c == 1 for c in counts)


def _rot(mask: int, s: int, n: int, full: int) -> int:
    s %= n
    return ((mask << s) | (mask >> (n - s))) & full


def find_complements(a: CyclicSubset, normalize_zero: bool = True) -> list[CyclicSubset]:
    """All ``B`` with ``A + B = Z_n`` as a direct sum.

    With ``normalize_zero`` only complements containing 0 are returned, one
    per translation class of ``A + B`` with ``B`` fixed at 0.
    """
    n = a.n
    if not a.elements or n % len(a):
        return []
    full = (1 << n) - 1
    am = a.mask
    shifts = [_rot(am, s, n, full) for s in range(n)]
    found: list[int] = []

    def search(covered: int, bmask: int):
        if covered == full:
            found.append(bmask)
            return
        u = (~covered & full & -(~covered & full)).bit_length() - 1
        for x in a.elements:
            s = (u - x) % n
            sh = shifts[s]
            if not sh & covered:
                search(covered | sh, bmask | 1 << s)

    if normalize_zero:
        search(am, 1)
    else:
        search(0, 0)
    return [CyclicSubset.from_mask(n, m) for m in sorted(found)]


def is_periodic(a: CyclicSubset) -> int | None:
    """Smallest period ``0 < p < n`` with ``A + p = A``, or ``None``."""
    n = a.n
    full = (1 << n) - 1
    m = a.mask
    for p in divisors(n)[:-1]:
        if _rot(m, p, n, full) == m:
            return p
    return None


def is_vuza_pair(a: CyclicSubset, b: CyclicSubset) -> bool:
    return is_tiling_pair(a, b) and is_periodic(a) is None and is_periodic(b) is None


def find_spectrum(a: CyclicSubset) -> CyclicSubset | None:
    """A set ``L`` containing 0 with ``|L| = |A|`` and all differences in ``Z_A``."""
    n, k = a.n, len(a)
    if k == 0:
        return CyclicSubset(n, ())
    z = zero_set(a).zeros
    adj = [0] * n
    for x in range(n):
        for y in range(n):
            if x != y and (x - y) % n in z:
                adj[x] |= 1 << y

    def grow(clique: list[int], cand: int) -> list[int] | None:
        if len(clique) == k:
            return clique
        if cand.bit_count() < k - len(clique):
            return None
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            got = grow(clique + [v], cand & adj[v])
            if got:
                return got
        return None

    got = grow([0], adj[0])
    return None if got is None else CyclicSubset.of(n, got)


# -- Vuza search ------------------------------------------------------------


@dataclass
class VuzaHit:
    a: CyclicSubset
    b: CyclicSubset


def vuza_search(
    candidates: Iterable[CyclicSubset],
    max_hits: int = 1,
    progress: Callable[[int, int], None] | None = None,
) -> list[VuzaHit]:
    """Search aperiodic candidates for aperiodic complements.

    ``progress(tried, hits)`` is called after every candidate. No claim of
    completeness is made; the caller decides which candidates to try.
    """
    hits: list[VuzaHit] = []
    tried = 0
    for a in candidates:
        tried += 1
        if is_periodic(a) is None:
            for b in find_complements(a):
                if is_periodic(b) is None:
                    hits.append(VuzaHit(a, b))
                    if len(hits) >= max_hits:
                        break
        if progress:
            progress(tried, len(hits))
        if len(hits) >= max_hits:
            break
    return hits


def aperiodic_subsets(n: int, k: int, rng: np.random.Generator) -> Iterator[CyclicSubset]:
    """Endless stream of random aperiodic ``k``-subsets containing 0."""
    while True:
        rest = rng.choice(np.arange(1, n), size=k - 1, replace=False)
        a = CyclicSubset.of(n, [0, *rest.tolist()])
        if is_periodic(a) is None:
            yield a


# -- batch routines ---------------------------------------------------------


def subset_bits(n: int, masks: np.ndarray) -> np.ndarray:
    return ((masks[:, None] >> np.arange(n, dtype=masks.dtype)) & 1).astype(np.int64)


def zero_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Bitmask of ``Z_A`` for each subset mask, computed exactly in bulk."""
    bits = subset_bits(n, masks)
    out = np.zeros(len(masks), dtype=np.int64)
    for d, ts in _order_classes(n).items():
        folded = bits.reshape(len(masks), n // d, d).sum(axis=1)
        phi = np.asarray(cyclotomic(d), dtype=np.int64)
        k = len(phi) - 1
        for i in range(d - 1, k - 1, -1):
            c = folded[:, i].copy()
            folded[:, i - k : i + 1] -= c[:, None] * phi[None, :]
        divisible = ~folded[:, :k].any(axis=1)
        tmask = sum(1 << t for t in ts)
        out[divisible] |= tmask
    return out


def _rot_array(masks: np.ndarray, s: int, n: int, full: int) -> np.ndarray:
    s %= n
    if s == 0:
        return masks
    return ((masks << s) | (masks >> (n - s))) & full


@dataclass
class TilingAgreement:
    n: int
    pairs: int = 0
    tilings: int = 0
    mismatches: list[tuple[int, int]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.mismatches


def tiling_agreement(n: int) -> TilingAgreement:
    """Compare the zero-set criterion with the sumset check on every pair.

    Pairs with ``|A| |B| != n`` fail both tests by cardinality and are not
    enumerated. The sumset side covers ``Z_n`` by translates of ``A``.
    """
    full = (1 << n) - 1
    nonzero = full & ~1
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)
    zm = zero_masks(n, masks)
    report = TilingAgreement(n)
    for ka in divisors(n):
        am = masks[sizes == ka]
        bm = masks[sizes == n // ka]
        za, zb = zm[am], zm[bm]
        prop = ((za[:, None] | zb[None, :]) & nonzero) == nonzero
        bits_b = subset_bits(n, bm).astype(bool)
        # cover(A, B) = OR over b in B of A shifted by b
        cover = np.zeros(prop.shape, dtype=np.int64)
        for s in range(n):
            cols = np.flatnonzero(bits_b[:, s])
            if len(cols):
                cover[:, cols] |= _rot_array(am, s, n, full)[:, None]
        direct = cover == full
        report.pairs += prop.size
        report.tilings += int(direct.sum())
        bad = np.argwhere(prop != direct)
        report.mismatches.extend((int(am[i]), int(bm[j])) for i, j in bad[:20])
    return report
