"""Finite metric measure spaces with exact rational distances and weights.

A space stores its distance matrix as integer *codes* into a sorted tuple of
distinct rational values. Every decision procedure in the package (volume
functions, hexachordal checks, homometry) only needs the order of distance
values and the masses attached to them, so working on codes keeps the
arithmetic exact and lets numpy do the counting.

Weights are exact :class:`~fractions.Fraction` values. Internally they are
scaled to integers over a common denominator ``D`` so that pair masses are
integers over ``D**2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

PLAIN = "plain"
SQUARED = "squared"
VALUE_KINDS = (PLAIN, SQUARED)

# float64 holds every integer below 2**53 exactly; bincount sums stay exact
# while all partial sums are below this bound.
_FLOAT_EXACT = 2**53


class HexalabError(Exception):
    """Base class for errors raised by this package."""


class MeasureError(HexalabError, ValueError):
    """A subset has the wrong measure for the requested operation."""


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions, ``"p/q"`` strings and decimal strings exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        # repr round-trips, so "0.9" stays 9/10 rather than the binary value
        return Fraction(repr(x))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(q: Fraction) -> str:
    return str(as_fraction(q))


def _lcm_denominators(qs: Iterable[Fraction]) -> int:
    d = 1
    for q in qs:
        d = math.lcm(d, q.denominator)
    return d


def exact_bincount(idx: np.ndarray, weights: np.ndarray | None, length: int) -> np.ndarray:
    """Integer-exact ``np.bincount``.

    ``weights`` must be nonnegative integers. Falls back to Python integers when
    the total could exceed float64's exact range.
    """
    idx = np.asarray(idx).ravel()
    if weights is None:
        return np.bincount(idx, minlength=length).astype(np.int64)
    weights = np.asarray(weights).ravel()
    total = int(weights.sum()) if weights.dtype != object else sum(weights)
    if weights.dtype != object and total < _FLOAT_EXACT:
        out = np.bincount(idx, weights=weights.astype(np.float64), minlength=length)
        return np.rint(out).astype(np.int64)
    acc = [0] * length
    for i, w in zip(idx.tolist(), weights.tolist()):
        acc[i] += int(w)
    return np.array(acc, dtype=object)


@dataclass(frozen=True, eq=False)
class FiniteMetricMeasureSpace:
    """A finite set of points with rational distances and a rational measure.

    Construction only checks shapes; use :func:`validate_space` for the metric
    axioms. ``codes[i, j]`` indexes into ``values``, the sorted distinct
    distance values. With ``value_kind == "squared"`` the stored values are
    squared distances.
    """

    labels: tuple[str, ...]
    values: tuple[Fraction, ...]
    codes: np.ndarray
    weights: tuple[Fraction, ...]
    value_kind: str = PLAIN
    triangle_checked: bool = False

    def __post_init__(self):
        n = len(self.labels)
        codes = np.asarray(self.codes)
        if codes.shape != (n, n):
            raise ValueError(f"distance matrix must be {n}x{n}, got {codes.shape}")
        if len(self.weights) != n:
            raise ValueError(f"expected {n} weights, got {len(self.weights)}")
        if self.value_kind not in VALUE_KINDS:
            raise ValueError(f"unknown value_kind {self.value_kind!r}")
        if n and (codes.min() < 0 or codes.max() >= len(self.values)):
            raise ValueError("distance codes out of range")
        codes = codes.astype(np.int64, copy=True)
        codes.flags.writeable = False
        object.__setattr__(self, "codes", codes)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_matrix(
        cls,
        dist: Sequence[Sequence],
        weights: Sequence | None = None,
        labels: Sequence | None = None,
        value_kind: str = PLAIN,
    ) -> "FiniteMetricMeasureSpace":
        n = len(dist)
        rows = [[as_fraction(v) for v in row] for row in dist]
        if any(len(row) != n for row in rows):
            raise ValueError("distance matrix must be square")
        values = sorted({v for row in rows for v in row})
        index = {v: k for k, v in enumerate(values)}
        codes = np.array([[index[v] for v in row] for row in rows], dtype=np.int64).reshape(n, n)
        if weights is None:
            weights = [Fraction(1, n)] * n
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(
            labels=tuple(str(x) for x in labels),
            values=tuple(values),
            codes=codes,
            weights=tuple(as_fraction(w) for w in weights),
            value_kind=value_kind,
        )

    @classmethod
    def from_codes(cls, codes, values, weights=None, labels=None, value_kind=PLAIN):
        """Build from an integer code matrix into ``values``.

        Unused values are dropped and equal values merged, so ``values`` need
        not be sorted or distinct.
        """
        codes = np.asarray(codes, dtype=np.int64)
        n = codes.shape[0]
        used = np.unique(codes)
        vals = [as_fraction(values[k]) for k in used]
        distinct = sorted(set(vals))
        pos = {v: i for i, v in enumerate(distinct)}
        lut = np.full(len(values), -1, dtype=np.int64)
        lut[used] = [pos[v] for v in vals]
        new_codes = lut[codes] if n else codes
        if weights is None:
            weights = [Fraction(1, n)] * n
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(
            labels=tuple(str(x) for x in labels),
            values=tuple(distinct),
            codes=new_codes,
            weights=tuple(as_fraction(w) for w in weights),
            value_kind=value_kind,
        )

    # -- accessors --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.n

    def dist(self, i: int, j: int) -> Fraction:
        return self.values[self.codes[i, j]]

    def matrix(self) -> list[list[Fraction]]:
        return [[self.values[c] for c in row] for row in self.codes.tolist()]

    def index(self, label: str) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise KeyError(f"no point labelled {label!r}") from None

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def denominator(self) -> int:
        """Common denominator ``D`` of the weights."""
        return _lcm_denominators(self.weights)

    @cached_property
    def int_weights(self) -> np.ndarray:
        """Weights scaled by :attr:`denominator` (exact integers)."""
        d = self.denominator
        ints = [int(w * d) for w in self.weights]
        # pair masses live on D**2; keep them inside int64
        if d < 2**26:
            return np.array(ints, dtype=np.int64)
        return np.array(ints, dtype=object)

    @cached_property
    def support(self) -> np.ndarray:
        return np.flatnonzero(np.array([w > 0 for w in self.weights], dtype=bool))

    @cached_property
    def row_masses(self) -> np.ndarray:
        """``M[i, c]`` = D * mu{ y : code(i, y) = c } (integers)."""
        return _row_masses(self.codes, self.int_weights, len(self.values))

    def subset(self, members: Iterable) -> "SubsetMask":
        """Subset from point indices or labels."""
        idx = []
        for m in members:
            if isinstance(m, (int, np.integer)) and not isinstance(m, bool):
                idx.append(int(m))
            else:
                idx.append(self.index(m))
        return SubsetMask.from_indices(self, idx)

    def full(self) -> "SubsetMask":
        return SubsetMask.from_indices(self, range(self.n))

    def empty(self) -> "SubsetMask":
        return SubsetMask(self.n, 0, Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "FiniteMetricMeasureSpace":
        """Space whose point ``k`` is this space's point ``perm[k]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return FiniteMetricMeasureSpace(
            labels=tuple(self.labels[p] for p in perm),
            values=self.values,
            codes=self.codes[np.ix_(perm, perm)],
            weights=tuple(self.weights[p] for p in perm),
            value_kind=self.value_kind,
        )

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "points": list(self.labels),
            "weights": [format_fraction(w) for w in self.weights],
            "dist": [[format_fraction(v) for v in row] for row in self.matrix()],
            "value_kind": self.value_kind,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_obj(), **kw)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FiniteMetricMeasureSpace":
        dist = obj["dist"]
        n = len(dist)
        labels = obj.get("points") or [str(i) for i in range(n)]
        return cls.from_matrix(
            dist, weights=obj.get("weights"), labels=labels, value_kind=obj.get("value_kind", PLAIN)
        )

    @classmethod
    def from_json(cls, text: str) -> "FiniteMetricMeasureSpace":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self) -> str:
        return f"FiniteMetricMeasureSpace(n={self.n}, values={len(self.values)}, value_kind={self.value_kind!r})"


def _row_masses(codes: np.ndarray, w: np.ndarray, nvals: int) -> np.ndarray:
    n = codes.shape[0]
    if n == 0:
        return np.zeros((0, nvals), dtype=np.int64)
    flat = (np.arange(n)[:, None] * nvals + codes).ravel()
    return exact_bincount(flat, np.broadcast_to(w, codes.shape), n * nvals).reshape(n, nvals)


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a space's points as a Python-int bit vector."""

    size: int
    bits: int
    measure: Fraction

    @classmethod
    def from_indices(cls, space: FiniteMetricMeasureSpace, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            if not 0 <= i < space.n:
                raise IndexError(f"point {i} outside space of size {space.n}")
            bits |= 1 << i
        return cls.from_bits(space, bits)

    @classmethod
    def from_bits(cls, space: FiniteMetricMeasureSpace, bits: int) -> "SubsetMask":
        if bits >> space.n:
            raise IndexError("mask has bits beyond the space")
        measure = sum((space.weights[i] for i in _iter_bits(bits)), Fraction(0))
        return cls(space.n, bits, measure)

    def complement(self) -> "SubsetMask":
        return SubsetMask(self.size, ((1 << self.size) - 1) ^ self.bits, 1 - self.measure)

    def indices(self) -> list[int]:
        return list(_iter_bits(self.bits))

    def array(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        out[self.indices()] = True
        return out

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()


def _iter_bits(bits: int):
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


@dataclass(frozen=True)
class DistanceDistribution:
    """Finite law of a distance: sorted ``(value, mass)`` pairs with positive mass."""

    entries: tuple[tuple[Fraction, Fraction], ...]
    total: Fraction
    value_kind: str = PLAIN

    def as_dict(self) -> dict[Fraction, Fraction]:
        return dict(self.entries)

    def normalized(self) -> "DistanceDistribution":
        if self.total == 0:
            raise MeasureError("cannot normalize a zero-mass distribution")
        return DistanceDistribution(
            tuple((v, m / self.total) for v, m in self.entries), Fraction(1), self.value_kind
        )

    def cdf(self, r) -> Fraction:
        r = as_fraction(r)
        return sum((m for v, m in self.entries if v <= r), Fraction(0))

    def in_kind(self, value_kind: str) -> "DistanceDistribution":
        """Re-express values as plain or squared distances when exact."""
        if value_kind == self.value_kind:
            return self
        if value_kind == SQUARED:
            return DistanceDistribution(tuple((v * v, m) for v, m in self.entries), self.total, SQUARED)
        raise ValueError("converting squared values to plain distances is not exact")


def _distribution_from_masses(values, masses, denom: int, value_kind: str) -> DistanceDistribution:
    entries = []
    total = Fraction(0)
    for v, m in zip(values, masses.tolist()):
        if m:
            q = Fraction(int(m), denom)
            entries.append((v, q))
            total += q
    return DistanceDistribution(tuple(entries), total, value_kind)


@dataclass(frozen=True)
class VolumeFunction:
    """Step function ``r -> mu(B(x, r))`` sampled at realized distance values."""

    steps: tuple[tuple[Fraction, Fraction], ...]

    def __call__(self, r) -> Fraction:
        r = as_fraction(r)
        out = Fraction(0)
        for radius, mass in self.steps:
            if radius <= r:
                out = mass
            else:
                break
        return out

    @property
    def radii(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.steps)


@dataclass
class Violation:
    kind: str
    witness: tuple[int, ...]
    detail: str = ""


@dataclass
class ValidationReport:
    errors: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.errors

    def kinds(self) -> set[str]:
        return {v.kind for v in self.errors + self.warnings}


def _integer_values(space: FiniteMetricMeasureSpace) -> np.ndarray:
    d = _lcm_denominators(space.values)
    ints = [int(v * d) for v in space.values]
    dtype = np.int64 if max(ints, default=0) < 2**40 else object
    return np.array(ints, dtype=dtype)


def _first_true(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def triangle_violation(space: FiniteMetricMeasureSpace) -> tuple[int, int, int] | None:
    """Return ``(i, j, k)`` with ``d(i,k) > d(i,j) + d(j,k)``, or None.

    Squared values are compared as distances: ``a <= b + c + 2 sqrt(bc)``
    is decided in integers.
    """
    vals = _integer_values(space)
    dm = vals[space.codes]
    n = space.n
    for j in range(n):
        b = dm[:, j][:, None]
        c = dm[j, :][None, :]
        a = dm
        if space.value_kind == PLAIN:
            bad = a > b + c
        else:
            e = a - b - c
            bad = (e > 0) & (e * e > 4 * b * c)
        hit = _first_true(bad)
        if hit is not None:
            i, k = hit
            return (i, j, k)
    return None


def validate_space(space: FiniteMetricMeasureSpace, require_triangle: bool = False) -> ValidationReport:
    """Check symmetry, zero diagonal, nonnegativity, normalization and (optionally strict) triangle inequality."""
    rep = ValidationReport()
    codes = space.codes
    n = space.n
    if n == 0:
        rep.errors.append(Violation("empty", ()))
        return rep
    zero = space.values.index(Fraction(0)) if Fraction(0) in space.values else -1
    diag = np.flatnonzero(np.diag(codes) != zero)
    for i in diag[:10]:
        rep.errors.append(Violation("diagonal", (int(i),), f"d({i},{i}) = {space.dist(i, i)}"))
    asym = np.argwhere(np.triu(codes != codes.T))
    for i, j in asym[:10]:
        rep.errors.append(
            Violation("symmetry", (int(i), int(j)), f"d({i},{j}) = {space.dist(i, j)} != {space.dist(j, i)}")
        )
    if space.values and space.values[0] < 0:
        neg = np.argwhere(codes == 0)
        i, j = neg[0]
        rep.errors.append(Violation("negative", (int(i), int(j)), f"d({i},{j}) = {space.dist(i, j)}"))
    for i, w in enumerate(space.weights):
        if w < 0:
            rep.errors.append(Violation("negative_weight", (i,), f"weight {w}"))
    total = sum(space.weights, Fraction(0))
    if total != 1:
        rep.errors.append(Violation("normalization", (), f"weights sum to {total}"))
    if not rep.errors:
        tri = triangle_violation(space)
        if tri is not None:
            i, j, k = tri
            v = Violation(
                "triangle",
                tri,
                f"d({i},{k}) = {space.dist(i, k)} > d({i},{j}) + d({j},{k}) = {space.dist(i, j)} + {space.dist(j, k)}",
            )
            (rep.errors if require_triangle else rep.warnings).append(v)
    return rep


# -- distributions -------------------------------------------------------


def distance_distribution(space: FiniteMetricMeasureSpace) -> DistanceDistribution:
    """Law of ``d(X, Y)`` for independent ``X, Y ~ mu``."""
    w = space.int_weights
    masses = w @ space.row_masses
    return _distribution_from_masses(space.values, masses, space.denominator**2, space.value_kind)


def restricted_pair_masses(space: FiniteMetricMeasureSpace, a: SubsetMask, b: SubsetMask) -> np.ndarray:
    """Integer masses per distance code of ``mu|A (x) mu|B``, over ``D**2``."""
    ia = a.indices()
    ib = b.indices()
    nv = len(space.values)
    if not ia or not ib:
        return np.zeros(nv, dtype=np.int64)
    w = space.int_weights
    sub = space.codes[np.ix_(ia, ib)]
    return exact_bincount(sub, np.outer(w[ia], w[ib]), nv)


def restricted_distribution(space: FiniteMetricMeasureSpace, a: SubsetMask, b: SubsetMask) -> DistanceDistribution:
    """Unnormalized pushforward of ``mu|A (x) mu|B`` under ``d``; total is ``mu(A) mu(B)``."""
    masses = restricted_pair_masses(space, a, b)
    return _distribution_from_masses(space.values, masses, space.denominator**2, space.value_kind)


def power_mean(space: FiniteMetricMeasureSpace, a: SubsetMask, p) -> float:
    """Power mean distance ``M_p(A)``; ``p = inf`` gives the essential diameter."""
    if a.measure <= 0:
        raise MeasureError("power mean needs a subset of positive measure")
    dist = restricted_distribution(space, a, a)
    squared = space.value_kind == SQUARED

    def actual(v: Fraction) -> float:
        return math.sqrt(v) if squared else float(v)

    if p == math.inf or p == "inf":
        return max(actual(v) for v, _ in dist.entries)
    p = float(as_fraction(p)) if not isinstance(p, float) else p
    if p <= 0:
        raise ValueError("p must be positive")
    acc = sum(float(m / dist.total) * actual(v) ** p for v, m in dist.entries)
    return acc ** (1.0 / p)


def volume_function(space: FiniteMetricMeasureSpace) -> dict[int, VolumeFunction]:
    """Per-point closed-ball volumes at every realized distance value."""
    cum = np.cumsum(space.row_masses, axis=1)
    d = space.denominator
    out = {}
    for i in range(space.n):
        out[i] = VolumeFunction(tuple((r, Fraction(int(m), d)) for r, m in zip(space.values, cum[i].tolist())))
    return out
