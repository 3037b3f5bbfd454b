"""Seeded Monte Carlo on spheres, flat tori and flat Klein bottles.

Pairs of independent uniform points are drawn, tagged by membership in a
subset ``A`` and reduced to distances. Strata ``AA``, ``AcAc`` and ``AAc``
(mixed pairs) then give empirical distance laws that can be compared with a
two-sample Kolmogorov-Smirnov test.

Every run is reproducible from ``(spec, predicate, count, seed, workers)``:
worker ``i`` draws from child ``i`` of ``SeedSequence(seed)`` and chunks are
concatenated in worker order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .core import HexalabError


class EmptyStratumError(HexalabError):
    """A requested stratum of the sample has no pairs."""


# -- spaces -----------------------------------------------------------------


@dataclass(frozen=True)
class ContinuousSpaceSpec:
    """``sphere`` (params ``(d,)``), ``torus`` (side lengths) or ``klein`` (``(a, b)``).

    The Klein bottle is the plane modulo ``(x, y) -> (x + a, y)`` and the
    glide ``(x, y) -> (a - x, y + b)``; ``window`` bounds the deck
    transformations searched when computing distances.
    """

    kind: str
    params: tuple[float, ...]
    metric: str = "chord"
    window: int = 2

    def __post_init__(self):
        if self.kind == "sphere":
            if len(self.params) != 1 or int(self.params[0]) != self.params[0] or self.params[0] < 1:
                raise ValueError("sphere needs an integer dimension d >= 1")
            if self.metric not in ("chord", "geodesic"):
                raise ValueError(f"unknown sphere metric {self.metric!r}")
        elif self.kind == "torus":
            if not self.params or any(p <= 0 for p in self.params):
                raise ValueError("torus needs positive side lengths")
        elif self.kind == "klein":
            if len(self.params) != 2 or any(p <= 0 for p in self.params):
                raise ValueError("klein needs two positive side lengths")
        else:
            raise ValueError(f"unknown space kind {self.kind!r}")

    @classmethod
    def sphere(cls, d: int = 2, metric: str = "chord") -> "ContinuousSpaceSpec":
        return cls("sphere", (d,), metric)

    @classmethod
    def torus(cls, *lengths: float) -> "ContinuousSpaceSpec":
        return cls("torus", tuple(float(x) for x in (lengths or (1.0, 1.0))))

    @classmethod
    def klein(cls, a: float = 1.0, b: float = 1.0, window: int = 2) -> "ContinuousSpaceSpec":
        return cls("klein", (float(a), float(b)), window=window)

    @classmethod
    def parse(cls, text: str) -> "ContinuousSpaceSpec":
        """``sphere:2``, ``sphere:2:geodesic``, ``torus:1,1`` or ``klein:1,1``."""
        kind, _, rest = text.partition(":")
        if kind == "sphere":
            dim, _, metric = rest.partition(":")
            return cls.sphere(int(dim or 2), metric or "chord")
        nums = tuple(float(x) for x in rest.split(",") if x) if rest else ()
        if kind == "torus":
            return cls.torus(*nums)
        if kind == "klein":
            if nums and len(nums) != 2:
                raise ValueError("klein needs two side lengths a,b")
            return cls.klein(*(nums or (1.0, 1.0)))
        raise ValueError(f"unknown space {text!r}")

    def __str__(self):
        if self.kind == "sphere":
            tail = "" if self.metric == "chord" else ":" + self.metric
            return f"sphere:{int(self.params[0])}{tail}"
        return f"{self.kind}:" + ",".join(f"{p:g}" for p in self.params)

    @property
    def diameter(self) -> float:
        if self.kind == "sphere":
            return 2.0 if self.metric == "chord" else math.pi
        if self.kind == "torus":
            return math.hypot(*(p / 2 for p in self.params))
        a, b = self.params
        return math.hypot(a / 2, b / 2)

    def sample_points(self, rng: np.random.Generator, m: int) -> np.ndarray:
        if self.kind == "sphere":
            g = rng.standard_normal((m, int(self.params[0]) + 1))
            return g / np.linalg.norm(g, axis=1, keepdims=True)
        return rng.random((m, len(self.params))) * np.asarray(self.params)

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        if self.kind == "sphere":
            chord = np.linalg.norm(p - q, axis=1)
            if self.metric == "geodesic":
                return 2 * np.arcsin(np.clip(chord / 2, 0, 1))
            return chord
        if self.kind == "torus":
            lengths = np.asarray(self.params)
            d = np.abs(p - q) % lengths
            return np.linalg.norm(np.minimum(d, lengths - d), axis=1)
        return klein_distance(p, q, *self.params, window=self.window)


def klein_distance(p: np.ndarray, q: np.ndarray, a: float = 1.0, b: float = 1.0, window: int = 2) -> np.ndarray:
    """Quotient distance: minimum over images ``(k a + s q_x, q_y + l b)``, ``s = +1`` iff ``l`` even."""
    p = np.atleast_2d(p)
    q = np.atleast_2d(q)
    best = np.full(np.broadcast_shapes(p.shape[:1], q.shape[:1]), np.inf)
    for l in range(-window, window + 1):
        s = 1.0 if l % 2 == 0 else -1.0
        dy = p[:, 1] - (q[:, 1] + l * b)
        for k in range(-window, window + 1):
            dx = p[:, 0] - (k * a + s * q[:, 0])
            np.minimum(best, np.hypot(dx, dy), out=best)
    return best


# -- subset predicates ------------------------------------------------------

Predicate = Callable[[np.ndarray], np.ndarray]


def make_predicate(spec: ContinuousSpaceSpec, name: str | Predicate) -> Predicate:
    """Named half-measure subsets, or a callable passed through.

    ``band[:deg]`` is ``|latitude| < deg`` (default 30) on a sphere, ``caps``
    its complement, ``hemisphere`` the upper half; ``strip`` is the lower
    half ``y < b/2`` of a Klein bottle and ``x < a/2`` on a torus; ``all``
    is the whole space.
    """
    if callable(name):
        return name
    base, _, arg = name.partition(":")
    if base == "all":
        return lambda pts: np.ones(len(pts), dtype=bool)
    if spec.kind == "sphere":
        if base in ("band", "caps"):
            z0 = math.sin(math.radians(float(arg) if arg else 30.0))
            if base == "band":
                return lambda pts: np.abs(pts[:, -1]) < z0
            return lambda pts: np.abs(pts[:, -1]) >= z0
        if base == "hemisphere":
            return lambda pts: pts[:, -1] > 0
    elif base == "strip":
        if spec.kind == "torus":
            half = spec.params[0] / 2
            return lambda pts: pts[:, 0] < half
        half = spec.params[1] / 2
        return lambda pts: pts[:, 1] < half
    raise ValueError(f"predicate {name!r} is not defined on {spec}")


# -- sampling ---------------------------------------------------------------


@dataclass
class EmpiricalSample:
    spec: object
    predicate: str
    seed: int
    count: int
    workers: int
    distances: np.ndarray
    in_x: np.ndarray
    in_y: np.ndarray

    def stratum(self, which: str) -> np.ndarray:
        if which == "AA":
            sel = self.in_x & self.in_y
        elif which == "AcAc":
            sel = ~self.in_x & ~self.in_y
        elif which == "AAc":
            sel = self.in_x ^ self.in_y
        elif which == "all":
            return self.distances
        else:
            raise ValueError(f"unknown stratum {which!r}")
        return self.distances[sel]

    @property
    def pairs(self) -> list[tuple[float, bool, bool]]:
        return list(zip(self.distances.tolist(), self.in_x.tolist(), self.in_y.tolist()))


def _chunk(spec, pred, m: int, seq: np.random.SeedSequence):
    rng = np.random.default_rng(seq)
    p = spec.sample_points(rng, m)
    q = spec.sample_points(rng, m)
    return spec.distance(p, q), pred(p), pred(q)


def sample_pairs(spec, predicate: str | Predicate = "all", count: int = 1000, seed: int = 0, workers: int = 1) -> EmpiricalSample:
    """Draw ``count`` independent uniform pairs and tag them by ``predicate``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    workers = max(1, min(int(workers), count))
    pred = make_predicate(spec, predicate) if isinstance(spec, ContinuousSpaceSpec) else (predicate if callable(predicate) else (lambda pts: np.ones(len(pts), dtype=bool)))
    sizes = [count // workers + (i < count % workers) for i in range(workers)]
    seqs = np.random.SeedSequence(seed).spawn(workers)
    if workers == 1:
        parts = [_chunk(spec, pred, sizes[0], seqs[0])]
    else:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda i: _chunk(spec, pred, sizes[i], seqs[i]), range(workers)))
    d, x, y = (np.concatenate([part[i] for part in parts]) for i in range(3))
    name = predicate if isinstance(predicate, str) else getattr(predicate, "__name__", "custom")
    return EmpiricalSample(spec, name, seed, count, workers, d, x.astype(bool), y.astype(bool))


# -- estimates --------------------------------------------------------------


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    count: int

    def within(self, target: float, k: float = 3.0) -> bool:
        return bool(abs(self.value - target) <= k * self.stderr)


def _proportion(hits: int, m: int) -> Estimate:
    p = hits / m
    return Estimate(p, math.sqrt(p * (1 - p) / m), m)


def conditional_cdf(sample: EmpiricalSample, which: str, r: float) -> Estimate:
    """Empirical ``P(D <= r)`` on a stratum, with binomial standard error."""
    d = sample.stratum(which)
    if len(d) == 0:
        raise EmptyStratumError(f"stratum {which} is empty")
    return _proportion(int(np.count_nonzero(d <= r)), len(d))


@dataclass(frozen=True)
class KSResult:
    statistic: float
    critical: float
    alpha: float
    pvalue: float
    sizes: tuple[int, int]

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical

    def __bool__(self):
        return self.passed


def ks_critical(alpha: float, m: int, n: int) -> float:
    return math.sqrt(-math.log(alpha / 2) / 2) * math.sqrt((m + n) / (m * n))


def ks_two_sample(s1: Sequence[float], s2: Sequence[float], alpha: float = 0.01) -> KSResult:
    """Two-sample KS statistic against the asymptotic critical value at level ``alpha``."""
    s1, s2 = np.asarray(s1, dtype=float), np.asarray(s2, dtype=float)
    if len(s1) == 0 or len(s2) == 0:
        raise EmptyStratumError("KS test needs two nonempty samples")
    res = stats.ks_2samp(s1, s2, method="asymp")
    return KSResult(float(res.statistic), ks_critical(alpha, len(s1), len(s2)), alpha, float(res.pvalue), (len(s1), len(s2)))


@dataclass(frozen=True)
class ThreeSampleReport:
    s1: int
    s2: int
    s3: int
    ks: KSResult
    grid: tuple[float, ...]
    cdf_a: tuple[float, ...]
    cdf_ac: tuple[float, ...]

    @property
    def passed(self) -> bool:
        return self.ks.passed


def three_sample_heuristic(sample: EmpiricalSample, alpha: float = 0.01, grid_points: int = 11) -> ThreeSampleReport:
    """Compare ``S1 + S3`` with ``S2 + S3`` where ``S3`` holds the mixed pairs."""
    s1, s2, s3 = sample.stratum("AA"), sample.stratum("AcAc"), sample.stratum("AAc")
    for name, s in (("AA", s1), ("AcAc", s2), ("AAc", s3)):
        if len(s) == 0:
            raise EmptyStratumError(f"stratum {name} is empty")
    u, v = np.concatenate([s1, s3]), np.concatenate([s2, s3])
    ks = ks_two_sample(u, v, alpha)
    hi = float(max(u.max(), v.max()))
    grid = np.linspace(0.0, hi, grid_points)
    su, sv = np.sort(u), np.sort(v)
    cu = np.searchsorted(su, grid, side="right") / len(u)
    cv = np.searchsorted(sv, grid, side="right") / len(v)
    return ThreeSampleReport(len(s1), len(s2), len(s3), ks, tuple(grid.tolist()), tuple(cu.tolist()), tuple(cv.tolist()))


def sphere_volume_closed_form(d: int, r: float) -> float | None:
    """Exact ``P(chord <= r)`` for S^1 and S^2, else ``None``."""
    r = min(max(r, 0.0), 2.0)
    if d == 1:
        return 2 / math.pi * math.asin(r / 2)
    if d == 2:
        return r * r / 4
    return None


@dataclass(frozen=True)
class VolumePoint:
    r: float
    estimate: Estimate
    closed_form: float | None

    @property
    def agrees(self) -> bool | None:
        if self.closed_form is None:
            return None
        return self.estimate.within(self.closed_form)


def estimate_volume_function(spec, radii: Sequence[float], count: int = 100_000, seed: int = 0, workers: int = 1) -> list[VolumePoint]:
    """``rho(r) = P(D <= r)`` on a grid, with the closed form where one is known."""
    sample = sample_pairs(spec, "all", count, seed, workers)
    d = np.sort(sample.distances)
    out = []
    for r in radii:
        est = _proportion(int(np.searchsorted(d, r, side="right")), len(d))
        closed = None
        if isinstance(spec, ContinuousSpaceSpec) and spec.kind == "sphere" and spec.metric == "chord":
            closed = sphere_volume_closed_form(int(spec.params[0]), r)
        out.append(VolumePoint(float(r), est, closed))
    return out


def mean_chord(spec, count: int = 100_000, seed: int = 0, workers: int = 1) -> Estimate:
    """Mean distance between two independent uniform points."""
    d = sample_pairs(spec, "all", count, seed, workers).distances
    sd = float(d.std(ddof=1)) if len(d) > 1 else 0.0
    return Estimate(float(d.mean()), sd / math.sqrt(len(d)), len(d))


def estimate_ball_volume(spec: ContinuousSpaceSpec, center: Sequence[float], r: float, count: int = 100_000, seed: int = 0) -> Estimate:
    """``mu(B(center, r))`` by uniform sampling."""
    rng = np.random.default_rng(seed)
    pts = spec.sample_points(rng, count)
    c = np.broadcast_to(np.asarray(center, dtype=float), pts.shape)
    return _proportion(int(np.count_nonzero(spec.distance(c, pts) <= r)), count)


@dataclass
class BandExperiment:
    """Summary of the latitude-band experiment on S^2."""

    count: int
    seed: int
    workers: int
    r: float
    band_fraction: Estimate
    caps: Estimate
    band: Estimate
    ks: KSResult
    three: ThreeSampleReport
    extras: dict = field(default_factory=dict)


def band_experiment(count: int = 1_000_000, seed: int = 42, r: float = math.sqrt(2), workers: int = 1, alpha: float = 0.01) -> BandExperiment:
    spec = ContinuousSpaceSpec.sphere(2)
    sample = sample_pairs(spec, "band", count, seed, workers)
    frac = _proportion(int(sample.in_x.sum() + sample.in_y.sum()), 2 * count)
    return BandExperiment(
        count,
        seed,
        sample.workers,
        r,
        frac,
        conditional_cdf(sample, "AcAc", r),
        conditional_cdf(sample, "AA", r),
        ks_two_sample(sample.stratum("AA"), sample.stratum("AcAc"), alpha),
        three_sample_heuristic(sample, alpha),
    )
