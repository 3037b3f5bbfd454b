"""Abstract interval tables ``(X, f, mu)`` and their hexachordal properties.

A table assigns a symbol ``f(x, y)`` to every ordered pair of points. With
``X, Y`` independent of law ``mu`` and ``F = f(X, Y)`` the module decides

* ``ind``: ``X``, ``Y`` and ``F`` are pairwise independent;
* ``hex''``: for any balanced decompositions ``(mu0, mu1)``, ``(nu0, nu1)``
  the law of ``F`` is the same under ``mu0 x nu0`` and ``mu1 x nu1``;
* ``hex'``: the same with ``nu = mu`` (one shared decomposition).

Writing ``mu_i = mu +/- alpha`` and ``nu_i = mu +/- beta``, the difference of
the two laws of ``F`` is ``2 sum (alpha(x) mu(y) + mu(x) beta(y)) [f = v]``,
which is linear in the perturbations. So ``hex''`` holds iff every row and
column kernel ``x -> mu{y : f(x, y) = v}`` is constant on the support, and
``hex'`` iff the symmetrized kernel is. :func:`sample_decomposition_oracle`
checks both claims by drawing decompositions at random.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Hashable, Iterable, Sequence

import numpy as np

from .core import FiniteMetricMeasureSpace, HexalabError, MeasureError, SubsetMask, as_fraction, format_fraction


class TableError(HexalabError, ValueError):
    """Malformed or unsuitable interval table."""


@dataclass(frozen=True, eq=False)
class IntervalTable:
    points: tuple[str, ...]
    values: tuple[tuple[Hashable, ...], ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.points)
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise TableError(f"value table must be {n}x{n}")
        if len(self.weights) != n:
            raise TableError(f"expected {n} weights")
        if any(w < 0 for w in self.weights) or sum(self.weights, Fraction(0)) != 1:
            raise TableError("weights must be a probability measure")

    @classmethod
    def build(cls, points: Sequence, values: Sequence[Sequence], weights: Sequence | None = None) -> "IntervalTable":
        n = len(points)
        w = [Fraction(1, n)] * n if weights is None else [as_fraction(x) for x in weights]
        return cls(tuple(str(p) for p in points), tuple(tuple(row) for row in values), tuple(w))

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def alphabet(self) -> list:
        seen = {}
        for row in self.values:
            for v in row:
                seen.setdefault(v, None)
        return list(seen)

    @cached_property
    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w > 0]

    def subset(self, members: Iterable) -> SubsetMask:
        idx = [m if isinstance(m, int) else self.points.index(str(m)) for m in members]
        return SubsetMask.from_indices(self, idx)

    def is_symmetric(self) -> bool:
        return all(self.values[i][j] == self.values[j][i] for i in range(self.n) for j in range(i))

    # -- io ----------------------------------------------------------------

    @classmethod
    def from_csv(cls, text: str, weights=None) -> "IntervalTable":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
        if len(rows) < 2:
            raise TableError("table needs a header row and at least one data row")
        header = [c.strip() for c in rows[0][1:]]
        body = rows[1:]
        labels = [r[0].strip() for r in body]
        if labels != header:
            raise TableError("row labels must match the header row")
        values = [[c.strip() for c in r[1:]] for r in body]
        if any(len(r) != len(header) for r in values):
            raise TableError("ragged table")
        return cls.build(labels, values, weights)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.points))
        for p, row in zip(self.points, self.values):
            w.writerow([p] + [str(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_json_obj(cls, obj: dict) -> "IntervalTable":
        return cls.build(obj["points"], obj["values"], obj.get("weights"))

    def to_json_obj(self) -> dict:
        return {
            "points": list(self.points),
            "values": [[str(v) for v in row] for row in self.values],
            "weights": [format_fraction(w) for w in self.weights],
        }

    @classmethod
    def load(cls, path) -> "IntervalTable":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".json":
            return cls.from_json_obj(json.loads(text))
        return cls.from_csv(text)


def metric_table(space: FiniteMetricMeasureSpace) -> IntervalTable:
    """View a metric space as a symmetric table with ``f = d``."""
    return IntervalTable(space.labels, tuple(tuple(row) for row in space.matrix()), space.weights)


def group_interval_table(group, mode: str = "product") -> IntervalTable:
    """Cayley table ``f(x, y) = x*y`` (``product``) or ``x^-1 * y`` (``left_quotient``)."""
    labels = group.labels
    n = len(labels)
    if mode == "product":
        idx = group.table
    elif mode == "left_quotient":
        idx = group.table[group.inverse_index[:, None], np.arange(n)[None, :]]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    values = [[labels[k] for k in row] for row in idx.tolist()]
    return IntervalTable.build(labels, values)


# -- decision procedures -----------------------------------------------------


@dataclass(frozen=True)
class TableVerdict:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _kernels(t: IntervalTable):
    row = [defaultdict(Fraction) for _ in range(t.n)]
    col = [defaultdict(Fraction) for _ in range(t.n)]
    for x in range(t.n):
        for y in range(t.n):
            v = t.values[x][y]
            row[x][v] += t.weights[y]
            col[y][v] += t.weights[x]
    return row, col


def _independent(t: IntervalTable, coord: str) -> TableVerdict:
    """Literal independence test of ``F`` with ``X`` (``coord="X"``) or ``Y``."""
    joint = defaultdict(Fraction)
    law = defaultdict(Fraction)
    for x in range(t.n):
        for y in range(t.n):
            m = t.weights[x] * t.weights[y]
            if not m:
                continue
            v = t.values[x][y]
            joint[(x if coord == "X" else y, v)] += m
            law[v] += m
    for p in range(t.n):
        for v in t.alphabet:
            if joint.get((p, v), Fraction(0)) != t.weights[p] * law.get(v, Fraction(0)):
                return TableVerdict(False, (coord, t.points[p], v))
    return TableVerdict(True)


def check_ind(t: IntervalTable) -> TableVerdict:
    """Pairwise independence of ``X``, ``Y`` and ``F = f(X, Y)``.

    ``X`` and ``Y`` are independent by construction; the witness is
    ``(coordinate, point, value)`` where the joint law departs from the product.
    """
    for coord in ("X", "Y"):
        v = _independent(t, coord)
        if not v.holds:
            return v
    return TableVerdict(True)


def _constant_on_support(t: IntervalTable, kernel, label: str) -> TableVerdict:
    supp = t.support
    for v in t.alphabet:
        ref = kernel[supp[0]].get(v, Fraction(0))
        for x in supp[1:]:
            if kernel[x].get(v, Fraction(0)) != ref:
                return TableVerdict(False, (label, t.points[supp[0]], t.points[x], v))
    return TableVerdict(True)


def check_hex_doubleprime(t: IntervalTable) -> TableVerdict:
    """Row and column kernels constant on the support."""
    row, col = _kernels(t)
    v = _constant_on_support(t, row, "row")
    if not v.holds:
        return v
    return _constant_on_support(t, col, "column")


def check_hex_prime(t: IntervalTable) -> TableVerdict:
    """Symmetrized kernel ``x -> mu{y: f(x,y)=v} + mu{y: f(y,x)=v}`` constant on the support."""
    row, col = _kernels(t)
    sym = []
    for x in range(t.n):
        k = defaultdict(Fraction, row[x])
        for v, m in col[x].items():
            k[v] += m
        sym.append(k)
    return _constant_on_support(t, sym, "symmetrized")


def decomposition_laws(t: IntervalTable, alpha: Sequence, beta: Sequence) -> tuple[dict, dict]:
    """Laws of ``F`` under ``(mu+alpha) x (mu+beta)`` and ``(mu-alpha) x (mu-beta)``."""
    mu = t.weights
    out = []
    for sign in (1, -1):
        law = defaultdict(Fraction)
        for x in range(t.n):
            px = mu[x] + sign * alpha[x]
            if not px:
                continue
            for y in range(t.n):
                py = mu[y] + sign * beta[y]
                if py:
                    law[t.values[x][y]] += px * py
        out.append({v: m for v, m in law.items() if m})
    return out[0], out[1]


GRID = 2**16


def random_perturbation(t: IntervalTable, rng: np.random.Generator) -> list[Fraction]:
    """Zero-sum rational ``alpha`` with ``|alpha| <= mu`` supported on ``supp(mu)``."""
    supp = t.support
    alpha = [Fraction(0)] * t.n
    if len(supp) < 2:
        return alpha
    z = [int(v) for v in rng.integers(-GRID, GRID + 1, size=len(supp))]
    mean = Fraction(sum(z), len(z))
    zc = [Fraction(v) - mean for v in z]
    nz = [(t.weights[p] / abs(v)) for p, v in zip(supp, zc) if v]
    if not nz:
        return alpha
    scale = min(nz) * Fraction(int(rng.integers(1, GRID + 1)), GRID)
    for p, v in zip(supp, zc):
        alpha[p] = scale * v
    return alpha


@dataclass(frozen=True)
class OracleResult:
    holds: bool
    trials: int
    violation: tuple | None = None

    def __bool__(self):
        return self.holds


def sample_decomposition_oracle(t: IntervalTable, trials: int = 1000, seed: int = 0, mode: str = "hexprime") -> OracleResult:
    """Randomized check of ``hex'`` (``mode="hexprime"``) or ``hex''`` (``"hexdd"``).

    Each trial draws its own stream from ``SeedSequence(seed)`` and compares
    the two laws of ``F`` exactly. Returns the first violating ``(alpha, beta)``.
    """
    if mode not in ("hexprime", "hexdd"):
        raise ValueError(f"unknown mode {mode!r}")
    for k, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        alpha = random_perturbation(t, rng)
        beta = alpha if mode == "hexprime" else random_perturbation(t, rng)
        l0, l1 = decomposition_laws(t, alpha, beta)
        if l0 != l1:
            return OracleResult(False, k + 1, (tuple(alpha), tuple(beta)))
    return OracleResult(True, trials)


def conditional_interval_distribution(t: IntervalTable, a: SubsetMask) -> dict:
    """Law of ``F`` given ``X in A`` and ``Y in A``."""
    if a.measure <= 0:
        raise MeasureError("conditioning set has zero measure")
    idx = a.indices()
    law = defaultdict(Fraction)
    norm = a.measure * a.measure
    for x in idx:
        for y in idx:
            m = t.weights[x] * t.weights[y]
            if m:
                law[t.values[x][y]] += m / norm
    return dict(law)


class InvolutionError(TableError):
    pass


def verify_antisymmetric(t: IntervalTable, involution: dict) -> bool:
    """Check ``f(x, y) = i(f(y, x))``.

    When ``f`` is antisymmetric and one of ``X``, ``Y`` is independent of
    ``F``, the other independence (hence full ``ind``) is asserted.
    """
    for v in t.alphabet:
        if v not in involution:
            raise InvolutionError(f"involution undefined on {v!r}")
        if involution.get(involution[v]) != v:
            raise InvolutionError(f"i(i({v!r})) != {v!r}")
    anti = all(t.values[x][y] == involution[t.values[y][x]] for x in range(t.n) for y in range(t.n))
    if anti:
        x_ok = _independent(t, "X").holds
        y_ok = _independent(t, "Y").holds
        if x_ok != y_ok:
            raise AssertionError("antisymmetric f with only one of X, Y independent of F")
    return anti


def is_latin_square(t: IntervalTable) -> bool:
    """Every symbol occurs exactly once in each row and each column."""
    symbols = set(t.alphabet)
    if len(symbols) != t.n:
        return False
    for i in range(t.n):
        if set(t.values[i]) != symbols or len(set(t.values[i])) != t.n:
            return False
        col = [t.values[x][i] for x in range(t.n)]
        if set(col) != symbols:
            return False
    return True


def _two_sided_identity(t: IntervalTable) -> int | None:
    pts = list(t.points)
    for e in range(t.n):
        if [str(v) for v in t.values[e]] == pts and [str(t.values[x][e]) for x in range(t.n)] == pts:
            return e
    return None


def loop_is_group(t: IntervalTable) -> bool:
    """Associativity of the table read as a binary operation on its points.

    Needs a two-sided identity: a point whose row and column reproduce the
    headers.
    """
    if _two_sided_identity(t) is None:
        raise TableError("no two-sided identity: row and column of some point must equal the headers")
    index = {p: i for i, p in enumerate(t.points)}
    op = np.array([[index[str(v)] for v in row] for row in t.values], dtype=np.int64)
    left = op[op[:, :, None], np.arange(t.n)[None, None, :]]  # (x*y)*z
    right = op[np.arange(t.n)[:, None, None], op[None, :, :]]  # x*(y*z)
    return bool(np.array_equal(left, right))
