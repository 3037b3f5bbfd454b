"""Builders for finite CVC spaces: Cayley graphs, named graphs, products,
unions, graph substitution, weighted Hamming cubes and truncated Cantor spaces.

All graph spaces carry the path distance and the uniform measure.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .core import (
    PLAIN,
    SQUARED,
    FiniteMetricMeasureSpace,
    HexalabError,
    SubsetMask,
    as_fraction,
    distance_distribution,
)
from .groups import CyclicProduct, FiniteGroup, SymmetricGroup
from .hexcvc import check_cvc


class ConstructionError(HexalabError, ValueError):
    """Inputs violate a construction's preconditions."""


class TriangleWarning(UserWarning):
    """The constructed interval function is not a metric."""


# -- Cayley graphs -------------------------------------------------------


@dataclass
class CayleySpec:
    """A finite group with a generating set; generators are symmetrized."""

    group: FiniteGroup
    generators: Sequence

    def __post_init__(self):
        g = self.group
        gens = []
        for s in self.generators:
            s = g.normalize(s)
            if s == g.identity:
                raise ConstructionError("the identity cannot be a generator")
            for t in (s, g.inv(s)):
                if t not in gens:
                    gens.append(t)
        self.generators = gens


def cayley_graph(spec: CayleySpec) -> FiniteMetricMeasureSpace:
    """Word-length metric ``d(x, y) = |x^-1 y|`` with the uniform measure."""
    g = spec.group
    n = len(g)
    e = g.index(g.identity)
    gens = [g.index(s) for s in spec.generators]
    length = np.full(n, -1, dtype=np.int64)
    length[e] = 0
    frontier = [e]
    while frontier:
        nxt = []
        for z in frontier:
            for s in gens:
                y = g.table[z, s]
                if length[y] < 0:
                    length[y] = length[z] + 1
                    nxt.append(y)
        frontier = nxt
    if (length < 0).any():
        raise ConstructionError(f"generators do not generate {g.name}")
    quotient = g.table[g.inverse_index[:, None], np.arange(n)[None, :]]
    codes = length[quotient]
    values = list(range(int(length.max()) + 1))
    return FiniteMetricMeasureSpace.from_codes(codes, values, labels=g.labels)


def cyclic_cayley(moduli: Sequence[int]) -> CayleySpec:
    """``Z/n1 x ... x Z/nk`` with the unit vectors as generators."""
    g = CyclicProduct(moduli)
    gens = []
    for k, m in enumerate(g.moduli):
        if m > 1:
            v = [0] * len(g.moduli)
            v[k] = 1
            gens.append(tuple(v))
    return CayleySpec(g, gens)


def hypercube(k: int) -> FiniteMetricMeasureSpace:
    return cayley_graph(cyclic_cayley([2] * k))


def symmetric_transpositions(degree: int) -> FiniteMetricMeasureSpace:
    g = SymmetricGroup(degree)
    return cayley_graph(CayleySpec(g, g.transpositions()))


def zmod_graph(n: int, generators: Sequence[int]) -> FiniteMetricMeasureSpace:
    """Circulant graph on ``Z/n``: ``x ~ y`` iff ``y - x`` is a generator (up to sign)."""
    g = CyclicProduct([n])
    return cayley_graph(CayleySpec(g, [(s % n,) for s in generators]))


# -- named graphs ----------------------------------------------------------


def graph_space(n: int, edges, labels=None) -> FiniteMetricMeasureSpace:
    """Path-distance space of an undirected graph."""
    edges = list(edges)
    if edges:
        r, c = zip(*edges)
    else:
        r, c = (), ()
    adj = csr_matrix((np.ones(len(r)), (r, c)), shape=(n, n))
    dist = shortest_path(adj, directed=False, unweighted=True)
    if not np.isfinite(dist).all():
        raise ConstructionError("graph is disconnected")
    codes = dist.astype(np.int64)
    return FiniteMetricMeasureSpace.from_codes(codes, list(range(int(codes.max()) + 1)), labels=labels)


def _nearest_neighbour_edges(points: np.ndarray):
    d = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=-1)
    np.fill_diagonal(d, np.inf)
    edge = d.min()
    r, c = np.nonzero(np.isclose(d, edge, rtol=1e-9, atol=0))
    return [(i, j) for i, j in zip(r.tolist(), c.tolist()) if i < j]


def _even_permutations(v):
    x, y, z = v
    return [(x, y, z), (y, z, x), (z, x, y)]


def _signed(v):
    out = set()
    for signs in itertools.product((1, -1), repeat=3):
        out.add(tuple(s * a if a != 0 else 0.0 for s, a in zip(signs, v)))
    return out


def _polyhedron(name: str) -> np.ndarray:
    phi = (1 + math.sqrt(5)) / 2
    if name == "icosahedron":
        bases = [(0.0, 1.0, phi)]
    elif name == "dodecahedron":
        bases = [(1.0, 1.0, 1.0), (0.0, 1 / phi, phi)]
    elif name == "truncated_icosahedron":
        bases = [(0.0, 1.0, 3 * phi), (1.0, 2 + phi, 2 * phi), (phi, 2.0, phi**3)]
    else:
        raise ValueError(name)
    pts = set()
    for b in bases:
        for s in _signed(b):
            for p in _even_permutations(s):
                pts.add(tuple(round(x, 12) for x in p))
    return np.array(sorted(pts))


def petersen_graph() -> FiniteMetricMeasureSpace:
    """Kneser graph K(5, 2): 2-subsets of {0..4}, adjacent when disjoint."""
    verts = list(itertools.combinations(range(5), 2))
    edges = [(i, j) for i, j in itertools.combinations(range(10), 2) if not set(verts[i]) & set(verts[j])]
    return graph_space(10, edges, labels=["".join(map(str, v)) for v in verts])


def named_graph(name: str, n: int | None = None) -> FiniteMetricMeasureSpace:
    """``petersen``, ``dodecahedron``, ``icosahedron``, ``truncated_icosahedron``,
    ``cycle`` (needs ``n``) or ``path`` (needs ``n``)."""
    if name == "petersen":
        return petersen_graph()
    if name in ("dodecahedron", "icosahedron", "truncated_icosahedron"):
        pts = _polyhedron(name)
        return graph_space(len(pts), _nearest_neighbour_edges(pts))
    if name in ("cycle", "path"):
        if n is None or n < 1:
            raise ConstructionError(f"{name} needs a positive size n")
        edges = [(i, i + 1) for i in range(n - 1)]
        if name == "cycle" and n > 2:
            edges.append((n - 1, 0))
        return graph_space(n, edges)
    raise ConstructionError(f"unknown named graph {name!r}")


def cycle(n: int) -> FiniteMetricMeasureSpace:
    return named_graph("cycle", n)


def path(n: int) -> FiniteMetricMeasureSpace:
    return named_graph("path", n)


# -- products ----------------------------------------------------------------


@dataclass
class ProductSpec:
    factors: tuple
    p: object = 1
    exact: bool = True


def _squared(space: FiniteMetricMeasureSpace) -> tuple[list[Fraction], str]:
    if space.value_kind == SQUARED:
        return list(space.values), SQUARED
    return [v * v for v in space.values], SQUARED


def product_space(spec: ProductSpec) -> FiniteMetricMeasureSpace:
    """Product measure with distances combined by the l^p norm.

    ``p = 2`` stores squared distances ``d1**2 + d2**2``. Other finite ``p``
    outside ``{1, 2}`` need ``exact=False`` and round the combined distance to
    a float.
    """
    s1, s2 = spec.factors
    p = spec.p
    if p in ("inf", "infinity"):
        p = math.inf
    n1, n2 = s1.n, s2.n
    c1 = np.repeat(np.repeat(s1.codes, n2, axis=0), n2, axis=1)
    c2 = np.tile(s2.codes, (n1, n1))
    kind = PLAIN
    if p == 2:
        v1, kind = _squared(s1)
        v2, _ = _squared(s2)
        table = [[a + b for b in v2] for a in v1]
    elif p in (1, math.inf):
        if s1.value_kind != s2.value_kind:
            raise ConstructionError("cannot mix squared and plain factors in an l1/l-inf product")
        kind = s1.value_kind
        if p == math.inf:
            table = [[max(a, b) for b in s2.values] for a in s1.values]
        else:
            if kind == SQUARED:
                raise ConstructionError("l1 sums of squared distances are not exact")
            table = [[a + b for b in s2.values] for a in s1.values]
    else:
        p = float(p)
        if spec.exact:
            raise ConstructionError(f"l^{p} product is only exact for p in (1, 2, inf)")
        if p < 1:
            raise ConstructionError("p must be at least 1")
        if s1.value_kind != PLAIN or s2.value_kind != PLAIN:
            raise ConstructionError("float l^p products need plain factors")
        table = [
            [Fraction((float(a) ** p + float(b) ** p) ** (1 / p)) for b in s2.values] for a in s1.values
        ]
    flat = [v for row in table for v in row]
    codes = c1 * len(s2.values) + c2
    weights = [w1 * w2 for w1 in s1.weights for w2 in s2.weights]
    labels = [f"({a},{b})" for a in s1.labels for b in s2.labels]
    return FiniteMetricMeasureSpace.from_codes(codes, flat, weights=weights, labels=labels, value_kind=kind)


def product_volume_convolution(rho1, rho2, p) -> "callable":
    """Volume function of an l^p product from the factors' laws.

    ``rho1``/``rho2`` are :class:`DistanceDistribution` objects (plain kind).
    Returns ``r -> sum_t P(D1 = t) * P(D2^p <= r^p - t^p)`` evaluated exactly
    for ``p in (1, 2)`` (``r`` in the product's value kind) and
    ``max``-combination for ``p = inf``.
    """
    e1, e2 = rho1.entries, rho2.entries

    def rho(r):
        r = as_fraction(r)
        total = Fraction(0)
        for t, m1 in e1:
            for s, m2 in e2:
                if p == 1:
                    ok = t + s <= r
                elif p == 2:
                    ok = t * t + s * s <= r
                else:
                    ok = max(t, s) <= r
                if ok:
                    total += m1 * m2
        return total

    return rho


# -- unions and substitution -------------------------------------------------


def _same_volume(s1: FiniteMetricMeasureSpace, s2: FiniteMetricMeasureSpace) -> bool:
    for s in (s1, s2):
        if not check_cvc(s).holds:
            return False
    d1, d2 = distance_distribution(s1), distance_distribution(s2)
    if d1.value_kind != d2.value_kind:
        d1, d2 = d1.in_kind(SQUARED), d2.in_kind(SQUARED)
    return d1.entries == d2.entries


def _cross_value(L: Fraction, kind: str) -> Fraction:
    return L * L if kind == SQUARED else L


def _diameter_ok(space: FiniteMetricMeasureSpace, L: Fraction, strict: bool) -> bool:
    bound = _cross_value(2 * L, space.value_kind)
    diam = space.values[-1]
    return diam < bound if strict else diam <= bound


def _block_space(parts, cross_codes: np.ndarray, cross_values, weights, kind):
    sizes = [p.n for p in parts]
    offsets = np.cumsum([0] + sizes)
    total = int(offsets[-1])
    values: list[Fraction] = list(cross_values)
    codes = np.empty((total, total), dtype=np.int64)
    for a in range(len(parts)):
        for b in range(len(parts)):
            codes[offsets[a] : offsets[a + 1], offsets[b] : offsets[b + 1]] = cross_codes[a, b]
    for k, part in enumerate(parts):
        base = len(values)
        if part.value_kind == kind:
            values.extend(part.values)
        else:
            values.extend(v * v for v in part.values)
        codes[offsets[k] : offsets[k + 1], offsets[k] : offsets[k + 1]] = part.codes + base
    labels = [f"{k}:{lab}" for k, part in enumerate(parts) for lab in part.labels]
    return FiniteMetricMeasureSpace.from_codes(codes, values, weights=weights, labels=labels, value_kind=kind)


def _common_kind(spaces) -> str:
    return SQUARED if any(s.value_kind == SQUARED for s in spaces) else PLAIN


def union_space(s1: FiniteMetricMeasureSpace, s2: FiniteMetricMeasureSpace, L) -> FiniteMetricMeasureSpace:
    """Disjoint union at cross distance ``L`` with measure ``(mu1 + mu2) / 2``.

    Both inputs must satisfy CVC with the same volume function. Emits a
    :class:`TriangleWarning` when a diameter exceeds ``2L``.
    """
    L = as_fraction(L)
    if L <= 0:
        raise ConstructionError("L must be positive")
    if not _same_volume(s1, s2):
        raise ConstructionError("union needs two CVC spaces with the same volume function")
    kind = _common_kind([s1, s2])
    for s in (s1, s2):
        if not _diameter_ok(s, L, strict=False):
            warnings.warn(
                TriangleWarning(f"diameter {s.values[-1]} exceeds 2L = {2 * L}; d is not a metric"), stacklevel=2
            )
            break
    half = Fraction(1, 2)
    weights = [w * half for w in s1.weights] + [w * half for w in s2.weights]
    cross = np.array([[0, 1], [1, 0]])
    out = _block_space([s1, s2], cross, [Fraction(0), _cross_value(L, kind)], weights, kind)
    if not check_cvc(out).holds:
        raise ConstructionError("union lost the constant volume condition")
    return out


def graph_substitution(backbone: FiniteMetricMeasureSpace, parts, L) -> FiniteMetricMeasureSpace:
    """Replace each backbone point by a part; cross distances are ``L * d0``.

    ``backbone`` is a CVC space with uniform weights and adjacent points at
    distance 1 (e.g. a graph). Parts share one volume function and have
    diameters below ``2L``.
    """
    L = as_fraction(L)
    parts = list(parts)
    if L <= 0:
        raise ConstructionError("L must be positive")
    if len(parts) != backbone.n:
        raise ConstructionError(f"need {backbone.n} parts, got {len(parts)}")
    if backbone.value_kind != PLAIN:
        raise ConstructionError("backbone distances must be plain")
    if len(set(backbone.weights)) != 1:
        raise ConstructionError("backbone must carry the uniform (counting) measure")
    if not check_cvc(backbone).holds:
        raise ConstructionError("backbone does not satisfy CVC")
    for k, part in enumerate(parts):
        if not _same_volume(parts[0], part):
            raise ConstructionError(f"part {k} does not share the volume function of part 0")
        if not _diameter_ok(part, L, strict=True):
            raise ConstructionError(f"part {k} has diameter {part.values[-1]} >= 2L")
    kind = _common_kind(parts)
    cross_values = [_cross_value(L * v, kind) for v in backbone.values]
    weights = [wb * w for wb, part in zip(backbone.weights, parts) for w in part.weights]
    out = _block_space(parts, np.asarray(backbone.codes), cross_values, weights, kind)
    if not check_cvc(out).holds:
        raise ConstructionError("substitution lost the constant volume condition")
    return out


# -- Hamming cubes and Cantor truncations ------------------------------------


def hamming_space(n: int, weights: Sequence | None = None) -> FiniteMetricMeasureSpace:
    """``{0,1}^n`` with ``d(x, y) = sum_i a_i [x_i != y_i]`` and the uniform measure.

    Point ``k`` has coordinate ``i`` equal to bit ``i`` of ``k``; its label is
    the digit string ``x_1 x_2 ... x_n``.
    """
    if n < 1:
        raise ConstructionError("n must be at least 1")
    a = [Fraction(1)] * n if weights is None else [as_fraction(w) for w in weights]
    if len(a) != n or any(w <= 0 for w in a):
        raise ConstructionError("need n positive weights")
    size = 1 << n
    pattern_values = [sum((a[i] for i in range(n) if p >> i & 1), Fraction(0)) for p in range(size)]
    idx = np.arange(size)
    codes = idx[:, None] ^ idx[None, :]
    labels = ["".join(str(k >> i & 1) for i in range(n)) for k in range(size)]
    return FiniteMetricMeasureSpace.from_codes(codes, pattern_values, labels=labels)


def cantor_space(depth: int) -> FiniteMetricMeasureSpace:
    """First ``depth`` digits of the Cantor space, ``d = sum |x_i - y_i| 2/3**i``."""
    if depth < 1:
        raise ConstructionError("depth must be at least 1")
    return hamming_space(depth, [Fraction(2, 3**i) for i in range(1, depth + 1)])


def consecutive_run_subset(space: FiniteMetricMeasureSpace, length: int = 3) -> SubsetMask:
    """Points of a Hamming space whose digit string has ``length`` equal consecutive digits."""
    members = [i for i, lab in enumerate(space.labels) if any(len(set(lab[k : k + length])) == 1 for k in range(len(lab) - length + 1))]
    return SubsetMask.from_indices(space, members)


# -- recipes -------------------------------------------------------------------


def _group_from_recipe(obj) -> FiniteGroup:
    if "cyclic" in obj:
        return CyclicProduct(obj["cyclic"])
    if "symmetric" in obj:
        return SymmetricGroup(int(obj["symmetric"]))
    raise ConstructionError(f"unknown group {obj!r}")


def cayley_spec_from_recipe(recipe: dict) -> CayleySpec:
    kind = recipe.get("kind")
    if kind == "zmod":
        g = CyclicProduct([int(recipe["n"])])
        return CayleySpec(g, [(s,) for s in recipe["generators"]])
    if kind != "cayley":
        raise ConstructionError(f"recipe of kind {kind!r} has no group")
    g = _group_from_recipe(recipe["group"])
    gens = recipe.get("generators", "standard")
    if gens == "standard":
        if not isinstance(g, CyclicProduct):
            raise ConstructionError("standard generators are defined for cyclic products")
        return cyclic_cayley(g.moduli)
    if gens == "transpositions":
        if not isinstance(g, SymmetricGroup):
            raise ConstructionError("transpositions need a symmetric group")
        return CayleySpec(g, g.transpositions())
    parsed = [g.parse(s) if isinstance(s, str) else g.normalize(s) for s in gens]
    return CayleySpec(g, parsed)


def build_space(recipe: dict) -> FiniteMetricMeasureSpace:
    """Materialize a space from a JSON-style recipe ``{"kind": ..., ...}``."""
    kind = recipe.get("kind")
    if kind in ("cayley", "zmod"):
        return cayley_graph(cayley_spec_from_recipe(recipe))
    if kind == "named":
        return named_graph(recipe["name"], recipe.get("n"))
    if kind == "product":
        f1, f2 = (build_space(f) for f in recipe["factors"])
        return product_space(ProductSpec((f1, f2), recipe.get("p", 1), recipe.get("exact", True)))
    if kind == "union":
        s1, s2 = (build_space(s) for s in recipe["spaces"])
        return union_space(s1, s2, recipe["L"])
    if kind == "substitution":
        return graph_substitution(
            build_space(recipe["backbone"]), [build_space(p) for p in recipe["parts"]], recipe["L"]
        )
    if kind == "hamming":
        return hamming_space(int(recipe["n"]), recipe.get("weights"))
    if kind == "cantor":
        return cantor_space(int(recipe["depth"]))
    if kind == "explicit":
        return FiniteMetricMeasureSpace.from_json_obj(recipe)
    raise ConstructionError(f"unknown recipe kind {kind!r}")
