import itertools
import math
from fractions import Fraction as F

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from hexalab.constructions import cyclic_cayley
from hexalab.core import FiniteMetricMeasureSpace, distance_distribution, power_mean, restricted_distribution
from hexalab.hexcvc import check_cvc, check_hex, check_patterson_equality, hex_defect_profile, homometric, is_transitive
from hexalab.symbolic import (
    IntervalTable,
    check_hex_doubleprime,
    check_hex_prime,
    check_ind,
    is_latin_square,
    metric_table,
    sample_decomposition_oracle,
)
from hexalab.tiling import CyclicSubset, find_complements, find_spectrum, is_tiling_pair, zero_set
from hexalab.zrelation import homometry_classes, interval_content

settings.register_profile("hexalab", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hexalab")


# -- strategies -------------------------------------------------------------


@st.composite
def weights(draw, n, allow_zero=True):
    lo = 0 if allow_zero else 1
    w = draw(st.lists(st.integers(lo, 4), min_size=n, max_size=n))
    assume(sum(w) > 0)
    return [F(x, sum(w)) for x in w]


@st.composite
def symmetric_spaces(draw, max_n=7, uniform=False):
    n = draw(st.integers(1, max_n))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = draw(st.integers(1, 4))
    w = None if uniform else draw(weights(n))
    return FiniteMetricMeasureSpace.from_matrix(m, weights=w)


@st.composite
def circulant_spaces(draw, max_n=12):
    n = draw(st.integers(3, max_n))
    gens = draw(st.sets(st.integers(1, n // 2), min_size=1, max_size=3))
    dist = oracles.bfs_matrix(n, oracles.circulant_adj(n, sorted(gens)))
    assume(all(d is not None for row in dist for d in row))
    s = FiniteMetricMeasureSpace.from_matrix(dist)
    perm = draw(st.permutations(range(n)))
    return s.relabel(perm)


@st.composite
def tables(draw, max_n=5, symmetric=False):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, 3))
    vals = [[str(draw(st.integers(0, k - 1))) for _ in range(n)] for _ in range(n)]
    if symmetric:
        vals = [[vals[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    w = draw(weights(n))
    return IntervalTable.build(range(n), vals, w)


@st.composite
def latin_squares(draw):
    n = draw(st.integers(1, 6))
    rows = draw(st.permutations(range(n)))
    cols = draw(st.permutations(range(n)))
    syms = draw(st.permutations(range(n)))
    vals = [[str(syms[(rows[i] + cols[j]) % n]) for j in range(n)] for i in range(n)]
    return IntervalTable.build(range(n), vals)


@st.composite
def cyclic_subsets(draw, min_n=2, max_n=16):
    n = draw(st.integers(min_n, max_n))
    return CyclicSubset.of(n, draw(st.sets(st.integers(0, n - 1))))


# -- symbolic criteria ------------------------------------------------------


@given(tables())
def test_ind_equals_hex_doubleprime(t):
    assert check_ind(t).holds == check_hex_doubleprime(t).holds


@given(tables())
def test_hex_doubleprime_implies_hex_prime(t):
    if check_hex_doubleprime(t).holds:
        assert check_hex_prime(t).holds


@given(tables(symmetric=True))
def test_symmetric_tables_have_one_verdict(t):
    assert check_ind(t).holds == check_hex_doubleprime(t).holds == check_hex_prime(t).holds


@given(latin_squares())
def test_latin_squares_satisfy_ind(t):
    assert is_latin_square(t) and check_ind(t).holds


@given(symmetric_spaces())
def test_metric_table_hex_prime_is_cvc(s):
    assert check_hex_prime(metric_table(s)).holds == check_cvc(s).holds


@settings(max_examples=25)
@given(tables(max_n=4), st.integers(0, 2**32 - 1), st.sampled_from(["hexprime", "hexdd"]))
def test_oracle_never_contradicts_the_decision(t, seed, mode):
    decided = (check_hex_prime if mode == "hexprime" else check_hex_doubleprime)(t).holds
    res = sample_decomposition_oracle(t, trials=40, seed=seed, mode=mode)
    if decided:
        assert res.holds


# -- metric spaces ----------------------------------------------------------


@given(symmetric_spaces(), st.data())
def test_restricted_total_is_product_of_measures(s, data):
    a = s.subset(data.draw(st.sets(st.integers(0, s.n - 1))))
    b = s.subset(data.draw(st.sets(st.integers(0, s.n - 1))))
    assert restricted_distribution(s, a, b).total == a.measure * b.measure


@given(symmetric_spaces(), st.data())
def test_relabeling_invariance(s, data):
    perm = data.draw(st.permutations(range(s.n)))
    t = s.relabel(perm)
    assert distance_distribution(t).entries == distance_distribution(s).entries
    assert check_cvc(t).holds == check_cvc(s).holds
    members = data.draw(st.sets(st.integers(0, s.n - 1)))
    inv = {p: k for k, p in enumerate(perm)}
    a, ta = s.subset(members), t.subset([inv[m] for m in members])
    assert homometric((s, a), (t, ta))


@given(symmetric_spaces(), st.data())
def test_monotone_value_relabeling(s, data):
    bumps = data.draw(st.lists(st.integers(1, 5), min_size=len(s.values), max_size=len(s.values)))
    new_values = list(itertools.accumulate(bumps))
    new_values = [F(v - new_values[0]) for v in new_values]
    t = FiniteMetricMeasureSpace.from_codes(s.codes, new_values, weights=s.weights)
    assert check_cvc(t).holds == check_cvc(s).holds


@given(symmetric_spaces(uniform=True), st.data())
def test_hex_is_symmetric_in_a_and_its_complement(s, data):
    assume(s.n % 2 == 0)
    members = data.draw(st.sets(st.integers(0, s.n - 1), min_size=s.n // 2, max_size=s.n // 2))
    a = s.subset(members)
    assert check_hex(s, a).holds == check_hex(s, a.complement()).holds


@given(circulant_spaces(), st.data())
def test_cvc_spaces_satisfy_hex_and_the_defect_identity(s, data):
    assert check_cvc(s).holds
    members = data.draw(st.sets(st.integers(0, s.n - 1)))
    a = s.subset(members)
    rho = check_cvc(s).rho
    for r, d in hex_defect_profile(s, a):
        # recompute without the library shortcut
        mat = s.matrix()
        ac = a.complement().indices()
        lhs = sum(s.weights[i] * s.weights[j] for i in a.indices() for j in a.indices() if mat[i][j] <= r)
        rhs = sum(s.weights[i] * s.weights[j] for i in ac for j in ac if mat[i][j] <= r)
        assert d == lhs - rhs == rho(r) * (a.measure - (1 - a.measure))
    if s.n % 2 == 0 and len(members) == s.n // 2:
        assert check_hex(s, a).holds


@settings(max_examples=30)
@given(circulant_spaces(max_n=9))
def test_transitive_implies_cvc(s):
    assert is_transitive(s)
    assert check_cvc(s).holds


@given(symmetric_spaces(), st.data())
def test_power_means_increase_with_p(s, data):
    members = data.draw(st.sets(st.integers(0, s.n - 1), min_size=1))
    a = s.subset(members)
    assume(a.measure > 0)
    ms = [power_mean(s, a, p) for p in (0.5, 1, 2, 3)] + [power_mean(s, a, math.inf)]
    assert all(x <= y + 1e-9 for x, y in zip(ms, ms[1:]))


@given(st.integers(1, 14), st.data())
def test_patterson_difference_is_constant(n, data):
    members = data.draw(st.sets(st.integers(0, n - 1)))
    chk = check_patterson_equality(cyclic_cayley([n]), [(x,) for x in members])
    assert chk.holds and chk.expected == F(2 * len(members) - n, n)


# -- cyclic subsets ---------------------------------------------------------


@given(cyclic_subsets(), st.data())
def test_zero_sets_invariant_under_affine_units(a, data):
    n = a.n
    shift = data.draw(st.integers(0, n - 1))
    unit = data.draw(st.sampled_from([u for u in range(1, n + 1) if math.gcd(u, n) == 1]))
    z = zero_set(a).zeros
    assert zero_set(a.translate(shift)).zeros == z
    # multiplying A by a unit u multiplies its zero set by u^-1
    inv = pow(unit, -1, n) if n > 1 else 0
    assert zero_set(a.scale(unit)).zeros == {(t * inv) % n for t in z}


@given(cyclic_subsets(), st.data())
def test_interval_content_dihedral_invariance(a, data):
    n = a.n
    shift = data.draw(st.integers(0, n - 1))
    v = interval_content(a)
    assert interval_content(a.translate(shift)) == v
    assert interval_content(a.scale(-1 % n)) == v


@settings(max_examples=30)
@given(st.integers(2, 14), st.data())
def test_complement_difference_depends_only_on_size(n, data):
    k = data.draw(st.integers(0, n))
    a = CyclicSubset.of(n, data.draw(st.sets(st.integers(0, n - 1), min_size=k, max_size=k)))
    b = CyclicSubset.of(n, data.draw(st.sets(st.integers(0, n - 1), min_size=k, max_size=k)))
    da = interval_content(a) - interval_content(a.complement())
    db = interval_content(b) - interval_content(b.complement())
    assert da == db
    if 2 * k == n:
        assert set(da) <= {0}


HOMOMETRIC_PAIRS = [
    (n, cls.subsets(n))
    for n, k in [(8, 4), (12, 4), (12, 6), (12, 3), (10, 5)]
    for cls in homometry_classes(n, k).classes
    if cls.size >= 2
]


@settings(max_examples=40)
@given(st.sampled_from(HOMOMETRIC_PAIRS))
def test_homometric_sets_share_zero_sets_and_complements(entry):
    n, members = entry
    zs = {frozenset(zero_set(m).zeros) for m in members}
    assert len(zs) == 1
    comps = [{c.elements for c in find_complements(m, normalize_zero=False)} for m in members]
    assert all(c == comps[0] for c in comps)


@settings(max_examples=40)
@given(st.integers(1, 16), st.data())
def test_tiles_are_spectral(n, data):
    d = data.draw(st.sampled_from([d for d in range(1, n + 1) if n % d == 0]))
    rest = data.draw(st.sets(st.integers(1, n - 1), min_size=d - 1, max_size=d - 1)) if d > 1 else set()
    a = CyclicSubset.of(n, {0} | rest)
    comps = find_complements(a)
    if comps:
        assert is_tiling_pair(a, comps[0])
        s = find_spectrum(a)
        assert s is not None and len(s) == len(a)
