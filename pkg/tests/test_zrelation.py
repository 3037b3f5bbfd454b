import itertools
import math

import numpy as np
import pytest

import oracles
from hexalab.constructions import cycle
from hexalab.hexcvc import homometric
from hexalab.tiling import CyclicSubset
from hexalab.zrelation import (
    BudgetExceeded,
    complement_homometry_check,
    homometry_classes,
    interval_content,
    interval_vectors,
    k_subset_masks,
    same_homometry_class,
    ti_canonical,
    ti_canonical_mask,
    ti_equivalent,
    z_related,
    z_tuple_report,
)

C = CyclicSubset.of


def test_interval_content_examples():
    assert interval_content(C(12, [0, 1, 4, 6])).counts == (1,) * 6
    assert interval_content(C(12, [])).counts == (0,) * 6
    assert interval_content(C(12, [5])).counts == (0,) * 6
    assert interval_content(C(12, range(12))).counts == (12, 12, 12, 12, 12, 6)


def test_interval_content_matches_pair_count():
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = int(rng.integers(2, 20))
        a = sorted(set(rng.integers(0, n, size=int(rng.integers(0, n + 1))).tolist()))
        got = interval_content(C(n, a)).counts
        assert got == oracles.interval_vector(a, n)
        assert sum(got) == len(a) * (len(a) - 1) // 2


def test_vectorized_interval_vectors():
    masks = k_subset_masks(10, 4)
    vecs = interval_vectors(masks, 10)
    for m, v in zip(masks.tolist(), vecs.tolist()):
        a = [i for i in range(10) if m >> i & 1]
        assert tuple(v) == oracles.interval_vector(a, 10)


def test_k_subset_masks():
    for n, k in [(5, 0), (5, 5), (8, 3), (12, 6)]:
        got = sorted(k_subset_masks(n, k).tolist())
        want = sorted(sum(1 << i for i in c) for c in itertools.combinations(range(n), k))
        assert got == want
    big = k_subset_masks(30, 3)
    assert len(big) == math.comb(30, 3) and len(set(big.tolist())) == len(big)
    assert all(bin(int(m)).count("1") == 3 for m in big)


def test_ti_canonical_examples():
    assert ti_canonical(C(12, [3, 4, 7, 9])) == ti_canonical(C(12, [0, 1, 4, 6]))
    assert ti_canonical(C(12, [0, 4, 8])).elements == (0, 4, 8)
    a = C(12, [0, 1, 3, 7])
    inv = C(12, [(-x) % 12 for x in a.elements])
    assert ti_canonical(a) == ti_canonical(inv)


def test_ti_canonical_matches_dihedral_orbit():
    for n in (7, 8, 12):
        for k in (2, 3, 4):
            for c in itertools.combinations(range(n), k):
                m = oracles.mask(c)
                assert ti_canonical_mask(m, n) == oracles.canonical(c, n)


def test_z12_tetrachords():
    rep = homometry_classes(12, 4)
    assert rep.subsets == 495
    assert rep.histogram == {1: 27, 2: 1}
    (pair,) = rep.of_size(2)
    assert {s.elements for s in pair.subsets(12)} == {(0, 1, 3, 7), (0, 1, 4, 6)}
    assert pair.vector == (1,) * 6


def test_z12_hexachords():
    rep = homometry_classes(12, 6)
    assert rep.subsets == 924
    assert rep.histogram == {1: 20, 2: 15}
    assert rep.ti_classes == 50
    for cls in rep.of_size(2):
        a, b = cls.subsets(12)
        assert same_homometry_class(a, a.complement())
        # the partner of a Z-related hexachord is the T/I class of its complement
        assert ti_equivalent(a.complement(), b)


def test_classes_partition_the_ti_classes():
    for n, k in [(8, 4), (10, 5), (9, 3)]:
        rep = homometry_classes(n, k)
        assert sum(s * c for s, c in rep.histogram.items()) == rep.ti_classes
        seen = [m for c in rep.classes for m in c.members]
        assert len(seen) == len(set(seen)) == rep.ti_classes
        brute = {oracles.canonical(c, n) for c in itertools.combinations(range(n), k)}
        assert set(seen) == brute


def test_budget():
    with pytest.raises(BudgetExceeded):
        homometry_classes(24, 12, budget=1000)


def test_report_rows():
    text = z_tuple_report(12, 4, 2)
    lines = text.strip().splitlines()
    assert lines[0] == "interval_vector,class_size,representatives"
    assert lines[1:] == ['"[1,1,1,1,1,1]",2,"{0,1,4,6} {0,1,3,7}"']
    text8 = z_tuple_report(8, 4, 2)
    lines8 = text8.strip().splitlines()[1:]
    assert lines8 == ['"[2,1,2,1]",2,"{0,1,3,4} {0,1,2,5}"']
    hexa = z_tuple_report(12, 6, 2).strip().splitlines()[1:]
    assert len(hexa) == 15


def test_complement_checks():
    full = complement_homometry_check(12)
    assert full.holds and full.checked == 924 and full.difference == (0,) * 6
    assert complement_homometry_check(2).holds
    assert complement_homometry_check(24, sample=10_000, seed=0).holds
    k4 = complement_homometry_check(12, 4)
    assert k4.holds and k4.difference == (-4, -4, -4, -4, -4, -2)
    with pytest.raises(ValueError):
        complement_homometry_check(7)


def test_z_relation_predicates():
    a, b = C(12, [0, 1, 4, 6]), C(12, [0, 1, 3, 7])
    assert z_related(a, b)
    assert not z_related(a, a.translate(5))
    assert not same_homometry_class(a, C(12, [0, 1, 2, 3]))


def test_agreement_with_metric_homometry():
    c8 = cycle(8)
    for a, b in itertools.combinations(itertools.combinations(range(8), 4), 2):
        if (a[0], b[0]) != (0, 0):
            continue
        same = same_homometry_class(C(8, a), C(8, b))
        assert same == homometric((c8, c8.subset(a)), (c8, c8.subset(b)))
