from fractions import Fraction as F

import numpy as np
import pytest

import oracles
from hexalab.constructions import (
    CayleySpec,
    ConstructionError,
    ProductSpec,
    TriangleWarning,
    build_space,
    cantor_space,
    cayley_graph,
    consecutive_run_subset,
    cycle,
    cyclic_cayley,
    graph_substitution,
    hamming_space,
    hypercube,
    named_graph,
    path,
    product_space,
    symmetric_transpositions,
    union_space,
    zmod_graph,
)
from hexalab.core import SQUARED, FiniteMetricMeasureSpace, distance_distribution
from hexalab.groups import CyclicProduct, SymmetricGroup
from hexalab.hexcvc import check_cvc, homometric, is_transitive


def edge_count(space):
    return int((np.asarray(space.matrix(), dtype=object) == 1).sum()) // 2


def test_z12_standard_generators_give_the_chromatic_cycle():
    z12 = cayley_graph(cyclic_cayley([12]))
    assert z12.matrix() == oracles.bfs_matrix(12, oracles.cycle_adj(12))
    assert z12.matrix() == cycle(12).matrix()
    assert zmod_graph(12, [1]).matrix() == z12.matrix()


def test_hypercube_is_hamming_distance():
    q4 = hypercube(4)
    for i in range(16):
        for j in range(16):
            assert q4.dist(i, j) == bin(i ^ j).count("1")


def test_symmetric_group_transpositions():
    s3 = symmetric_transpositions(3)
    assert s3.n == 6 and s3.values == (0, 1, 2)
    s4 = symmetric_transpositions(4)
    assert s4.n == 24 and max(s4.values) == 3  # n - (number of cycles)
    with pytest.raises(ValueError):
        SymmetricGroup(7)


def test_cayley_rejects_identity_and_non_generating_sets():
    g = CyclicProduct([6])
    with pytest.raises(ConstructionError):
        CayleySpec(g, [(0,)])
    with pytest.raises(ConstructionError):
        cayley_graph(CayleySpec(g, [(2,)]))


@pytest.mark.parametrize(
    "name,vertices,edges,diameter",
    [
        ("petersen", 10, 15, 2),
        ("dodecahedron", 20, 30, 5),
        ("icosahedron", 12, 30, 3),
        ("truncated_icosahedron", 60, 90, 9),
    ],
)
def test_named_polyhedra(name, vertices, edges, diameter):
    s = named_graph(name)
    assert s.n == vertices
    assert edge_count(s) == edges
    assert max(s.values) == diameter
    assert check_cvc(s).holds


def test_named_graph_errors():
    with pytest.raises(ConstructionError):
        named_graph("heptagon")
    with pytest.raises(ConstructionError):
        named_graph("cycle")


def test_petersen_and_path_transitivity():
    assert is_transitive(named_graph("petersen"))
    assert not check_cvc(path(3)).holds


def test_l1_product_is_the_cartesian_grid():
    grid = product_space(ProductSpec((cycle(3), cycle(4)), 1))
    assert distance_distribution(grid).as_dict() == {0: F(1, 12), 1: F(1, 3), 2: F(5, 12), 3: F(1, 6)}
    spheres = sorted(np.bincount(np.asarray([grid.dist(0, j) for j in range(12)], dtype=int)).tolist())
    assert spheres == [1, 2, 4, 5]
    assert homometric(grid, cayley_graph(cyclic_cayley([3, 4])))


def test_linf_product_volume_is_the_product_of_volumes():
    a, b = cycle(5), path(2)
    prod = product_space(ProductSpec((a, b), "inf"))
    ra, rb, rp = check_cvc(a).rho, check_cvc(b).rho, check_cvc(prod).rho
    for r in rp.radii:
        assert rp(r) == ra(r) * rb(r)


def test_l2_product_uses_squared_values():
    two = FiniteMetricMeasureSpace.from_matrix([[0, 1], [1, 0]])
    sq = product_space(ProductSpec((two, two), 2))
    assert sq.value_kind == SQUARED
    assert sq.values == (0, 1, 2)
    assert check_cvc(sq).holds


def test_product_errors():
    two = FiniteMetricMeasureSpace.from_matrix([[0, 1], [1, 0]])
    sq = product_space(ProductSpec((two, two), 2))
    with pytest.raises(ConstructionError):
        product_space(ProductSpec((two, two), 3))
    with pytest.raises(ConstructionError):
        product_space(ProductSpec((two, sq), 1))


def test_product_is_commutative_in_law():
    a, b = cycle(3), zmod_graph(7, [1, 3])
    for p in (1, 2, "inf"):
        ab = product_space(ProductSpec((a, b), p))
        ba = product_space(ProductSpec((b, a), p))
        assert distance_distribution(ab).entries == distance_distribution(ba).entries


def test_union_of_four_cycles():
    u = union_space(cycle(4), cycle(4), 10)
    rho = check_cvc(u).rho
    assert [rho(r) for r in (0, 1, 2, 10)] == [F(1, 8), F(3, 8), F(1, 2), 1]
    with pytest.warns(TriangleWarning):
        w = union_space(cycle(4), cycle(4), F(9, 10))
    assert check_cvc(w).holds
    with pytest.raises(ConstructionError):
        union_space(cycle(4), path(3), 10)


def test_substitution_special_case_is_the_union():
    two = FiniteMetricMeasureSpace.from_matrix([[0, 1], [1, 0]])
    sub = graph_substitution(two, [cycle(4), cycle(4)], 10)
    assert sub.matrix() == union_space(cycle(4), cycle(4), 10).matrix()


def test_substitution_of_triangles_into_a_square():
    s = graph_substitution(cycle(4), [cycle(3)] * 4, 10)
    assert s.n == 12 and check_cvc(s).holds
    with pytest.raises(ConstructionError):
        graph_substitution(cycle(4), [cycle(3), cycle(3), cycle(3), path(3)], 10)
    with pytest.raises(ConstructionError):
        graph_substitution(cycle(4), [cycle(3)] * 4, F(1, 2))


def test_hamming_spaces():
    h5 = hamming_space(5)
    run = consecutive_run_subset(h5, 3)
    assert len(run) == 16 and run.measure == F(1, 2)
    h1 = hamming_space(1)
    assert h1.matrix() == [[0, 1], [1, 0]]
    h3 = hamming_space(3, [1, 2, 4])
    assert h3.values == tuple(range(8))


@pytest.mark.parametrize("k", range(1, 11))
def test_cantor_truncations(k):
    c = cantor_space(k)
    v = check_cvc(c)
    assert v.holds
    assert v.rho(F(1, 3)) == F(1, 2)
    assert max(c.values) == 1 - F(1, 3**k)


def test_zmod_graphs():
    z7 = zmod_graph(7, [1, 3])
    rho = check_cvc(z7).rho
    assert [rho(r) for r in (0, 1, 2)] == [F(1, 7), F(5, 7), 1]
    assert not homometric(zmod_graph(7, [1]), z7)


def test_recipes_cover_every_kind():
    recipes = [
        {"kind": "cayley", "group": {"cyclic": [3, 4]}},
        {"kind": "cayley", "group": {"symmetric": 3}, "generators": "transpositions"},
        {"kind": "cayley", "group": {"cyclic": [6]}, "generators": ["1", "2"]},
        {"kind": "zmod", "n": 7, "generators": [1, 3]},
        {"kind": "named", "name": "petersen"},
        {"kind": "product", "factors": [{"kind": "named", "name": "cycle", "n": 3}, {"kind": "named", "name": "cycle", "n": 4}], "p": 2},
        {"kind": "union", "spaces": [{"kind": "named", "name": "cycle", "n": 4}] * 2, "L": "10"},
        {"kind": "substitution", "backbone": {"kind": "named", "name": "cycle", "n": 4}, "parts": [{"kind": "named", "name": "cycle", "n": 3}] * 4, "L": 10},
        {"kind": "hamming", "n": 3, "weights": [1, 2, 4]},
        {"kind": "cantor", "depth": 4},
        {"kind": "explicit", "dist": [[0, "1/2"], ["1/2", 0]]},
    ]
    for r in recipes:
        assert check_cvc(build_space(r)).holds, r
    with pytest.raises(ConstructionError):
        build_space({"kind": "moebius"})
