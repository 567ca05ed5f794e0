import random

import numpy as np
import pytest

from sociogen.attributes import AttributeSchema, NodeProfile, assign_profiles, attribute_columns, demographic_distance_vector
from sociogen.graph import Graph
from sociogen.similarity import (
    SimilarityParams,
    combined_score,
    combined_score_vector,
    fof_distance,
    pa_distance,
)


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def test_params_validation():
    with pytest.raises(ValueError):
        SimilarityParams(alpha=0.0, beta=0.0)
    with pytest.raises(ValueError):
        SimilarityParams(alpha=-1.0)
    with pytest.raises(ValueError):
        SimilarityParams(weight_pa=0.0, weight_fof=0.0)


def test_pa_distance_extremes():
    g = star(10)
    g.add_node()  # isolated node 11
    assert pa_distance(g, 0) == 0.0  # the max-degree hub
    assert pa_distance(g, 11) == 1.0  # degree 0 against max 10


def test_pa_distance_midpoint():
    g = star(10)
    node = g.add_node()
    for leaf in range(1, 6):
        g.add_edge(node, leaf)
    assert g.degree(node) == 5 and g.max_degree() == 10
    assert pa_distance(g, node) == pytest.approx(0.5)


def test_pa_distance_edgeless_fallback():
    assert pa_distance(Graph(3), 0) == 1.0


def test_fof_distance_path_ends():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert fof_distance(g, 0, 2) == 0.0  # 1 - 1/1


def test_fof_distance_disjoint_and_no_basis():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert fof_distance(g, 0, 2) == 1.0  # no shared friends
    g2 = Graph(2)
    assert fof_distance(g2, 0, 1) == 1.0  # degree 0: no basis for closure


def test_fof_distance_min_denominator():
    # shared = {4, 5}, deg(0) = 4, deg(1) = 2 -> 1 - 2/min(4,2) = 0
    g = Graph.from_edges(
        8, [(0, 4), (0, 5), (0, 6), (0, 7), (1, 4), (1, 5)]
    )
    assert fof_distance(g, 0, 1) == 0.0
    assert fof_distance(g, 1, 0) == 0.0  # symmetric


def profiles_for(g: Graph, values):
    schemas = [AttributeSchema("tag", "categorical", tuple(sorted(set(values), key=str)), (1,) * len(set(values)))]
    return [NodeProfile((v,)) for v in values], schemas


def test_combined_score_all_terms_zero():
    # j is the max-degree node sharing all of i's friends, identical profiles
    g = Graph.from_edges(6, [(1, 2), (1, 3), (1, 4), (1, 5), (0, 2), (0, 3)])
    g.add_edge(2, 3)
    profiles, schemas = profiles_for(g, ["s"] * 6)
    params = SimilarityParams(alpha=1.0, beta=1.0)
    assert g.max_degree() == g.degree(1)
    assert combined_score(g, 0, 1, profiles, schemas, params) == pytest.approx(1.0)


def test_combined_score_demographic_only():
    # alpha=1, beta=0, D=0.25 (one of four equal-weight attributes differs)
    schemas = [
        AttributeSchema(f"a{k}", "categorical", ("u", "v"), (1, 1)) for k in range(4)
    ]
    profiles = [NodeProfile(("u", "u", "u", "u")), NodeProfile(("v", "u", "u", "u"))]
    g = Graph.from_edges(2, [])
    params = SimilarityParams(alpha=1.0, beta=0.0)
    assert combined_score(g, 0, 1, profiles, schemas, params) == pytest.approx(0.75)


def test_combined_score_structural_only_worst_case():
    # alpha=0, beta=1, PA=1 and FoF=1 -> score 0
    g = Graph.from_edges(4, [(1, 2), (1, 3), (2, 3)])
    profiles, schemas = profiles_for(g, ["s"] * 4)
    params = SimilarityParams(alpha=0.0, beta=1.0)
    assert g.degree(0) == 0
    assert combined_score(g, 3, 0, profiles, schemas, params) == pytest.approx(0.0)


def random_fixture(rng, n=14):
    values = [rng.choice("abc") for _ in range(n)]
    ages = [rng.randint(0, 9) for _ in range(n)]
    schemas = [
        AttributeSchema("tag", "categorical", ("a", "b", "c"), (1, 1, 1)),
        AttributeSchema("age", "numerical", tuple(range(10)), (1,) * 10, rho=9.0),
    ]
    profiles = [NodeProfile((v, a)) for v, a in zip(values, ages)]
    g = Graph(n)
    for _ in range(rng.randint(n, 3 * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            g.add_edge(i, j)
    return g, profiles, schemas


def test_combined_score_bounds_and_scale_invariance():
    rng = random.Random(11)
    for _ in range(15):
        g, profiles, schemas = random_fixture(rng)
        params = SimilarityParams(alpha=rng.uniform(0, 2), beta=rng.uniform(0.1, 2))
        scaled = SimilarityParams(params.alpha * 3, params.beta * 3,
                                  params.weight_pa, params.weight_fof)
        for _ in range(10):
            i, j = rng.randrange(g.node_count), rng.randrange(g.node_count)
            if i == j:
                continue
            s = combined_score(g, i, j, profiles, schemas, params)
            assert 0.0 <= s <= 1.0
            assert s == pytest.approx(
                combined_score(g, i, j, profiles, schemas, scaled)
            )


def test_combined_score_demographic_only_ignores_structure():
    rng = random.Random(13)
    g1, profiles, schemas = random_fixture(rng)
    g2 = Graph(g1.node_count)
    g2.add_edge(0, 1)
    params = SimilarityParams(alpha=1.0, beta=0.0)
    for i, j in ((2, 3), (4, 5), (0, 6)):
        assert combined_score(g1, i, j, profiles, schemas, params) == pytest.approx(
            combined_score(g2, i, j, profiles, schemas, params)
        )


def test_vector_scorer_matches_scalar():
    rng = random.Random(23)
    for _ in range(10):
        g, profiles, schemas = random_fixture(rng)
        params = SimilarityParams(
            alpha=rng.uniform(0, 2), beta=rng.uniform(0.05, 2),
            weight_pa=rng.uniform(0.1, 2), weight_fof=rng.uniform(0.1, 2),
        )
        columns = attribute_columns(profiles, schemas)
        node = g.node_count - 1
        demo = demographic_distance_vector(columns, node, node)
        common = np.array([g.common_neighbors(node, v) for v in range(node)])
        scores = combined_score_vector(
            g.degrees[:node], g.max_degree(), common, g.degree(node), demo, params
        )
        for v in range(node):
            assert scores[v] == pytest.approx(
                combined_score(g, node, v, profiles, schemas, params), abs=1e-12
            )
