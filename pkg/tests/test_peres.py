from collections import Counter

from spin101.exactgeom import (
    automorphisms,
    complete_pair,
    dot,
    orthogonality_graph,
    ray_from_ints,
)


def test_peres_has_33_distinct_rays(peres):
    assert len(peres) == 33
    assert len(set(peres.rays)) == 33


def test_peres_contains_construction_landmarks(peres):
    for coords in [
        ((0, 0), (0, 0), (1, 0)),  # axis
        ((1, 0), (1, 0), (0, 0)),  # edge midpoint
        ((0, 0), (1, 0), (0, 1)),  # face grid, edge cell
        ((1, 0), (1, 0), (0, 1)),  # face grid, corner cell
    ]:
        assert ray_from_ints(*coords) in peres


def test_census_counts(peres_graph):
    census = peres_graph.census()
    assert census == {"rays": 33, "edges": 72, "triples": 16, "lone_pairs": 24}
    assert len(peres_graph.edges) == 3 * len(peres_graph.triples) + len(peres_graph.lone_pairs)


def test_edges_are_exactly_the_orthogonal_pairs(peres, peres_graph):
    rays = peres.rays
    edges = set(peres_graph.edges)
    for i in range(33):
        for j in range(i + 1, 33):
            assert ((i, j) in edges) == dot(rays[i], rays[j]).is_zero()


def test_every_edge_in_at_most_one_triple(peres_graph):
    cover = Counter()
    for a, b, c in peres_graph.triples:
        cover[(a, b)] += 1
        cover[(a, c)] += 1
        cover[(b, c)] += 1
    assert all(n == 1 for n in cover.values())
    assert set(peres_graph.lone_pairs) == set(peres_graph.edges) - set(cover)


def test_triples_are_mutually_orthogonal(peres, peres_graph):
    rays = peres.rays
    for a, b, c in peres_graph.triples:
        assert dot(rays[a], rays[b]).is_zero()
        assert dot(rays[a], rays[c]).is_zero()
        assert dot(rays[b], rays[c]).is_zero()


def test_lone_pair_completions_leave_the_set(peres, peres_graph):
    rays = peres.rays
    members = set(rays)
    for i, j in peres_graph.lone_pairs:
        assert complete_pair(rays[i], rays[j]) not in members


def test_extended_configuration(peres, extended):
    ext, triples40 = extended
    assert len(ext) == 33 + 24  # the 24 lone-pair completions are distinct rays
    assert ext.rays[:33] == peres.rays
    assert len(triples40) == 40
    rays = ext.rays
    for t in triples40:
        assert dot(rays[t[0]], rays[t[1]]).is_zero()
        assert dot(rays[t[0]], rays[t[2]]).is_zero()
        assert dot(rays[t[1]], rays[t[2]]).is_zero()
    # every extended ray takes part in at least one of the 40 triples
    used = {i for t in triples40 for i in t}
    assert used == set(range(len(ext)))


def test_automorphism_group(peres_graph, peres_autos):
    n = peres_graph.n
    identity = tuple(range(n))
    assert identity in peres_autos
    # 48 signed permutations, kernel {+-I} on rays: 24 distinct node maps
    assert len(peres_autos) == 24
    edges = set(peres_graph.edges)
    triples = set(peres_graph.triples)
    lone = set(peres_graph.lone_pairs)
    for perm in peres_autos:
        assert {tuple(sorted((perm[i], perm[j]))) for i, j in edges} == edges
        assert {tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in triples} == triples
        assert {tuple(sorted((perm[i], perm[j]))) for i, j in lone} == lone


def test_swapping_two_axes_is_an_automorphism(peres, peres_autos):
    swap = {}
    for idx, ray in enumerate(peres.rays):
        image = ray_from_ints(
            (ray.y.a, ray.y.b), (ray.x.a, ray.x.b), (ray.z.a, ray.z.b)
        )
        swap[idx] = peres.index(image)
    assert tuple(swap[i] for i in range(33)) in peres_autos


def test_single_basis_graph(basis_graph):
    assert basis_graph.census() == {"rays": 3, "edges": 3, "triples": 1, "lone_pairs": 0}
    assert len(automorphisms(basis_graph)) == 6  # S3 on the axes


def test_dot_export_contains_all_edges(peres_graph):
    dot_text = peres_graph.to_dot()
    assert dot_text.count(" -- ") == 72
    assert dot_text.startswith("graph peres33 {")
    g = orthogonality_graph(peres_graph.rayset)
    assert g.edges == peres_graph.edges
