import itertools
import random
from fractions import Fraction as F

import networkx as nx
import pytest

from chainpoly.families import FamilySpec, family_rnk
from chainpoly.poly import Polynomial, falling_factorial, is_real_rooted_in, stirling2
from chainpoly.poset import chain_polynomial_poset
from chainpoly.partition import (
    PartitionComplex,
    SetPartition,
    SimpleGraph,
    chromatic_poly,
    chromatic_poly_deletion_contraction,
    falling_basis_expansion,
    g_graph,
    g_graph_definitional,
    independent_partition_counts,
    independent_partition_counts_bruteforce,
    is_chordal,
    lex_order,
    partition_shelling_check,
    partitions_nk,
    pi_nk_h_vector,
    sigma_poly,
)

P = Polynomial
t = P.t()
SP = SetPartition.from_json


def clique_plus_isolated(n, k):
    return SimpleGraph(n, itertools.combinations(range(k), 2))


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def random_graph(rng, n, p):
    return SimpleGraph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_chordal(rng, n):
    # each new vertex joins a clique of earlier vertices
    edges = []
    cliques = [[0]]
    for v in range(1, n):
        base = rng.choice(cliques)
        nb = [u for u in base if rng.random() < 0.7]
        edges += [(u, v) for u in nb]
        cliques.append(nb + [v])
    return SimpleGraph(n, edges)


def test_set_partition_basics():
    p = SP("2|13")
    assert p.blocks == ((2,), (1, 3))
    assert p.word() == (2, 3, 1)
    with pytest.raises(ValueError):
        SetPartition([[1], [3]])
    assert SP({"n": 3, "blocks": [[1, 2], [3]]}) == SP("12|3")


def test_lex_order_examples():
    assert lex_order(SP("1|23"), SP("12|3")) < 0
    assert lex_order(SP("12|3"), SP("13|2")) < 0
    assert lex_order(SP("12|3"), SP("12|3")) == 0
    with pytest.raises(ValueError):
        lex_order(SP("1|2|3"), SP("12|3"))
    # multi-digit elements compare as integers
    a = SetPartition([[i] for i in range(1, 10)] + [[10, 11]])
    b = SetPartition([[i] for i in range(1, 9)] + [[9, 11], [10]])
    assert lex_order(a, b) < 0


def test_chromatic_examples():
    assert chromatic_poly(clique_plus_isolated(4, 3)) == t * falling_factorial(3)
    assert chromatic_poly(SimpleGraph(3, [])) == t**3
    for n in range(1, 7):
        for k in range(1, n + 1):
            G = clique_plus_isolated(n, k)
            assert chromatic_poly(G) == t ** (n - k) * falling_factorial(k)


def test_sigma_examples():
    assert sigma_poly(clique_plus_isolated(3, 2)) == t**3 + 2 * t**2
    assert sigma_poly(SimpleGraph(2, [])) == t + t**2
    assert sigma_poly(SimpleGraph.complete(3)) == t**3


def test_chromatic_oracles_agree():
    rng = random.Random(3)
    for _ in range(40):
        G = random_graph(rng, rng.randint(1, 7), rng.random())
        assert independent_partition_counts(G) == independent_partition_counts_bruteforce(G)
        assert chromatic_poly(G) == chromatic_poly_deletion_contraction(G)


def test_k77():
    G = SimpleGraph.complete_bipartite(7, 7)
    a = independent_partition_counts(G)
    want = [sum(stirling2(7, i) * stirling2(7, k - i) for i in range(k + 1)) for k in range(15)]
    assert a == want
    coef, status = falling_basis_expansion(chromatic_poly(G), 14, "k_plus_one")
    assert status == "unique" and min(coef) < 0


def test_partition_rnk_via_sigma():
    spec = FamilySpec("partition", 8)
    for n in range(9):
        for k in range(n + 1):
            G = clique_plus_isolated(n + 1, k + 1)
            assert family_rnk(spec, n, k) == sigma_poly(G).shift_down(1)
    for n in range(8):
        for k in range(n + 1):
            assert family_rnk(spec, n + 1, k) == family_rnk(spec, n + 1, k + 1) + (k + 1) * family_rnk(spec, n, k)


def test_chordality_against_networkx():
    rng = random.Random(8)
    for _ in range(150):
        G = random_graph(rng, rng.randint(1, 9), rng.random())
        ok, wit = is_chordal(G)
        assert ok == nx.is_chordal(to_nx(G))
        if ok:
            assert sorted(wit) == list(range(G.n))
        else:
            cyc = wit
            assert len(cyc) >= 4 and len(set(cyc)) == len(cyc)
            for i, v in enumerate(cyc):
                assert G.has_edge(v, cyc[(i + 1) % len(cyc)])
            for a, b in itertools.combinations(range(len(cyc)), 2):
                if (b - a) % len(cyc) not in (1, len(cyc) - 1):
                    assert not G.has_edge(cyc[a], cyc[b])


def test_chordal_examples():
    assert is_chordal(SimpleGraph(5, [(0, 1), (1, 2), (1, 3), (3, 4)]))[0]
    assert not is_chordal(SimpleGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))[0]
    assert is_chordal(clique_plus_isolated(6, 4))[0]


def test_expansion():
    coef, status = falling_basis_expansion(t**4, 4, "k")
    assert status == "unique" and coef == [1, 0, 0, 0]
    assert falling_basis_expansion(t**4, 4, "k_plus_one")[0] == [1, 0, 0, 0]
    assert falling_basis_expansion(P([1, 1]), 1)[1] == "not_expandable"
    with pytest.raises(ValueError):
        falling_basis_expansion(t**5, 4)
    rng = random.Random(9)
    for _ in range(200):
        G = random_chordal(rng, rng.randint(1, 10))
        assert is_chordal(G)[0]
        coef, status = falling_basis_expansion(chromatic_poly(G), G.n, "k")
        assert status == "unique" and all(c >= 0 for c in coef)


def test_g_graph_examples():
    assert g_graph(SP("1|2|34")).edges == frozenset()
    last = partitions_nk(4, 3)[-1]
    assert len(g_graph(last).edges) == 3
    for pi in partitions_nk(5, 3):
        if len(pi.blocks[0]) > 1:
            assert all(g_graph(pi).has_edge(0, j) for j in range(1, pi.k))


def test_g_graph_matches_definition():
    for n in range(1, 7):
        for k in range(1, n + 1):
            for pi in partitions_nk(n, k):
                assert g_graph(pi).edges == g_graph_definitional(pi).edges


def test_lex_order_shells():
    for n in range(2, 7):
        for k in range(1, n + 1):
            res = partition_shelling_check(PartitionComplex.pi_nk(n, k), partitions_nk(n, k))
            assert res.ok and all(x >= 0 for x in res.h)
    single = PartitionComplex(4, [SP("12|34")])
    assert partition_shelling_check(single).ok


def test_failing_order_on_pi53():
    facets = partitions_nk(5, 3)
    P53 = PartitionComplex.pi_nk(5, 3)
    rng = random.Random(0)
    for _ in range(50):
        order = facets[:]
        rng.shuffle(order)
        res = partition_shelling_check(P53, order)
        if not res.ok:
            assert res.failed_step >= 1 and res.reason
            break
    else:
        pytest.fail("no failing order found")


def test_shellable_complexes_real_rooted():
    for n, k in ((4, 2), (4, 3), (5, 3)):
        C = PartitionComplex.pi_nk(n, k)
        assert partition_shelling_check(C).ok
        assert is_real_rooted_in(chain_polynomial_poset(C.poset()), -1, 0)


def test_pi_nk_h_vector():
    assert pi_nk_h_vector(3, 1) == ([1, 6], [1, 6])
    assert pi_nk_h_vector(3, 2) == ([1, 2, 3], [1, 2, 3])
    assert pi_nk_h_vector(5, 0)[1] == [1]
    for n in range(1, 9):
        for k in range(n):
            closed, computed = pi_nk_h_vector(n, k)
            assert closed == computed


def test_invalid_complexes():
    with pytest.raises(ValueError):
        PartitionComplex(3, [SP("12|3"), SP("1|2|3")])
    with pytest.raises(ValueError):
        PartitionComplex(3, [])
    C = PartitionComplex.pi_nk(4, 2)
    assert PartitionComplex.from_json(C.to_json()).facets == C.facets
    assert F(1) == pi_nk_h_vector(2, 1)[0][0]
