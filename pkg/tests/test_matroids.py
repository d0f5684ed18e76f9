import itertools
import random
import threading

import networkx as nx
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nlmopt.errors import InputError
from nlmopt.matroids import (DirectSum, GraphicMatroid, PartitionMatroid, Restriction, UniformMatroid,
                             VectorialMatroid, WeightMatrix, full_row_rank, independent_rows, make_mrk)
from nlmopt.testkit import enumerate_bases

K3 = [(0, 1), (1, 2), (0, 2)]


def subsets(n):
    for r in range(n + 1):
        yield from itertools.combinations(range(n), r)


def exhaustive_rank(oracle, s):
    return max(len(i) for i in subsets(oracle.n) if set(i) <= set(s) and oracle.is_independent(i))


def random_oracle(r: random.Random):
    kind = r.choice(["uniform", "partition", "graphic", "vectorial", "mrk", "sum"])
    if kind == "uniform":
        n = r.randint(0, 8)
        return UniformMatroid(r.randint(0, n), n)
    if kind == "partition":
        n = r.randint(1, 8)
        elems = list(range(n))
        r.shuffle(elems)
        cut = sorted(r.sample(range(n + 1), 2))
        return PartitionMatroid(n, [(elems[: cut[0]], r.randint(0, 2)), (elems[cut[0]: cut[1]], r.randint(0, 3))])
    if kind == "graphic":
        v = r.randint(1, 5)
        return GraphicMatroid(v, [(r.randrange(v), r.randrange(v)) for _ in range(r.randint(0, 8))])
    if kind == "vectorial":
        m, n = r.randint(1, 3), r.randint(1, 7)
        return VectorialMatroid([[r.randint(-2, 2) for _ in range(n)] for _ in range(m)])
    if kind == "mrk":
        return make_mrk(1, 3, [3]) if r.random() < 0.5 else make_mrk(2, 3, [1, 2])
    return DirectSum([UniformMatroid(1, 2), GraphicMatroid(3, K3)])


# --- examples ---------------------------------------------------------------

def test_uniform_examples():
    u = UniformMatroid(2, 4)
    assert u.is_independent({0, 1})
    assert not u.is_independent({0, 1, 2})
    assert u.rank(range(4)) == 2


def test_graphic_k3_examples():
    g = GraphicMatroid(3, K3)
    assert not g.is_independent({0, 1, 2})
    assert g.rank() == 2


def test_partition_block_cap():
    p = PartitionMatroid(4, [({0, 1}, 1), ({2, 3}, 1)])
    assert p.rank({0, 1}) == 1


def test_profile_examples():
    assert WeightMatrix([[1, 2, 3]]).profile({0, 1}) == (3,)
    assert WeightMatrix([[1, 1, 0], [0, 0, 1]]).profile({0, 2}) == (1, 1)
    unit = WeightMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert unit.profile({1}) == (0, 1, 0)


def test_mrk_r1_is_uniform():
    m = make_mrk(1, 2, [2])
    u = UniformMatroid(2, 4)
    for s in subsets(4):
        assert m.is_independent(s) == u.is_independent(s)


def test_mrk_base_counts():
    bases = enumerate_bases(make_mrk(2, 2, [1, 1]))
    assert len(bases) == 4
    assert all(len({b % 2 for b in base}) == 2 for base in bases)  # blocks {0,2} and {1,3}
    assert len(enumerate_bases(make_mrk(1, 3, [3]))) == 20


def test_mrk_rejects_bad_blocks():
    with pytest.raises(InputError):
        make_mrk(2, 3, [1, 1])
    with pytest.raises(InputError):
        make_mrk(0, 2, [])


def test_out_of_range_elements_rejected():
    with pytest.raises(InputError):
        UniformMatroid(1, 3).is_independent({3})
    with pytest.raises(InputError):
        WeightMatrix([[1, 2]]).profile({2})


def test_partition_uncovered_elements_are_loops():
    p = PartitionMatroid(3, [({0}, 1)])
    assert p.is_independent({0})
    assert not p.is_independent({1})


def test_restriction_agrees_and_rejects_outside():
    g = GraphicMatroid(3, K3)
    r = Restriction(g, {0, 2})
    assert r.elements == (0, 2)
    assert r.is_independent({0, 2}) == g.is_independent({0, 2})
    assert r.rank() == 2
    with pytest.raises(InputError):
        r.is_independent({1})


def test_direct_sum_offsets():
    s = DirectSum([UniformMatroid(1, 2), GraphicMatroid(3, K3)])
    assert s.n == 5
    assert s.is_independent({0, 2, 3})
    assert not s.is_independent({0, 1})
    assert not s.is_independent({2, 3, 4})
    assert s.rank() == 3


def test_memo_counts_queries_and_evaluations():
    u = UniformMatroid(2, 4)
    for _ in range(3):
        u.is_independent({0, 1})
    assert u.queries == 3 and u.evaluations == 1
    nocache = UniformMatroid(2, 4, cache_size=0)
    for _ in range(3):
        nocache.is_independent({0, 1})
    assert nocache.evaluations == 3


def test_concurrent_queries_are_consistent():
    g = GraphicMatroid(5, [(a, b) for a in range(5) for b in range(a + 1, 5)])
    sets = list(itertools.combinations(range(g.n), 4))
    expected = {s: GraphicMatroid(5, g.edges).is_independent(s) for s in sets}
    errors = []

    def work():
        for s in sets:
            if g.is_independent(s) != expected[s]:
                errors.append(s)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    assert g.queries == 4 * len(sets)


# --- graphic: native vs incidence vs networkx --------------------------------

@given(st.integers(1, 5).flatmap(
    lambda v: st.tuples(st.just(v), st.lists(st.tuples(st.integers(0, v - 1), st.integers(0, v - 1)), max_size=7))))
@settings(max_examples=80, deadline=None)
def test_graphic_native_incidence_networkx_agree(graph):
    v, edges = graph
    g = GraphicMatroid(v, edges)
    inc = g.incidence_matrix()
    vec = VectorialMatroid(inc, len(edges))
    assert sympy.Matrix(inc).rank() == len(inc) if inc else True
    for s in subsets(len(edges)):
        h = nx.MultiGraph()
        h.add_nodes_from(range(v))
        h.add_edges_from(edges[j] for j in s)
        forest = all(u != w for u, w in (edges[j] for j in s)) and nx.is_forest(h) if s else True
        assert g.is_independent(s) == forest == vec.is_independent(s)


def test_incidence_drops_one_row_per_component():
    g = GraphicMatroid(5, [(0, 1), (3, 4)])
    assert g.components() == [[0, 1], [2], [3, 4]]
    assert len(g.incidence_matrix()) == 2
    assert not g.is_connected()


# --- generic invariants -------------------------------------------------------

@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_downward_closed_and_rank_is_exhaustive(seed):
    r = random.Random(seed)
    oracle = random_oracle(r)
    assert oracle.is_independent(())
    for s in subsets(oracle.n):
        if oracle.is_independent(s):
            for k in range(len(s)):
                for t in itertools.combinations(s, k):
                    assert oracle.is_independent(t)
    for _ in range(5):
        s = [e for e in range(oracle.n) if r.random() < 0.5]
        assert oracle.rank(s) == exhaustive_rank(oracle, s)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_bases_share_cardinality(seed):
    oracle = random_oracle(random.Random(seed))
    bases = enumerate_bases(oracle)
    full = oracle.rank()
    assert bases and all(len(b) == full for b in bases)
    maximal = [s for s in subsets(oracle.n) if oracle.is_independent(s) and len(s) == full]
    assert sorted(maximal) == bases


@given(st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_vectorial_matches_sympy_rank(rows):
    vec = VectorialMatroid(rows)
    for s in subsets(5):
        expected = sympy.Matrix([[r[j] for j in s] for r in rows]).rank() == len(s) if s else True
        assert vec.is_independent(s) == expected


def test_full_row_rank_keeps_column_matroid():
    a = [[1, 0, 1, 2], [2, 0, 2, 4], [0, 1, 1, 0]]
    assert independent_rows(a) == [0, 2]
    reduced = full_row_rank(a)
    v1, v2 = VectorialMatroid(a), VectorialMatroid(reduced)
    for s in subsets(4):
        assert v1.is_independent(s) == v2.is_independent(s)
