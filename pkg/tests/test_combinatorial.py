import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlmopt import objectives
from nlmopt.combinatorial import (enumerate_superset, feasible_disjoint01, feasible_general,
                                  optimal_value_combinatorial, pattern_selector, profile_set,
                                  recover_optimal_base)
from nlmopt.config import Budget
from nlmopt.errors import BudgetError
from nlmopt.matroids import GraphicMatroid, Restriction, UniformMatroid, VectorialMatroid, WeightMatrix, make_mrk
from nlmopt.objectives import ComparisonObjective
from nlmopt.testkit import brute_force, enumerate_bases, random_matroid_record
from nlmopt.io import build_matroid, normalize_matroid

K3 = [(0, 1), (1, 2), (0, 2)]
# the guard formula overestimates the pruned enumeration; lift it for the random families
WIDE = Budget(candidates=10**12)


def valid_base(oracle, base, w=None, u=None):
    ok = len(base) == oracle.rank() and oracle.is_independent(base)
    return ok and (w is None or w.profile(base) == tuple(u))


# --- examples ---------------------------------------------------------------

def test_feasible_disjoint01_examples():
    u24 = UniformMatroid(2, 4)
    base = feasible_disjoint01(u24, [(0, 1), (2,)], (1, 1))
    assert valid_base(u24, base) and len(set(base) & {0, 1}) == 1 and 2 in base
    assert feasible_disjoint01(u24, [(0, 1), (2,)], (2, 1)) is None
    g = GraphicMatroid(3, K3)
    assert feasible_disjoint01(g, [(0,), (1,), (2,)], (1, 1, 0)) == (0, 1)


def test_feasible_general_examples():
    u23 = UniformMatroid(2, 3)
    w = WeightMatrix([[0, 1, 1]])
    assert feasible_general(u23, w, (1,)) in ((0, 1), (0, 2))
    assert feasible_general(u23, w, (3,)) is None
    mrk = make_mrk(2, 2, [1, 1])
    w2 = WeightMatrix([[1, 1, 0, 0], [0, 0, 1, 1]])
    base = feasible_general(mrk, w2, (1, 1))
    assert valid_base(mrk, base, w2, (1, 1))


def test_enumerate_superset_examples():
    assert enumerate_superset(2, WeightMatrix([[0, 1]])).profiles == [(0,), (1,), (2,)]
    assert enumerate_superset(2, WeightMatrix([[1, 2, 3]])).profiles == [(x,) for x in range(2, 7)]
    assert enumerate_superset(1, WeightMatrix([[5], [5]])).profiles == [(5, 5)]


def test_optimal_value_examples():
    sol = optimal_value_combinatorial(GraphicMatroid(3, K3), WeightMatrix([[1, 2, 3]]), objectives.identity())
    assert sol.profile == (3,) and sol.base == (0, 1)
    sol = optimal_value_combinatorial(UniformMatroid(1, 2), WeightMatrix([[0, 1]]), objectives.identity())
    assert sol.profile == (0,) and sol.base == (0,)
    square = ComparisonObjective(lambda x, y: (x[0] - 1) ** 2 <= (y[0] - 1) ** 2)
    sol = optimal_value_combinatorial(make_mrk(1, 2, [2]), WeightMatrix([[1, 1, 0, 0]]), square)
    assert sol.profile == (1,)


def test_recover_examples_and_call_count():
    calls = []

    def solver_for(oracle, w, f):
        def value(subset):
            calls.append(subset)
            return optimal_value_combinatorial(Restriction(oracle, subset), w, f).profile
        return value

    for oracle, w, expected in [
        (UniformMatroid(1, 2), WeightMatrix([[0, 1]]), (0,)),
        (GraphicMatroid(3, K3), WeightMatrix([[1, 2, 3]]), (0, 1)),
        (UniformMatroid(2, 2), WeightMatrix([[5, -7]]), (0, 1)),
    ]:
        calls.clear()
        f = objectives.LexTieBreak(objectives.identity())
        rec = recover_optimal_base(oracle, w, f, solver_for(oracle, w, f))
        assert rec.base == expected
        assert rec.subproblem_calls == len(calls) == oracle.n + 1


def test_budget_guard_names_the_cap():
    w = WeightMatrix([[0, 1, 2, 3, 4, 5]])
    with pytest.raises(BudgetError, match="candidate cap"):
        optimal_value_combinatorial(UniformMatroid(3, 6), w, objectives.identity(), Budget(candidates=100))


# --- invariants -------------------------------------------------------------

@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_pattern_times_selector_is_w(seed):
    r = random.Random(seed)
    d, n = r.randint(1, 3), r.randint(1, 8)
    alphabet = r.sample(range(-3, 4), r.randint(1, 3))
    w = WeightMatrix([[r.choice(alphabet) for _ in range(n)] for _ in range(d)])
    pat, sel = pattern_selector(w)
    p, s = pat.matrix, sel.matrix
    assert len(pat.columns) == len(pat.values) ** d
    product = [[sum(p[i][v] * s[v][j] for v in range(len(s))) for j in range(n)] for i in range(d)]
    assert product == [list(row) for row in w.rows]
    for j in range(n):
        assert sum(row[j] for row in s) == 1  # unit columns, disjoint supports


def small_instance(seed, n_max=9):
    r = random.Random(seed)
    rec = normalize_matroid(random_matroid_record(r, r.choice(["uniform", "partition", "graphic",
                                                                "vectorial", "m_rk"]), n_max))
    oracle = build_matroid(rec)
    d = r.randint(1, 2)
    alphabet = r.sample(range(-2, 3), r.randint(1, 3))
    w = WeightMatrix([[r.choice(alphabet) for _ in range(oracle.n)] for _ in range(d)], oracle.n)
    return oracle, w


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_profile_set_equals_enumeration(seed):
    oracle, w = small_instance(seed)
    expected = sorted({w.profile(b) for b in enumerate_bases(oracle)})
    assert profile_set(oracle, w, budget=WIDE) == expected
    z = enumerate_superset(oracle.rank(), w, budget=WIDE).profiles
    assert set(expected) <= set(z)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_feasible_general_iff_brute_force(seed):
    oracle, w = small_instance(seed, n_max=7)
    achievable = {w.profile(b) for b in enumerate_bases(oracle)}
    for u in enumerate_superset(oracle.rank(), w, budget=WIDE).profiles:
        base = feasible_general(oracle, w, u, budget=WIDE)
        assert (base is not None) == (u in achievable)
        if base is not None:
            assert valid_base(oracle, base, w, u)


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_solver_matches_brute_force(seed):
    oracle, w = small_instance(seed, n_max=8)
    f = objectives.lq("inf") if w.d > 1 else objectives.identity()
    sol = optimal_value_combinatorial(oracle, w, f, WIDE)
    report = brute_force(oracle, w, f)
    assert sol.profile == report.optimum
    assert valid_base(oracle, sol.base, w, sol.profile)
    assert sol.stats["subproblems"] == oracle.n + 1


def test_threads_give_same_answer():
    oracle = VectorialMatroid([[1, 0, 1, 2, 0, 1], [0, 1, 1, 0, 2, 1]])
    w = WeightMatrix([[1, 0, 1, 0, 1, 0], [0, 1, 1, 1, 0, 0]])
    a = optimal_value_combinatorial(oracle, w, objectives.maximum())
    b = optimal_value_combinatorial(VectorialMatroid(oracle.matrix), w, objectives.maximum(), threads=4)
    assert (a.profile, a.base) == (b.profile, b.base)
    assert {k: v for k, v in a.stats.items()} == {k: v for k, v in b.stats.items()}


def test_equivalence_is_preorder_level():
    """A pure comparison oracle with no numeric value still drives recovery."""
    order = ComparisonObjective(lambda x, y: abs(x[0]) <= abs(y[0]))
    sol = optimal_value_combinatorial(UniformMatroid(1, 3), WeightMatrix([[2, -2, 3]]), order)
    assert sol.profile == (-2,) and sol.base == (1,)
