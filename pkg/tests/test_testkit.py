import itertools

import pytest

from nlmopt import objectives
from nlmopt.errors import BudgetError, ContractError
from nlmopt.io import Problem
from nlmopt.matroids import GraphicMatroid, UniformMatroid, WeightMatrix, make_mrk
from nlmopt.testkit import (brute_force, brute_force_optimum, enumerate_bases, instance_bytes, leibniz_det,
                            random_instance, verify_exchange)

K3 = [(0, 1), (1, 2), (0, 2)]


def test_enumerate_examples():
    assert enumerate_bases(UniformMatroid(2, 4)) == list(itertools.combinations(range(4), 2))
    assert enumerate_bases(GraphicMatroid(3, K3)) == [(0, 1), (0, 2), (1, 2)]
    assert len(enumerate_bases(make_mrk(2, 3, [1, 2]))) == 2 * 6


def test_enumerate_respects_cap():
    with pytest.raises(BudgetError):
        enumerate_bases(UniformMatroid(2, 17))


def test_exchange_check_catches_non_matroid():
    with pytest.raises(ContractError):
        verify_exchange([(0, 1), (2, 3)])


def test_brute_force_optimum_examples():
    assert brute_force_optimum(GraphicMatroid(3, K3), WeightMatrix([[1, 2, 3]]), objectives.identity()) == ((3,), (0, 1))
    assert brute_force_optimum(UniformMatroid(1, 1), WeightMatrix([[7]]), objectives.identity()) == ((7,), (0,))


def test_powers_of_two_profiles_are_injective():
    oracle = make_mrk(1, 2, [2])
    w = WeightMatrix([[1, 2, 4, 8]])
    report = brute_force(oracle, w)
    assert len(report.bases) == len(report.profile_set) == 6
    table = {u: rank for rank, u in enumerate(reversed(report.profile_set))}
    best, base = brute_force_optimum(oracle, w, objectives.table(table))
    assert best == max(report.profile_set) and w.profile(base) == best


def test_leibniz_matches_known():
    assert leibniz_det([[2, 1], [1, 2]]) == 3
    assert leibniz_det([]) == 1


def test_random_instance_deterministic_and_valid():
    assert instance_bytes(1) == instance_bytes(1)
    for seed in range(50):
        rec = random_instance(seed, n_max=6, d_max=2)
        Problem.from_dict(rec)  # validates in the file format


def test_vectorial_entries_within_bounds():
    for seed in range(30):
        rec = random_instance(seed, kinds=("vectorial",))
        assert rec["matroid"]["kind"] == "vectorial"
        assert all(-2 <= x <= 2 for row in rec["matroid"]["matrix"] for x in row)
        assert all(-2 <= x <= 2 for row in rec["weights"] for x in row)
