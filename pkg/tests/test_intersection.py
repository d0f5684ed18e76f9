import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlmopt.errors import ContractError
from nlmopt.intersection import IntersectionStats, max_common_independent
from nlmopt.matroids import GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid, VectorialMatroid

K3 = [(0, 1), (1, 2), (0, 2)]


def exhaustive_max(a, b):
    for r in range(a.n, -1, -1):
        for s in itertools.combinations(range(a.n), r):
            if a.is_independent(s) and b.is_independent(s):
                return r
    return 0


def random_matroid(r: random.Random, n: int):
    kind = r.choice(["uniform", "partition", "graphic", "vectorial"])
    if kind == "uniform":
        return UniformMatroid(r.randint(0, n), n)
    if kind == "partition":
        labels = [r.randrange(3) for _ in range(n)]
        return PartitionMatroid(n, [([e for e in range(n) if labels[e] == b], r.randint(0, 3)) for b in range(3)])
    if kind == "graphic":
        v = r.randint(2, 5)
        return GraphicMatroid(v, [(r.randrange(v), r.randrange(v)) for _ in range(n)])
    return VectorialMatroid([[r.randint(-1, 1) for _ in range(n)] for _ in range(r.randint(1, 4))])


def test_identical_uniform():
    a = UniformMatroid(2, 3)
    assert len(max_common_independent(a, UniformMatroid(2, 3))) == 2


def test_uniform_vs_partition():
    s = max_common_independent(UniformMatroid(2, 4), PartitionMatroid(4, [({0, 1}, 1), ({2, 3}, 1)]))
    assert len(s) == 2 and len(set(s) & {0, 1}) == 1


def test_graphic_vs_partition():
    b = PartitionMatroid(3, [({0}, 1), ({1}, 1), ({2}, 0)])
    assert max_common_independent(GraphicMatroid(3, K3), b) == (0, 1)


def test_empty_ground_set():
    assert max_common_independent(UniformMatroid(0, 0), UniformMatroid(0, 0)) == ()


def test_loops_never_enter():
    a = PartitionMatroid(3, [({0, 1}, 2)])  # 2 is a loop
    assert max_common_independent(a, UniformMatroid(3, 3)) == (0, 1)


@given(st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_matches_exhaustive_and_counts_augmentations(seed):
    r = random.Random(seed)
    n = r.randint(0, 8)
    a, b = random_matroid(r, n), random_matroid(r, n)
    stats = IntersectionStats()
    s = max_common_independent(a, b, stats=stats)
    assert a.is_independent(s) and b.is_independent(s)
    assert len(s) == exhaustive_max(a, b)
    # one augmentation per element, each growing |S| by one
    assert stats.augmentations == len(s) <= min(a.rank(), b.rank())
    assert max_common_independent(a, b) == s  # deterministic


def test_inconsistent_oracle_raises_contract_error():
    class Flaky(Matroid):
        """{0,1} is independent on first query only."""

        pairs = 0

        def _independent(self, key):
            if len(key) < 2:
                return True
            self.pairs += 1
            return self.pairs == 1

    flaky = Flaky(2, cache_size=0)
    with pytest.raises(ContractError):
        max_common_independent(flaky, UniformMatroid(2, 2))
