"""Maximum-cardinality matroid intersection by shortest augmenting paths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import ContractError, InputError
from .matroids import Matroid


@dataclass
class IntersectionStats:
    oracle_queries: int = 0
    augmentations: int = 0
    calls: int = 0

    def merge(self, other: "IntersectionStats"):
        self.oracle_queries += other.oracle_queries
        self.augmentations += other.augmentations
        self.calls += other.calls


class _Counting:
    def __init__(self, oracle: Matroid, stats: IntersectionStats):
        self.oracle = oracle
        self.stats = stats

    def __call__(self, subset) -> bool:
        self.stats.oracle_queries += 1
        return self.oracle.is_independent(subset)


def exchange_graph(indep_a, indep_b, current: list[int], outside: list[int]):
    """Sources, sinks and arcs of the exchange graph for common independent set ``current``.

    Arc x -> y (x in S, y not in S) when S - x + y is independent in A;
    arc y -> x when S - x + y is independent in B.
    """
    s = list(current)
    sources = [y for y in outside if indep_a(s + [y])]
    sinks = [y for y in outside if indep_b(s + [y])]
    arcs: dict[int, list[int]] = {v: [] for v in s + outside}
    for x in s:
        rest = [e for e in s if e != x]
        for y in outside:
            swapped = rest + [y]
            if indep_a(swapped):
                arcs[x].append(y)
            if indep_b(swapped):
                arcs[y].append(x)
    return sources, sinks, arcs


def _shortest_path(sources, sinks, arcs):
    sink_set = set(sinks)
    for y in sources:
        if y in sink_set:
            return [y]
    prev = {y: None for y in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        for w in sorted(arcs[v]):
            if w in prev:
                continue
            prev[w] = v
            if w in sink_set:
                path = [w]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            queue.append(w)
    return None


def max_common_independent(
    a: Matroid,
    b: Matroid,
    elements=None,
    stats: IntersectionStats | None = None,
) -> tuple:
    """Largest set independent in both ``a`` and ``b``, as a sorted tuple.

    ``elements`` limits the ground set (defaults to ``a.elements``). BFS visits
    sources and neighbours in ascending order, so the result is deterministic.
    """
    if a.n != b.n:
        raise InputError(f"ground set sizes differ: {a.n} vs {b.n}")
    local = IntersectionStats(calls=1)
    indep_a = _Counting(a, local)
    indep_b = _Counting(b, local)
    ground = sorted(a.elements if elements is None else set(elements))
    if not indep_a([]) or not indep_b([]):
        raise ContractError("empty set reported dependent")
    ground = [e for e in ground if indep_a([e]) and indep_b([e])]
    current: list[int] = []
    while True:
        in_s = set(current)
        outside = [e for e in ground if e not in in_s]
        sources, sinks, arcs = exchange_graph(indep_a, indep_b, current, outside)
        path = _shortest_path(sources, sinks, arcs)
        if path is None:
            break
        nxt = sorted(in_s.symmetric_difference(path))
        if len(nxt) != len(current) + 1 or not indep_a(nxt) or not indep_b(nxt):
            raise ContractError("augmentation produced a set that is not common independent; oracle is inconsistent")
        current = nxt
        local.augmentations += 1
    if stats is not None:
        stats.merge(local)
    return tuple(current)
