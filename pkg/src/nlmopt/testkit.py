"""Exhaustive reference solvers and seeded instance generators.

Nothing here shares code with the solvers beyond the oracle interface: bases
are enumerated by pruned search and determinants use the permutation
expansion, so these routines can serve as independent checks.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .config import DEFAULT_BRUTE_FORCE_N
from .errors import BudgetError, ContractError
from .matroids import Matroid, WeightMatrix
from .objectives import Objective, minimize


def enumerate_bases(oracle: Matroid, cap: int = DEFAULT_BRUTE_FORCE_N, check_exchange: bool = True) -> list:
    """All bases as sorted tuples, in lexicographic order."""
    ground = sorted(oracle.elements)
    if len(ground) > cap:
        raise BudgetError("brute-force ground-set cap", len(ground), cap)
    r = 0
    kept: list[int] = []
    for e in ground:
        if oracle.is_independent(kept + [e]):
            kept.append(e)
    r = len(kept)
    bases = []

    def extend(start, chosen):
        if len(chosen) == r:
            bases.append(tuple(chosen))
            return
        need = r - len(chosen)
        for i in range(start, len(ground) - need + 1):
            trial = chosen + [ground[i]]
            if oracle.is_independent(trial):
                extend(i + 1, trial)

    extend(0, [])
    if check_exchange:
        verify_exchange(bases, limit=400)
    return bases


def verify_exchange(bases, limit: int | None = None):
    """Base exchange axiom: for B, B' and i in B - B' some i' in B' gives another base."""
    lookup = set(map(frozenset, bases))
    pairs = itertools.product(bases, repeat=2)
    if limit is not None:
        pairs = itertools.islice(pairs, limit)
    for b1, b2 in pairs:
        s1, s2 = set(b1), set(b2)
        for i in s1 - s2:
            if not any(frozenset(s1 - {i} | {j}) in lookup for j in s2):
                raise ContractError(f"exchange axiom fails for {b1}, {b2}, element {i}")


def leibniz_det(matrix) -> int:
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term *= matrix[i][j]
            if not term:
                break
        total += term
    return total


@dataclass
class BruteForceReport:
    bases: list
    profiles: dict  # base -> profile
    profile_set: list
    optimum: tuple | None = None
    base: tuple | None = None
    det_squares: dict = field(default_factory=dict)  # profile -> sum of det^2, vectorial only


def brute_force(oracle: Matroid, w: WeightMatrix, f: Objective | None = None, matrix=None,
                cap: int = DEFAULT_BRUTE_FORCE_N) -> BruteForceReport:
    bases = enumerate_bases(oracle, cap)
    profiles = {b: w.profile(b) for b in bases}
    report = BruteForceReport(bases, profiles, sorted(set(profiles.values())))
    if f is not None:
        report.optimum = minimize(f, report.profile_set)
        report.base = next(b for b in bases if profiles[b] == report.optimum)
    if matrix is not None:
        for b in bases:
            sub = [[row[j] for j in b] for row in matrix]
            u = profiles[b]
            report.det_squares[u] = report.det_squares.get(u, 0) + leibniz_det(sub) ** 2
    return report


def brute_force_optimum(oracle: Matroid, w: WeightMatrix, f: Objective, cap: int = DEFAULT_BRUTE_FORCE_N):
    """(optimal profile, base) with the solvers' tie-break: lexicographically smallest profile."""
    report = brute_force(oracle, w, f, cap=cap)
    return report.optimum, report.base


def brute_force_sum(matrix, weights, values) -> int:
    """sum_B det(A^B)^2 * prod_i values_i^{w_i(B)} over all m-column subsets B."""
    m = len(matrix)
    n = len(matrix[0]) if matrix else len(weights[0])
    total = 0
    for cols in itertools.combinations(range(n), m):
        det = leibniz_det([[row[j] for j in cols] for row in matrix])
        if not det:
            continue
        term = det * det
        for row, t in zip(weights, values):
            term *= t ** sum(row[j] for j in cols)
        total += term
    return total


KINDS = ("uniform", "partition", "graphic", "vectorial", "m_rk")
OBJECTIVES = ("identity", "linear", "l1", "linf", "shifted_square")


def _objective_record(rng, kind, d, lo, hi):
    if kind == "identity":
        if d == 1:
            return {"kind": "identity"}
        kind = "linear"
    if kind == "linear":
        return {"kind": "linear", "weights": [rng.randint(-2, 2) for _ in range(d)]}
    if kind == "l1":
        return {"kind": "lq", "q": 1}
    if kind == "linf":
        return {"kind": "lq", "q": "inf"}
    return {"kind": "shifted_square", "target": [rng.randint(lo, hi) for _ in range(d)]}


def random_matroid_record(rng: random.Random, kind: str, n_max: int = 8) -> dict:
    if kind == "uniform":
        n = rng.randint(1, n_max)
        return {"kind": "uniform", "rank": rng.randint(0, min(n, 4)), "n": n}
    if kind == "partition":
        n = rng.randint(1, n_max)
        cuts = sorted(rng.sample(range(1, n), rng.randint(0, min(3, n - 1)))) if n > 1 else []
        bounds = [0] + cuts + [n]
        blocks = []
        for a, b in zip(bounds, bounds[1:]):
            blocks.append({"elements": list(range(a, b)), "rank": rng.randint(0, min(2, b - a))})
        return {"kind": "partition", "n": n, "blocks": blocks}
    if kind == "graphic":
        v = rng.randint(2, 6)
        pairs = [(a, b) for a in range(v) for b in range(a + 1, v)]
        m = rng.randint(1, min(n_max, len(pairs) + 2))
        edges = [list(rng.choice(pairs)) for _ in range(m)]
        return {"kind": "graphic", "vertices": v, "edges": edges}
    if kind == "vectorial":
        rows = rng.randint(1, 4)
        n = rng.randint(1, n_max)
        return {"kind": "vectorial", "matrix": [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rows)]}
    if kind == "m_rk":
        k = rng.randint(1, max(1, min(4, n_max // 2)))
        r = rng.randint(1, k)
        cuts = sorted(rng.sample(range(1, k), r - 1))
        bounds = [0] + cuts + [k]
        return {"kind": "m_rk", "r": r, "k": k, "block_sizes": [b - a for a, b in zip(bounds, bounds[1:])]}
    raise ValueError(f"unknown kind {kind}")


def ground_size(record: dict) -> int:
    kind = record["kind"]
    if kind in ("uniform", "partition"):
        return record["n"]
    if kind == "graphic":
        return len(record["edges"])
    if kind == "vectorial":
        return len(record["matrix"][0])
    if kind == "m_rk":
        return 2 * record["k"]
    if kind == "direct_sum":
        return sum(ground_size(p) for p in record["parts"])
    raise ValueError(kind)


def random_instance(seed: int, n_max: int = 8, d_max: int = 2, kinds=KINDS, objectives=OBJECTIVES,
                    weight_range=(-2, 2)) -> dict:
    """A problem record (CLI file format), reproducible from ``seed``.

    Weights are drawn from a random sub-alphabet of ``weight_range`` so that
    instances with few distinct values (the combinatorial solver's regime)
    occur regularly.
    """
    rng = random.Random(seed)
    kind = rng.choice(list(kinds))
    matroid = random_matroid_record(rng, kind, n_max)
    n = ground_size(matroid)
    d = rng.randint(1, d_max)
    lo, hi = weight_range
    alphabet = rng.sample(range(lo, hi + 1), rng.randint(1, hi - lo + 1))
    weights = [[rng.choice(alphabet) for _ in range(n)] for _ in range(d)]
    objective = _objective_record(rng, rng.choice(list(objectives)), d, lo, hi)
    return {"matroid": matroid, "weights": weights, "objective": objective}


def instance_bytes(seed: int, **kwargs) -> bytes:
    return (json.dumps(random_instance(seed, **kwargs), sort_keys=True, indent=2) + "\n").encode()
