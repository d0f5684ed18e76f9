"""Oracle-based solver for few-valued weights.

Feasibility of a profile u is decided by rewriting W = P * What (pattern times
selector), enumerating selector profiles that P maps to u, and testing each
with one matroid intersection against a partition matroid. The achievable
profile set U is filtered out of a superset Z, minimized under the
comparison oracle, and an optimal base is recovered by element deletion.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .config import DEFAULT_BUDGET, Budget
from .errors import BudgetError, ContractError, InputError
from .intersection import IntersectionStats, max_common_independent
from .matroids import Matroid, PartitionMatroid, Restriction, WeightMatrix
from .objectives import LexTieBreak, Objective, minimize


@dataclass
class PatternMatrix:
    """All p^d points of {a_1..a_p}^d, lexicographic, as columns of a d x p^d matrix."""

    values: tuple
    d: int
    columns: list = field(default_factory=list)

    def __post_init__(self):
        if not self.columns:
            self.columns = list(itertools.product(self.values, repeat=self.d)) if self.values else []

    @property
    def matrix(self) -> list[list[int]]:
        return [[col[i] for col in self.columns] for i in range(self.d)]

    def apply(self, uhat) -> tuple:
        return tuple(sum(c[i] * k for c, k in zip(self.columns, uhat)) for i in range(self.d))


@dataclass
class SelectorMatrix:
    """0/1 rows indexed by patterns; row v selects the elements whose weight column is v."""

    supports: list  # list[tuple[int, ...]]
    n: int

    @property
    def matrix(self) -> list[list[int]]:
        rows = []
        for supp in self.supports:
            s = set(supp)
            rows.append([1 if j in s else 0 for j in range(self.n)])
        return rows


def pattern_selector(w: WeightMatrix, elements=None) -> tuple[PatternMatrix, SelectorMatrix]:
    elements = range(w.n) if elements is None else sorted(elements)
    pat = PatternMatrix(w.values(elements), w.d)
    index = {col: i for i, col in enumerate(pat.columns)}
    supports = [[] for _ in pat.columns]
    for j in elements:
        supports[index[w.column(j)]].append(j)
    return pat, SelectorMatrix([tuple(s) for s in supports], w.n)


@dataclass
class ProfileSuperset:
    profiles: list
    m: int
    values: tuple
    d: int

    @property
    def p(self) -> int:
        return len(self.values)


@dataclass
class CombinatorialStats:
    z_size: int = 0
    u_size: int = 0
    intersection: IntersectionStats = field(default_factory=IntersectionStats)
    subproblems: int = 0

    def as_dict(self) -> dict:
        return {
            "superset_size": self.z_size,
            "profile_set_size": self.u_size,
            "intersection_calls": self.intersection.calls,
            "intersection_oracle_queries": self.intersection.oracle_queries,
            "augmentations": self.intersection.augmentations,
            "subproblems": self.subproblems,
        }


def _compositions(total: int, caps: list[int]):
    """Vectors k with 0 <= k_i <= caps[i] and sum k = total, in lexicographic order."""
    if not caps:
        if total == 0:
            yield ()
        return
    head, rest = caps[0], caps[1:]
    room = sum(rest)
    for k in range(max(0, total - room), min(head, total) + 1):
        for tail in _compositions(total - k, rest):
            yield (k,) + tail


def check_budget(m: int, p: int, d: int, budget: Budget):
    for label, count in (("candidate cap (m+1)^(p*d)", (m + 1) ** (p * d)),
                         ("candidate cap (m+1)^(p^d)", (m + 1) ** (p**d))):
        if count > budget.candidates:
            raise BudgetError(label, count, budget.candidates)


def feasible_disjoint01(matroid: Matroid, supports, u, m: int | None = None,
                        elements=None, stats: IntersectionStats | None = None):
    """A base B with |B ∩ supports[v]| = u[v] for every v, or None.

    ``supports`` must be pairwise disjoint subsets of the ground set.
    """
    u = [int(x) for x in u]
    if any(x < 0 for x in u):
        raise InputError(f"profile {u} has a negative entry")
    if len(u) != len(supports):
        raise InputError(f"profile has {len(u)} entries for {len(supports)} supports")
    ground = sorted(matroid.elements if elements is None else elements)
    if m is None:
        m = matroid.rank(ground)
    supports = [tuple(sorted(s)) for s in supports]
    if sum(u) > m or any(x > len(s) for x, s in zip(u, supports)):
        return None
    covered = set()
    for s in supports:
        if covered.intersection(s):
            raise InputError("supports are not pairwise disjoint")
        covered.update(s)
    rest = [e for e in ground if e not in covered]
    blocks = [(s, x) for s, x in zip(supports, u)] + [(rest, m - sum(u))]
    target = PartitionMatroid(matroid.n, blocks, cache_size=0)
    common = max_common_independent(matroid, target, ground, stats)
    return common if len(common) == m else None


def _selector_profiles(pat: PatternMatrix, sel: SelectorMatrix, m: int):
    """Pairs (uhat, P*uhat) over selector profiles a base could have.

    Patterns with empty support are pinned to 0 and the entries sum to m;
    every other uhat in {0..m}^(p^d) is rejected by the disjoint-support test
    before any intersection is run.
    """
    caps = [min(m, len(s)) for s in sel.supports]
    for uhat in _compositions(m, caps):
        yield uhat, pat.apply(uhat)


def feasible_general(matroid: Matroid, w: WeightMatrix, u, elements=None,
                     budget: Budget = DEFAULT_BUDGET, stats: IntersectionStats | None = None):
    """A base B with W(B) = u, or None."""
    ground = sorted(matroid.elements if elements is None else elements)
    u = tuple(int(x) for x in u)
    if len(u) != w.d:
        raise InputError(f"profile has {len(u)} entries, weights have {w.d} rows")
    m = matroid.rank(ground)
    pat, sel = pattern_selector(w, ground)
    check_budget(m, len(pat.values), w.d, budget)
    for uhat, image in _selector_profiles(pat, sel, m):
        if image != u:
            continue
        base = feasible_disjoint01(matroid, sel.supports, uhat, m, ground, stats)
        if base is not None:
            return base
    return None


def enumerate_superset(m: int, w: WeightMatrix, elements=None,
                       budget: Budget = DEFAULT_BUDGET) -> ProfileSuperset:
    """Z = {(lambda_1.a, ..., lambda_d.a)} over nonnegative lambda_i summing to m, deduplicated."""
    values = w.values(elements)
    p, d = len(values), w.d
    check_budget(m, p, d, budget)
    row_values = sorted({sum(k * a for k, a in zip(lam, values))
                         for lam in _compositions(m, [m] * p)})
    profiles = list(itertools.product(row_values, repeat=d))
    return ProfileSuperset(profiles, m, values, d)


def profile_set(matroid: Matroid, w: WeightMatrix, elements=None, budget: Budget = DEFAULT_BUDGET,
                threads: int = 1, stats: CombinatorialStats | None = None) -> list:
    """U = {W(B) : B a base}, sorted, by filtering the superset Z."""
    ground = sorted(matroid.elements if elements is None else elements)
    m = matroid.rank(ground)
    z = enumerate_superset(m, w, ground, budget)
    pat, sel = pattern_selector(w, ground)
    check_budget(m, len(pat.values), w.d, budget)
    groups: dict[tuple, list] = {}
    for uhat, image in _selector_profiles(pat, sel, m):
        groups.setdefault(image, []).append(uhat)

    def decide(u):
        local = IntersectionStats()
        for uhat in groups.get(u, ()):
            if feasible_disjoint01(matroid, sel.supports, uhat, m, ground, local) is not None:
                return True, local
        return False, local

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(decide, z.profiles))
    else:
        outcomes = [decide(u) for u in z.profiles]
    result = []
    for u, (ok, local) in zip(z.profiles, outcomes):
        if stats is not None:
            stats.intersection.merge(local)
        if ok:
            result.append(u)
    if stats is not None:
        stats.z_size = len(z.profiles)
        stats.u_size = len(result)
    return result


@dataclass
class Recovery:
    base: tuple
    optimum: tuple
    subproblem_calls: int


def recover_optimal_base(matroid: Matroid, w: WeightMatrix, f: Objective, value_solver,
                         order=None) -> Recovery:
    """Turn an optimal-value routine into an optimal base.

    ``value_solver(S)`` returns the optimal profile of the subproblem restricted
    to the element set S. Starting from S = N, element j is dropped whenever
    that keeps the rank and an f-equivalent optimum. Exactly n + 1 subproblem
    values are computed.
    """
    s = set(matroid.elements)
    m = matroid.rank(s)
    fstar = value_solver(frozenset(s))
    calls = 1
    for j in (sorted(s) if order is None else list(order)):
        smaller = s - {j}
        r = matroid.rank(smaller)
        value = value_solver(frozenset(smaller))
        calls += 1
        if r == m and value is not None and f.equivalent(value, fstar):
            s = smaller
    base = tuple(sorted(s))
    if len(base) != m or not matroid.is_independent(base):
        raise ContractError(f"recovered set {base} is not a base of rank {m}")
    if not f.equivalent(w.profile(base), fstar):
        raise ContractError(f"recovered base profile {w.profile(base)} is not optimal ({fstar})")
    return Recovery(base, fstar, calls)


@dataclass
class Solution:
    profile: tuple
    base: tuple
    stats: dict
    polynomial: object = None


def optimal_value_combinatorial(matroid: Matroid, w: WeightMatrix, f: Objective,
                                budget: Budget = DEFAULT_BUDGET, threads: int = 1,
                                order=None) -> Solution:
    """Optimal profile (lexicographically smallest among f-minimizers) and a base attaining it."""
    if w.n != matroid.n:
        raise InputError(f"weights have {w.n} columns, matroid has {matroid.n} elements")
    stats = CombinatorialStats()
    ranked = LexTieBreak(f)
    full = frozenset(matroid.elements)
    p = len(w.values(full))
    check_budget(matroid.rank(full), p, w.d, budget)

    top = {}

    def value_solver(subset):
        stats.subproblems += 1
        sub = matroid if subset == full else Restriction(matroid, subset)
        u = profile_set(sub, w, subset, budget, threads, stats)
        if subset == full:
            top.update(superset_size=stats.z_size, profile_set_size=stats.u_size)
        return minimize(ranked, u)

    rec = recover_optimal_base(matroid, w, ranked, value_solver, order)
    out = stats.as_dict()
    out.update(top)
    out["oracle_queries"] = matroid.queries
    out["comparisons"] = f.comparisons
    return Solution(rec.optimum, rec.base, out)
