"""Minimum-aberration polynomial model fitting.

A model is a set of exponent vectors; it is identifiable by a design when
the square matrix of monomials evaluated at the design points is invertible.
Identifiable models are exactly the bases of the column matroid of the
m x n moment matrix A (a_ij = p_i ** beta_j), so the aberration minimum is a
nonlinear matroid optimization problem.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import objectives
from .algebraic import optimal_value_algebraic
from .combinatorial import optimal_value_combinatorial
from .config import DEFAULT_BUDGET, Budget
from .errors import ContractError, InfeasibleError, InputError
from .matroids import VectorialMatroid, WeightMatrix
from .objectives import Objective

AUGMENT_MESSAGE = "no identifiable model: the moment matrix has rank < m; augment exponent set"


def grlex_key(alpha):
    return (sum(alpha), tuple(-a for a in alpha))


def staircase_exponents(m: int, k: int) -> list[tuple]:
    """{alpha in N^k : prod(alpha_h + 1) <= m}, ordered by total degree, then x1-heavy first."""
    if m < 1 or k < 1:
        raise InputError("staircase needs m >= 1 and k >= 1")
    out = []

    def rec(prefix, budget):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        a = 0
        while (a + 1) <= budget:
            rec(prefix + [a], budget // (a + 1))
            a += 1

    rec([], m)
    return sorted(out, key=grlex_key)


def monomial(point, alpha) -> Fraction:
    v = Fraction(1)
    for x, a in zip(point, alpha):
        if a:  # 0 ** 0 == 1
            v *= Fraction(x) ** a
    return v


def rational_rank(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(rank + 1, len(a)):
            if a[r][c]:
                factor = a[r][c] / a[rank][c]
                a[r] = [x - factor * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def rational_det(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                factor = a[r][c] / a[c][c]
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return det


def rational_solve(rows, rhs) -> list[Fraction]:
    """Solve T c = y exactly (Gauss-Jordan). Raises ContractError when T is singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ContractError("model matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                factor = a[r][c]
                a[r] = [x - factor * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


@dataclass
class ModelMatrix:
    entries: list  # m x n Fractions
    exponents: list
    scales: list  # per-column positive integer multipliers clearing denominators
    rank: int

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def identifiable(self) -> bool:
        return self.rank == self.m

    def integer_matrix(self) -> list[list[int]]:
        out = []
        for row in self.entries:
            r = []
            for x, s in zip(row, self.scales):
                v = x * s
                if v.denominator != 1:
                    raise ContractError("column scaling did not clear denominators")
                r.append(v.numerator)
            out.append(r)
        return out

    def submatrix(self, model) -> list[list[Fraction]]:
        idx = [self.exponents.index(tuple(b)) for b in model]
        return [[row[j] for j in idx] for row in self.entries]


def build_model_matrix(design, exponents) -> ModelMatrix:
    points = [[Fraction(x) for x in p] for p in design]
    if not points:
        raise InputError("design needs at least one point")
    k = len(points[0])
    if any(len(p) != k for p in points):
        raise InputError("design points have inconsistent dimension")
    exps = [tuple(int(a) for a in b) for b in exponents]
    if len(set(exps)) != len(exps):
        raise InputError("exponent set has duplicate rows")
    if any(len(b) != k or min(b, default=0) < 0 for b in exps):
        raise InputError(f"exponents must be nonnegative vectors of length k={k}")
    entries = [[monomial(p, b) for b in exps] for p in points]
    scales = []
    for j in range(len(exps)):
        scales.append(math.lcm(*(row[j].denominator for row in entries)) if entries else 1)
    return ModelMatrix(entries, exps, scales, rational_rank(entries))


ABERRATION_KINDS = (
    "avg_total_degree",
    "weighted_avg_degree",
    "max_avg_degree",
    "lq_weighted_avg_degree",
    "degree_bound_count",
    "per_variable_degree_bound_max",
    "custom",
)


@dataclass
class AberrationSpec:
    kind: str
    pi: list | None = None
    q: object = None  # int >= 1 or "inf"
    theta: int | None = None
    weights: list | None = None  # custom only
    objective: dict | None = None  # custom only

    def __post_init__(self):
        if self.kind not in ABERRATION_KINDS:
            raise InputError(f"unknown aberration kind {self.kind!r}")
        if self.kind in ("weighted_avg_degree", "lq_weighted_avg_degree") and self.pi is None:
            raise InputError(f"{self.kind} needs weights 'pi'")
        if self.pi is not None:
            self.pi = [Fraction(x) for x in self.pi]
        if self.kind == "lq_weighted_avg_degree":
            if self.q in ("inf", "infinity", "∞"):
                self.q = "inf"
            elif self.q is None or int(self.q) < 1:
                raise InputError("lq aberration needs q >= 1 or 'inf'")
            else:
                self.q = int(self.q)
        if self.kind in ("degree_bound_count", "per_variable_degree_bound_max"):
            if self.theta is None or int(self.theta) < 0:
                raise InputError(f"{self.kind} needs theta >= 0")
            self.theta = int(self.theta)
        if self.kind == "custom" and (self.weights is None or self.objective is None):
            raise InputError("custom aberration needs 'weights' and 'objective'")

    @property
    def averaged(self) -> bool:
        return self.kind in ("avg_total_degree", "weighted_avg_degree", "max_avg_degree", "lq_weighted_avg_degree")

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.pi is not None:
            out["pi"] = [str(x) if x.denominator != 1 else x.numerator for x in self.pi]
        for key in ("q", "theta", "weights", "objective"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


def aberration_to_objective(spec: AberrationSpec, exponents, m: int) -> tuple[WeightMatrix, Objective]:
    """Integer weights and a comparison oracle whose minimum is the aberration minimum.

    Averaged aberrations use w_ij = beta_j[i] and evaluate f at y / m; since every
    model has exactly m exponents this orders models exactly as the averaged form.
    """
    exps = [tuple(b) for b in exponents]
    k = len(exps[0]) if exps else 0
    n = len(exps)
    if spec.kind == "custom":
        from .io import build_objective, normalize_objective

        w = WeightMatrix(spec.weights)
        if w.n != n:
            raise InputError(f"custom weights have {w.n} columns for {n} exponents")
        try:
            return w, build_objective(normalize_objective(spec.objective, w.d, "aberration.objective"))
        except InputError as exc:
            raise InputError(f"unsupported custom objective: {exc}") from None
    if spec.kind == "degree_bound_count":
        row = [1 if any(a > spec.theta for a in b) else 0 for b in exps]
        return WeightMatrix([row], n), objectives.identity()
    if spec.kind == "per_variable_degree_bound_max":
        rows = [[1 if b[i] > spec.theta else 0 for b in exps] for i in range(k)]
        return WeightMatrix(rows, n), objectives.maximum()
    w = WeightMatrix([[b[i] for b in exps] for i in range(k)], n)
    if spec.pi is not None and len(spec.pi) != k:
        raise InputError(f"aberration weights pi have length {len(spec.pi)}, expected k={k}")
    if spec.kind == "avg_total_degree":
        base = objectives.linear([1] * k)
    elif spec.kind == "weighted_avg_degree":
        base = objectives.linear(spec.pi)
    elif spec.kind == "max_avg_degree":
        base = objectives.maximum()
    else:
        base = objectives.lq(spec.q, spec.pi)
    return w, objectives.Scaled(base, Fraction(1, m))


@dataclass
class FitResult:
    model: list  # chosen exponents, grlex-sorted
    columns: list  # their indices into the exponent list
    profile: tuple  # integer weight profile W(B)
    aberration: Fraction  # exact where defined; for finite q > 1 the q-th power sum
    aberration_exact: bool
    determinant: Fraction  # det T for the chosen model (nonzero)
    solver: str
    counters: dict = field(default_factory=dict)
    coefficients: list | None = None
    multiplicity: int | None = None


def _aberration_value(spec: AberrationSpec, f: Objective, prof) -> tuple[Fraction, bool]:
    value = f.value(prof)
    exact = not (spec.kind == "lq_weighted_avg_degree" and spec.q not in ("inf", 1))
    if spec.kind == "custom" and spec.objective.get("kind") == "lq" and spec.objective.get("q") not in ("inf", 1):
        exact = False
    return value, exact


def fit_minimum_aberration(design, exponents, spec: AberrationSpec, algorithm: str = "algebraic",
                           budget: Budget = DEFAULT_BUDGET, threads: int = 1, measurements=None,
                           verify: bool = False) -> FitResult:
    exps = [tuple(int(a) for a in b) for b in exponents]
    mm = build_model_matrix(design, exps)
    if not mm.identifiable:
        raise InfeasibleError(AUGMENT_MESSAGE)
    m = mm.m
    w, f = aberration_to_objective(spec, exps, m)
    # Descending deletion keeps early (low-degree) exponents when optima tie.
    order = list(range(mm.n - 1, -1, -1))
    integer = mm.integer_matrix()
    if algorithm == "algebraic":
        sol = optimal_value_algebraic(integer, w, f, budget, threads, order)
    elif algorithm == "combinatorial":
        sol = optimal_value_combinatorial(VectorialMatroid(integer), w, f, budget, threads, order)
    else:
        raise InputError(f"unknown algorithm {algorithm!r}")
    columns = list(sol.base)
    model = sorted((exps[j] for j in columns), key=grlex_key)
    det = rational_det(mm.submatrix(model))
    if det == 0:
        raise ContractError("solver returned a non-identifiable model")
    value, exact = _aberration_value(spec, f, sol.profile)
    result = FitResult(model, sorted(columns, key=lambda j: grlex_key(exps[j])), sol.profile, value, exact, det,
                       algorithm, sol.stats)
    if measurements is not None:
        result.coefficients = interpolate_model(design, model, measurements)
    if verify:
        result.multiplicity = _count_optimal_models(mm, w, f, sol.profile)
    return result


def _count_optimal_models(mm: ModelMatrix, w: WeightMatrix, f: Objective, best) -> int:
    count = 0
    for cols in itertools.combinations(range(mm.n), mm.m):
        if rational_det([[row[j] for j in cols] for row in mm.entries]) == 0:
            continue
        prof = w.profile(cols)
        if f.less(prof, best):
            raise ContractError(f"model {cols} beats the reported optimum")
        if f.equivalent(prof, best):
            count += 1
    return count


def interpolate_model(design, model, measurements) -> list[Fraction]:
    """Coefficients c with T c = y, ordered like ``model``; re-substitution is checked."""
    points = [[Fraction(x) for x in p] for p in design]
    y = [Fraction(v) for v in measurements]
    if len(y) != len(points):
        raise InputError(f"got {len(y)} measurements for {len(points)} design points")
    if len(model) != len(points):
        raise InputError("model size must equal the number of design points")
    t = [[monomial(p, b) for b in model] for p in points]
    c = rational_solve(t, y)
    for p, yi in zip(points, y):
        if sum(ci * monomial(p, b) for ci, b in zip(c, model)) != yi:
            raise ContractError("fitted polynomial does not reproduce the measurements")
    return c


def monomial_name(alpha) -> str:
    parts = []
    for i, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts) or "1"
