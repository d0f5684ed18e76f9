"""Determinant-interpolation solver for vectorial matroids.

g(y) = det(A Y A^T) with Y = diag(prod_i y_i^{w_ij}) expands, by Binet-Cauchy,
to sum over bases B of det(A^B)^2 * y^{W(B)}. Its support is exactly the set
of base profiles. Coefficients are recovered from p^d evaluations along
y_i = t^(p^(i-1)), t = 1..p^d, which turns the multivariate interpolation
into one univariate Vandermonde solve.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .combinatorial import Solution, recover_optimal_base
from .config import DEFAULT_BUDGET, Budget
from .errors import BudgetError, ContractError, InfeasibleError, InputError
from .matroids import VectorialMatroid, WeightMatrix, full_row_rank, independent_rows
from .objectives import LexTieBreak, Objective, Shifted, minimize


@dataclass
class ShiftedInstance:
    original: WeightMatrix
    shift: int  # q = max |w_ij|
    weights: WeightMatrix  # w_ij + q, all nonnegative
    m: int
    objective: Objective  # compares f(y - m q 1)

    @property
    def offset(self) -> tuple:
        return (self.m * self.shift,) * self.original.d

    def unshift(self, u) -> tuple:
        return tuple(x - self.m * self.shift for x in u)


def shift_nonnegative(w: WeightMatrix, f: Objective | None, m: int, elements=None) -> ShiftedInstance:
    """Add q = max|w_ij| to every weight; the wrapped objective undoes the m*q offset."""
    q = w.max_abs(elements)
    shifted = w.transformed(lambda x: x + q)
    offset = (m * q,) * w.d
    return ShiftedInstance(w, q, shifted, m, None if f is None else Shifted(f, offset))


@dataclass
class MonomialDiagonal:
    """Exponent vector (w_1j, ..., w_dj) of the j-th diagonal monomial of Y."""

    exponents: list  # list[tuple[int, ...]], one per column

    @classmethod
    def from_weights(cls, w: WeightMatrix, columns=None) -> "MonomialDiagonal":
        cols = range(w.n) if columns is None else columns
        return cls([w.column(j) for j in cols])

    def substitute(self, values) -> list[int]:
        out = []
        for e in self.exponents:
            v = 1
            for base, k in zip(values, e):
                if k:
                    v *= base**k
            out.append(v)
        return out


def evaluate_g(a, ydiag: MonomialDiagonal, values) -> int:
    """det(A Y(values) A^T) exactly. A must have full row rank."""
    a = [list(r) for r in a]
    if a and kernels.bareiss_rank(a) != len(a):
        raise InputError("evaluate_g needs a full-row-rank matrix; reduce rows first")
    if any(int(v) <= 0 for v in values):
        raise InputError("substituted values must be positive integers")
    return kernels.gram_det(a, ydiag.substitute([int(v) for v in values]))


@dataclass
class GeneratingPolynomial:
    """Sparse g: profile -> coefficient (only nonzero terms stored)."""

    coefficients: dict
    d: int
    degree_bound: int  # Z = {0..degree_bound}^d

    def __getitem__(self, u):
        return self.coefficients.get(tuple(u), 0)

    def support(self) -> list:
        return sorted(self.coefficients)

    def total(self) -> int:
        return sum(self.coefficients.values())

    def as_strings(self) -> list:
        return [[list(u), str(c)] for u, c in sorted(self.coefficients.items())]


@dataclass
class AlgebraicStats:
    evaluations: int = 0
    points: int = 0
    max_det_bits: int = 0
    subproblems: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = {
            "evaluations": self.evaluations,
            "evaluation_points": self.points,
            "max_det_bits": self.max_det_bits,
            "subproblems": self.subproblems,
        }
        d.update(self.extra)
        return d


def predicted_entry_bits(a, ydiag: MonomialDiagonal, p: int, d: int) -> int:
    s = p**d
    amax = max((abs(x) for r in a for x in r), default=0)
    n = len(ydiag.exponents)
    emax = max((sum(k * p**i for i, k in enumerate(e)) for e in ydiag.exponents), default=0)
    return math.ceil(math.log2(n * amax * amax + 1) + emax * math.log2(max(s, 1))) + 1


def interpolate_coefficients(a, w: WeightMatrix, columns=None, budget: Budget = DEFAULT_BUDGET,
                             threads: int = 1, stats: AlgebraicStats | None = None) -> GeneratingPolynomial:
    """All coefficients g_u of g(y), for nonnegative weights and full-row-rank A.

    ``columns`` selects which columns of A (and W) form the ground set.
    """
    cols = list(range(w.n)) if columns is None else list(columns)
    sub = [[r[j] for j in cols] for r in a]
    m = len(sub)
    if any(w.rows[i][j] < 0 for i in range(w.d) for j in cols):
        raise InputError("interpolation needs nonnegative weights; shift first")
    q = max((w.rows[i][j] for i in range(w.d) for j in cols), default=0)
    d = w.d
    p = m * q + 1
    s = p**d
    if s > budget.points:
        raise BudgetError("evaluation-point cap p^d", s, budget.points)
    ydiag = MonomialDiagonal.from_weights(w, cols)
    bits = predicted_entry_bits(sub, ydiag, p, d)
    if bits > budget.bits:
        raise BudgetError("determinant bit-length cap", bits, budget.bits)

    # y_i := t^(p^(i-1)) collapses each diagonal monomial to t^(sum_i w_ij p^(i-1)).
    flat = [sum(k * p**i for i, k in enumerate(e)) for e in ydiag.exponents]

    def evaluate(t):
        return kernels.gram_det(sub, [t**e for e in flat])

    nodes = list(range(1, s + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(evaluate, nodes))
    else:
        values = [evaluate(t) for t in nodes]
    coeffs = kernels.newton_monomial(nodes, values)

    out = {}
    for index, c in enumerate(coeffs):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ContractError(f"non-integer interpolated coefficient {c} at index {index}")
            c = c.numerator
        if c < 0:
            raise ContractError(f"negative coefficient {c} at index {index}")
        if c:
            u = []
            rem = index
            for _ in range(d):
                rem, digit = divmod(rem, p)
                u.append(digit)
            u = tuple(u)
            if sum(x * p**i for i, x in enumerate(u)) != index:
                raise ContractError("profile encoding is not injective")
            out[u] = c
    if stats is not None:
        stats.evaluations += s
        stats.points = max(stats.points, s)
        stats.max_det_bits = max(stats.max_det_bits, max((v.bit_length() for v in values), default=0))
    return GeneratingPolynomial(out, d, m * q)


def profile_set(gp: GeneratingPolynomial) -> list:
    return gp.support()


def _restricted_value(a, w: WeightMatrix, f: Objective, subset, budget, threads, stats):
    cols = sorted(subset)
    rows = [a[i] for i in independent_rows(a, cols)]
    m = len(rows)
    shifted = shift_nonnegative(w, f, m, cols)
    gp = interpolate_coefficients(rows, shifted.weights, cols, budget, threads, stats)
    best = minimize(shifted.objective, gp.support())
    return shifted.unshift(best), gp


def optimal_value_algebraic(a, w: WeightMatrix, f: Objective, budget: Budget = DEFAULT_BUDGET,
                            threads: int = 1, order=None) -> Solution:
    """Optimal profile and base over the vectorial matroid of the integer matrix A."""
    a = [[int(x) for x in r] for r in a]
    if a and not a[0]:
        raise InfeasibleError("matrix has rows but no columns")
    n = len(a[0]) if a else w.n
    if w.n != n:
        raise InputError(f"weights have {w.n} columns, matrix has {n}")
    reduced = full_row_rank(a)
    matroid = VectorialMatroid(reduced, n)
    stats = AlgebraicStats()
    ranked = LexTieBreak(f)
    top = {}

    def value_solver(subset):
        stats.subproblems += 1
        value, gp = _restricted_value(reduced, w, ranked, subset, budget, threads, stats)
        if len(subset) == n:
            top["profile_set_size"] = len(gp.coefficients)
            top["generating_polynomial"] = gp
        return value

    rec = recover_optimal_base(matroid, w, ranked, value_solver, order)
    stats.extra["profile_set_size"] = top["profile_set_size"]
    out = stats.as_dict()
    out["oracle_queries"] = matroid.queries
    out["comparisons"] = f.comparisons
    return Solution(rec.optimum, rec.base, out, top["generating_polynomial"])


def shifted_polynomial(a, w: WeightMatrix, budget: Budget = DEFAULT_BUDGET, threads: int = 1):
    """(ShiftedInstance, GeneratingPolynomial) for the whole ground set; used for profile dumps."""
    reduced = full_row_rank([[int(x) for x in r] for r in a])
    shifted = shift_nonnegative(w, None, len(reduced))
    return shifted, interpolate_coefficients(reduced, shifted.weights, None, budget, threads)
