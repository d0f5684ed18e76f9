"""Matroids presented by independence oracles, weight matrices and profiles.

Elements are 0-based indices. Every oracle exposes ``elements`` (the ground
set it accepts queries over); for everything except :class:`Restriction` that
is ``range(n)``.
"""

from __future__ import annotations

import functools
import threading
from collections.abc import Iterable, Sequence

from . import kernels
from .errors import InputError

Profile = tuple  # tuple[int, ...]


class WeightMatrix:
    """A d x n integer matrix; row i is criterion w_i, column j is element j."""

    __slots__ = ("rows", "d", "n")

    def __init__(self, rows: Sequence[Sequence[int]], n: int | None = None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if n is None:
            if not rows:
                raise InputError("weight matrix needs at least one row or an explicit n")
            n = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InputError(f"weights row {i} has length {len(r)}, expected {n}")
        self.rows = rows
        self.d = len(rows)
        self.n = n

    def __eq__(self, other):
        return isinstance(other, WeightMatrix) and (self.rows, self.n) == (other.rows, other.n)

    def __hash__(self):
        return hash((self.rows, self.n))

    def __repr__(self):
        return f"WeightMatrix({[list(r) for r in self.rows]!r})"

    def column(self, j: int) -> Profile:
        return tuple(r[j] for r in self.rows)

    def profile(self, subset: Iterable[int]) -> Profile:
        subset = list(subset)
        for j in subset:
            if not 0 <= j < self.n:
                raise InputError(f"element {j} out of range for {self.n} columns")
        return tuple(sum(r[j] for j in subset) for r in self.rows)

    def values(self, elements: Iterable[int] | None = None) -> tuple:
        """Sorted distinct entries over the given columns (all columns by default)."""
        cols = range(self.n) if elements is None else elements
        return tuple(sorted({r[j] for r in self.rows for j in cols}))

    def max_abs(self, elements: Iterable[int] | None = None) -> int:
        cols = range(self.n) if elements is None else list(elements)
        return max((abs(r[j]) for r in self.rows for j in cols), default=0)

    def transformed(self, fn) -> "WeightMatrix":
        return WeightMatrix([[fn(x) for x in r] for r in self.rows], self.n)


def profile(w: WeightMatrix, subset: Iterable[int]) -> Profile:
    return w.profile(subset)


class Matroid:
    """Base class for independence oracles.

    Subclasses implement ``_independent(key)`` where ``key`` is a sorted tuple
    of distinct in-range elements. Answers are memoized per instance; the
    memo is an ``lru_cache`` so it is safe under concurrent queries.
    ``cache_size=None`` means unbounded, ``0`` disables memoization.
    """

    kind = "abstract"

    def __init__(self, n: int, cache_size: int | None = None):
        if n < 0:
            raise InputError("ground set size must be nonnegative")
        self.n = n
        self._lock = threading.Lock()
        self.queries = 0
        self.evaluations = 0
        self._cached = functools.lru_cache(maxsize=cache_size)(self._counted)

    @property
    def elements(self) -> tuple:
        return tuple(range(self.n))

    def _counted(self, key):
        with self._lock:
            self.evaluations += 1
        return self._independent(key)

    def _independent(self, key: tuple) -> bool:  # pragma: no cover
        raise NotImplementedError

    def canonical(self, subset: Iterable[int]) -> tuple:
        key = tuple(sorted(set(subset)))
        if key and (key[0] < 0 or key[-1] >= self.n):
            bad = key[0] if key[0] < 0 else key[-1]
            raise InputError(f"element {bad} outside ground set of size {self.n}")
        return key

    def is_independent(self, subset: Iterable[int]) -> bool:
        key = self.canonical(subset)
        with self._lock:
            self.queries += 1
        return self._cached(key)

    def rank(self, subset: Iterable[int] | None = None) -> int:
        """Greedy rank: scan elements in ascending order, keep each one that stays independent."""
        items = self.elements if subset is None else self.canonical(subset)
        kept: list[int] = []
        for j in items:
            if self.is_independent(kept + [j]):
                kept.append(j)
        return len(kept)

    def reset_counters(self):
        with self._lock:
            self.queries = 0
            self.evaluations = 0

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n}>"


def is_independent(oracle: Matroid, subset: Iterable[int]) -> bool:
    return oracle.is_independent(subset)


def rank(oracle: Matroid, subset: Iterable[int] | None = None) -> int:
    return oracle.rank(subset)


class UniformMatroid(Matroid):
    kind = "uniform"

    def __init__(self, m: int, n: int, cache_size=None):
        if not 0 <= m <= n:
            raise InputError(f"uniform matroid needs 0 <= rank <= n, got U({m},{n})")
        super().__init__(n, cache_size)
        self.m = m

    def _independent(self, key):
        return len(key) <= self.m

    def __repr__(self):
        return f"UniformMatroid({self.m}, {self.n})"


class PartitionMatroid(Matroid):
    """Blocks are disjoint element sets with a cap each.

    Elements covered by no block are loops.
    """

    kind = "partition"

    def __init__(self, n: int, blocks: Sequence[tuple[Iterable[int], int]], cache_size=None):
        super().__init__(n, cache_size)
        self.blocks = []
        self._block_of = {}
        for b, (elems, cap) in enumerate(blocks):
            elems = tuple(sorted(set(elems)))
            if cap < 0:
                raise InputError(f"block {b} has negative rank {cap}")
            for e in elems:
                if not 0 <= e < n:
                    raise InputError(f"block {b} element {e} outside ground set of size {n}")
                if e in self._block_of:
                    raise InputError(f"element {e} appears in two blocks")
                self._block_of[e] = b
            self.blocks.append((elems, int(cap)))

    def _independent(self, key):
        used = [0] * len(self.blocks)
        for e in key:
            b = self._block_of.get(e)
            if b is None:
                return False
            used[b] += 1
            if used[b] > self.blocks[b][1]:
                return False
        return True

    def __repr__(self):
        return f"PartitionMatroid({self.n}, {self.blocks})"


class GraphicMatroid(Matroid):
    """Forests of a multigraph; edge j joins ``edges[j]``. Self-loops are dependent."""

    kind = "graphic"

    def __init__(self, num_vertices: int, edges: Sequence[tuple[int, int]], cache_size=None):
        super().__init__(len(edges), cache_size)
        self.num_vertices = num_vertices
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in self.edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise InputError(f"edge ({u},{v}) references a vertex outside 0..{num_vertices - 1}")

    def _independent(self, key):
        parent = {}

        def find(x):
            root = x
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(x, x) != root:
                parent[x], x = root, parent[x]
            return root

        for e in key:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def components(self) -> list[list[int]]:
        """Vertex sets of connected components, each sorted, ordered by smallest vertex."""
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        groups: dict[int, list[int]] = {}
        for x in range(self.num_vertices):
            groups.setdefault(find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]

    def incidence_matrix(self) -> list[list[int]]:
        """Signed vertex-arc incidence matrix, one row dropped per component.

        Edge (u, v) is oriented u -> v: +1 in row u, -1 in row v (a self-loop
        gives a zero column). The dropped row is the component's smallest
        vertex, which leaves a matrix of full row rank.
        """
        dropped = {comp[0] for comp in self.components()}
        keep = [x for x in range(self.num_vertices) if x not in dropped]
        rows = []
        for x in keep:
            row = []
            for u, v in self.edges:
                if u == v:
                    row.append(0)
                elif x == u:
                    row.append(1)
                elif x == v:
                    row.append(-1)
                else:
                    row.append(0)
            rows.append(row)
        return rows

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __repr__(self):
        return f"GraphicMatroid({self.num_vertices}, {list(self.edges)})"


class VectorialMatroid(Matroid):
    """Linear independence of columns of an exact integer matrix over the rationals."""

    kind = "vectorial"

    def __init__(self, matrix: Sequence[Sequence[int]], n: int | None = None, cache_size=None):
        rows = [[int(x) for x in r] for r in matrix]
        if n is None:
            if not rows:
                raise InputError("vectorial matroid with no rows needs explicit n")
            n = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InputError(f"matrix row {i} has length {len(r)}, expected {n}")
        super().__init__(n, cache_size)
        self.matrix = rows
        self.m = len(rows)

    def columns(self, subset: Iterable[int]) -> list[list[int]]:
        """Column submatrix (m x |subset|) in the given order."""
        cols = list(subset)
        return [[r[j] for j in cols] for r in self.matrix]

    def _independent(self, key):
        if len(key) > self.m:
            return False
        if not key:
            return True
        return kernels.bareiss_rank(self.columns(key)) == len(key)

    def __repr__(self):
        return f"VectorialMatroid({self.matrix})"


class Restriction(Matroid):
    """M.S: the parent oracle seen only on the retained subset S (original labels)."""

    kind = "restriction"

    def __init__(self, parent: Matroid, subset: Iterable[int], cache_size=0):
        super().__init__(parent.n, cache_size)
        self.parent = parent
        self.retained = parent.canonical(subset)
        self._retained_set = frozenset(self.retained)

    @property
    def elements(self):
        return self.retained

    def canonical(self, subset):
        key = super().canonical(subset)
        for e in key:
            if e not in self._retained_set:
                raise InputError(f"element {e} is not in the restriction")
        return key

    def _independent(self, key):
        return self.parent.is_independent(key)

    def __repr__(self):
        return f"Restriction({self.parent!r}, {list(self.retained)})"


class DirectSum(Matroid):
    """Direct sum; part i occupies the next ``parts[i].n`` consecutive labels."""

    kind = "direct_sum"

    def __init__(self, parts: Sequence[Matroid], cache_size=None):
        self.parts = list(parts)
        self.offsets = []
        total = 0
        for p in self.parts:
            if isinstance(p, Restriction):
                raise InputError("direct sum parts must have contiguous ground sets")
            self.offsets.append(total)
            total += p.n
        super().__init__(total, cache_size)

    def _independent(self, key):
        pieces = [[] for _ in self.parts]
        i = 0
        for e in key:
            while e >= self.offsets[i] + self.parts[i].n:
                i += 1
            pieces[i].append(e - self.offsets[i])
        return all(p.is_independent(s) for p, s in zip(self.parts, pieces))

    def __repr__(self):
        return f"DirectSum({self.parts!r})"


def make_mrk(r: int, k: int, block_sizes: Sequence[int], cache_size=None) -> PartitionMatroid:
    """The rank-k matroid M_{r,k} on 2k elements.

    Elements 0..k-1 form K and k..2k-1 form its barred copy. K is cut into r
    consecutive parts of the given sizes; part i together with its barred
    copy is a uniform matroid of rank k_i on 2k_i elements.
    """
    block_sizes = [int(b) for b in block_sizes]
    if not 1 <= r <= max(k, 1) or len(block_sizes) != r:
        raise InputError(f"M_(r,k) needs 1 <= r <= k and r block sizes, got r={r}, k={k}, {block_sizes}")
    if any(b <= 0 for b in block_sizes) or sum(block_sizes) != k:
        raise InputError(f"block sizes {block_sizes} must be positive and sum to k={k}")
    blocks = []
    start = 0
    for b in block_sizes:
        part = list(range(start, start + b))
        blocks.append((part + [k + j for j in part], b))
        start += b
    m = PartitionMatroid(2 * k, blocks, cache_size)
    m.kind = "m_rk"
    return m


def independent_rows(matrix: Sequence[Sequence[int]], columns=None) -> list[int]:
    """Indices of a maximal linearly independent set of rows, earliest rows first.

    With ``columns`` given, independence is judged on that column submatrix.
    """
    kept: list[int] = []
    trial_rows: list[list[int]] = []
    for i, row in enumerate(matrix):
        r = list(row) if columns is None else [row[j] for j in columns]
        trial = trial_rows + [r]
        if kernels.bareiss_rank(trial) == len(trial):
            kept.append(i)
            trial_rows = trial
    return kept


def full_row_rank(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Drop dependent rows; the column matroid is unchanged."""
    return [list(matrix[i]) for i in independent_rows(matrix)]
