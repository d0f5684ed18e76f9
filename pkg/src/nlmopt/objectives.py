"""Comparison oracles for the objective f.

Solvers only ever call :meth:`Objective.leq`. Built-in families also expose
``value`` (an exact Fraction); ``leq`` is derived from it. For lq objectives
``value`` is the q-th power sum, never the root, so comparisons stay exact.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from collections.abc import Callable, Iterable, Mapping, Sequence

from .errors import InputError

INF = "inf"


class Objective:
    """Total preorder on profiles. Counts comparison queries."""

    name = "objective"

    def __init__(self):
        self.comparisons = 0
        self._lock = threading.Lock()

    def value(self, y) -> Fraction | None:
        return None

    def _leq(self, x, y) -> bool:
        return self.value(x) <= self.value(y)

    def leq(self, x, y) -> bool:
        """True iff f(x) <= f(y)."""
        with self._lock:
            self.comparisons += 1
        return self._leq(tuple(x), tuple(y))

    def less(self, x, y) -> bool:
        return not self.leq(y, x)

    def equivalent(self, x, y) -> bool:
        return not self.less(x, y) and not self.less(y, x)


class FunctionObjective(Objective):
    """Objective given by an exact-valued callable on profiles."""

    def __init__(self, fn: Callable[[tuple], Fraction], name: str = "function"):
        super().__init__()
        self._fn = fn
        self.name = name

    def value(self, y):
        return Fraction(self._fn(tuple(y)))


class ComparisonObjective(Objective):
    """Wraps a bare comparison predicate ``leq(x, y)``; no numeric value exists."""

    def __init__(self, leq: Callable[[tuple, tuple], bool], name: str = "comparison"):
        super().__init__()
        self._pred = leq
        self.name = name

    def _leq(self, x, y):
        return bool(self._pred(x, y))


def _frac_list(xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def identity() -> Objective:
    def f(y):
        if len(y) != 1:
            raise InputError("identity objective needs d = 1")
        return y[0]

    return FunctionObjective(f, "identity")


def linear(weights: Sequence) -> Objective:
    pi = _frac_list(weights)

    def f(y):
        if len(y) != len(pi):
            raise InputError(f"linear objective has {len(pi)} weights, profile has {len(y)}")
        return sum((p * v for p, v in zip(pi, y)), Fraction(0))

    return FunctionObjective(f, "linear")


def lq(q, weights: Sequence | None = None) -> Objective:
    """sum |pi_i y_i|^q for integer q >= 1, or max |pi_i y_i| when q is ``"inf"``."""
    if q != INF:
        q = int(q)
        if q < 1:
            raise InputError("lq objective needs q >= 1 or 'inf'")
    pi = None if weights is None else _frac_list(weights)

    def scaled(y):
        if pi is None:
            return [abs(Fraction(v)) for v in y]
        if len(y) != len(pi):
            raise InputError(f"lq objective has {len(pi)} weights, profile has {len(y)}")
        return [abs(p * v) for p, v in zip(pi, y)]

    if q == INF:
        return FunctionObjective(lambda y: max(scaled(y), default=Fraction(0)), "linf")
    return FunctionObjective(lambda y: sum((v**q for v in scaled(y)), Fraction(0)), f"l{q}")


def maximum() -> Objective:
    return FunctionObjective(lambda y: max(Fraction(v) for v in y), "max")


def shifted_square(target) -> Objective:
    """(y - u)^2, summed over coordinates when d > 1."""
    u = _frac_list(target if isinstance(target, (list, tuple)) else [target])

    def f(y):
        if len(y) != len(u):
            raise InputError(f"shifted-square target has length {len(u)}, profile has {len(y)}")
        return sum(((v - t) ** 2 for v, t in zip(y, u)), Fraction(0))

    return FunctionObjective(f, "shifted_square")


def table(entries: Mapping[tuple, int]) -> Objective:
    """Rank lookup; a lower rank is better. Unlisted profiles rank after all listed ones."""
    ranks = {tuple(k): int(v) for k, v in entries.items()}
    worst = max(ranks.values(), default=0) + 1
    return FunctionObjective(lambda y: ranks.get(tuple(y), worst), "table")


class Shifted(Objective):
    """f'(y) = f(y - offset), with offset a per-coordinate integer vector."""

    def __init__(self, base: Objective, offset: Sequence[int]):
        super().__init__()
        self.base = base
        self.offset = tuple(offset)
        self.name = base.name

    def _unshift(self, y):
        return tuple(a - b for a, b in zip(y, self.offset))

    def value(self, y):
        return self.base.value(self._unshift(y))

    def _leq(self, x, y):
        return self.base.leq(self._unshift(x), self._unshift(y))


class Scaled(Objective):
    """f'(y) = f(scale * y) for an exact rational scale."""

    def __init__(self, base: Objective, scale):
        super().__init__()
        self.base = base
        self.scale = Fraction(scale)
        self.name = base.name

    def _scaled(self, y):
        return tuple(self.scale * v for v in y)

    def value(self, y):
        return self.base.value(self._scaled(y))

    def _leq(self, x, y):
        return self.base.leq(self._scaled(x), self._scaled(y))


class LexTieBreak(Objective):
    """Refines f to a total order: ties under f go to the lexicographically smaller profile."""

    def __init__(self, base: Objective):
        super().__init__()
        self.base = base
        self.name = base.name

    def value(self, y):
        return self.base.value(y)

    def _leq(self, x, y):
        if not self.base.leq(x, y):
            return False
        if not self.base.leq(y, x):
            return True
        return x <= y


def minimize(f: Objective, profiles: Iterable[tuple]) -> tuple:
    """Scan profiles in lexicographic order with |U| - 1 comparisons.

    The incumbent is replaced only on a strict improvement, so among
    f-equivalent minimizers the lexicographically smallest wins.
    """
    ordered = sorted(set(tuple(u) for u in profiles))
    if not ordered:
        raise ValueError("minimize over an empty profile set")
    best = ordered[0]
    for u in ordered[1:]:
        if not f.leq(best, u):
            best = u
    return best


def from_spec(spec: Mapping) -> Objective:
    """Build a built-in objective from its file-format record."""
    kind = spec.get("kind")
    if kind == "identity":
        return identity()
    if kind == "linear":
        return linear(spec["weights"])
    if kind == "lq":
        return lq(spec["q"], spec.get("weights"))
    if kind == "max":
        return maximum()
    if kind == "shifted_square":
        return shifted_square(spec["target"])
    if kind == "table":
        return table({tuple(e["profile"]): e["rank"] for e in spec["entries"]})
    raise InputError(f"unknown objective kind {kind!r}")
