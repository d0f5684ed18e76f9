"""Guard-rail limits shared by the solvers and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

DEFAULT_CANDIDATES = 10**6
DEFAULT_POINTS = 2500
DEFAULT_BITS = 10**6
DEFAULT_BRUTE_FORCE_N = 16


@dataclass(frozen=True)
class Budget:
    candidates: int = DEFAULT_CANDIDATES  # (m+1)^(p*d) and (m+1)^(p^d), combinatorial solver
    points: int = DEFAULT_POINTS  # p^d evaluation points, algebraic solver
    bits: int = DEFAULT_BITS  # predicted bit length of det(A Y(t) A^T) entries
    brute_force_n: int = DEFAULT_BRUTE_FORCE_N  # ground-set cap for exhaustive enumeration

    @classmethod
    def from_env(cls, **overrides) -> "Budget":
        """Defaults, then ``NLMOPT_BUDGET`` for the candidate cap, then explicit overrides."""
        b = cls()
        env = os.environ.get("NLMOPT_BUDGET")
        if env:
            b = replace(b, candidates=int(env))
        return replace(b, **{k: v for k, v in overrides.items() if v is not None})


DEFAULT_BUDGET = Budget()
