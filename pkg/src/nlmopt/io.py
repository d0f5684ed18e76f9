"""Problem/design/result file formats (UTF-8 JSON).

Integers beyond the 53-bit safe range and all non-integral rationals are
written as decimal strings ("123456789012345678901", "3/4"); readers accept
either form. Serialization is canonical: sorted keys, two-space indent,
trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .matroids import (DirectSum, GraphicMatroid, Matroid, PartitionMatroid, UniformMatroid,
                       VectorialMatroid, WeightMatrix, make_mrk)
from . import objectives

PROBLEM_FORMAT = "nlmopt-problem/1"
RESULT_FORMAT = "nlmopt-result/1"
SAFE_INT = 2**53


def parse_int(x, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {x!r}")


def parse_rational(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"{where}: expected an exact rational (integer or 'p/q' string), got {x!r}")


def dump_int(x: int):
    return x if -SAFE_INT < x < SAFE_INT else str(x)


def dump_rational(x):
    x = Fraction(x)
    if x.denominator == 1:
        return dump_int(x.numerator)
    return str(x)


def _check_keys(record: dict, allowed: set, where: str):
    if not isinstance(record, dict):
        raise InputError(f"{where}: expected an object")
    extra = set(record) - allowed
    if extra:
        raise InputError(f"{where}: unknown field(s) {sorted(extra)}")


def _int_list(xs, where):
    if not isinstance(xs, list):
        raise InputError(f"{where}: expected an array")
    return [parse_int(x, f"{where}[{i}]") for i, x in enumerate(xs)]


def _int_matrix(rows, where):
    if not isinstance(rows, list):
        raise InputError(f"{where}: expected an array of arrays")
    return [_int_list(r, f"{where}[{i}]") for i, r in enumerate(rows)]


def normalize_matroid(rec, where="matroid") -> dict:
    """Validate a matroid descriptor and return its canonical form."""
    if not isinstance(rec, dict) or "kind" not in rec:
        raise InputError(f"{where}: expected an object with a 'kind'")
    kind = rec["kind"]
    if kind == "uniform":
        _check_keys(rec, {"kind", "rank", "n"}, where)
        return {"kind": kind, "rank": parse_int(rec.get("rank"), f"{where}.rank"),
                "n": parse_int(rec.get("n"), f"{where}.n")}
    if kind == "partition":
        _check_keys(rec, {"kind", "n", "blocks"}, where)
        blocks = []
        for i, b in enumerate(rec.get("blocks", [])):
            _check_keys(b, {"elements", "rank"}, f"{where}.blocks[{i}]")
            blocks.append({"elements": _int_list(b.get("elements"), f"{where}.blocks[{i}].elements"),
                           "rank": parse_int(b.get("rank"), f"{where}.blocks[{i}].rank")})
        return {"kind": kind, "n": parse_int(rec.get("n"), f"{where}.n"), "blocks": blocks}
    if kind == "graphic":
        _check_keys(rec, {"kind", "vertices", "edges"}, where)
        edges = _int_matrix(rec.get("edges"), f"{where}.edges")
        for i, e in enumerate(edges):
            if len(e) != 2:
                raise InputError(f"{where}.edges[{i}]: an edge needs exactly two endpoints")
        return {"kind": kind, "vertices": parse_int(rec.get("vertices"), f"{where}.vertices"), "edges": edges}
    if kind == "vectorial":
        _check_keys(rec, {"kind", "matrix", "n"}, where)
        matrix = _int_matrix(rec.get("matrix"), f"{where}.matrix")
        out = {"kind": kind, "matrix": matrix}
        if "n" in rec:
            out["n"] = parse_int(rec["n"], f"{where}.n")
        elif not matrix:
            raise InputError(f"{where}: a matrix with no rows needs 'n'")
        width = out.get("n", len(matrix[0]) if matrix else 0)
        for i, r in enumerate(matrix):
            if len(r) != width:
                raise InputError(f"{where}.matrix[{i}]: row length {len(r)}, expected {width}")
        return out
    if kind == "direct_sum":
        _check_keys(rec, {"kind", "parts"}, where)
        parts = rec.get("parts")
        if not isinstance(parts, list):
            raise InputError(f"{where}.parts: expected an array")
        return {"kind": kind, "parts": [normalize_matroid(p, f"{where}.parts[{i}]") for i, p in enumerate(parts)]}
    if kind == "m_rk":
        _check_keys(rec, {"kind", "r", "k", "block_sizes"}, where)
        return {"kind": kind, "r": parse_int(rec.get("r"), f"{where}.r"), "k": parse_int(rec.get("k"), f"{where}.k"),
                "block_sizes": _int_list(rec.get("block_sizes"), f"{where}.block_sizes")}
    raise InputError(f"{where}: unknown matroid kind {kind!r}")


def build_matroid(rec: dict) -> Matroid:
    kind = rec["kind"]
    if kind == "uniform":
        return UniformMatroid(rec["rank"], rec["n"])
    if kind == "partition":
        return PartitionMatroid(rec["n"], [(b["elements"], b["rank"]) for b in rec["blocks"]])
    if kind == "graphic":
        return GraphicMatroid(rec["vertices"], rec["edges"])
    if kind == "vectorial":
        return VectorialMatroid(rec["matrix"], rec.get("n"))
    if kind == "direct_sum":
        return DirectSum([build_matroid(p) for p in rec["parts"]])
    if kind == "m_rk":
        return make_mrk(rec["r"], rec["k"], rec["block_sizes"])
    raise InputError(f"unknown matroid kind {kind!r}")


def matrix_of(rec: dict):
    """Integer representation for the algebraic solver, or None if the kind has none here."""
    if rec["kind"] == "vectorial":
        return rec["matrix"], rec.get("n", len(rec["matrix"][0]) if rec["matrix"] else 0)
    if rec["kind"] == "graphic":
        g = GraphicMatroid(rec["vertices"], rec["edges"])
        return g.incidence_matrix(), g.n
    return None


def normalize_objective(rec, d: int, where="objective") -> dict:
    if not isinstance(rec, dict) or "kind" not in rec:
        raise InputError(f"{where}: expected an object with a 'kind'")
    kind = rec["kind"]

    def vec(key):
        xs = rec.get(key)
        if not isinstance(xs, list) or len(xs) != d:
            raise InputError(f"{where}.{key}: expected an array of length d={d}")
        return [dump_rational(parse_rational(x, f"{where}.{key}[{i}]")) for i, x in enumerate(xs)]

    if kind in ("identity", "max"):
        _check_keys(rec, {"kind"}, where)
        if kind == "identity" and d != 1:
            raise InputError(f"{where}: identity objective needs d = 1, got d = {d}")
        return {"kind": kind}
    if kind == "linear":
        _check_keys(rec, {"kind", "weights"}, where)
        return {"kind": kind, "weights": vec("weights")}
    if kind == "lq":
        _check_keys(rec, {"kind", "q", "weights"}, where)
        q = rec.get("q")
        if q not in ("inf", "infinity", "∞"):
            q = parse_int(q, f"{where}.q")
            if q < 1:
                raise InputError(f"{where}.q: must be >= 1 or 'inf'")
        else:
            q = "inf"
        out = {"kind": kind, "q": q}
        if "weights" in rec:
            out["weights"] = vec("weights")
        return out
    if kind == "shifted_square":
        _check_keys(rec, {"kind", "target"}, where)
        t = rec.get("target")
        if not isinstance(t, list):
            t = [t]
        if len(t) != d:
            raise InputError(f"{where}.target: expected length d={d}")
        return {"kind": kind, "target": [dump_rational(parse_rational(x, f"{where}.target")) for x in t]}
    if kind == "table":
        _check_keys(rec, {"kind", "entries"}, where)
        entries = []
        for i, e in enumerate(rec.get("entries", [])):
            _check_keys(e, {"profile", "rank"}, f"{where}.entries[{i}]")
            prof = _int_list(e.get("profile"), f"{where}.entries[{i}].profile")
            if len(prof) != d:
                raise InputError(f"{where}.entries[{i}].profile: expected length d={d}")
            entries.append({"profile": prof, "rank": parse_int(e.get("rank"), f"{where}.entries[{i}].rank")})
        entries.sort(key=lambda e: e["profile"])
        return {"kind": kind, "entries": entries}
    raise InputError(f"{where}: unknown objective kind {kind!r}")


def build_objective(rec: dict) -> objectives.Objective:
    if rec["kind"] == "linear":
        return objectives.linear([Fraction(x) for x in rec["weights"]])
    if rec["kind"] == "lq":
        w = rec.get("weights")
        return objectives.lq(rec["q"], None if w is None else [Fraction(x) for x in w])
    if rec["kind"] == "shifted_square":
        return objectives.shifted_square([Fraction(x) for x in rec["target"]])
    return objectives.from_spec(rec)


@dataclass
class Problem:
    matroid: dict
    weights: list
    objective: dict

    @classmethod
    def from_dict(cls, rec) -> "Problem":
        _check_keys(rec, {"format", "matroid", "weights", "objective"}, "problem")
        if rec.get("format", PROBLEM_FORMAT) != PROBLEM_FORMAT:
            raise InputError(f"problem.format: unsupported {rec['format']!r}")
        for key in ("matroid", "weights", "objective"):
            if key not in rec:
                raise InputError(f"problem: missing field {key!r}")
        matroid = normalize_matroid(rec["matroid"])
        n = _ground_size(matroid)
        weights = _int_matrix(rec["weights"], "weights")
        if not weights:
            raise InputError("weights: need at least one criterion row")
        for i, row in enumerate(weights):
            if len(row) != n:
                raise InputError(f"weights[{i}]: row length {len(row)}, expected {n} (one per element)")
        objective = normalize_objective(rec["objective"], len(weights))
        problem = cls(matroid, weights, objective)
        problem.oracle()  # constructor-level validation (ranks, vertex ids, blocks)
        return problem

    def to_dict(self) -> dict:
        return {
            "format": PROBLEM_FORMAT,
            "matroid": _dump_ints(self.matroid),
            "weights": [[dump_int(x) for x in r] for r in self.weights],
            "objective": _dump_ints(self.objective),
        }

    def oracle(self) -> Matroid:
        return build_matroid(self.matroid)

    def weight_matrix(self) -> WeightMatrix:
        return WeightMatrix(self.weights)

    def f(self) -> objectives.Objective:
        return build_objective(self.objective)


def _ground_size(rec: dict) -> int:
    kind = rec["kind"]
    if kind in ("uniform", "partition"):
        return rec["n"]
    if kind == "graphic":
        return len(rec["edges"])
    if kind == "vectorial":
        return rec.get("n", len(rec["matrix"][0]) if rec["matrix"] else 0)
    if kind == "m_rk":
        return 2 * rec["k"]
    return sum(_ground_size(p) for p in rec["parts"])


def _dump_ints(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return dump_int(obj)
    if isinstance(obj, list):
        return [_dump_ints(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _dump_ints(v) for k, v in obj.items()}
    return obj


def loads_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_problem(path) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return Problem.from_dict(loads_json(fh.read(), str(path)))


def dumps(record: dict) -> str:
    return json.dumps(_dump_ints(record), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def result_record(solver: str, profile, base, value=None, counters=None, **extra) -> dict:
    rec = {
        "format": RESULT_FORMAT,
        "solver": solver,
        "profile": [dump_int(x) for x in profile],
        "base": list(base),
        "counters": counters or {},
    }
    if value is not None:
        rec["objective_value"] = dump_rational(value) if not isinstance(value, str) else value
    rec.update(extra)
    return rec


@dataclass
class Design:
    points: list  # m rows of Fractions
    exponents: object  # "staircase" or list of int tuples
    aberration: dict
    measurements: list | None = None

    @classmethod
    def from_dict(cls, rec) -> "Design":
        if not isinstance(rec, dict):
            raise InputError("design: expected an object")
        _check_keys(rec, {"format", "points", "exponents", "aberration", "measurements"}, "design")
        pts = rec.get("points")
        if not isinstance(pts, list) or not pts:
            raise InputError("design.points: expected a non-empty array of points")
        points = []
        for i, p in enumerate(pts):
            if not isinstance(p, list) or not p:
                raise InputError(f"design.points[{i}]: expected a non-empty array")
            points.append([parse_rational(x, f"design.points[{i}][{j}]") for j, x in enumerate(p)])
        k = len(points[0])
        for i, p in enumerate(points):
            if len(p) != k:
                raise InputError(f"design.points[{i}]: length {len(p)}, expected k={k}")
        exps = rec.get("exponents", "staircase")
        if exps != "staircase":
            exps = [tuple(_int_list(b, f"design.exponents[{j}]")) for j, b in enumerate(_as_list(exps, "design.exponents"))]
            for j, b in enumerate(exps):
                if len(b) != k or min(b, default=0) < 0:
                    raise InputError(f"design.exponents[{j}]: expected {k} nonnegative integers")
        ab = rec.get("aberration", {"kind": "avg_total_degree"})
        if not isinstance(ab, dict) or "kind" not in ab:
            raise InputError("design.aberration: expected an object with a 'kind'")
        _check_keys(ab, {"kind", "pi", "q", "theta", "weights", "objective"}, "design.aberration")
        meas = rec.get("measurements")
        if meas is not None:
            meas = [parse_rational(x, f"design.measurements[{i}]") for i, x in enumerate(_as_list(meas, "design.measurements"))]
            if len(meas) != len(points):
                raise InputError(f"design.measurements: {len(meas)} values for {len(points)} points")
        return cls(points, exps, dict(ab), meas)


def _as_list(x, where):
    if not isinstance(x, list):
        raise InputError(f"{where}: expected an array")
    return x


def load_design(path) -> Design:
    with open(path, encoding="utf-8") as fh:
        return Design.from_dict(loads_json(fh.read(), str(path)))
