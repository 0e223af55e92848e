"""Problem files: named objects plus a list of queries, each with an optional expectation.

A problem file is a JSON object::

    {"version": 1,
     "spaces": {"Q": {"generators": [["1","0"],["1","1"]]}},
     "semiorder_spaces": {"S": {"v_dim": 3, "w": "K4", "t": [[...]]}},
     "operators": {"T": {"domain": "ORTH3", "codomain": "ORTH3", "matrix": [[...]]}},
     "families": {"x": {"space": "K4", "limit": [...], "terms": [...]},
                  "e": {"shape": "unit_vectors", "c": "1"}},
     "queries": [{"op": "leq", "args": {"space": "ORTH3", "x": [...], "y": [...]},
                  "expected": true}]}

String arguments name objects from the sections (or built-in spaces); other
arguments are literals.  :func:`run_problem` evaluates the queries in order.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import convergence as cv
from . import cover as cov
from . import gallery as gal
from . import operators as ops
from . import semiorder as so
from . import space as sp
from . import structure as st
from .io import (SchemaError, encode, parse_certificate, parse_family, parse_gallery_family,
                 parse_matrix_at, parse_operator, parse_semiorder_space, parse_space,
                 parse_vector_at)
from .linalg import format_rational, parse_rational

__all__ = ["SCHEMA_VERSION", "Problem", "QueryResult", "RunReport", "load_problem", "parse_problem",
           "run_problem", "OPERATIONS"]

SCHEMA_VERSION = 1
TOP_FIELDS = {"version", "spaces", "semiorder_spaces", "operators", "families", "queries"}


@dataclass
class Problem:
    spaces: dict
    semiorder_spaces: dict
    operators: dict
    families: dict
    queries: list


@dataclass
class QueryResult:
    index: int
    op: str
    value: Any
    expected: Any
    status: str  # MET, MISMATCH or UNCHECKED
    result: Any
    rules: tuple
    label: str = ""
    seconds: float = 0.0


@dataclass
class RunReport:
    seed: int
    budget: int
    results: list = field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return sum(r.status == "MISMATCH" for r in self.results)

    def to_json(self, include_timing: bool = True) -> dict:
        out = {
            "version": SCHEMA_VERSION,
            "seed": self.seed,
            "budget": self.budget,
            "queries": [{"index": r.index, "label": r.label, "op": r.op, "value": encode(r.value),
                         "expected": r.expected, "status": r.status, "rules": list(r.rules),
                         "result": encode(r.result)} for r in self.results],
            "summary": {"queries": len(self.results),
                        "met": sum(r.status == "MET" for r in self.results),
                        "mismatched": self.mismatches,
                        "unchecked": sum(r.status == "UNCHECKED" for r in self.results)},
        }
        if include_timing:
            # the only field that differs between runs
            out["timing"] = {"per_query_seconds": [round(r.seconds, 6) for r in self.results],
                             "total_seconds": round(sum(r.seconds for r in self.results), 6)}
        return out

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            tag = {"MET": "ok", "MISMATCH": "MISMATCH", "UNCHECKED": "--"}[r.status]
            name = f" {r.label}" if r.label else ""
            val = json.dumps(encode(r.value), sort_keys=True)
            line = f"[{tag}] #{r.index}{name} {r.op}: {val}"
            if r.status == "MISMATCH":
                line += f" (expected {json.dumps(r.expected, sort_keys=True)})"
            lines.append(line)
        s = self.to_json(False)["summary"]
        lines.append(f"{s['queries']} queries: {s['met']} met, {s['mismatched']} mismatched, "
                     f"{s['unchecked']} without expectation")
        return "\n".join(lines)


# -- loading --------------------------------------------------------------------------------


def load_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(path, f"cannot read file ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    return parse_problem(data)


def _section(data: dict, key: str) -> dict:
    sec = data.get(key, {})
    if not isinstance(sec, dict):
        raise SchemaError(key, "expected an object of named definitions")
    return sec


def parse_problem(data: Any) -> Problem:
    if not isinstance(data, dict):
        raise SchemaError("$", "a problem file is a JSON object")
    extra = set(data) - TOP_FIELDS
    if extra:
        raise SchemaError("$", f"unknown field(s) {sorted(extra)}")
    if data.get("version") != SCHEMA_VERSION:
        raise SchemaError("version", f"expected {SCHEMA_VERSION}, got {data.get('version')!r}")
    spaces = {name: parse_space(v, f"spaces.{name}") for name, v in _section(data, "spaces").items()}
    soss = {name: parse_semiorder_space(v, f"semiorder_spaces.{name}", spaces)
            for name, v in _section(data, "semiorder_spaces").items()}
    operators = {name: parse_operator(v, f"operators.{name}", spaces, soss)
                 for name, v in _section(data, "operators").items()}
    families = {name: _parse_family_def(v, f"families.{name}", spaces)
                for name, v in _section(data, "families").items()}
    queries = data.get("queries", [])
    if not isinstance(queries, list):
        raise SchemaError("queries", "expected an array")
    for i, q in enumerate(queries):
        path = f"queries[{i}]"
        if not isinstance(q, dict):
            raise SchemaError(path, "expected an object")
        extra = set(q) - {"op", "args", "expected", "label"}
        if extra:
            raise SchemaError(path, f"unknown field(s) {sorted(extra)}")
        if q.get("op") not in OPERATIONS:
            raise SchemaError(f"{path}.op", f"unknown operation {q.get('op')!r}")
        args = q.get("args", {})
        if not isinstance(args, dict):
            raise SchemaError(f"{path}.args", "expected an object of named arguments")
        params = OPERATIONS[q["op"]].params
        unknown_args = set(args) - set(params)
        if unknown_args:
            raise SchemaError(f"{path}.args", f"unknown argument(s) {sorted(unknown_args)}")
    return Problem(spaces, soss, operators, families, queries)


def _parse_family_def(v, path, spaces):
    if not isinstance(v, dict):
        raise SchemaError(path, "expected an object")
    if "shape" in v:
        return parse_gallery_family(v, path)
    body = {k: val for k, val in v.items() if k not in ("space", "dim")}
    if "space" in v:
        target = _lookup_space(v["space"], f"{path}.space", spaces)
    elif "dim" in v:
        if not isinstance(v["dim"], int) or v["dim"] < 1:
            raise SchemaError(f"{path}.dim", "expected a positive integer")
        target = v["dim"]
    else:
        raise SchemaError(path, "a family needs 'space' or 'dim'")
    return parse_family(body, target, path)


def _lookup_space(v, path, spaces):
    if isinstance(v, str) and v in spaces:
        return spaces[v]
    return parse_space(v, path)


# -- argument kinds -------------------------------------------------------------------------


class _Ctx:
    def __init__(self, problem: Problem, seed: int, budget: int):
        self.p, self.seed, self.budget = problem, seed, budget

    def space(self, v, path):
        return _lookup_space(v, path, self.p.spaces)

    def sos(self, v, path):
        if isinstance(v, str):
            if v in self.p.semiorder_spaces:
                return self.p.semiorder_spaces[v]
            raise SchemaError(path, f"unknown semi-order space {v!r}")
        return parse_semiorder_space(v, path, self.p.spaces)

    def operator(self, v, path):
        if isinstance(v, str):
            if v in self.p.operators:
                return self.p.operators[v]
            raise SchemaError(path, f"unknown operator {v!r}")
        return parse_operator(v, path, self.p.spaces, self.p.semiorder_spaces)

    def family(self, v, path):
        if isinstance(v, str):
            if v in self.p.families:
                return self.p.families[v]
            raise SchemaError(path, f"unknown family {v!r}")
        return _parse_family_def(v, path, self.p.spaces)

    def families(self, v, path):
        if not isinstance(v, list):
            raise SchemaError(path, "expected an array of families")
        return [self.family(f, f"{path}[{i}]") for i, f in enumerate(v)]

    def vector(self, v, path):
        return parse_vector_at(v, path)

    def vectors(self, v, path):
        if not isinstance(v, list):
            raise SchemaError(path, "expected an array of vectors")
        return [parse_vector_at(a, f"{path}[{i}]") for i, a in enumerate(v)]

    def points_or_family(self, v, path):
        return self.family(v, path) if isinstance(v, (str, dict)) else self.vectors(v, path)

    def matrix(self, v, path):
        return parse_matrix_at(v, path)

    def gallery_space(self, v, path):
        try:
            return gal.gallery_space(v)
        except (KeyError, AttributeError):
            raise SchemaError(path, f"unknown gallery space {v!r}") from None

    def halfspaces(self, v, path):
        if not isinstance(v, dict) or set(v) - {"dim", "constraints"}:
            raise SchemaError(path, "expected {'dim', 'constraints'}")
        cons = []
        for i, c in enumerate(v.get("constraints", [])):
            cp = f"{path}.constraints[{i}]"
            if not isinstance(c, dict) or set(c) - {"a", "b", "strict"}:
                raise SchemaError(cp, "expected {'a', 'b'[, 'strict']}")
            try:
                cons.append((parse_vector_at(c["a"], f"{cp}.a"), parse_rational(c["b"]), bool(c.get("strict", False))))
            except (ValueError, ZeroDivisionError, KeyError) as exc:
                raise SchemaError(cp, str(exc)) from None
        try:
            return so.HalfspaceSet(v["dim"], tuple(cons))
        except (ValueError, KeyError) as exc:
            raise SchemaError(path, str(exc)) from None


@dataclass(frozen=True)
class Operation:
    params: dict  # name -> (kind, required)
    fn: Callable
    value: Callable = None
    rules: tuple = ()


def _status(o):
    return o.status.value


def _verdict(v):
    return v.outcome


def _bool(b):
    return bool(b)


def _op(params: dict, value=_status, rules=()):
    def deco(fn):
        OPERATIONS[fn.__name__.removeprefix("q_")] = Operation(params, fn, value, rules)
        return fn
    return deco


OPERATIONS: dict = {}
R = lambda kind, required=True: (kind, required)  # noqa: E731


@_op({"space": R("space"), "x": R("vector"), "y": R("vector")}, _bool, ("cone membership of y - x",))
def q_leq(c, space, x, y):
    return sp.leq(space, x, y)


@_op({"space": R("space"), "points": R("vectors")}, rules=("bounding pair by LP",))
def q_is_order_bounded(c, space, points):
    return sp.is_order_bounded(space, points)


@_op({"space": R("space"), "points": R("vectors")}, rules=("least element of the upper bound polyhedron",))
def q_supremum(c, space, points):
    return sp.supremum(space, points)


@_op({"space": R("space"), "points": R("vectors")}, rules=("greatest element of the lower bound polyhedron",))
def q_infimum(c, space, points):
    return sp.infimum(space, points)


@_op({"space": R("space")}, rules=("simplicial cone test",))
def q_is_lattice(c, space):
    return sp.is_lattice(space)


@_op({"space": R("space")}, rules=("Riesz decomposition by LP",))
def q_has_rdp(c, space):
    return sp.has_rdp(space)


@_op({"space": R("space")}, rules=("dual extreme ray functionals",))
def q_is_preriesz(c, space):
    return cov.is_preriesz(space, c.budget, c.seed)


@_op({"space": R("space")}, rules=("dual extreme ray functionals",))
def q_make_cover(c, space):
    return cov.make_cover(space)


@_op({"space": R("space"), "basis": R("vectors")}, rules=("order density through the cover",))
def q_is_order_dense(c, space, basis):
    return sp.is_order_dense(sp.Subspace(space, basis))


@_op({"space": R("space"), "x": R("vector"), "y": R("vector")}, lambda d: d.direct_result,
     ("upper bounds of x+y and x-y agree", "cover coordinates with disjoint supports"))
def q_is_disjoint(c, space, x, y):
    return st.is_disjoint(space, x, y)


@_op({"space": R("space"), "basis": R("vectors")}, rules=("ideal criterion on the cover image",))
def q_is_ideal(c, space, basis):
    return st.is_ideal(sp.Subspace(space, basis))


@_op({"space": R("space"), "basis": R("vectors")}, rules=("band equals its double disjoint complement",))
def q_is_band(c, space, basis):
    return st.is_band(sp.Subspace(space, basis))


@_op({"space": R("space"), "basis": R("vectors")}, rules=("band plus disjoint complement",))
def q_band_projection(c, space, basis):
    return st.band_projection(space, sp.Subspace(space, basis))


@_op({"family": R("family"), "target": R("vector", False)}, _verdict,
     ("decreasing witness with a threshold", "coordinate limit refutation"))
def q_decide(c, family, target=None):
    return cv.decide_o_convergence(family, target, family.space)


@_op({"family": R("family"), "limit": R("vector"), "certificate": R("certificate")},
     lambda r: r.accepted, ("symbolic tail check in the term algebra",))
def q_verify_certificate(c, family, limit, certificate):
    return cv.verify_certificate(family, limit, certificate, family.space)


@_op({"family": R("family")}, rules=("monotone closed forms with limit 0",))
def q_is_decreasing_to_zero(c, family):
    return cv.is_decreasing_to_zero(family.space, family)


@_op({"space": R("gallery_space"), "family": R("family")}, _verdict,
     ("tail boundedness", "indicator witness"))
def q_gallery_converges(c, space, family):
    return gal.gallery_converges(space, family)


@_op({}, lambda d: {k: v.outcome for k, v in d.items()},
     ("indicator witness", "tail refutation supplied by this library", "first coordinate growth"))
def q_elin_triptych(c):
    return gal.elin_triptych()


@_op({"sos": R("sos"), "x": R("vector"), "y": R("vector")}, _bool, ("image order",))
def q_semi_leq(c, sos, x, y):
    if sos.is_gallery:
        raise SchemaError("args", "semi_leq on gallery spaces takes gallery sequences; use a matrix space")
    return so.semi_leq(sos, x, y)


@_op({"sos": R("sos"), "set": R("points_or_family")}, rules=("boundedness of the image",))
def q_wt_order_bounded(c, sos, set):
    return so.wt_order_bounded(sos, set)


@_op({"sos": R("sos"), "family": R("family"), "limit": R("vector", False)}, _verdict,
     ("convergence of the image",))
def q_wt_converges(c, sos, family, limit=None):
    return so.wt_converges(sos, family, limit)


@_op({"sos": R("sos"), "set": R("points_or_family")}, rules=("disjointness of the images",))
def q_wt_disjoint(c, sos, set):
    return so.wt_disjoint(sos, set)


@_op({"sos": R("sos"), "basis": R("vectors")}, rules=("ideal of the image",))
def q_wt_ideal(c, sos, basis):
    return so.wt_ideal(sos, basis)


@_op({"sos": R("sos"), "basis": R("vectors")}, rules=("band of the image",))
def q_wt_band(c, sos, basis):
    return so.wt_band(sos, basis)


@_op({"sos": R("sos"), "basis": R("vectors")}, rules=("pullback of the image band projection",))
def q_wt_band_projection(c, sos, basis):
    return so.wt_band_projection(sos, basis)


@_op({"sos": R("sos"), "set": R("halfspaces"), "corpus": R("families")},
     rules=("limits of nets in V, fibre escape along ker T",))
def q_wt_closed(c, sos, set, corpus):
    return so.wt_closed(sos, set, corpus)


@_op({"sos": R("sos"), "set": R("halfspaces"), "corpus": R("families")},
     rules=("closedness of the image",))
def q_wt_image_closed(c, sos, set, corpus):
    return so.wt_image_closed(sos, set, corpus)


@_op({"sos": R("sos"), "set": R("points_or_family")}, lambda r: r.verdict,
     ("disjoint bounded families are null",))
def q_disjoint_bounded_null(c, sos, set):
    return so.check_disjoint_bounded_null(sos, set)


@_op({"operator": R("operator")}, rules=("images of cone generators",))
def q_is_positive(c, operator):
    return ops.is_positive(operator)


@_op({"operator": R("operator"), "corpus": R("families", False)},
     lambda r: {k: v.status.value for k, v in r.as_dict().items()},
     ("kernel and span criterion in finite dimension", "report consistency implications"))
def q_classify(c, operator, corpus=None):
    return ops.classify(operator, corpus, c.budget, c.seed)


@_op({"operator": R("operator"), "corpus": R("families", False)},
     rules=("kernel and span criterion in finite dimension",))
def q_semiorder_continuity(c, operator, corpus=()):
    return ops.semiorder_continuity(operator, corpus)


@_op({"operator": R("operator")}, rules=("kernel and span criterion in finite dimension",))
def q_is_semiorder_bounded(c, operator):
    return ops.is_semiorder_bounded(operator)


@_op({"operator": R("operator"), "corpus": R("families", False)},
     rules=("continuity never coexists with unboundedness",))
def q_check_kat(c, operator, corpus=None):
    return ops.check_kat(ops.classify(operator, corpus, c.budget, c.seed))


def _modulus_value(r):
    if isinstance(r, dict):
        return "ADDITIVITY_FAILS"
    return [[format_rational(a) for a in row] for row in r.rep]


@_op({"operator": R("operator")}, _modulus_value, ("supremum over the order interval",))
def q_modulus(c, operator):
    try:
        return ops.modulus(operator)
    except ops.ModulusAdditivityError as exc:
        return {"additivity_fails": True, "pair": exc.pair, "left": exc.left, "right": exc.right}


# -- running --------------------------------------------------------------------------------


def _resolve_args(ctx: _Ctx, q: dict, index: int) -> dict:
    spec = OPERATIONS[q["op"]]
    args = q.get("args", {})
    out = {}
    for name, (kind, required) in spec.params.items():
        path = f"queries[{index}].args.{name}"
        if name not in args:
            if required:
                raise SchemaError(path, "missing argument")
            continue
        v = args[name]
        if kind == "certificate":
            fam = ctx.family(args["family"], f"queries[{index}].args.family")
            out[name] = parse_certificate(v, fam.space or fam.dim, path)
        else:
            out[name] = getattr(ctx, kind)(v, path)
    return out


def _normalise(v):
    """Expected values with rationals in canonical ``p/q`` form."""
    if isinstance(v, list):
        return [_normalise(a) for a in v]
    if isinstance(v, dict):
        return {k: _normalise(a) for k, a in v.items()}
    if isinstance(v, str):
        try:
            return format_rational(parse_rational(v))
        except (ValueError, ZeroDivisionError):
            return v
    return v


def run_query(ctx: _Ctx, q: dict, index: int) -> QueryResult:
    spec = OPERATIONS[q["op"]]
    args = _resolve_args(ctx, q, index)
    t0 = time.perf_counter()
    try:
        result = spec.fn(ctx, **args)
    except SchemaError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise SchemaError(f"queries[{index}]", f"{type(exc).__name__}: {exc}") from None
    seconds = time.perf_counter() - t0
    value = spec.value(result)
    if "expected" in q:
        status = "MET" if encode(value) == _normalise(q["expected"]) else "MISMATCH"
    else:
        status = "UNCHECKED"
    return QueryResult(index, q["op"], value, q.get("expected"), status, result, spec.rules,
                       q.get("label", ""), seconds)


def run_problem(problem: Problem, seed: int = 0, budget: int = ops.DEFAULT_BUDGET) -> RunReport:
    ctx = _Ctx(problem, seed, budget)
    report = RunReport(seed, budget)
    for i, q in enumerate(problem.queries):
        report.results.append(run_query(ctx, q, i))
    return report
