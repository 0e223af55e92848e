"""JSON forms of spaces, families, operators and results.

Rationals travel as ``"p/q"`` strings (``q`` omitted when 1) and vectors as
arrays of them.  :func:`encode` turns any result object into plain JSON data;
the ``parse_*`` functions read the problem-file forms and raise
:class:`SchemaError` with the offending path.
"""
from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from typing import Any

from .convergence import (CertificateCheck, ConvergenceCertificate, DecreasingWitness, Refutation,
                          SeqFamily, Threshold, Verdict, make_family)
from .cover import Cover
from .exppoly import ExpPoly, Sign
from .gallery import (ECSeq, ElinImages, FirstCoordinateGrowth, GalleryOp, GallerySpace, Indicators,
                      NoC0Bound, ScaledBy, UnitVectors, gallery_op, gallery_space)
from .linalg import format_rational, parse_rational
from .outcome import Outcome
from .polyhedron import Polyhedron
from .semiorder import SemiOrderSpace
from .space import Cone, OrderedSpace, Subspace, space_by_name

__all__ = [
    "SchemaError", "encode", "dumps", "parse_vector_at", "parse_matrix_at", "parse_space",
    "parse_family", "parse_ecseq", "parse_gallery_family", "parse_semiorder_space",
    "parse_operator", "parse_certificate", "parse_polyhedron",
]


class SchemaError(ValueError):
    """Invalid problem data; ``path`` names the field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# -- encoding -------------------------------------------------------------------------------


def encode(obj: Any) -> Any:
    """Plain JSON data for results, spaces and families."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(encode(v) for v in obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, Outcome):
        out = {"status": obj.status.value, "reason": obj.reason, "witness": encode(obj.witness)}
        if obj.extra:
            out["extra"] = encode(obj.extra)
        return out
    if isinstance(obj, OrderedSpace):
        return {"name": obj.name, "dim": obj.dim, "rays": encode(obj.cone.rays),
                "lines": encode(obj.cone.lines)}
    if isinstance(obj, Cone):
        return {"rays": encode(obj.rays), "lines": encode(obj.lines), "facets": encode(obj.facets)}
    if isinstance(obj, Subspace):
        return {"basis": encode(obj.basis)}
    if isinstance(obj, Cover):
        return {"embedding": encode(obj.embedding), "order_dense_verified": obj.order_dense_verified}
    if isinstance(obj, Polyhedron):
        P = obj.with_hrep()
        return {"dim": P.dim, "hrep": [{"a": encode(a), "b": encode(b)} for a, b in P.hrep]}
    if isinstance(obj, SeqFamily):
        return encode_family(obj)
    if isinstance(obj, ExpPoly):
        return [{"coeff": encode(c), "rho": encode(r), "exp": e} for (r, e), c in sorted(obj.terms.items())]
    if isinstance(obj, Sign):
        return {"kind": obj.kind, "index": obj.index}
    if isinstance(obj, Threshold):
        return {"p": encode(obj.p), "q": obj.q}
    if isinstance(obj, DecreasingWitness):
        return {"family": encode(obj.family), "monotone_from": obj.monotone_from,
                "inf_is_zero_evidence": obj.inf_is_zero_evidence}
    if isinstance(obj, ConvergenceCertificate):
        return {"kind": obj.kind, "witness": encode(obj.witness), "threshold": encode(obj.threshold)}
    if isinstance(obj, CertificateCheck):
        return {"accepted": obj.accepted, "violation": encode(obj.violation), "reason": obj.reason}
    if isinstance(obj, Refutation):
        return {"kind": obj.kind, "detail": encode(obj.detail)}
    if isinstance(obj, Verdict):
        return {"outcome": obj.outcome, "limit": encode(obj.limit),
                "certificates": encode(obj.certificates), "refutation": encode(obj.refutation),
                "reason": obj.reason}
    if isinstance(obj, ECSeq):
        return {"head": encode(obj.head), "tail": encode(obj.tail)}
    if isinstance(obj, GallerySpace):
        return obj.kind
    if isinstance(obj, GalleryOp):
        return obj.kind
    if isinstance(obj, UnitVectors):
        return {"shape": "unit_vectors", "c": encode(obj.c)}
    if isinstance(obj, ElinImages):
        return {"shape": "elin_images", "c": encode(obj.c)}
    if isinstance(obj, Indicators):
        return {"shape": "indicators", "c": encode(obj.c)}
    if isinstance(obj, ScaledBy):
        return {"shape": "scaled_by", "v": encode(obj.v)}
    if isinstance(obj, NoC0Bound):
        return {"refuter": "no_c0_bound", "c": encode(obj.c)}
    if isinstance(obj, FirstCoordinateGrowth):
        return {"refuter": "first_coordinate_growth", "c": encode(obj.c)}
    if isinstance(obj, SemiOrderSpace):
        if obj.is_gallery:
            return {"v": obj.v.kind, "w": obj.w.kind, "t": obj.t.kind}
        return {"v_dim": obj.v, "w": encode(obj.w), "t": encode(obj.t)}
    if dataclasses.is_dataclass(obj):
        return {f.name: encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return repr(obj)


def encode_family(x: SeqFamily) -> dict:
    return {"limit": encode(x.limit),
            "terms": [{"coeff": encode(t.coeff), "rho": encode(t.rho), "exp": t.exp} for t in x.terms],
            "prefix": {str(n): encode(v) for n, v in x.prefix}}


def dumps(data: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(encode(data), sort_keys=True, indent=2)


# -- parsing --------------------------------------------------------------------------------


def _rational(value, path: str) -> Fraction:
    try:
        return parse_rational(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"invalid rational {value!r} ({exc})") from None


def parse_vector_at(value, path: str, dim: int | None = None) -> tuple:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array of rationals")
    v = tuple(_rational(a, f"{path}[{i}]") for i, a in enumerate(value))
    if dim is not None and len(v) != dim:
        raise SchemaError(path, f"expected length {dim}, got {len(v)}")
    return v


def parse_matrix_at(value, path: str) -> tuple:
    if not isinstance(value, list) or not value:
        raise SchemaError(path, "expected a non-empty array of rows")
    rows = tuple(parse_vector_at(r, f"{path}[{i}]") for i, r in enumerate(value))
    if len({len(r) for r in rows}) != 1:
        raise SchemaError(path, "rows of different lengths")
    return rows


def _check_keys(obj: dict, allowed: set, path: str, required: set = frozenset()):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(path, f"unknown field(s) {sorted(extra)}")
    missing = set(required) - set(obj)
    if missing:
        raise SchemaError(path, f"missing field(s) {sorted(missing)}")


def parse_space(value, path: str = "space") -> OrderedSpace:
    """A built-in name, or ``{"name", "generators"[, "lines"]}`` or ``{"name", "facets"}``."""
    if isinstance(value, str):
        try:
            return space_by_name(value)
        except KeyError as exc:
            raise SchemaError(path, str(exc.args[0])) from None
    _check_keys(value, {"name", "generators", "lines", "facets", "dim"}, path)
    name = value.get("name", "custom")
    dim = value.get("dim")
    if "generators" in value:
        gens = parse_matrix_at(value["generators"], f"{path}.generators")
        lines = [parse_vector_at(l, f"{path}.lines[{i}]") for i, l in enumerate(value.get("lines", []))]
        return OrderedSpace(name, Cone.from_generators(gens, dim or len(gens[0]), lines))
    if "facets" in value:
        facets = parse_matrix_at(value["facets"], f"{path}.facets")
        return OrderedSpace(name, Cone.from_facets(facets, dim or len(facets[0])))
    raise SchemaError(path, "a space needs 'generators' or 'facets'")


def parse_family(value, space_or_dim, path: str = "family") -> SeqFamily:
    _check_keys(value, {"limit", "terms", "prefix", "space"}, path, {"limit"})
    dim = space_or_dim.dim if isinstance(space_or_dim, OrderedSpace) else int(space_or_dim)
    limit = parse_vector_at(value["limit"], f"{path}.limit", dim)
    terms = []
    for i, t in enumerate(value.get("terms", [])):
        tp = f"{path}.terms[{i}]"
        _check_keys(t, {"coeff", "rho", "exp"}, tp, {"coeff", "rho", "exp"})
        rho = _rational(t["rho"], f"{tp}.rho")
        if rho <= 0:
            raise SchemaError(f"{tp}.rho", "must be positive")
        if not isinstance(t["exp"], int) or isinstance(t["exp"], bool):
            raise SchemaError(f"{tp}.exp", "must be an integer")
        terms.append((parse_vector_at(t["coeff"], f"{tp}.coeff", dim), rho, t["exp"]))
    prefix = {}
    pre = value.get("prefix", {})
    if not isinstance(pre, dict):
        raise SchemaError(f"{path}.prefix", "expected an object")
    for k, v in pre.items():
        try:
            n = int(k)
        except ValueError:
            raise SchemaError(f"{path}.prefix", f"index {k!r} is not an integer") from None
        if n < 1:
            raise SchemaError(f"{path}.prefix", "indices are positive")
        prefix[n] = parse_vector_at(v, f"{path}.prefix.{k}", dim)
    return make_family(space_or_dim, limit, terms, prefix)


def parse_ecseq(value, path: str = "sequence") -> ECSeq:
    _check_keys(value, {"head", "tail"}, path)
    head = [_rational(a, f"{path}.head[{i}]") for i, a in enumerate(value.get("head", []))]
    return ECSeq(head, _rational(value.get("tail", "0"), f"{path}.tail"))


def parse_gallery_family(value, path: str = "family"):
    _check_keys(value, {"shape", "c", "v"}, path, {"shape"})
    shape = value["shape"]
    if shape == "scaled_by":
        return ScaledBy(parse_ecseq(value.get("v", {}), f"{path}.v"))
    c = _rational(value.get("c", "1"), f"{path}.c")
    shapes = {"unit_vectors": UnitVectors, "elin_images": ElinImages, "indicators": Indicators}
    if shape not in shapes:
        raise SchemaError(f"{path}.shape", f"unknown shape {shape!r}")
    return shapes[shape](c)


def parse_semiorder_space(value, path: str = "semiorder_space", spaces: dict | None = None) -> SemiOrderSpace:
    _check_keys(value, {"v_dim", "v", "w", "t", "name"}, path, {"w", "t"})
    if isinstance(value["t"], str):
        try:
            op = gallery_op(value["t"])
            v = gallery_space(value.get("v", op.source.kind))
            w = gallery_space(value["w"])
            return SemiOrderSpace(v, w, op, value.get("name", ""))
        except (KeyError, ValueError) as exc:
            raise SchemaError(path, str(exc)) from None
    w = _resolve_space(value["w"], f"{path}.w", spaces)
    t = parse_matrix_at(value["t"], f"{path}.t")
    v_dim = value.get("v_dim", len(t[0]))
    try:
        return SemiOrderSpace(v_dim, w, t, value.get("name", ""))
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def _resolve_space(value, path, spaces):
    if isinstance(value, str) and spaces and value in spaces:
        return spaces[value]
    return parse_space(value, path)


def parse_operator(value, path: str = "operator", spaces: dict | None = None, sos: dict | None = None):
    from .operators import LinOp, elin_operator
    _check_keys(value, {"domain", "codomain", "matrix", "gallery_op", "name"}, path)
    if "gallery_op" in value:
        if value["gallery_op"] != "elin":
            raise SchemaError(f"{path}.gallery_op", "only 'elin' is an operator between gallery spaces")
        return elin_operator()
    if "matrix" not in value or "domain" not in value or "codomain" not in value:
        raise SchemaError(path, "a matrix operator needs 'domain', 'codomain' and 'matrix'")

    def side(v, p):
        if isinstance(v, str) and sos and v in sos:
            return sos[v]
        return _resolve_space(v, p, spaces)

    try:
        return LinOp(side(value["domain"], f"{path}.domain"), side(value["codomain"], f"{path}.codomain"),
                     parse_matrix_at(value["matrix"], f"{path}.matrix"), value.get("name", ""))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(path, str(exc)) from None


def parse_certificate(value, space, path: str = "certificate") -> ConvergenceCertificate:
    _check_keys(value, {"kind", "witness", "threshold"}, path, {"kind", "witness", "threshold"})
    if value["kind"] not in ("o", "otilde"):
        raise SchemaError(f"{path}.kind", "expected 'o' or 'otilde'")
    w = value["witness"]
    if isinstance(w, dict) and "family" in w:
        # the encoded form: {"family": ..., "monotone_from": ..., ...}
        y = parse_family(w["family"], space, f"{path}.witness.family")
    else:
        y = parse_family(w, space, f"{path}.witness")
    th = value["threshold"]
    _check_keys(th, {"p", "q"}, f"{path}.threshold", {"p"})
    try:
        threshold = Threshold(_rational(th["p"], f"{path}.threshold.p"), th.get("q", 0))
    except ValueError as exc:
        raise SchemaError(f"{path}.threshold", str(exc)) from None
    return ConvergenceCertificate(value["kind"], DecreasingWitness(y, 1), threshold)


def parse_polyhedron(value, dim: int, path: str = "polyhedron") -> Polyhedron:
    """``{"hrep": [{"a": [...], "b": "..."}]}`` or ``{"vertices": [...], "rays": [...]}``."""
    _check_keys(value, {"hrep", "vertices", "rays", "lines"}, path)
    if "hrep" in value:
        cons = []
        for i, c in enumerate(value["hrep"]):
            cp = f"{path}.hrep[{i}]"
            _check_keys(c, {"a", "b"}, cp, {"a", "b"})
            cons.append((parse_vector_at(c["a"], f"{cp}.a", dim), _rational(c["b"], f"{cp}.b")))
        return Polyhedron.from_hrep(cons, dim)
    verts = [parse_vector_at(v, f"{path}.vertices[{i}]", dim) for i, v in enumerate(value.get("vertices", []))]
    rays = [parse_vector_at(v, f"{path}.rays[{i}]", dim) for i, v in enumerate(value.get("rays", []))]
    lines = [parse_vector_at(v, f"{path}.lines[{i}]", dim) for i, v in enumerate(value.get("lines", []))]
    return Polyhedron.from_vrep(verts, rays, lines, dim=dim)
