"""Body union and the JSON body-file format.

A body is one of: GeneratorSet (zonotope), Polytope, RevolutionBody, or the
unit Ball.  Files are plain JSON documents:

    {"kind": "zonotope",   "generators": [[x,y,z], ...]}
    {"kind": "polytope",   "vertices":   [[x,y,z], ...], "symmetric": true}
    {"kind": "revolution", "dimension": 3, "a": 1.0, "profile": [[s,f], ...]}
    {"kind": "ball"}

Polytope files carry vertices only; the triangulation is rebuilt by the hull
on load, so round-tripping preserves the body exactly.
"""

import json

import numpy as np

from .errors import BodyFileError, GeometryError
from .geom import Polytope, convex_hull
from .revolution import RevolutionBody
from .zonotope import GeneratorSet


class Ball:
    """Unit ball in R^3 (analytic variant of the body union)."""

    radius = 1.0
    d = 3

    def __repr__(self):
        return "Ball()"


def _matrix(doc, field, kind):
    if field not in doc:
        raise BodyFileError(f"{kind} body needs field '{field}'")
    try:
        arr = np.asarray(doc[field], dtype=float)
    except (TypeError, ValueError) as exc:
        raise BodyFileError(f"field '{field}' is not numeric: {exc}") from exc
    if arr.ndim != 2:
        raise BodyFileError(f"field '{field}' must be a list of coordinate rows")
    return arr


_FIELDS = {
    "zonotope": {"kind", "generators"},
    "polytope": {"kind", "vertices", "symmetric"},
    "revolution": {"kind", "dimension", "a", "profile"},
    "ball": {"kind", "dimension"},
}


def body_from_dict(doc):
    """Build a body from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise BodyFileError("body file must hold a JSON object")
    kind = doc.get("kind")
    if kind in _FIELDS:
        extra = set(doc) - _FIELDS[kind]
        if extra:
            raise BodyFileError(f"unexpected fields for kind {kind!r}: {sorted(extra)}")
    if kind == "zonotope":
        gens = _matrix(doc, "generators", kind)
        if gens.shape[1] != 3:
            raise BodyFileError("field 'generators' must have 3 columns")
        return GeneratorSet(gens)
    if kind == "polytope":
        verts = _matrix(doc, "vertices", kind)
        if verts.shape[1] != 3:
            raise BodyFileError("field 'vertices' must have 3 columns")
        return convex_hull(verts, symmetric=bool(doc.get("symmetric", False)))
    if kind == "revolution":
        prof = _matrix(doc, "profile", kind)
        if prof.shape[1] != 2:
            raise BodyFileError("field 'profile' must be [s, f] pairs")
        d = int(doc.get("dimension", 3))
        a = float(doc.get("a", prof[-1, 0]))
        return RevolutionBody(d, a, prof[:, 0], prof[:, 1])
    if kind == "ball":
        return Ball()
    raise BodyFileError(f"unknown body kind {kind!r}")


def body_to_dict(body):
    """Serialize a body to the JSON document form."""
    if isinstance(body, GeneratorSet):
        return {"kind": "zonotope", "generators": body.gens.tolist()}
    if isinstance(body, Polytope):
        return {"kind": "polytope", "vertices": body.vertices.tolist(),
                "symmetric": bool(body.symmetric)}
    if isinstance(body, RevolutionBody):
        return {"kind": "revolution", "dimension": body.d, "a": body.a,
                "profile": np.column_stack([body.s, body.f]).tolist()}
    if isinstance(body, Ball):
        return {"kind": "ball"}
    raise BodyFileError(f"cannot serialize object of type {type(body).__name__}")


def load_body(path):
    """Read and validate a body file; parse errors carry field context."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise BodyFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BodyFileError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return body_from_dict(doc)
    except GeometryError as exc:
        # invalid geometry, not a parse problem: let the caller distinguish
        raise
    except BodyFileError as exc:
        raise BodyFileError(f"{path}: {exc}") from exc


def save_body(body, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(body_to_dict(body), fh, indent=1)
        fh.write("\n")
