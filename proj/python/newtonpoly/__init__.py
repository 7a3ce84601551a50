"""Newton polytopes from black-box evaluation or witness-set line intersections."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    NewtonpolyError,
    Polytope,
    SparsePolynomial,
    affinely_isomorphic as _affinely_isomorphic,
    convex_hull,
    dilate,
    lattice_points,
    parse_sparse,
    polytope_from_json as _polytope_from_json,
)

__all__ = [
    "NewtonpolyError",
    "Polytope",
    "SparsePolynomial",
    "affinely_isomorphic",
    "convex_hull",
    "dilate",
    "lattice_points",
    "parse_sparse",
    "polytope_from_json",
    "reconstruct",
    "run_cli",
    "support_value",
    "vertex_query",
    "witness_vertex",
]


def _direction(w):
    return [str(Fraction(x)) for x in w]


def polytope_from_json(data):
    """Accepts a JSON string or an already-parsed dict."""
    if not isinstance(data, str):
        data = json.dumps(data)
    return _polytope_from_json(data)


def affinely_isomorphic(p, q):
    """Witness dict of a lattice-affine isomorphism, or None."""
    w = _affinely_isomorphic(p, q)
    return None if w is None else json.loads(w)


def support_value(poly, w, seed=0):
    """(h(w), value-group generator) as Fractions."""
    h, gen = _core.support_value(poly, _direction(w), seed)
    return Fraction(h), Fraction(gen)


def vertex_query(poly, w, delta, lambda_, superset, t=None, seed=0):
    """(beta, ratio, log t, d_w) for the evaluation oracle with explicit bounds."""
    return _core.vertex_query(poly, [float(x) for x in w], delta, lambda_, superset, t, seed)


def witness_vertex(poly, w, C, a=None, b=None, seed=0, t_max=1e8):
    """(beta, certificate dict) from tracking the witness points on the line s*a - b."""
    return _core.witness_vertex(poly, _direction(w), C, a, b, seed, t_max)


def reconstruct(poly, backend="eval", C=None, a=None, b=None, seed=0, jobs=1):
    """(Polytope, report dict). The eval backend uses adaptive bounds."""
    if backend == "eval":
        p, report = _core.reconstruct_eval(poly, seed, jobs)
    elif backend == "witness":
        if C is None:
            raise ValueError("the witness backend needs C")
        p, report = _core.reconstruct_witness(poly, C, a, b, seed, jobs)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return p, json.loads(report)


def run_cli(args):
    """(exit code, stdout, stderr) of the command-line tool run in-process."""
    return _core.run_cli([str(a) for a in args])
