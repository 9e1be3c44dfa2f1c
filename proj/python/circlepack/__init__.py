"""Exact circle placement and packing."""

import json as _json

from . import _circlepack
from ._circlepack import DomainError, ParseError, PreconditionError

__all__ = [
    "DomainError",
    "ParseError",
    "PreconditionError",
    "gamma",
    "generate_reduction",
    "inscribed_pocket_radius",
    "optimize_scale",
    "pack_quadtree",
    "solve_3partition",
    "verify",
]


def _s(x):
    return x if isinstance(x, str) else repr(x)


def inscribed_pocket_radius(r1, r2, r3, digits=15):
    """Largest circle between three mutually tangent circles, as a decimal string."""
    return _circlepack.inscribed_pocket_radius(_s(r1), _s(r2), _s(r3), digits)


def solve_3partition(items, n=None):
    doc = {"items": [_s(x) for x in items]}
    if n is not None:
        doc["n"] = n
    return _json.loads(_circlepack.solve_3partition(_json.dumps(doc)))


def verify(instance, layout, tolerance=None):
    tol = "" if tolerance is None else _s(tolerance)
    return _json.loads(_circlepack.verify(_json.dumps(instance), _json.dumps(layout), tol))


def pack_quadtree(radii):
    return _json.loads(_circlepack.pack_quadtree([_s(r) for r in radii]))


def optimize_scale(tree, paper, starts=16, seed=0):
    m, positions = _circlepack.optimize_scale(_json.dumps(tree), [list(p) for p in paper], starts, seed)
    return m, [tuple(p) for p in positions]


def generate_reduction(items, n=None, paper="triangle"):
    doc = {"items": [_s(x) for x in items]}
    if n is not None:
        doc["n"] = n
    return _json.loads(_circlepack.generate_reduction(_json.dumps(doc), paper))


def gamma():
    return _circlepack.gamma()
