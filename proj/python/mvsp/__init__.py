"""Minimal value set polynomials over finite fields."""

import json as _json

from . import _core
from ._core import Field, GuardError, InvariantError, evaluate, from_json, normalize

__all__ = [
    "Field", "GuardError", "InvariantError", "basis", "census", "classify", "enumerate", "evaluate",
    "from_json", "lift", "linear_dim", "normalize", "orbits", "reduce", "theorems", "to_json", "verify",
]


def _field(field):
    return field if isinstance(field, Field) else Field(field)


def to_json(field, f):
    return _json.loads(_core.to_json(_field(field), f))


def verify(field, F, T=None):
    return _json.loads(_core.verify(_field(field), F, T))


def classify(field, F, any_degree=False):
    return _json.loads(_core.classify(_field(field), F, any_degree))


def reduce(field, T):
    return _json.loads(_core.reduce(_field(field), T))


def orbits(q, n):
    return _json.loads(_core.orbits(q, n))


def basis(field, d=1, alpha="1"):
    return _json.loads(_core.basis(_field(field), d, alpha))


def enumerate(field, d=1, alpha="1", limit=1 << 20):
    return _core.enumerate(_field(field), d, alpha, limit)


def lift(field, A):
    return _json.loads(_core.lift(_field(field), A))


def linear_dim(field, A):
    return _json.loads(_core.linear_dim(_field(field), A))


def census(field, jobs=1):
    return _json.loads(_core.census(_field(field), jobs))


def theorems(field):
    return _json.loads(_core.theorems(_field(field)))
