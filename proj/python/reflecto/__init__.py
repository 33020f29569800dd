"""Exact reflection matrices and tightness checks for multiclass queueing networks.

Rational entries are exchanged as strings such as "-3/2"; integers and
fractions.Fraction are accepted on input.
"""

import json
from fractions import Fraction

from . import _reflecto
from ._reflecto import Error, InvalidInput, SingularMatrix

__all__ = [
    "Error",
    "InvalidInput",
    "SingularMatrix",
    "analyze",
    "check_tight",
    "classify",
    "decide_tight",
    "det",
    "inv",
    "reentrant_spec",
    "verify_witness",
]


def _rat(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"exact rational expected, got {x!r}")
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def _vec(v):
    return json.dumps([_rat(x) for x in v])


def _mat(m):
    return json.dumps([[_rat(x) for x in row] for row in m])


def det(matrix):
    return json.loads(_reflecto.det(_mat(matrix)))


def inv(matrix):
    return json.loads(_reflecto.inv(_mat(matrix)))


def classify(matrix):
    return json.loads(_reflecto.classify(_mat(matrix)))


def check_tight(matrix, b, aux_bounded=True):
    return json.loads(_reflecto.check_tight(_mat(matrix), _vec(b), aux_bounded))


def decide_tight(matrix, samples=20, seed=0, aux_bounded=True):
    return json.loads(_reflecto.decide_tight(_mat(matrix), samples, seed, aux_bounded))


def verify_witness(matrix, b, witness, aux_bounded=True):
    w = json.dumps({k: _rat(v) for k, v in witness.items()})
    return json.loads(_reflecto.verify_witness(_mat(matrix), _vec(b), w, aux_bounded))


def analyze(spec):
    return json.loads(_reflecto.analyze(json.dumps(spec)))


def reentrant_spec(route, means, arrival=1, discipline="fbfs"):
    return json.loads(
        _reflecto.reentrant(json.dumps(list(route)), _vec(means), _rat(arrival), discipline)
    )
