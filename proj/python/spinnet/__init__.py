"""Spin network evaluation backed by the C++ library.

Networks are passed around as their JSON file text, the same format the
command line tool reads and writes.
"""

import json
from fractions import Fraction
from typing import NamedTuple

from . import _spinnet
from ._spinnet import (
    DomainError,
    ResourceError,
    SchemaError,
    SpinnetError,
    StructureError,
    ponzano_regge,
)


class Radical(NamedTuple):
    """sign * sqrt(square)"""

    sign: int
    square: Fraction

    def __float__(self):
        return self.sign * float(self.square) ** 0.5


def _radical(pair):
    sign, square = pair
    return Radical(sign, Fraction(square))


def generate(family, *params):
    return _spinnet.generate(family, list(params))


def random_cubic(vertices, seed=0):
    return _spinnet.random_cubic(vertices, seed)


def orient(network):
    return _spinnet.orient(network)


def check(network):
    """Admissibility violations; an empty list means admissible."""
    return _spinnet.check(network)


def penrose(network, threads=1):
    return int(_spinnet.penrose(network, threads))


def standard(network):
    """(value, sign_known)"""
    value, known = _spinnet.standard(network)
    return Fraction(value), known


def unitary(network):
    """(Radical, sign_known)"""
    value, known = _spinnet.unitary(network)
    return _radical(value), known


def cg(network):
    return Fraction(_spinnet.cg(network))


def sixj(a, b, c, d, e, f):
    return _radical(_spinnet.sixj([a, b, c, d, e, f]))


def theta_cg(a, b, c):
    return Fraction(_spinnet.theta_cg(a, b, c))


def series(network, nmax, float_mode=False, threads=1):
    """List of (n, coefficient); Fractions in exact mode, floats otherwise."""
    rows = _spinnet.series(network, nmax, float_mode, threads)
    if float_mode:
        return rows
    return [(n, Fraction(v)) for n, v in rows]


def rho(network, nmax, float_mode=True, stride=1):
    return json.loads(_spinnet.rho(network, nmax, float_mode, stride))


def rho_upper_bound(network):
    """(value, exact expression)"""
    return _spinnet.rho_upper_bound(network)


def run_cli(*args):
    """(exit code, stdout, stderr) of the command line tool."""
    return _spinnet.run_cli([str(a) for a in args])
