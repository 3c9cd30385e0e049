"""Canonical heights and explicit lower bounds on CM elliptic curves."""

import json

from . import _cmheight
from ._cmheight import PrecisionExhausted, cm_curves

__all__ = [
    "PrecisionExhausted",
    "bound",
    "certify",
    "chain",
    "cm_curves",
    "galois",
    "height",
    "sample_points",
    "sweep",
    "torsion",
]


def height(curve, point, field="Q", tol=1e-10, method="doubling"):
    return json.loads(_cmheight.height_json(curve, point, field, tol, method))


def bound(d, j):
    return json.loads(_cmheight.bound_json(d, str(j)))


def certify(curve, point, field="Q", tol=1e-10):
    return json.loads(_cmheight.certify_json(curve, point, field, tol))


def torsion(curve, point, field="Q"):
    return json.loads(_cmheight.torsion_json(curve, point, field))


def galois(disc, qprime, d=1):
    return json.loads(_cmheight.galois_json(disc, qprime, d))


def chain(d, j):
    return json.loads(_cmheight.chain_json(d, str(j)))


def sample_points(curve, **config):
    return json.loads(_cmheight.sample_json(curve, json.dumps(config)))


def sweep(**config):
    return json.loads(_cmheight.sweep_json(json.dumps(config)))
