"""Rational inner functions on the bidisk."""

import json

from ._core import (
    DomainError,
    Error,
    InputError,
    NumericError,
    ParseError,
    agler_inner_reduction,
    bidegree,
    evaluate,
    is_stable,
    normalize,
    taylor_coeffs,
    torus_zeros,
)
from . import _core


def contact_profile(denominator, torus_grid=256):
    return json.loads(_core.contact_profile_json(denominator, torus_grid))


def slice_norm(denominator, variable="z1", order=1, alpha=1.0, radial=64, angular=256, eps_levels=()):
    return json.loads(_core.slice_norm_json(denominator, variable, order, alpha, radial, angular, list(eps_levels)))


def classify(denominator, space="bcgw", alpha=1.0, alpha2=None, order=(1, 1), numeric=True):
    return json.loads(_core.classify_json(denominator, space, alpha, alpha2, tuple(order), numeric))


def run_suite(ids, seed=20240607):
    return json.loads(_core.run_suite_json(list(ids), seed))


__all__ = [
    "DomainError",
    "Error",
    "InputError",
    "NumericError",
    "ParseError",
    "agler_inner_reduction",
    "bidegree",
    "classify",
    "contact_profile",
    "evaluate",
    "is_stable",
    "normalize",
    "run_suite",
    "slice_norm",
    "taylor_coeffs",
    "torus_zeros",
]
