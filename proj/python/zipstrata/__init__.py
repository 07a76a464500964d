"""Zip strata, F-zips, Witt-vector displays and finite group censuses."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import (
    check_reduction_json as _check_reduction_json,
    counterexample_json as _counterexample_json,
    display_census_json as _display_census_json,
    orbit_census_json as _orbit_census_json,
)

__version__ = "0.1.0"


def orbit_census(blocks, p, d=1, s=1):
    return _json.loads(_orbit_census_json(blocks, p, d, s))


def counterexample(qs=(2, 3, 4, 5)):
    return _json.loads(_counterexample_json(list(qs)))


def check_reduction(n, p, d, m, d_block=None):
    return _json.loads(_check_reduction_json(n, p, d, m, d_block))


def display_census(n, p, d, m, d_block=None):
    return _json.loads(_display_census_json(n, p, d, m, d_block))
