"""Exact arithmetic dynamics: canonical heights, Julia-set symmetries and
preperiodicity of lines under split polynomial maps."""

import csv
import io
import json

from . import _core
from ._core import HeightBudgetExceeded, exponent_sequence, run, weil_height

__all__ = [
    "HeightBudgetExceeded",
    "canonical_height",
    "exponent_sequence",
    "line_preperiodic",
    "orbit_point",
    "run",
    "same_julia",
    "scan",
    "symmetry_group",
    "weil_height",
]


def canonical_height(map, point, tol=1e-9):
    """Canonical height of a rational point; dict with value, error, exact, locals."""
    return json.loads(_core.height_json(map, str(point), tol))


def orbit_point(map, point, budget=1000, conductor=1):
    return json.loads(_core.orbit_json(map, str(point), budget, conductor))


def symmetry_group(map, conductor=1):
    return json.loads(_core.symmetry_json(map, conductor))


def same_julia(map1, map2, conductor=1):
    return json.loads(_core.same_julia_json(map1, map2, conductor))


def line_preperiodic(maps, line, conductor=1, budget=1000):
    """maps: list of polynomial strings or one ';'-separated string."""
    if not isinstance(maps, str):
        maps = ";".join(maps)
    return json.loads(_core.line_json(maps, line, conductor, budget))


def scan(maps, line, height_bound, tol=1e-9):
    """Rows of the height scan as dicts keyed by the CSV header."""
    if not isinstance(maps, str):
        maps = ";".join(maps)
    return list(csv.DictReader(io.StringIO(_core.scan_csv(maps, line, height_bound, tol))))
