"""Random tilings of kagome-lattice regions by hexagon-plus-two-triangle prototiles."""

import json

from . import _core
from ._core import (
    BudgetExceeded,
    CapExceeded,
    FormatError,
    InvalidRegion,
    InvalidTiling,
    Region,
    Tiling,
    contour_peel_minimal,
    find_tiling,
    forward_coupling_time,
    is_minimal_restrained,
    make_region,
    mixing_time,
    region_area,
    region_from_json,
    render_svg,
    run,
    tiling_from_json,
    verify,
)

SCHEMA_VERSION = _core.SCHEMA_VERSION


def _region(region):
    return make_region(region) if isinstance(region, str) else region


def graph_stats(region, flip_set="all"):
    """Flip-graph summary (sizes, diameter, extremes) as a dict."""
    return json.loads(_core.graph_stats(_region(region), flip_set))


def ledger(region, variant="general"):
    """Worst path-coupling entry for a chain variant, with exact rationals as strings."""
    return json.loads(_core.ledger(_region(region), variant))


def sample(region, variant="general", seed=0, budget=10**9):
    """Exact sample by coupling from the past. Returns (tiling, window, total_steps)."""
    return _core.cftp_sample(_region(region), variant, seed, budget)


__all__ = [
    "BudgetExceeded",
    "CapExceeded",
    "FormatError",
    "InvalidRegion",
    "InvalidTiling",
    "Region",
    "SCHEMA_VERSION",
    "Tiling",
    "contour_peel_minimal",
    "find_tiling",
    "forward_coupling_time",
    "graph_stats",
    "is_minimal_restrained",
    "ledger",
    "make_region",
    "mixing_time",
    "region_area",
    "region_from_json",
    "render_svg",
    "run",
    "sample",
    "tiling_from_json",
    "verify",
]
