"""Delivery time per bit (DTB) for a cache-aided relay HetNet over the
linear deterministic channel: exact analytics, explicit schemes and a
bit-level simulator."""

__version__ = "0.1.0"

from hetdtb.analytics import (
    BoundValue,
    DtbReport,
    converse_bounds,
    corner_points,
    dtb_curve,
    dtb_lower_bound,
    dtb_optimal,
)
from hetdtb.gf2 import BACKEND, Gf2Matrix, solve_gf2
from hetdtb.ldm import LevelWord, apply_downshift, superpose
from hetdtb.regimes import ChannelTriple, Regime, RegimeLabel, classify_regime, quantize_channel
from hetdtb.schemes import (
    LinearScheme,
    Placement,
    SchemePoint,
    build_corner_scheme_B,
    build_corner_scheme_C,
    build_scheme_mu0,
    make_placement,
    scheme_for,
    time_share,
)
from hetdtb.search import brute_force_search
from hetdtb.sim import check_decodability, recursive_reconstruct, simulate_delivery

__all__ = [
    "BACKEND", "BoundValue", "ChannelTriple", "DtbReport", "Gf2Matrix", "LevelWord",
    "LinearScheme", "Placement", "Regime", "RegimeLabel", "SchemePoint",
    "apply_downshift", "brute_force_search", "build_corner_scheme_B",
    "build_corner_scheme_C", "build_scheme_mu0", "check_decodability",
    "classify_regime", "converse_bounds", "corner_points", "dtb_curve",
    "dtb_lower_bound", "dtb_optimal", "make_placement", "quantize_channel",
    "recursive_reconstruct", "scheme_for", "simulate_delivery", "solve_gf2",
    "superpose", "time_share",
]
