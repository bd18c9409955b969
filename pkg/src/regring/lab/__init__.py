"""Exhaustive verification over small finite von Neumann regular rings."""

from .claims import CLAIMS, ClaimReport, replay, verify
from .rings import FiniteRing, inverse_sets, make_ring

__all__ = ["CLAIMS", "ClaimReport", "FiniteRing", "inverse_sets", "make_ring", "replay", "verify"]
