"""Certified and finite-element maximum points of torsion functions and ground states."""
from .base import BoundedValue, Bracket, DomainSpec, MaxReport, Point, mapped_triangle
from .certify import bisect_max, certified_max, certified_sign

__version__ = "0.1.0"

__all__ = [
    "BoundedValue", "Bracket", "DomainSpec", "MaxReport", "Point", "mapped_triangle",
    "bisect_max", "certified_max", "certified_sign",
]
