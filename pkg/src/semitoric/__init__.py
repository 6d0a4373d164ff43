"""Exact combinatorics of crystal parametrizations, cluster mutation, and
semi-toric degeneration certificates for Richardson varieties."""

from . import (cluster, degeneration, linalg, minors, polytope, rootdata,
               zcrystal)

__all__ = ["cluster", "degeneration", "linalg", "minors", "polytope",
           "rootdata", "zcrystal"]

__version__ = "0.1.0"
