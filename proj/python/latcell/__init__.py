"""Voronoi cells of lattices and limit experiments on lattice sequences."""

from ._latcell import *  # noqa: F401,F403
from ._latcell import __doc__  # noqa: F401
