"""Exact dimension and homology computations for polynomial spline spaces."""

__version__ = "0.1.0"

from .cellcomplex import EmbeddedComplex, load_complex, validate
from .chainhomology import build_rj_complex, freeness_probe, local_series_formula
from .closedforms import planar_main, schumaker_lower_bound, star_dimension
from .fixtures import load_fixture
from .splinemod import SplineSystem, spline_dim

__all__ = [
    "EmbeddedComplex", "SplineSystem", "build_rj_complex", "freeness_probe", "load_complex",
    "load_fixture", "local_series_formula", "planar_main", "schumaker_lower_bound",
    "spline_dim", "star_dimension", "validate",
]
