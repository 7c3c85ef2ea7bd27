"""fanokit: exact-rational K-semistability tests for toric log Fano data and
evaluation of the closed-form Arakelov height formulas and bounds attached
to them (moment-polytope barycenters, the S(X) half-space-cut optimization,
hyperplane-arrangement stability polytopes, diagonal-hypersurface height
corrections, and the Hurwitz-zeta canonical height on the thrice-marked
projective line)."""

from .errors import FanokitError
from .geometry import HPolytope, LinearMap, VPolytope
from .toric_heights import HeightReport, ToricLogFano, VolumePair

__all__ = [
    "FanokitError",
    "HPolytope",
    "VPolytope",
    "LinearMap",
    "HeightReport",
    "ToricLogFano",
    "VolumePair",
]

__version__ = "0.1.0"
