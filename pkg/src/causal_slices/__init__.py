"""Causal 3D slices and the coloured 2D complexes that cut them in half.

A slice is a two-coloured triangulated 3-ball (between a red and a blue
disc) or a thickened 2-sphere (between a red and a blue sphere).  Its
midsection is a surface of red triangles, blue triangles and quadrangles.
This package converts in both directions, decides which coloured surfaces
arise as midsections, builds slices with given boundaries and enumerates
small cases on both sides.
"""

from .census import (
    CensusRecord,
    EnumConfig,
    Kind,
    RoundTripReport,
    enumerate_midsections,
    enumerate_slices_bruteforce,
    roundtrip_report,
    sphere_members,
)
from .complex3 import (
    Complex3,
    SliceKind,
    boundary_split,
    build_complex3,
    canonical_code3,
    dumps_slice,
    euler3,
    isomorphic3,
    layered_union,
    loads_slice,
    structural_checks,
    validate_slice,
)
from .conditions import (
    ConditionReport,
    MidsectionKind,
    check_alpha,
    check_beta1,
    check_beta2,
    check_beta_sphere,
    check_delta,
    check_gamma,
    membership,
)
from .midsection import midsection
from .reconstruct import (
    build_disc_slice,
    build_sphere_slice,
    cut_to_disc,
    local_construction,
    reconstruct,
    replay,
)
from .sides import side_census
from .surface import (
    BLUE,
    RED,
    Cell,
    CellKind,
    Colour,
    SurfaceComplex,
    boundary_arcs,
    build_complex,
    canonical_code,
    dumps_midsection,
    loads_midsection,
    quad_chains,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
