"""Syzygies, Ext and quasi-projective dimension for serial algebras."""

from .algebra import (
    INF,
    AlgebraError,
    ModuleError,
    ModuleSum,
    PathElt,
    SerialAlgebra,
    Uniserial,
    algebra_from_json,
    algebra_from_spec,
    all_indecomposables,
    build_cyclic,
    build_kupisch,
    embeds_into,
    is_injective_projective,
    is_self_injective,
    proj_dimension,
    socle,
    syzygy,
    syzygy_orbit,
)
from .complexes import (
    ChainMap,
    HomologyReport,
    NotQuasiResolution,
    ProjComplex,
    bounded_search,
    check_quasi_resolution,
    cone_from_ladder,
    cone_from_pi_cover,
    homology_decompose,
    mapping_cone,
    periodic_certificate,
)
from .homext import (
    ExtTable,
    MinimalResolution,
    ext_dim,
    ext_eventually_vanishes,
    hom_dim,
    infinite_qpd_witness,
    minimal_resolution,
)
from .qpd import (
    QpdResult,
    case_upper_bound_Anm,
    findim_gldim,
    product_qgldim,
    qgldim,
    qpd_bounds,
    socle_lower_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
