"""sphereforge: constructing and certifying simplicial and polyhedral spheres.

Carves balls out of grid-like triangulations and cyclic polytope
boundaries, fills them with free sums of simplices, enumerates the
resulting triangulations, and certifies topology and geometric
realizability with exact rational arithmetic.
"""

from .complexes import (
    EMPTY_SIMPLEX,
    FreeSumCell,
    FVector,
    PolyComplex,
    Simplex,
    SimplicialComplex,
    VertexId,
    boundary_complex,
    cone,
    cyclic_polytope_facets,
    empty_complex,
    f_vector,
    gale_evenness,
    join,
    link,
    star,
)
from .topology import (
    ShellingOrder,
    TopologyCertificate,
    betti_gf2,
    certify,
    verify_shelling,
)
from .carvefill import (
    BallInComplex,
    CompatibleFamily,
    FillManifest,
    boundary_restriction,
    carve_and_fill,
    fill_ball,
    is_compatible,
    missing_face,
    realize,
    triangulate_cell,
)
from .grid import (
    GridBox,
    GridRegion,
    JoinOfPaths,
    aztec_crosspolytope,
    aztec_diamond,
    band_cell_order,
    boundary_members,
    cell_simplex,
    diagonal_band,
    ehrhart_crosspolytope,
    is_grid_connected,
    is_grid_starconvex,
    is_grid_unimodal,
    join_of_paths,
    region_complex,
    shelling_order_band,
)
from .constructions import (
    BUILDERS,
    ConstructionReport,
    build_aztec,
    build_aztec_highd,
    build_cyclic,
    build_highd,
    build_holes3,
    build_holes4,
    sample_realization_certificates,
)
from .geometry import (
    LiftedConfiguration,
    RegularAztecLift,
    Subdivision,
    aztec_lift,
    build_aztec_lift,
    compose_lift,
    convex_hull_brute,
    delta_search,
    detect_bipyramid_facets,
    eps_search,
    hull_with_apex,
    paths_coordinates,
    raise_centers,
    standard_coordinates,
    verify_regular,
)

__version__ = "0.1.0"
