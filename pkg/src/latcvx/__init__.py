"""latcvx: exact rational computation of lattice width and diameter of
polytopes, with certification of lattice reducedness and completeness."""

from .kernel import (
    CertificationError,
    DegenerateError,
    EmptyRegionError,
    InconsistentSystemError,
    InputError,
    LatcvxError,
    LpOutcome,
    LpProblem,
    PreconditionError,
    SingularMatrixError,
    UnboundedRegionError,
    format_rational,
    parse_rational,
    solve_linear_system,
    solve_lp,
)
from .polytope import (
    Polytope,
    difference_body,
    from_inequalities,
    hull,
    intersect_halfspaces,
    minkowski_sum,
    normal_cone_membership,
    polar,
    relint_point_in_face,
    scale,
    transform,
    translate,
    volume,
)
from .lattice import (
    Lattice,
    MinimumResult,
    dual_lattice,
    enumerate_lattice_points,
    first_minimum,
    is_primitive,
    lattice_length,
    primitive_part,
    voronoi_cell,
    voronoi_relevant,
)
from .functionals import (
    CompleteCertificate,
    FunctionalResult,
    ReducedCertificate,
    diameter,
    is_complete,
    is_hollow,
    is_reduced,
    planar_inequality_check,
    reduce_polytope,
    stack_facet,
    structural_bounds_check,
    symmetric_dual_check,
    verify_witness_segment,
    width,
)
from .constructions import (
    GalleryEntry,
    TriangleClass,
    classify_triangle,
    free_sum,
    gallery,
    gallery_names,
    join,
    lift,
    product,
)

__version__ = "0.1.0"
