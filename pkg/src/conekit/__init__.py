"""conekit: exact Hilbert bases of rational cones and monoid normalization.

The toolkit is organized in layers.  ``linalg`` provides exact integer
and rational linear algebra (HNF, SNF, lattices).  ``cones`` and
``hilbert`` hold the geometric core: support hyperplanes, placing
triangulations and the primal/dual Hilbert basis algorithms.  ``series``
adds gradings and Hilbert series.  ``problems`` turns typed input
matrices into cone problems and assembles the full result table;
``rings`` wraps that in monomial-algebra language, and ``fileio`` plus
``cli`` expose the whole pipeline over plain text files.
"""

from .errors import (
    ConeError,
    IncompleteResultError,
    InvalidInputError,
    NoGradingError,
    NotPointedError,
    ParseError,
)
from .fileio import (
    ProjectFiles,
    compute_via_files,
    read_input_file,
    read_rational_cone,
    write_input_file,
    write_result_files,
)
from .linalg import (
    LatticeBasis,
    congruence_lattice,
    hnf,
    kernel_lattice,
    lattice_index,
    saturation,
    snf,
)
from .problems import (
    CONGRUENCES,
    EQUATIONS,
    INEQUALITIES,
    INTEGRAL_CLOSURE,
    LATTICE_IDEAL,
    MODE_HILBERT_BASIS,
    MODE_SUPPORT_HYPERPLANES,
    MODE_TRIANGULATION,
    NORMALIZATION,
    POLYTOPE,
    REES_ALGEBRA,
    ComputationOptions,
    InputSystem,
    RationalCone,
    build_problem,
    compute_cone,
    input_system,
    level_one_elements,
)
from .rings import (
    MonomialSubalgebra,
    RingDescriptor,
    binomial_ideal,
    create_monomial_subalgebra,
    diag_invariants,
    finite_diag_invariants,
    intcl_mon_ideal,
    intcl_toric_ring,
    intersection_val_ring_ideals,
    intersection_val_rings,
    monomial_ideal,
    normal_toric_ring,
    normal_toric_ring_from_binomials,
    polynomial_ring,
    torus_invariants,
)

__all__ = [
    "ConeError",
    "IncompleteResultError",
    "InvalidInputError",
    "NoGradingError",
    "NotPointedError",
    "ParseError",
    "ProjectFiles",
    "compute_via_files",
    "read_input_file",
    "read_rational_cone",
    "write_input_file",
    "write_result_files",
    "LatticeBasis",
    "congruence_lattice",
    "hnf",
    "kernel_lattice",
    "lattice_index",
    "saturation",
    "snf",
    "CONGRUENCES",
    "EQUATIONS",
    "INEQUALITIES",
    "INTEGRAL_CLOSURE",
    "LATTICE_IDEAL",
    "MODE_HILBERT_BASIS",
    "MODE_SUPPORT_HYPERPLANES",
    "MODE_TRIANGULATION",
    "NORMALIZATION",
    "POLYTOPE",
    "REES_ALGEBRA",
    "ComputationOptions",
    "InputSystem",
    "RationalCone",
    "build_problem",
    "compute_cone",
    "input_system",
    "level_one_elements",
    "MonomialSubalgebra",
    "RingDescriptor",
    "binomial_ideal",
    "create_monomial_subalgebra",
    "diag_invariants",
    "finite_diag_invariants",
    "intcl_mon_ideal",
    "intcl_toric_ring",
    "intersection_val_ring_ideals",
    "intersection_val_rings",
    "monomial_ideal",
    "normal_toric_ring",
    "normal_toric_ring_from_binomials",
    "polynomial_ring",
    "torus_invariants",
]

__version__ = "0.1.0"
