"""Reconstruction and stability tools for line-sum problems on integer grids."""
from .continuous import (
    RectUnion,
    SeparableF0,
    SeparableTestFn,
    StepProfile,
    continuous_project,
    inner_product,
    profiles,
)
from .errors import *  # noqa: F401,F403
from .grid import (
    Direction,
    DirectionSet,
    LineSumTable,
    check_compatibility,
    compute_line_sums,
    dependency_count,
    from_rows,
    is_compatible,
    simple_line_sums,
    to_rows,
    validate_direction_set,
)
from .lattice import (
    LatticeSolution,
    construct_integer_solution,
    distance_bound,
    nearest_integer_solution,
    shortest_integer_candidate,
)
from .projection import ProjectionResult, norm_sq, project, project_general, project_simple
from .stability import (
    StabilityReport,
    binary_radius,
    enumerate_binary_solutions,
    round_binary,
    stability_bounds,
)
from .switching import (
    BivariatePolynomial,
    SwitchingBasis,
    bottom_left_corners,
    decompose,
    direction_polynomial,
    reconstruct_from_corners,
    recompose,
    switching_basis,
    switching_element,
    switching_polynomial,
    weight_R,
)
from .torus import (
    TorusInstance,
    are_independent,
    torus_line,
    torus_line_sums,
    torus_project,
)

__version__ = "0.1.0"
