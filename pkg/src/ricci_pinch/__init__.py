"""Numerical toolkit for Ricci-pinched compact submanifolds of round spheres."""

from .curvature import (
    BoundsCheck,
    EQUALITY_RTOL,
    MeanCurvature,
    PinchScalars,
    PinchingParams,
    ShapeOperatorSet,
    mean_bound_check,
    mean_curvature,
    pinch_bound,
    pinch_poly_eval,
    pinch_scalars,
    ricci_direction,
    ricci_min,
    ricci_operator,
    shape_bounds_check,
    unit_normal_samples,
)
from .lawson_simons import (
    LSResult,
    SubspaceFrame,
    equality_subspaces,
    joint_eigenspace,
    ls_max,
    ls_oracle,
    ls_value,
    ls_value_by_completion,
    principal_angle_max,
)
from .verdict import (
    DupinDetection,
    PinchVerdict,
    check_pinching,
    dupin_detect,
    dupin_detect_all,
    equality_frame_excess,
    expected_excess,
    max_pinch_k,
    multiplicity_window_check,
)
from .catalog import (
    AnalyticDescriptor,
    CatalogEntry,
    IsoparametricSpec,
    analytic_max_k,
    catalog_entry,
    catalog_labels,
    catalog_sweep,
    clifford_delta,
    clifford_torus,
    clifford_window,
    fkm_pair,
    focal_entry,
    g4_minimal_tilt_closed_form,
    isoparametric,
    minimal_isoparametric,
    projective_entry,
)
from .tube import (
    DupinPatch,
    GreatCirclePatch,
    LambdaTangent,
    SmallCirclePatch,
    SphereBasePatch,
    TubePatch,
    TubePoint,
    build_patch,
    focal_map,
    gauss_orthogonality_residual,
    generic_check,
    regularity_endomorphism,
    small_circle_crossing,
    sphere_dupin_patch,
    torus_dupin_patch,
    tube_differential,
    tube_dupin_patch,
    tube_gauss,
    tube_jacobian,
    tube_map_derivative,
    tube_point,
    vertical_shape_check,
)
from .report import (
    ConfigError,
    TopologyReport,
    dumps_canonical,
    homology_conclusion,
    render,
    render_conclusions,
    run_config,
)

__version__ = "0.1.0"
