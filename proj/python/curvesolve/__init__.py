"""Closed curves of prescribed geodesic curvature on conformally round spheres."""

from ._core import (  # noqa: F401
    Branch,
    BranchState,
    BranchStatus,
    ConformalMetric,
    ContinuationSchedule,
    CurvatureSpec,
    Diagnostics,
    DiscreteCurve,
    EmbeddingReport,
    HarmonicTerm,
    Monitors,
    SegmentContact,
    SolveDiagnostics,
    SolveResult,
    SolveStatus,
    SolverOptions,
    TwoBranchResult,
    aligned_distance,
    certify,
    continue_path,
    curve_length,
    enclosed_gauss_integral,
    first_eigenvalue,
    geodesic_curvature,
    node_speed_variation,
    real_sph_harm,
    resample_constant_speed,
    residual,
    rotate90,
    seed_circle,
    segment_speed_variation,
    self_intersects,
    sobolev_field,
    solve_zero,
    two_branch_run,
    winding_number,
)
