"""
Configuration settings for the conic viewpoint toolkit.
"""

from pathlib import Path


class Config:
    """Central configuration class for the library and the command line."""

    # ============================================================
    # PROJECT PATHS
    # ============================================================
    PROJECT_ROOT = Path(__file__).parent.parent
    GOLDEN_DIR = PROJECT_ROOT / "tests" / "golden"

    # ============================================================
    # GLOBAL TOLERANCES
    # ============================================================
    EPS_REL = 1e-9          # library-wide relative tolerance
    UNIT_TOL = 1e-12        # |dir| = 1 check for unit vectors
    SYMMETRY_TOL = 1e-12    # relative asymmetry accepted by SymMat3.from_array

    # ============================================================
    # EIGENSOLVER
    # ============================================================
    EIGEN_GAP_REL = 1e-7    # below this relative gap the Jacobi path is used
    JACOBI_MAX_SWEEPS = 50
    JACOBI_POLISH_SWEEPS = 3
    SIGN_ZERO_TOL = 1e-12   # first "nonzero" component for sign normalisation

    # ============================================================
    # CUBIC ROOTS
    # ============================================================
    BISECTION_WIDTH = 1e-10
    BISECTION_MAX_ITER = 400
    NEWTON_MAX_STEPS = 5

    # ============================================================
    # CONES
    # ============================================================
    CIRCULAR_GAP_REL = 1e-7
    REFLECTION_TOL = 1e-9

    # ============================================================
    # CONFOCAL FAMILY
    # ============================================================
    PARAM_DISTINCT_TOL = 1e-9
    NON_GENERIC_REL = 1e-7
    SURFACE_TOL = 1e-8
    NEGATIVE_SQUARE_TOL = 1e-12

    # ============================================================
    # TANGENT CONES / FITTING
    # ============================================================
    FIT_RANK_TOL = 1e-10
    MIN_FIT_POINTS = 9

    # ============================================================
    # VIEWPOINTS / VERIFICATION
    # ============================================================
    HYPERBOLA_SAMPLE_SPAN = 2.0   # |t| range when sampling hyperbola branches
    HYPERBOLA_MAX_PARAMETER = 300.0   # largest |t| on a hyperbola; cosh(t)^2 must stay finite
    CIRCULARITY_SAMPLES = 64
    DEGENERATE_RAY_TOL = 1e-12
    DISTANCE_SCAN_SAMPLES = 4000
    DISTANCE_SCAN_SPAN = 8.0      # |t| range scanned when measuring distance to a hyperbola

    # ============================================================
    # EXPORT
    # ============================================================
    EXPORT_RULINGS = 24
    EXPORT_CURVE_SAMPLES = 96
    EXPORT_SURFACE_GRID = (12, 16)   # (rows, columns) per sampled patch
    EXPORT_SURFACE_SPAN = 1.5        # hyperbolic parameter range for open surfaces

    # ============================================================
    # COMMAND LINE
    # ============================================================
    JSON_SCHEMA_VERSION = "1"
    EXIT_OK = 0
    EXIT_DOMAIN_ERROR = 2
    EXIT_IO_ERROR = 3

    # ============================================================
    # LOGGING
    # ============================================================
    LOG_LEVEL = "WARNING"
