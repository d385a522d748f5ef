"""
Central configuration for qdecay.

Everything tunable lives here as module-level constants. There are no
environment variables and no configuration files: the CLI flags are the only
runtime configuration, and they default to the values below.
"""

# === NUMERICAL TOLERANCES ===
HERMITIAN_TOL = 1e-10          # max |A - A^H| entry accepted as Hermitian
TRACE_TOL = 1e-8               # max |tr(rho) - 1| accepted by validate()
EIGEN_CLIP_TOL = 1e-10         # eigenvalues in [-tol, 0) are clipped to 0
COMPLETENESS_TOL = 1e-12       # max |sum E^H E - I| entry for a Kraus set
TRACE_PRESERVATION_TOL = 1e-12
X_SHAPE_TOL = 1e-10            # off-X entries below this count as zero
EIGEN_SUM_CUTOFF = 1e-12       # q_i + q_l <= cutoff is dropped from M
MEASURE_CLIP_TOL = 1e-12       # measure values in [-tol, 0) are clipped to 0
IMAG_RESIDUE_TOL = 1e-8        # imaginary residue allowed in spin-flip spectrum
SPIN_FLIP_CUTOFF = 1e-14       # spin-flip eigenvalues below this fraction of the largest are zero
UNIT_VECTOR_TOL = 1e-12
DEGENERACY_TOL = 1e-9          # relative gap below which M eigenvalues tie
BRANCH_SPAN_FLOOR = 1e-14      # M with eigenvalue span below this counts as isotropic

# === JACOBI EIGENSOLVER ===
JACOBI_OFF_TOL = 1e-13         # off-diagonal Frobenius norm, relative to ||A||_F
JACOBI_MAX_SWEEPS = 100
RECONSTRUCTION_TOL = 1e-10

# === DYNAMICS / CLASSIFIER ===
EPS_DEATH = {
    "concurrence": 1e-10,
    "ip": 0.0,                 # IP death means exactly zero
}
GUARD_BAND = 1e-6              # gamma <= 1 - GUARD_BAND is sampled
DEATH_GRID = 10_000
DEATH_BISECT_TOL = 1e-8
SUDDEN_CHANGE_GRID = 1_000
SUDDEN_CHANGE_BISECT_TOL = 1e-6
CLOSED_FORM_RHO14_MIN = 1e-8   # a, b in the GAD M closed form need |rho14| above this
CLOSED_FORM_AGREEMENT_TOL = 1e-8
MONOTONE_ALPHA_STEPS = 21      # grid of the IP monotonicity check
MONOTONE_GAMMA_STEPS = 101
NONADDITIVITY_ALPHAS = tuple(round(0.01 * k, 2) for k in range(1, 100))

# === OUTPUT ===
CSV_COLUMNS = ["scenario", "alpha", "gamma", "concurrence", "ip", "ip_branch"]
FLOAT_FORMAT = "%.12f"
JSON_DECIMALS = 12
LINE_TERMINATOR = "\n"

# === CLI DEFAULTS ===
DEFAULT_STEPS = 101
DEFAULT_SEED = 20240101
DEFAULT_FORMAT = "csv"
VERIFY_TRIALS = 100
VERIFY_DIRECTIONS = 20
SPHERE_RESOLUTION = 10_000
