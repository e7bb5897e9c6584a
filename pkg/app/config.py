# -*- coding: utf-8 -*-

from decouple import config

BRAND_NAME = "Harnack Lab"

LOG_LEVEL = config('HARNACK_LAB_LOG_LEVEL', default="INFO", cast=str)

# Solver parallelism cap, and the fixed height of the row blocks handed to workers
THREADS = max(1, config('HARNACK_LAB_THREADS', default=1, cast=int))
BLOCK_ROWS = max(1, config('HARNACK_LAB_BLOCK_ROWS', default=16, cast=int))

OUTPUT_DIR = config('HARNACK_LAB_OUT', default="out", cast=str)

# Scenario defaults
DEFAULT_H = 1.0 / 64.0
DEFAULT_EPSILON_FACTOR = 1e-4
EPSILON_FLOOR = 1e-12
DEFAULT_SAFETY = 0.9
DEFAULT_RADIUS = 1.0
DEFAULT_RATIO_CAP = 50.0

# Placeholders for the forward Harnack constants; not the theoretical values
DEFAULT_MU = 4.0
DEFAULT_C = 0.1
DEFAULT_SIGMA = 2.0

# Tolerances
CRITICAL_Q_TOLERANCE = 1e-12
COUNTEREXAMPLE_B_TOLERANCE = 1e-10
RESIDUAL_TOLERANCE = 1e-8
SUPERSOLUTION_TOLERANCE = 1e-9
COMPARISON_TOLERANCE_FACTOR = 1e-3
SNAPSHOT_TIME_TOLERANCE = 1e-9
CHAIN_MEMBERSHIP_TOLERANCE = 1e-9
SCHEDULING_MAX_PASSES = 6

CSV_PRECISION = 17

# Scenario commands
COMMAND_RANGE_CHECK = "range-check"
COMMAND_CONSTANTS = "constants"
COMMAND_CHAIN = "chain"
COMMAND_SUPERSOLUTION_AUDIT = "supersolution-audit"
COMMAND_COUNTEREXAMPLE_AUDIT = "counterexample-audit"
COMMAND_SOLVE_RADIAL = "solve-radial"
COMMAND_SOLVE_2D = "solve-2d"
COMMAND_HARNACK = "harnack"
COMMAND_COMPARE = "compare"

COMMANDS = (
    COMMAND_RANGE_CHECK,
    COMMAND_CONSTANTS,
    COMMAND_CHAIN,
    COMMAND_SUPERSOLUTION_AUDIT,
    COMMAND_COUNTEREXAMPLE_AUDIT,
    COMMAND_SOLVE_RADIAL,
    COMMAND_SOLVE_2D,
    COMMAND_HARNACK,
    COMMAND_COMPARE,
)

# Commands that rely on the singular range 1 < q < 2
SINGULAR_RANGE_COMMANDS = (
    COMMAND_CONSTANTS,
    COMMAND_CHAIN,
    COMMAND_SUPERSOLUTION_AUDIT,
    COMMAND_COMPARE,
)

# Grid kinds
GRID_RADIAL = "radial"
GRID_PLANAR = "planar"

# Boundary kinds
BC_DIRICHLET_FUNCTION = "dirichlet-function"
BC_DIRICHLET_CONSTANT = "dirichlet-constant"

# Cylinder kinds
CYLINDER_BACKWARD = "backward"
CYLINDER_FORWARD = "forward"
CYLINDER_BOTH = "both"

# Harnack measurement kinds
RATIO_ELLIPTIC = "elliptic"
RATIO_FORWARD = "forward"
RATIO_BACKWARD = "backward"
RATIO_BOTH = "both"
RATIO_KINDS = (RATIO_ELLIPTIC, RATIO_FORWARD, RATIO_BACKWARD, RATIO_BOTH)
