from enum import Enum, IntEnum


class ExitCode(IntEnum):
    SUCCESS = 0
    NEGATIVE = 1
    INPUT_ERROR = 2
    NO_CONVERGENCE = 3


class Axis(str, Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


class Sign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


class VertexKind(str, Enum):
    REAL = "real"
    ARTIFICIAL = "artificial"
    SENTINEL_PLUS = "sentinel_plus"
    SENTINEL_MINUS = "sentinel_minus"


class GeneratorKind(str, Enum):
    MONOTONE_CURVE = "monotone_curve"
    DISJOINT_CROSS_FREE = "disjoint_cross_free"
    WITH_ARRAY = "with_array"


ORGANIZATION = "sumsplit"
APPLICATION = "sumsplit"
VERSION = "v0.3.0"
SETTINGS_FILENAME = "v0.3settings"

# library defaults; the CLI reads the user-facing values from settings
DEFAULT_N_MAX = 32
DEFAULT_EPSILON_DIVISOR = 40
DEFAULT_REFINE_MAX_ITER = 40
DEFAULT_HISTOGRAM_BINS = 10

# per-pass guarantee is PASS_BOUND_FACTOR * epsilon on the sample
PASS_BOUND_FACTOR = 20

# relative slack used when re-checking certified inequalities
ROUNDING_SLACK = 1e-9

# largest |cell index| we hand out before refusing the level
MAX_CELL_INDEX = 2**62

SAMPLE_HEADER = ("x", "y", "f")
