"""Constants for turanlab."""

DOMAIN = "turanlab"
VERSION = "1.0.0"

# Environment
ENV_MAX_EDGES = "TURANLAB_MAX_EDGES"

# Configuration keys
CONF_MAX_EDGES = "max_edges"
CONF_CANONICAL_LIMIT = "canonical_limit"
CONF_PATTERN_VERTEX_LIMIT = "pattern_vertex_limit"
CONF_TURAN_MAX_N = "turan_max_n"
CONF_XY_EXACT_LIMIT = "xy_exact_limit"
CONF_JOBS = "jobs"
CONF_C_TRI_OFFSET = "c_tri_offset"
CONF_ANGLE_MARGIN = "angle_margin"
CONF_CACHE_SIZE = "cache_size"

# Default values
DEFAULT_MAX_EDGES = 2_000_000
DEFAULT_CANONICAL_LIMIT = 9
DEFAULT_PATTERN_VERTEX_LIMIT = 7
DEFAULT_TURAN_MAX_N = 8
DEFAULT_XY_EXACT_LIMIT = 24
DEFAULT_JOBS = 1
DEFAULT_C_TRI_OFFSET = 3
DEFAULT_ANGLE_MARGIN = 1e-9
DEFAULT_CACHE_SIZE = 4096

# Hard ceilings the settings schema enforces
MAX_CANONICAL_LIMIT = 10
MAX_JOBS = 64

# Edge bitsets are used up to this many vertices; beyond it a sorted triple list backs membership
BITSET_VERTEX_LIMIT = 64

# Search
ISOMORPH_REJECTION_DEPTH = 3
BRANCH_SPLIT_DEPTH = 3
EXHAUSTIVE_ORACLE_MAX_N = 5

# Walk families
MIN_CYCLE_LENGTH = 4
DEFAULT_MAX_CYCLE = 11

# Constructions
LOWER_BOUND_CONSTANT = 5
LOWER_BOUND_MIN_N = 2
MIN_RECURSIVE_PART = 3

# Codegree cleaning: delta = sqrt(CLEANING_NUMERATOR / (L - CLEANING_OFFSET))
CLEANING_NUMERATOR = 21
CLEANING_OFFSET = 26

# Plane
EQUILATERAL_ANGLE = 60
STRAIGHT_ANGLE = 180
LATTICE_COLORS = 3

# Family names
FAMILY_EMPTY = "empty"
FAMILY_K4_MINUS = "k4-minus"
FAMILY_C5_MINUS = "c5-minus"
FAMILY_FCM = "fcm"
FAMILY_EXPLICIT = "explicit"
FAMILY_NAMES = [FAMILY_EMPTY, FAMILY_K4_MINUS, FAMILY_C5_MINUS, FAMILY_FCM]

# Walk kinds
WALK_PSEUDO_PATH = "pseudo-path"
WALK_PSEUDO_CYCLE = "pseudo-cycle"
WALK_CYCLE_MINUS_ONE = "cycle-minus-one"

# Blow-up embedding cases
EMBED_CASE_MULTIPLE_OF_THREE = "multiple-of-three"
EMBED_CASE_SAME_RESIDUE = "same-residue"
EMBED_CASE_DOUBLE_RESIDUE = "double-residue"

# File format keywords
FORMAT_HEADER = "n"
FORMAT_EDGE = "e"
FORMAT_ARC = "a"
FORMAT_POINT = "p"
FORMAT_COMMENT = "#"

# Output formats
OUTPUT_HUMAN = "human"
OUTPUT_RECORDS = "records"

# CLI outputs
OUTPUT_ORIENTABLE = "ORIENTABLE"
OUTPUT_BOTTLE = "BOTTLE"
OUTPUT_NONE = "NONE"
OUTPUT_FREE = "FREE"
OUTPUT_OK = "OK"
OUTPUT_FAIL = "FAIL"

# Exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE_LIMIT = 3
EXIT_USAGE = 64
EXIT_INTERNAL = 70

# Error codes
ERROR_INVALID_ARGUMENT = "invalid_argument"
ERROR_UNSUPPORTED_SIZE = "unsupported_size"
ERROR_RESOURCE_LIMIT = "resource_limit"
ERROR_INTERNAL_INCONSISTENCY = "internal_inconsistency"
ERROR_NOT_ORIENTABLE = "not_orientable"
ERROR_INDETERMINATE = "indeterminate"
ERROR_UNKNOWN = "unknown"
