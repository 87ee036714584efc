"""
Engine Constants

Defaults shared by the domain searches, the settings layer and the CLI. Settings
override these at runtime; the domain falls back to them when called directly.
"""

# Rewriting search
DEFAULT_EXTRA_LENGTH = 4  # slack added to |w1| + |w2| for the default bound
DEFAULT_MAX_VISITED_WORDS = 2_000_000
DEFAULT_PROGRESS_INTERVAL = 50_000  # visited words between progress log lines
DEFAULT_URT_BOUND = 12

# Generating functions
DEFAULT_PHI_SLACK = 3  # phi_class explores with bound d + slack
JOINT_DEGREE_FACTOR = 2  # default joint cap of two-block polynomials is 2d

# CLI exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

# Service
DEFAULT_HTTP_PORT = 8093
SERVICE_NAME = "khecke"
