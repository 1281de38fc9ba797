CACHE_SIZE = 128

# Exploration budgets
DEFAULT_FUEL = 100_000
DEFAULT_ENUMERATION_CAP = 5_000
DEFAULT_SEARCH_BUDGET = 1_000_000
# nesting depth of chain trees explored by the brute-force Cplx oracle
MAX_CHAIN_DEPTH = 200
# terms past this size are not rewritten further; heights become lower bounds
MAX_TERM_SIZE = 2_000

# Analysis defaults
DEFAULT_MAX_SIZE = 8
DEFAULT_DEGREE = 2
DEFAULT_COEFF = 2
ESCALATED_COEFF = 3
# the irc bound is a side result and gets this fraction of the search budget
IRC_BUDGET_SHARE = 10

# Growth estimation
MAX_FIT_DEGREE = 6
MIN_FIT_SAMPLES = 4

EMPIRICAL_LABEL = "empirical - not a proof"
