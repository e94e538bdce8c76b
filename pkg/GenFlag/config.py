# config.py

import os

# Logging
# The CLI writes to the console and to a rotating log file in the working directory.
LOG_FILE = "genflag.log"
LOG_MAX_BYTES = 5 * 1024 * 1024
LOG_BACKUP_COUNT = 5
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(name)s - %(message)s'

# Documents and reports
FLAG_FILE_EXTENSION = ".flag"
DEFAULT_OUTPUT_DIR = "results"

# Brute force limits for the Picard kernel check
# Enumeration cost is (2 * bound + 1) ** positions, keep both small.
KERNEL_CHECK_MAX_LEVEL = 5
KERNEL_CHECK_MAX_BOUND = 2

# Number of full label periods inspected past the last irregular label
# when deciding strict monotonicity of weights.
VERY_AMPLE_CHECK_PERIODS = 2

# Tier used for labels produced by fl when a chain has no family coloring.
DEFAULT_CHAIN_TIER = 0

# Bare document names given on the command line are also looked up in the fixture corpus.
FIXTURE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")
