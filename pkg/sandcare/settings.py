import logging
import os.path
import sys

import sandcare

config_file = None

# the root directory of the project
PROJECT_PATH = os.path.dirname(sandcare.__file__)

# the templates directory
TEMPLATE_PATH = os.path.join(PROJECT_PATH, 'templates')

# the shipped scenario files
SCENARIO_PATH = os.path.join(PROJECT_PATH, 'scenarios')

# path to the directory where log files go
for d in ['/var/log', '/tmp', '/var/tmp']:
    if os.path.exists(d) and os.access(d, os.W_OK):
        LOG_PATH = d
        break

else:
    LOG_PATH = os.path.dirname(sys.executable)

# the log level (use FATAL, ERROR, WARNING, INFO or DEBUG)
LOG_LEVEL = logging.INFO

# default output file (None writes to standard output)
OUTPUT_PATH = None

# maximum number of topplings in a single cascade before giving up
TOPPLE_CAP = 1000000

# maximum number of single-patient moves in a standard redistribution pass
MOVE_CAP = 1000000

# a node is critical when it holds at least (threshold - margin) patients
CRITICAL_MARGIN = 2

# the wider near-saturation band used when displaying configurations
DISPLAY_MARGIN = 3

# pixels per grid cell in raster images
RENDER_SCALE = 1

# lower edges of the yellow, magenta, red and black colour bands
COLOR_BAND_EDGES = '1,3,4,6'

# number of scenarios run concurrently by the batch command
BATCH_WORKERS = 4
