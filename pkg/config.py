"""
Configuration module that loads environment variables.

Process-level settings only (where artifacts go, which scenario file to use
by default). Scenario parameters live in models.core.scenario_config.
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Artifact directories
OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'output')
CHARTS_DIR = os.getenv('CHARTS_DIR', 'charts')

# Scenario file used when --config is not given (empty = built-in defaults)
DEFAULT_CONFIG_PATH = os.getenv('DEFAULT_CONFIG_PATH', '')
