"""
Shared configuration for the Galilean motions tools.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Scalar backend used when a caller does not choose one
DEFAULT_SCALAR = os.getenv("GALILEAN_SCALAR", "float")

# Verification defaults
DEFAULT_SEED = int(os.getenv("GALILEAN_SEED", "42"))
DEFAULT_TRIALS = int(os.getenv("GALILEAN_TRIALS", "1000"))

# Float-mode tolerances
EPS_INV = float(os.getenv("GALILEAN_EPS_INV", "1e-12"))
EPS_MATRIX = float(os.getenv("GALILEAN_EPS_MATRIX", "1e-9"))
EPS_DIST = float(os.getenv("GALILEAN_EPS_DIST", "1e-12"))
EPS_POINT = float(os.getenv("GALILEAN_EPS_POINT", "1e-9"))

LOG_LEVEL = os.getenv("GALILEAN_LOG_LEVEL", "INFO")

# Paths
PROJECT_ROOT = Path(__file__).parent.parent
OUTPUTS_DIR = PROJECT_ROOT / "outputs"


def ensure_outputs_dir() -> Path:
    """Create the outputs directory on first use and return it."""
    OUTPUTS_DIR.mkdir(exist_ok=True)
    return OUTPUTS_DIR


# Canonical basis orderings (fixed for all serialization)
D2_BASIS = ("1", "i1", "i2", "i1i2")
GRASSMANN_BASIS = ("1", "e1", "e2", "e1e2")
CL3_BASIS = ("1", "e1", "e2", "e3", "e1e2", "e1e3", "e2e3", "e1e2e3")

# The six exact representations
REPRESENTATIONS = [
    "Std3x3",
    "Ortho3x3D2",
    "SuD2",
    "UpperDual",
    "ConvenientDual",
    "Grassmann",
]

# Figure data columns (sphere point, its image, both projections)
FIGURE_COLUMNS = [
    "y",
    "z",
    "y_image",
    "z_image",
    "eta_y",
    "eta_z",
    "eta_y_image",
    "eta_z_image",
]

# Random sampling ranges for the property suites
SAMPLE_RANGE = 5
SAMPLE_DENOMINATOR = 12
