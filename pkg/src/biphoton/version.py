# -*- coding: utf-8 -*-

"""Version information for biphoton and the numerical stack that produced a result.

Run manifests record both, since the last digits of a sampled curve depend on the NumPy and SciPy builds as well as
on biphoton itself.
"""

from typing import Dict

import numpy as np
import pandas as pd
import scipy

__all__ = [
    'VERSION',
    'get_version',
    'get_stack_versions',
]

VERSION = '0.1.0-dev'


def get_version() -> str:
    """Get the current biphoton software version."""
    return VERSION


def get_stack_versions() -> Dict[str, str]:
    """Get the versions of biphoton and of the packages its numbers are computed and written with."""
    return {
        'biphoton': VERSION,
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
    }
