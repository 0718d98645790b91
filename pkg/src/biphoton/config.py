# -*- coding: utf-8 -*-

"""User-level configuration for biphoton.

Tool defaults (quadrature tolerance, grid size and output directory) are looked up in this order:

1. The environment variables ``BIPHOTON_TOL``, ``BIPHOTON_GRID`` and ``BIPHOTON_OUT``
2. The ``[biphoton]`` section of ``~/.biphoton/biphoton.ini`` (or one of the other paths in
   :data:`CONFIG_FILE_PATHS`)
3. Built-in defaults
"""

import configparser
import logging
import os

from .version import VERSION

__all__ = [
    'config',
    'CONFIG_FILE_PATHS',
    'DEFAULT_TOL',
    'DEFAULT_GRID',
    'DEFAULT_OUT',
    'get_tol',
    'get_grid',
    'get_out',
]

logger = logging.getLogger(__name__)

config = {}

_CONFIG_DIRECTORY = os.path.join(os.path.expanduser('~'), '.biphoton')
CONFIG_FILE_PATHS = [
    os.path.join(_CONFIG_DIRECTORY, 'biphoton.ini'),
    os.path.join(_CONFIG_DIRECTORY, 'biphoton.cfg'),
    os.path.join(_CONFIG_DIRECTORY, 'config.ini'),
]
config_parser = configparser.ConfigParser()
config_parser.read(CONFIG_FILE_PATHS)
if 'biphoton' in config_parser:
    config.update(config_parser['biphoton'])
if VERSION.endswith('-dev') and 'biphoton-dev' in config_parser:
    config.update(config_parser['biphoton-dev'])

DEFAULT_TOL = 1e-10
DEFAULT_GRID = 1024
DEFAULT_OUT = os.curdir


def _lookup(key: str, default):
    env_key = 'BIPHOTON_{}'.format(key.upper())
    if env_key in os.environ:
        logger.debug('got environment-defined %s: %s', key, os.environ[env_key])
        return os.environ[env_key]
    if key in config:
        logger.debug('got configured %s: %s', key, config[key])
        return config[key]
    return default


def get_tol() -> float:
    """Get the default relative tolerance of the adaptive quadrature in the numeric single-particle spectrum.

    The exit-face grids use a fixed panel rule and do not take a tolerance.
    """
    return float(_lookup('tol', DEFAULT_TOL))


def get_grid() -> int:
    """Get the default number of samples per axis for two-dimensional grids."""
    return int(_lookup('grid', DEFAULT_GRID))


def get_out() -> str:
    """Get the default output directory."""
    return str(_lookup('out', DEFAULT_OUT))
