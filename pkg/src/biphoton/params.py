# -*- coding: utf-8 -*-

"""Physical configuration of a pulsed-pump type-I down-conversion source.

A :class:`PhysicalConfig` holds the crystal constants ``A`` (temporal walk-off) and ``B`` (dispersion), the crystal
length ``L``, the pump central wavelength ``lambda0`` and the pump pulse duration ``tau``. Every length is in
meters, every duration in seconds and every frequency in rad/s. Unit suffixes are accepted only at the boundary, by
:func:`parse_quantity` and :func:`read_config`.

>>> from biphoton.params import PhysicalConfig, derive
>>> cfg = PhysicalConfig(A=0.17, B=0.069, L=0.005, lambda0=400e-9, tau=50e-15)
>>> round(derive(cfg).eta, 4)
0.0353
"""

import configparser
import dataclasses
import logging
import math
import os
import re
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Union

from .constants import CONFIG_KEYS, LENGTH_UNITS, LN2, SPEED_OF_LIGHT, TIME_UNITS
from .exceptions import ConfigError, InvalidParameterError, UnitParseError

__all__ = [
    'PhysicalConfig',
    'DerivedConstants',
    'AngularParameters',
    'derive',
    'angular_parameters',
    'tau_for_eta',
    'with_tau',
    'parse_quantity',
    'from_mapping',
    'read_config',
]

logger = logging.getLogger(__name__)

_QUANTITY_RE = re.compile(r'^\s*(?P<number>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?P<unit>[a-zA-Zµ]*)\s*$')


@dataclass(frozen=True)
class PhysicalConfig:
    """Crystal and pump parameters, in SI units."""

    #: Dimensionless temporal walk-off constant
    A: float
    #: Dimensionless dispersion constant
    B: float
    #: Crystal length [m]
    L: float
    #: Pump central wavelength [m]
    lambda0: float
    #: Pump pulse duration [s]
    tau: float
    #: Speed of light [m/s]
    c: float = field(default=SPEED_OF_LIGHT, init=False)

    def __post_init__(self):
        for name in ('A', 'B', 'L', 'lambda0', 'tau'):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise InvalidParameterError(name, value)

    @property
    def omega0(self) -> float:
        """The pump central angular frequency [rad/s]."""
        return 2 * math.pi * self.c / self.lambda0

    @property
    def eta(self) -> float:
        """The dimensionless pulse duration."""
        return derive(self).eta


@dataclass(frozen=True)
class DerivedConstants:
    """Scalar constants derived from a :class:`PhysicalConfig`."""

    #: Pump central angular frequency [rad/s]
    omega0: float
    #: Dimensionless pulse duration separating short (eta << 1) from long (eta >> 1) pulses
    eta: float
    #: Dimensionless constant controlling the exit-face localization
    a_const: float
    #: Long-pulse photon correlation time [s], independent of the pump duration
    tau0: float


class AngularParameters(NamedTuple):
    """Angular counterparts of the walk-off and dispersion constants in the parallel geometry."""

    A_tilde: float
    B_tilde: float
    eta_tilde: float
    R_min_angular: float


def derive(config: PhysicalConfig) -> DerivedConstants:
    """Compute the derived scalar constants of a configuration.

    :param config: A physical configuration
    :return: omega0 = 2 pi c / lambda0, eta = 2 c tau / (A L),
        a = pi c tau A / (16 sqrt(2 ln 2) B lambda0) and tau0 = sqrt(8 B lambda0 L / pi) / c
    """
    c = config.c
    return DerivedConstants(
        omega0=2 * math.pi * c / config.lambda0,
        eta=2 * c * config.tau / (config.A * config.L),
        a_const=math.pi * c * config.tau * config.A / (16 * math.sqrt(2 * LN2) * config.B * config.lambda0),
        tau0=math.sqrt(8 * config.B * config.lambda0 * config.L / math.pi) / c,
    )


def angular_parameters(config: PhysicalConfig, n_p: float, n_p_prime: float, alpha0: float) -> AngularParameters:
    """Compute the angular-entanglement constants for a pump of angular divergence ``alpha0``.

    :param config: A physical configuration. Only ``L`` and ``lambda0`` are used.
    :param n_p: The pump refractive index
    :param n_p_prime: The angular derivative of the pump refractive index
    :param alpha0: The pump angular divergence [rad]
    :raises InvalidParameterError: if ``n_p`` or ``alpha0`` is not positive
    """
    if not n_p > 0:
        raise InvalidParameterError('np', n_p)
    if not alpha0 > 0:
        raise InvalidParameterError('alpha0', alpha0)

    c, lambda0, length = config.c, config.lambda0, config.L
    if n_p_prime == 0:
        eta_tilde = math.inf
    else:
        eta_tilde = 4 * LN2 * lambda0 * n_p / (math.pi * alpha0 * length * n_p_prime)

    return AngularParameters(
        A_tilde=math.pi * c * n_p_prime / (lambda0 * n_p),
        B_tilde=math.pi ** 2 * c ** 2 / (2 * n_p * lambda0),
        eta_tilde=eta_tilde,
        R_min_angular=n_p_prime * math.sqrt(2 * length / (n_p * lambda0)),
    )


def tau_for_eta(eta: float, config: PhysicalConfig) -> float:
    """Get the pump duration [s] that gives the requested ``eta`` on the crystal of ``config``."""
    if not eta > 0:
        raise InvalidParameterError('eta', eta)
    return eta * config.A * config.L / (2 * config.c)


def with_tau(config: PhysicalConfig, tau: float) -> PhysicalConfig:
    """Get a copy of the configuration with a different pump duration."""
    return dataclasses.replace(config, tau=tau)


def parse_quantity(text: Union[str, float, int], kind: str) -> float:
    """Parse a quantity with an optional unit suffix into SI units.

    :param text: A string like ``"50 fs"``, ``"0.5cm"`` or ``"1.2e-12"``, or a plain number
    :param kind: One of ``time``, ``length`` or ``dimensionless``
    :raises UnitParseError: if the number can not be read or the suffix does not belong to ``kind``

    >>> parse_quantity('0.5 cm', 'length')
    0.005
    """
    if isinstance(text, (int, float)):
        return float(text)

    match = _QUANTITY_RE.match(text)
    if match is None:
        raise UnitParseError(text, kind)

    number = float(match.group('number'))
    unit = match.group('unit').replace('µ', 'u')
    if not unit:
        return number

    if kind == 'time':
        table = TIME_UNITS
    elif kind == 'length':
        table = LENGTH_UNITS
    else:
        raise UnitParseError(text, kind)

    if unit not in table:
        raise UnitParseError(text, kind)
    return number * table[unit]


def from_mapping(data: Mapping[str, str], path=None) -> PhysicalConfig:
    """Build a configuration from a mapping of keys to (possibly suffixed) values.

    :raises ConfigError: on unknown or missing keys
    :raises InvalidParameterError: if a value violates its invariant
    """
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError('unknown keys: {}'.format(', '.join(unknown)), path=path)

    missing = [key for key in CONFIG_KEYS if key not in data]
    if missing:
        raise ConfigError('missing keys: {}'.format(', '.join(missing)), path=path)

    values = {
        key: parse_quantity(data[key], kind)
        for key, kind in CONFIG_KEYS.items()
    }
    return PhysicalConfig(**values)


def read_config(path: str) -> PhysicalConfig:
    """Read a flat ``key = value`` configuration file.

    :param path: Path to a UTF-8 file with one of each of ``A``, ``B``, ``L``, ``lambda0`` and ``tau``.
        Lines starting with ``#`` and trailing ``# ...`` comments are ignored.
    :raises ConfigError: if the file is missing, malformed or incomplete
    """
    if not os.path.isfile(path):
        raise ConfigError('configuration file does not exist', path=path)

    with open(path, encoding='utf-8') as file:
        text = file.read()

    parser = configparser.ConfigParser(
        delimiters=('=',),
        comment_prefixes=('#',),
        inline_comment_prefixes=('#',),
        interpolation=None,
    )
    parser.optionxform = str  # keys are case sensitive: A and B
    try:
        parser.read_string('[crystal]\n' + text, source=path)
    except configparser.Error as e:
        raise ConfigError('malformed configuration: {}'.format(e), path=path) from e

    config = from_mapping(dict(parser['crystal']), path=path)
    logger.debug('read %s from %s', config, path)
    return config
