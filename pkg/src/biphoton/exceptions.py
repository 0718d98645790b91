# -*- coding: utf-8 -*-

"""This module contains base exceptions that are shared through the package.

Every exception also inherits from the closest builtin so callers that do not know about biphoton can still catch
them as :class:`ValueError`, :class:`OSError` and so on.
"""

from typing import Any, Optional

__all__ = [
    'BiphotonError',
    'InvalidParameterError',
    'ConfigError',
    'UnitParseError',
    'OutOfBranch',
    'RegimeError',
    'AnalyticOutOfRegime',
    'ShortPulseRegime',
    'ApproxOutOfDomain',
    'RegionMismatch',
    'EmitError',
]


class BiphotonError(Exception):
    """The base class for all biphoton errors."""


class InvalidParameterError(BiphotonError, ValueError):
    """Raised when a physical parameter violates its invariant."""

    def __init__(self, field: str, value: Any, requirement: str = 'must be positive'):
        super().__init__(field, value, requirement)
        self.field = field
        self.value = value
        self.requirement = requirement

    def __str__(self):
        return 'invalid {}={!r}: {}'.format(self.field, self.value, self.requirement)


class ConfigError(BiphotonError, ValueError):
    """Raised when a configuration file can not be read or is incomplete."""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message, path)
        self.message = message
        self.path = path

    def __str__(self):
        if self.path is None:
            return self.message
        return '{}: {}'.format(self.path, self.message)


class UnitParseError(ConfigError):
    """Raised when a quantity string has no number or an unknown unit suffix."""

    def __init__(self, text: str, kind: str):
        super().__init__('can not parse {!r} as a {} quantity'.format(text, kind))
        self.text = text
        self.kind = kind


class OutOfBranch(BiphotonError, ValueError):
    """Raised when the phase-matching quadratic has no real root for the requested detuning."""

    def __init__(self, nu2: float, radicand: float):
        super().__init__(nu2, radicand)
        self.nu2 = nu2
        self.radicand = radicand

    def __str__(self):
        return 'no phase-matched branch at nu2={:.6g} rad/s (radicand {:.6g})'.format(self.nu2, self.radicand)


class RegimeError(BiphotonError, ValueError):
    """The base class for refusals to evaluate a formula outside of the regime where it holds."""


class AnalyticOutOfRegime(RegimeError):
    """Raised when a closed-form spectrum is requested at a pulse duration where neither asymptote holds."""

    def __init__(self, eta: float, low: float, high: float):
        super().__init__(eta, low, high)
        self.eta = eta
        self.low = low
        self.high = high

    def __str__(self):
        return 'no closed form for eta={:.4g}: use method=numeric for {} < eta < {}'.format(
            self.eta, self.low, self.high,
        )


class ShortPulseRegime(RegimeError):
    """Raised when a long-pulse quantity is requested for a short pump pulse."""

    def __init__(self, eta: float, minimum: float):
        super().__init__(eta, minimum)
        self.eta = eta
        self.minimum = minimum

    def __str__(self):
        return 'temporal R_t is defined for long pulses only: eta={:.4g} < {}'.format(self.eta, self.minimum)


class ApproxOutOfDomain(RegimeError):
    """Raised when an approximate exit-face form is evaluated where its criterion fails."""

    def __init__(self, method: str, t_plus: float, reason: str):
        super().__init__(method, t_plus, reason)
        self.method = method
        self.t_plus = t_plus
        self.reason = reason

    def __str__(self):
        return '{} form not valid at t+={:.6g} s: {}'.format(self.method, self.t_plus, self.reason)


class RegionMismatch(RegimeError):
    """Raised when a localization-region formula is evaluated outside of its region."""

    def __init__(self, region: str, t: float):
        super().__init__(region, t)
        self.region = region
        self.t = t

    def __str__(self):
        return 't={:.6g} s is outside of region {}'.format(self.t, self.region)


class EmitError(BiphotonError, OSError):
    """Raised when a curve, grid or report can not be written."""

    def __init__(self, path: str, reason: str):
        super().__init__(path, reason)
        self.path = path
        self.reason = reason

    def __str__(self):
        return 'could not write {}: {}'.format(self.path, self.reason)
