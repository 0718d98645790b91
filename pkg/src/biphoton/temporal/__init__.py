# -*- coding: utf-8 -*-

"""The two-time wave function of the photon pair at the exit face of the crystal.

All times are shifted: zero is the moment a photon born with the pump peak at the entrance face, travelling at its
group velocity, reaches the exit face.

>>> from biphoton.params import read_config
>>> from biphoton.constants import BASELINE_CONFIG_PATH
>>> from biphoton.temporal import single_duration_analytic
>>> cfg = read_config(BASELINE_CONFIG_PATH)
>>> round(single_duration_analytic(cfg) * 1e12, 3)  # ps
2.835
"""

from .approximations import (
    ERF, EXP, REGION_I, REGION_II, REGION_III, coincidence_width_analytic, front_wing_analytic, psi_exit_erf,
    psi_exit_exp, region_crossing, region_of, region_one_half_width, region_three_scale, region_three_width,
    region_two_half_width, single_duration_analytic, zero_plus_width,
)
from .exit_face import (
    EXACT, ExitFaceRule, LongPulsePacket, TemporalPacket, default_axis, exit_face_rule, long_pulse_packet,
    phase_coefficient, psi_exit, psi_exit_points, psi_exit_table, pump_overlap, temporal_packet,
)
from .localization import LocalizationBoundary, localization_boundaries, t_minus_profile, zero_plus_width_measured
from .long_pulse import (
    RT_MIN_ETA, RtParameters, coincidence_width_long_pulse, factorized_packet, long_pulse_factor, long_pulse_profile,
    pump_envelope, rt_parameter,
)
from .signals import coincidence_signal, coincidence_window, diagonal_profile, single_particle_signal

__all__ = [
    'EXACT',
    'ERF',
    'EXP',
    'REGION_I',
    'REGION_II',
    'REGION_III',
    'TemporalPacket',
    'LongPulsePacket',
    'ExitFaceRule',
    'LocalizationBoundary',
    'RtParameters',
    'RT_MIN_ETA',
    'exit_face_rule',
    'pump_overlap',
    'phase_coefficient',
    'psi_exit',
    'psi_exit_points',
    'psi_exit_table',
    'psi_exit_erf',
    'psi_exit_exp',
    'default_axis',
    'temporal_packet',
    'long_pulse_packet',
    'diagonal_profile',
    'coincidence_window',
    'coincidence_signal',
    'single_particle_signal',
    't_minus_profile',
    'zero_plus_width_measured',
    'localization_boundaries',
    'coincidence_width_analytic',
    'single_duration_analytic',
    'region_one_half_width',
    'region_two_half_width',
    'region_crossing',
    'region_of',
    'zero_plus_width',
    'front_wing_analytic',
    'region_three_scale',
    'region_three_width',
    'long_pulse_factor',
    'long_pulse_profile',
    'pump_envelope',
    'factorized_packet',
    'coincidence_width_long_pulse',
    'rt_parameter',
]
