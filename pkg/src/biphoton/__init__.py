# -*- coding: utf-8 -*-

"""Spectral, Schmidt and temporal analysis of photon pairs from pulsed type-I down-conversion."""

from .exceptions import BiphotonError
from .io import RunManifest, emit
from .params import PhysicalConfig, derive, read_config, with_tau
from .schmidt import entanglement_report, k_analytic, schmidt_svd
from .spectral import coincidence_spectrum, pump_spectrum, r_parameter, single_particle_spectrum
from .temporal import psi_exit, temporal_packet
from .version import get_version
