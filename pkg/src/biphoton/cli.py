# -*- coding: utf-8 -*-

"""Command line interface for biphoton.

Why does this file exist, and why not put this in ``__main__``? You might be tempted to import things from ``__main__``
later, but that will cause problems--the code will get executed twice:

- When you run ``python3 -m biphoton`` python will execute ``__main__.py`` as a script. That means there won't be any
  ``biphoton.__main__`` in ``sys.modules``.
- When you import __main__ it will get executed again (as a module) because
  there's no ``biphoton.__main__`` in ``sys.modules``.

Every command reads the physical configuration and all of its own options before writing anything. Failures exit
with a code naming their family:

====  ==========================================
Code  Meaning
====  ==========================================
0     success
2     configuration or invalid input
3     numerical failure
4     a quantity refused outside of its regime
5     output could not be written
====  ==========================================

.. seealso:: http://click.pocoo.org/5/setuptools/#setuptools-integration
"""

import logging
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

import click
import numpy as np
from click_plugins import with_plugins
from pkg_resources import iter_entry_points
from tqdm import tqdm

from .config import get_grid, get_out, get_tol
from .constants import BASELINE_CONFIG_PATH
from .exceptions import (
    AnalyticOutOfRegime, ConfigError, EmitError, InvalidParameterError, OutOfBranch, RegimeError, RegionMismatch,
    ShortPulseRegime,
)
from .io import Matrix, RunManifest, emit, ensure_directory, output_path, table
from .numerics import NumericsError
from .params import PhysicalConfig, angular_parameters, parse_quantity, read_config, tau_for_eta, with_tau
from .schmidt import SchmidtGridSpec, entanglement_report, k_analytic, schmidt_integral4d, schmidt_svd
from .spectral import (
    WAVELENGTH, Axis, coincidence_spectrum, pump_spectrum, r_minimum,
    single_particle_spectrum, wavelength_to_detuning,
)
from .temporal import (
    RT_MIN_ETA, coincidence_signal, coincidence_width_analytic, diagonal_profile, front_wing_analytic,
    localization_boundaries, long_pulse_packet, long_pulse_profile, region_crossing, rt_parameter,
    single_duration_analytic, single_particle_signal, temporal_packet, zero_plus_width_measured,
)

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICS = 3
EXIT_REGIME = 4
EXIT_OUTPUT = 5

SCAN_COLUMNS = ['eta', 'tau', 'R_short', 'R_long', 'R_interp', 'K_short', 'K_long', 'K_interp', 'KR_ratio']

#: Signal level that counts as the plateau of the single-particle signal
PLATEAU_LEVEL = 0.9


@dataclass
class Settings:
    """Global options shared by every command."""

    config_path: str
    out: str
    grid: int
    tol: float


def _fail(stage: str, error: Exception, code: int):
    click.secho('{} failed: {}'.format(stage, error), fg='red', bold=True)
    sys.exit(code)


@contextmanager
def _stage(name: str):
    """Turn biphoton errors raised in a stage into a message and an exit code."""
    try:
        yield
    except (ConfigError, InvalidParameterError, OutOfBranch) as e:
        _fail(name, e, EXIT_CONFIG)
    except NumericsError as e:
        _fail(name, e, EXIT_NUMERICS)
    except RegimeError as e:
        _fail(name, e, EXIT_REGIME)
    except (EmitError, OSError) as e:
        _fail(name, e, EXIT_OUTPUT)


def _load(settings: Settings, tau: Optional[str] = None) -> PhysicalConfig:
    cfg = read_config(settings.config_path)
    if tau is not None:
        cfg = with_tau(cfg, parse_quantity(tau, 'time'))
    if settings.grid < 16:
        raise InvalidParameterError('grid', settings.grid, 'must be at least 16')
    if not settings.tol > 0:
        raise InvalidParameterError('tol', settings.tol)
    return cfg


def _finish(manifest: RunManifest, start: float, settings: Settings, name: str, payload) -> None:
    manifest.duration = time.time() - start
    emit(payload, output_path(settings.out, name), fmt='json', manifest=manifest)


tau_option = click.option('--tau', help='Override the pump duration, e.g. 2ps')
verbose_option = click.option('-v', '--verbose', is_flag=True, help='Log debugging output')


def _set_verbose(verbose: bool) -> None:
    if verbose:
        logging.basicConfig(level=logging.DEBUG)
        logging.getLogger('biphoton').setLevel(logging.DEBUG)


@with_plugins(iter_entry_points('biphoton.cli_plugins'))
@click.group(help='Biphoton CLI on {}'.format(sys.executable))
@click.version_option()
@click.option('--config', 'config_path', default=BASELINE_CONFIG_PATH, show_default=True,
              help='Physical configuration file')
@click.option('--out', default=get_out(), show_default=True, help='Output directory')
@click.option('--grid', type=int, default=get_grid(), show_default=True, help='Samples per axis of 2D grids')
@click.option('--tol', type=float, default=get_tol(), show_default=True,
              help='Tolerance of the adaptive quadrature in the numeric single-particle spectrum')
@click.pass_context
def main(ctx, config_path, out, grid, tol):
    """Command line interface for biphoton."""
    ctx.obj = Settings(config_path=config_path, out=out, grid=grid, tol=tol)


@main.command()
@click.option('--lambda2', default='800nm', show_default=True, help='Wavelength at which photon 2 is detected')
@tau_option
@verbose_option
@click.pass_obj
def spectrum(settings: Settings, lambda2, tau, verbose):
    """Write coincidence, single-particle and pump spectra."""
    _set_verbose(verbose)
    start = time.time()
    with _stage('configuration'):
        cfg = _load(settings, tau)
        wavelength = parse_quantity(lambda2, 'length')
        nu2 = float(wavelength_to_detuning(wavelength, cfg))

    with _stage('spectrum'):
        coincidence = coincidence_spectrum(nu2, cfg, axis=WAVELENGTH)
        pump = pump_spectrum(cfg, axis=WAVELENGTH, nu2=nu2)
        single = single_particle_spectrum(cfg, axis=WAVELENGTH, tol=settings.tol)
        try:
            single_analytic = single_particle_spectrum(cfg, method='analytic', axis=WAVELENGTH)
        except AnalyticOutOfRegime as e:
            logger.info('skipping analytic single-particle spectrum: %s', e)
            single_analytic = None

    manifest = RunManifest.for_config('spectrum', cfg, lambda2=wavelength, tau=tau)
    summary = {
        'lambda2': wavelength,
        'nu2': nu2,
        'eta': cfg.eta,
        'coincidence_fwhm': coincidence.width.width,
        'coincidence_peak': coincidence.width.peak_x,
        'pump_fwhm': pump.width.width,
        'pump_to_coincidence': pump.width.width / coincidence.width.width,
        'single_fwhm': single.width.width,
        'single_fwhm_analytic': single_analytic.width.width if single_analytic is not None else None,
        'units': 'm',
    }
    with _stage('output'):
        ensure_directory(settings.out)
        emit(coincidence, output_path(settings.out, 'spectrum_coincidence.csv'), manifest=manifest)
        emit(pump, output_path(settings.out, 'spectrum_pump.csv'), manifest=manifest)
        emit(single, output_path(settings.out, 'spectrum_single.csv'), manifest=manifest)
        if single_analytic is not None:
            emit(single_analytic, output_path(settings.out, 'spectrum_single_analytic.csv'), manifest=manifest)
        _finish(manifest, start, settings, 'spectrum_summary.json', summary)
    click.echo('coincidence FWHM: {:.4g} nm'.format(coincidence.width.width * 1e9))


@main.command()
@click.option('--eta-min', type=float, default=0.1, show_default=True)
@click.option('--eta-max', type=float, default=10.0, show_default=True)
@click.option('--count', type=int, default=50, show_default=True, help='Number of log-spaced eta values')
@click.option('--svd', is_flag=True, help='Add the Schmidt number from singular values (slow)')
@click.option('--max-points', type=int, default=4096, show_default=True, help='Largest Schmidt grid')
@verbose_option
@click.pass_obj
def scan(settings: Settings, eta_min, eta_max, count, svd, max_points, verbose):
    """Scan the width ratio R and the Schmidt number K over the pulse duration."""
    _set_verbose(verbose)
    start = time.time()
    with _stage('configuration'):
        cfg = _load(settings)
        if not 0 < eta_min < eta_max:
            raise InvalidParameterError('eta range', (eta_min, eta_max), 'must satisfy 0 < eta-min < eta-max')
        if count < 2:
            raise InvalidParameterError('count', count, 'must be at least 2')

    columns = SCAN_COLUMNS + (['K_svd'] if svd else [])
    etas = np.logspace(np.log10(eta_min), np.log10(eta_max), count)
    rows = []
    with _stage('scan'):
        for eta in tqdm(etas, desc='eta scan', disable=verbose or not svd):
            scanned = with_tau(cfg, tau_for_eta(float(eta), cfg))
            report = entanglement_report(scanned, numeric=svd, spec=SchmidtGridSpec(max_points=max_points))
            row = dict(report.to_dict(), tau=scanned.tau)
            if svd:
                row['K_svd'] = report.K_numeric
            rows.append(row)
        eta0, r_min = r_minimum(cfg)

    frame = table(rows, columns)
    best = int(np.argmin(frame['R_interp'].to_numpy()))
    summary = {
        'eta_at_min_R': float(frame['eta'][best]),
        'min_R': float(frame['R_interp'][best]),
        'eta_at_min_R_closed_form': eta0,
        'min_R_closed_form': r_min,
    }
    manifest = RunManifest.for_config('scan', cfg, eta_min=eta_min, eta_max=eta_max, count=count, svd=svd)
    with _stage('output'):
        ensure_directory(settings.out)
        emit(frame, output_path(settings.out, 'scan.csv'), manifest=manifest)
        _finish(manifest, start, settings, 'scan_summary.json', summary)
    click.echo('minimum R = {:.4g} at eta = {:.4g}'.format(summary['min_R'], summary['eta_at_min_R']))


@main.command()
@tau_option
@click.option('--max-points', type=int, default=4096, show_default=True, help='Largest Schmidt grid')
@verbose_option
@click.pass_obj
def schmidt(settings: Settings, tau, max_points, verbose):
    """Compute the Schmidt number by SVD, by the overlap integral and in closed form."""
    _set_verbose(verbose)
    start = time.time()
    with _stage('configuration'):
        cfg = _load(settings, tau)

    with _stage('schmidt'):
        svd = schmidt_svd(cfg, spec=SchmidtGridSpec(max_points=max_points), use_tqdm=not verbose)
        shared = SchmidtGridSpec(half_width=svd.half_width, points=svd.points, refine=False)
        integral = schmidt_integral4d(cfg, spec=shared)
        analytic = k_analytic(cfg)

    summary = {
        'eta': cfg.eta,
        'K_svd': svd.K,
        'K_integral4d': integral.K,
        'K_short': analytic.K_short,
        'K_long': analytic.K_long,
        'K_interp': analytic.K_interp,
        'points': svd.points,
        'half_width': svd.half_width,
        'trace': [[n, k] for n, k in svd.trace],
    }
    coefficients = table(
        [{'mode': i, 'probability': p} for i, p in enumerate(svd.coeffs)],
        ['mode', 'probability'],
    )
    manifest = RunManifest.for_config('schmidt', cfg, tau=tau, max_points=max_points)
    with _stage('output'):
        ensure_directory(settings.out)
        emit(coefficients, output_path(settings.out, 'schmidt_coefficients.csv'), manifest=manifest)
        _finish(manifest, start, settings, 'schmidt.json', summary)
    click.echo('K = {:.4g} (svd), {:.4g} (overlap)'.format(svd.K, integral.K))


def _plateau(curve):
    above = np.flatnonzero(curve.ys >= PLATEAU_LEVEL)
    return float(curve.xs[above[0]]), float(curve.xs[above[-1]])


@main.command()
@click.option('--t2', 't2_values', multiple=True, help='Photon 2 time of a coincidence slice, e.g. 1.5ps')
@click.option('--rt', is_flag=True, help='Require the temporal width ratio (long pulses only)')
@click.option('--rt-min-eta', type=float, default=RT_MIN_ETA, show_default=True,
              help='Smallest eta at which the temporal width ratio is reported')
@click.option('--localization-samples', type=int, default=57, show_default=True)
@tau_option
@verbose_option
@click.pass_obj
def temporal(settings: Settings, t2_values, rt, rt_min_eta, localization_samples, tau, verbose):
    """Write the exit-face two-time wave function and the signals read off it."""
    _set_verbose(verbose)
    start = time.time()
    with _stage('configuration'):
        cfg = _load(settings, tau)
        t2s = [parse_quantity(value, 'time') for value in t2_values]
        if localization_samples < 2:
            raise InvalidParameterError('localization-samples', localization_samples, 'must be at least 2')

    eta = cfg.eta
    short = eta < 1
    walk_off = single_duration_analytic(cfg)
    if not t2s:
        t2s = [0.0, walk_off / 2, walk_off] if short else [walk_off / 2]

    summary = {'eta': eta, 'single_duration_analytic': walk_off}
    with _stage('temporal'):
        if rt:
            summary.update(rt_parameter(cfg, min_eta=rt_min_eta)._asdict())
        elif not short:
            try:
                summary.update(rt_parameter(cfg, min_eta=rt_min_eta)._asdict())
            except ShortPulseRegime as e:
                logger.warning('%s, R_t omitted', e)

        use_tqdm = not verbose
        packet = temporal_packet(cfg, points=settings.grid, use_tqdm=use_tqdm)
        diagonal = diagonal_profile(cfg, window=Axis(
            center=(packet.t1s[0] + packet.t1s[-1]) / 2,
            half_width=(packet.t1s[-1] - packet.t1s[0]) / 2,
            points=settings.grid,
        ))
        single = single_particle_signal(cfg, packet=packet)
        coincidences = [coincidence_signal(t2, cfg) for t2 in t2s]
        factor = long_pulse_profile(cfg)

        plateau_start, plateau_end = _plateau(single)
        summary.update(
            peak_time=diagonal.width.peak_x,
            single_fwhm=single.width.width,
            plateau_start=plateau_start,
            plateau_end=plateau_end,
            long_pulse_fwhm_tau0=factor.width.width,
        )
        for i, (t2, curve) in enumerate(zip(t2s, coincidences)):
            summary['coincidence_t2_{}'.format(i)] = t2
            summary['coincidence_fwhm_{}'.format(i)] = curve.width.width
            try:
                summary['coincidence_fwhm_analytic_{}'.format(i)] = coincidence_width_analytic(t2, cfg)
            except RegionMismatch:
                summary['coincidence_fwhm_analytic_{}'.format(i)] = None

        if short:
            boundaries = localization_boundaries(
                cfg,
                t_plus_samples=np.linspace(0.0, walk_off + 2 * cfg.tau, localization_samples),
                use_tqdm=use_tqdm,
            )
            summary.update(
                front_wing=zero_plus_width_measured(cfg),
                front_wing_analytic=front_wing_analytic(cfg),
                region_crossing=region_crossing(cfg),
            )
            grid = Matrix(packet.t1s, packet.t2s, packet.intensity(), row_label='t1', column_label='t2')
        else:
            boundaries = None
            rotated = long_pulse_packet(cfg, points=settings.grid)
            grid = Matrix(rotated.t_plus, rotated.t_minus, rotated.intensity(), row_label='t_plus',
                          column_label='t_minus')

    manifest = RunManifest.for_config('temporal', cfg, tau=tau, t2=t2s, grid=settings.grid, rt_min_eta=rt_min_eta)
    with _stage('output'):
        ensure_directory(settings.out)
        emit(grid, output_path(settings.out, 'temporal_grid.csv'), meta={'y': 'intensity'}, manifest=manifest)
        emit(diagonal, output_path(settings.out, 'temporal_diagonal.csv'), manifest=manifest)
        emit(single, output_path(settings.out, 'temporal_single.csv'), manifest=manifest)
        for i, curve in enumerate(coincidences):
            emit(curve, output_path(settings.out, 'temporal_coincidence_{}.csv'.format(i)), manifest=manifest)
        emit(factor, output_path(settings.out, 'temporal_long_pulse_factor.csv'), manifest=manifest)
        if boundaries is not None:
            frame = table(
                [
                    {
                        't_plus': t, 't_minus_upper': up, 't_minus_lower': low, 'region': tag,
                        'region_one': one, 'region_two': two, 'region_three': three,
                    }
                    for t, up, low, tag, one, two, three in zip(
                        boundaries.t_plus, boundaries.t_minus_upper, boundaries.t_minus_lower,
                        boundaries.region_tags, boundaries.region_one, boundaries.region_two,
                        boundaries.region_three,
                    )
                ],
                ['t_plus', 't_minus_upper', 't_minus_lower', 'region', 'region_one', 'region_two', 'region_three'],
            )
            emit(frame, output_path(settings.out, 'temporal_localization.csv'), manifest=manifest)
        _finish(manifest, start, settings, 'temporal_summary.json', summary)
    click.echo('single-particle signal FWHM: {:.4g} ps'.format(single.width.width * 1e12))


@main.command()
@click.option('--np', 'n_p', type=float, required=True, help='Pump refractive index')
@click.option('--np-prime', 'n_p_prime', type=float, required=True, help='Angular derivative of the pump index')
@click.option('--alpha0', required=True, help='Pump angular divergence [rad]')
@verbose_option
@click.pass_obj
def angular(settings: Settings, n_p, n_p_prime, alpha0, verbose):
    """Write the angular-entanglement constants of the parallel geometry."""
    _set_verbose(verbose)
    start = time.time()
    with _stage('configuration'):
        cfg = _load(settings)
        divergence = parse_quantity(alpha0, 'dimensionless')
        if n_p_prime < 0:
            raise InvalidParameterError('np-prime', n_p_prime, 'must not be negative')
        parameters = angular_parameters(cfg, n_p, n_p_prime, divergence)

    manifest = RunManifest.for_config('angular', cfg, np=n_p, np_prime=n_p_prime, alpha0=divergence)
    with _stage('output'):
        ensure_directory(settings.out)
        _finish(manifest, start, settings, 'angular.json', parameters)
    click.echo('R_min (angular) = {:.4g}'.format(parameters.R_min_angular))


if __name__ == '__main__':
    main()
