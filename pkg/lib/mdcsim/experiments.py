# experiments.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

"""Experiment drivers behind the command line.

Each driver takes an ExperimentConfig and returns Tables; writing them is
up to the caller. Sweep points may run in worker processes; rows always
come back in sweep order.
"""

import logging

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool

import numpy as np

from mdcsim.blocksim import (SimConfig, empirical_statistics, evaluate_design,
                             simulate_blocks)
from mdcsim.channel import approximation_report
from mdcsim.coding import multilevel_average_rate, rate_outage_curve
from mdcsim.config.config import check_sweep
from mdcsim.config.output import Table
from mdcsim.design import EC_RO, design_scheme
from mdcsim.exceptions import InfeasibleDesignError, SimulationError
from mdcsim.log_util import timed
from mdcsim.str_util import code_name, int_set

log = logging.getLogger(__name__)

PMF_HEADER = ('path', 'epsilon', 'x', 'probability')
APPROX_HEADER = ('path', 'epsilon', 'T', 'L', 'cond1', 'cond2',
                 'mass_at_endpoints', 'gap')
FRACTIONS_HEADER = ('scheme', 'k', 'fraction')
SUMMARY_HEADER = ('scheme', 'status', 'n', 'k_min', 'support_size',
                  'baseline', 'baseline_rate', 'rate_analytic', 'support')
RATE_OUTAGE_HEADER = ('scheme', 'T', 'delay_ms', 'k', 'rate', 'outage')
T_SWEEP_HEADER = ('scheme', 'T', 'delay_ms', 'k', 'rate', 'outage',
                  'rate_stderr', 'rate_analytic', 'outage_analytic',
                  'support_size', 'selected', 'fallback')
STATS_HEADER = ('H', 'T', 'L', 'blocks', 'mean', 'stddev', 'mean_analytic',
                'stddev_analytic', 'endpoint_mass', 'endpoint_mass_analytic')
HISTOGRAM_HEADER = ('received', 'count', 'probability',
                    'probability_analytic')


def delay_ms(T, tti_seconds):
    return T * tti_seconds * 1000.0


def _map_points(fn, points, workers):
    """fn(*point) for every point, in order."""
    if workers <= 1 or len(points) <= 1:
        return [fn(*point) for point in points]
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, *zip(*points)))
    except BrokenProcessPool as ex:
        raise SimulationError("worker process died: %s" % ex)


def pmf_tables(cfg, aggregate=False):
    """Analytic PMFs per path (and of the total) at (T, L)."""
    channel = cfg.channel()
    pmf_table = Table('pmf', PMF_HEADER)
    approx_table = Table('approximation', APPROX_HEADER)
    for j, (path, pmf) in enumerate(zip(channel.paths, channel.path_pmfs())):
        for x, p in enumerate(pmf):
            pmf_table.append((j + 1, path.epsilon, x, p))
        report = approximation_report(path.epsilon, channel.T, channel.L,
                                      cfg.approx_threshold)
        approx_table.append((j + 1, path.epsilon, channel.T, channel.L,
                             report.cond1, report.cond2,
                             report.mass_at_endpoints, report.gap))
    if aggregate:
        for x, p in enumerate(channel.aggregate_pmf()):
            pmf_table.append(('all', None, x, p))
    return pmf_table, approx_table


def build_designs(cfg, channel, pmf):
    """Design every configured scheme; infeasible ones map to the error."""
    designs = []
    for scheme in cfg.schemes:
        try:
            designs.append(design_scheme(scheme, pmf, channel.H, channel.T,
                                         cfg.gamma, cfg.mu,
                                         cfg.anchor_ratio))
        except InfeasibleDesignError as ex:
            log.warning("Skip %s at T=%d: %s", scheme, channel.T, ex)
            designs.append(ex)
    if all(isinstance(d, InfeasibleDesignError) for d in designs):
        raise InfeasibleDesignError("no scheme could be designed at T=%d"
                                    % channel.T)
    return designs


def _selected(sd):
    if sd.scheme == EC_RO:
        return code_name(sd.baseline.n, sd.baseline.k)
    return int_set(sd.design.support)


def _design_summary(cfg, channel, pmf, designs):
    fractions = Table('design', FRACTIONS_HEADER)
    summary = Table('design_summary', SUMMARY_HEADER)
    for scheme, sd in zip(cfg.schemes, designs):
        if isinstance(sd, InfeasibleDesignError):
            summary.append((scheme, 'infeasible', channel.HT, None, None,
                            None, None, None, None))
            continue
        for k, f in sorted(sd.design.fractions.items()):
            fractions.append((scheme, k, f))
        summary.append((scheme, 'ok', channel.HT, sd.k_min,
                        sd.design.code_count,
                        code_name(sd.baseline.n, sd.baseline.k),
                        sd.baseline.nominal_rate,
                        multilevel_average_rate(sd.design, pmf),
                        _selected(sd)))
    return fractions, summary


def design_tables(cfg):
    """Fractions and summaries of every scheme at (T, L)."""
    channel = cfg.channel()
    pmf = channel.aggregate_pmf()
    designs = build_designs(cfg, channel, pmf)
    return _design_summary(cfg, channel, pmf, designs)


def run_rate_outage(cfg):
    """Rate versus outage probability of every scheme at (T, L)."""
    channel = cfg.channel()
    pmf = channel.aggregate_pmf()
    curve = Table('rate_outage', RATE_OUTAGE_HEADER)
    delay = delay_ms(channel.T, cfg.tti_seconds)
    designs = build_designs(cfg, channel, pmf)
    for sd in designs:
        if isinstance(sd, InfeasibleDesignError):
            continue
        for point in rate_outage_curve(sd.design, pmf):
            curve.append((sd.scheme, channel.T, delay, point.k, point.rate,
                          point.outage))
    fractions, summary = _design_summary(cfg, channel, pmf, designs)
    return curve, fractions, summary


def _sim_config(cfg, channel, stream):
    return SimConfig(channel, cfg.total_slots, cfg.seed,
                     cfg.warmup_for(channel.L), cfg.replications,
                     cfg.poisson_counts, stream)


def _t_sweep_point(cfg, T, workers):
    channel = cfg.channel(T=T)
    pmf = channel.aggregate_pmf()
    designs = build_designs(cfg, channel, pmf)
    with timed(log, "t-sweep point T=%d", T):
        report = simulate_blocks(_sim_config(cfg, channel, (T,)), workers)
    rows = []
    delay = delay_ms(T, cfg.tti_seconds)
    for sd in designs:
        if isinstance(sd, InfeasibleDesignError):
            continue
        metrics = evaluate_design(report, sd.design, sd.k_min)
        fallback = sd.baseline.k == 1 and pmf.below(1) > cfg.gamma
        rows.append((sd.scheme, T, delay, metrics.k_min,
                     metrics.average_rate, metrics.outage_percentage,
                     metrics.rate_stderr,
                     multilevel_average_rate(sd.design, pmf),
                     100.0 * pmf.below(metrics.k_min),
                     sd.design.code_count, _selected(sd), fallback))
    return rows


def run_t_sweep(cfg):
    """Simulated and analytic rate and outage for every T of the sweep."""
    check_sweep(cfg.T_sweep, cfg.L)
    sweep = cfg.T_sweep
    if cfg.workers > 1 and len(sweep) > 1:
        points = [(cfg, T, 1) for T in sweep]
        workers = cfg.workers
    else:
        points = [(cfg, T, cfg.workers) for T in sweep]
        workers = 1
    table = Table('t_sweep', T_SWEEP_HEADER)
    for rows in _map_points(_t_sweep_point, points, workers):
        for row in rows:
            table.append(row)
    return table


def _stats_point(cfg, L, workers):
    channel = cfg.channel(L=L)
    report = simulate_blocks(_sim_config(cfg, channel, (L,)), workers)
    stats = empirical_statistics(report)
    analytic = channel.aggregate_pmf()
    T = channel.T
    if channel.H == 1:
        endpoint = stats.empirical_pmf.endpoint_mass(T)
        endpoint_analytic = analytic.endpoint_mass(T)
    else:
        endpoint = endpoint_analytic = None
    row = (channel.H, T, L, report.blocks, stats.mean_received,
           stats.stddev_received, analytic.mean, analytic.stddev,
           endpoint, endpoint_analytic)
    histogram = None
    if L in cfg.histogram_L:
        histogram = Table('histogram_L%d' % L, HISTOGRAM_HEADER)
        counts = np.bincount(report.per_block_received,
                             minlength=channel.HT + 1)
        for x, (p, q) in enumerate(zip(stats.empirical_pmf, analytic)):
            histogram.append((x, int(counts[x]), p, q))
    return row, histogram


def run_channel_stats(cfg):
    """Spread of the received count for every L of the sweep."""
    sweep = sorted(set(cfg.L_sweep) | set(cfg.histogram_L))
    for L in sweep:
        check_sweep([cfg.T], L, name='T')
    if cfg.workers > 1 and len(sweep) > 1:
        points = [(cfg, L, 1) for L in sweep]
        workers = cfg.workers
    else:
        points = [(cfg, L, cfg.workers) for L in sweep]
        workers = 1
    table = Table('channel_stats', STATS_HEADER)
    histograms = []
    for L, (row, histogram) in zip(sweep,
                                   _map_points(_stats_point, points,
                                               workers)):
        if L in cfg.L_sweep:
            table.append(row)
        if histogram is not None:
            histograms.append(histogram)
    return table, histograms
