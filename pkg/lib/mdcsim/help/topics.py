# help/topics.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from operator import itemgetter

from mdcsim import experiments
from mdcsim.config import ExperimentConfig
from mdcsim.str_util import T

from . import TABLES, add_table, add_topic


def _default(attr):
    val = attr.to_yaml(attr.default)
    return '-' if val is None else repr(val)


out = []
for name, attr in sorted(ExperimentConfig.__attrs__.items(),
                         key=itemgetter(0)):
    out.append("{name:<20} {default:<12} {help}".format(
        name=name, default=_default(attr), help=attr.help or ''))

key_list = '\n'.join(out)


add_topic('config', T("Experiment config keys and defaults"), T("""
The experiment config is a flat YAML mapping; unknown keys are errors.
Pass it with --config. --seed, --out, --format, --workers and the
per-command options override the file.

Example:

    H: 3
    L: 400
    blockers_per_second: [3.0, 3.0, 6.0]
    T_sweep: [40, 80, 120, 160, 200]
    gamma: 0.005

Keys (name, default, meaning):

""") + '\n' + key_list)


for name, header in [
    ('pmf', experiments.PMF_HEADER),
    ('approximation', experiments.APPROX_HEADER),
    ('design', experiments.FRACTIONS_HEADER),
    ('design_summary', experiments.SUMMARY_HEADER),
    ('rate_outage', experiments.RATE_OUTAGE_HEADER),
    ('t_sweep', experiments.T_SWEEP_HEADER),
    ('channel_stats', experiments.STATS_HEADER),
    ('histogram_L<L>', experiments.HISTOGRAM_HEADER),
]:
    add_table(name, header)

table_list = '\n'.join("{0:<16} {1}".format(name, ','.join(header))
                       for name, header in TABLES.items())


add_topic('outputs', T("Result files and their columns"), T("""
Every table is written to the output directory as <name>.csv, or as
<name>.json (a list of row objects) with --format json. Next to it
<name>.config.json holds the resolved config the table came from.
With --out - tables go to stdout and no config file is written.

Numbers are written in their shortest exact form, so rerunning with the
same config and seed reproduces the files byte for byte.

Outage columns of t_sweep are percentages; outage in rate_outage is a
probability.

Tables (name, columns):

""") + '\n' + table_list)
