# commands/channel_stats.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.exceptions import SimulationError
from mdcsim.experiments import run_channel_stats
from mdcsim.str_util import T

from .basecommand import BaseCommand


class ChannelStatsCommand(BaseCommand):
    NAME = 'channel-stats'
    HELP = "Spread of the received packet count over blockage durations."
    DESCR = T("""
        Simulates the channel for every L of L_sweep and writes mean and
        standard deviation of the per-block received count, next to the
        analytic values, to channel_stats.csv. For H=1 the mass at 0 and T
        is reported as well. Full histograms go to histogram_L<L>.csv for
        every L of histogram_L.
    """)

    OVERRIDES = ('H', 'T', 'total_slots', 'replications')
    UNEXPECTED_EXIT_CODE = SimulationError.EXIT_CODE

    def run(self):
        table, histograms = run_channel_stats(self.config)
        for rec in table.records():
            self.log.info("L=%d: stddev %.4g (analytic %.4g)", rec['L'],
                          rec['stddev'], rec['stddev_analytic'])
        self.write(table, *histograms)
