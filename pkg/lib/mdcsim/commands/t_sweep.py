# commands/t_sweep.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.exceptions import SimulationError
from mdcsim.experiments import run_t_sweep
from mdcsim.str_util import T, a

from .basecommand import BaseCommand


class TSweepCommand(BaseCommand):
    NAME = 't-sweep'
    HELP = "Simulated rate and outage over code durations."
    DESCR = T("""
        Every T of T_sweep redesigns all schemes and simulates
        total_slots slots of blockage. t_sweep.csv holds, per scheme and T,
        the simulated average rate with its standard error, the outage
        percentage of the most reliable code used and their analytic
        counterparts. 'fallback' marks points where no code reaches the
        outage target and (HT,1) is used.
    """)

    OVERRIDES = ('H', 'L', 'gamma', 'mu', 'anchor_ratio', 'total_slots',
                 'replications')
    UNEXPECTED_EXIT_CODE = SimulationError.EXIT_CODE

    def run(self):
        table = run_t_sweep(self.config)
        fallback = sorted(set(T for T, f in zip(table.column('T'),
                                                table.column('fallback'))
                              if f))
        if fallback:
            gamma = self.config.gamma
            self.log.info(a("No code meets outage {gamma!P} at T in "
                            "{fallback!S}; (HT,1) used"))
        self.write(table)
