# commands/rate_outage.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.experiments import run_rate_outage
from mdcsim.str_util import T

from .basecommand import BaseCommand


class RateOutageCommand(BaseCommand):
    NAME = 'rate-outage'
    HELP = "Rate versus outage probability of every scheme."
    DESCR = T("""
        For a single (T, L) point, every scheme is designed against the
        analytic PMF and its rate/outage curve is written to
        rate_outage.csv: the rate delivered when at least k packets
        arrive, against the probability that fewer than k do.
        The code fractions of each design go to design.csv and
        design_summary.csv describes the designs.
    """)

    OVERRIDES = ('H', 'T', 'L', 'gamma', 'mu', 'anchor_ratio')

    def run(self):
        curve, fractions, summary = run_rate_outage(self.config)
        self.log.info(T("{0} curve points for {1!S}").format(
            len(curve), set(curve.column('scheme'))))
        self.write(curve, fractions, summary)
