# commands/design.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.experiments import design_tables
from mdcsim.str_util import T

from .basecommand import BaseCommand

DESIGN_LOG = T("{scheme}: {support_size} codes, outage at k={k_min}, "
               "baseline {baseline} rate {baseline_rate:.4g}, "
               "average rate {rate_analytic:.4g}")


class DesignCommand(BaseCommand):
    NAME = 'design'
    HELP = "Design the coding schemes for one (T, L) point."
    DESCR = T("""
        Writes the packet fractions of every scheme to design.csv and one
        summary row per scheme to design_summary.csv.
        Schemes whose anchor cannot be met are reported as infeasible.
    """)

    OVERRIDES = ('H', 'T', 'L', 'gamma', 'mu', 'anchor_ratio')

    def run(self):
        fractions, summary = design_tables(self.config)
        for rec in summary.records():
            if rec['status'] != 'ok':
                self.log.info("%s: infeasible", rec['scheme'])
                continue
            self.log.info(DESIGN_LOG.format(**rec))
        self.write(fractions, summary)
