# commands/pmf.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.experiments import pmf_tables
from mdcsim.str_util import T

from .basecommand import BaseCommand

APPROX_LOG = T("path {path}: conditions {cond1}/{cond2}, "
               "P(0)+P(T) = {mass_at_endpoints:.6g}, gap {gap!P}")


class PmfCommand(BaseCommand):
    NAME = 'pmf'
    HELP = "Write the analytic received-packet PMF of every path."
    DESCR = T("""
        Rows of pmf.csv hold (path, epsilon, x, probability) for
        x = 0..T. With --aggregate the PMF of the total over all H paths
        follows under path 'all'.

        --approx reports how well each path PMF concentrates on 0 and T.
    """)

    OVERRIDES = ('H', 'T', 'L')

    @classmethod
    def fill_parser(cls, parser):
        super(PmfCommand, cls).fill_parser(parser)
        parser.add_argument('--aggregate', action='store_true',
                            default=False,
                            help="also write the PMF of the path total")
        parser.add_argument('--approx', action='store_true', default=False,
                            help="report the concentration conditions "
                                 "per path")

    def __init__(self, args):
        self.aggregate = args.aggregate
        self.approx = args.approx

    def run(self):
        pmf, approx = pmf_tables(self.config, self.aggregate)
        self.write(pmf)
        if self.approx:
            for rec in approx.records():
                self.log.info(APPROX_LOG.format(**rec))
            self.write(approx)
