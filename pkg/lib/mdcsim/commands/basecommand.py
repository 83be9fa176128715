# commands/basecommand.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from mdcsim.config import ExperimentConfig, OutputDir
from mdcsim.log_util import class_logger

# config keys a subcommand may expose as options: flag, type, help
OPTIONS = {
    'H': ('--H', int, "number of paths"),
    'T': ('--T', int, "code duration in slots"),
    'L': ('--L', int, "blockage duration in slots"),
    'gamma': ('--gamma', float, "outage target of the single-code baseline"),
    'mu': ('--mu', float, "fraction spreading penalty"),
    'anchor_ratio': ('--anchor-ratio', float,
                     "minimum fraction of the baseline code"),
    'total_slots': ('--total-slots', int, "simulated slots per sweep point"),
    'replications': ('--replications', int,
                     "independent simulation runs per sweep point"),
}

# shared options, defined on every subcommand by main
SHARED = ('seed', 'out', 'format', 'workers')


class BaseCommand(object):
    log = class_logger()
    config = None
    output = None

    NAME = None
    DESCR = None
    HELP = None

    require_load_config = True
    # config keys settable from the command line besides the shared ones
    OVERRIDES = ()
    # exit code for failures that are not mdcsim errors
    UNEXPECTED_EXIT_CODE = 255

    def __init__(self, args):
        pass

    @classmethod
    def fill_parser(cls, parser):
        cls.add_overrides(parser)

    @classmethod
    def add_overrides(cls, parser):
        for name in cls.OVERRIDES:
            flag, type_, help = OPTIONS[name]
            parser.add_argument(flag, dest=name, type=type_, default=None,
                                help=help)

    def load_config(self, args):
        cfg = ExperimentConfig.load(getattr(args, 'config', None))
        names = SHARED + tuple(self.OVERRIDES)
        cfg.override(**dict((name, getattr(args, name, None))
                            for name in names))
        self.config = cfg
        self.output = OutputDir(cfg.out, cfg.format)

    def write(self, *tables):
        sidecar = self.config.resolved()
        for table in tables:
            self.output.write(table, sidecar)
