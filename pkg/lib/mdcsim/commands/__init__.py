# commands/__init__.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

from .basecommand import BaseCommand

from .pmf import PmfCommand
from .design import DesignCommand
from .rate_outage import RateOutageCommand
from .t_sweep import TSweepCommand
from .channel_stats import ChannelStatsCommand

commands = [PmfCommand, DesignCommand, RateOutageCommand,
            TSweepCommand, ChannelStatsCommand]

__all__ = [cls.__name__ for cls in commands + [BaseCommand]]
