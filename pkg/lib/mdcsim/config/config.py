# config/config.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import os

import yaml

from mdcsim.channel import ChannelParams, PathParams, alpha_from_rate
from mdcsim.design import SCHEMES
from mdcsim.exceptions import ConfigError, ConstraintError, MissingFileError

from .attrs import (Record, bool_attr, choice_list_attr, float_attr,
                    int_attr, int_list_attr, per_path_attr, str_attr)

FORMATS = ('csv', 'json')

DEFAULT_BLOCKERS_PER_SECOND = 3.0


class ExperimentConfig(Record):
    """Resolved experiment settings.

    Defaults reproduce the reference setup: three paths, 250 us slots,
    3 blockers per second on every path, L = 400.
    """

    H = int_attr(3, min=1, help="number of edge-disjoint paths")
    T = int_attr(200, min=1, help="code duration in slots")
    T_sweep = int_list_attr(tuple(range(40, 401, 40)),
                            help="code durations swept by t-sweep")
    L = int_attr(400, min=1, help="blockage duration in slots")
    L_sweep = int_list_attr((100, 200, 400),
                            help="blockage durations swept by channel-stats")
    blockers_per_second = per_path_attr(
        None, help="blocker intensity per second, scalar or one per path "
                   "(default %r)" % DEFAULT_BLOCKERS_PER_SECOND)
    alpha_per_tti = per_path_attr(
        None, help="blocker intensity per slot, scalar or one per path; "
                   "excludes blockers_per_second")
    tti_seconds = float_attr(250e-6, min=1e-12, help="slot duration t_d")
    schemes = choice_list_attr(SCHEMES, choices=SCHEMES,
                               help="coding schemes to design and evaluate")
    gamma = float_attr(0.005, min=0.0, max=1.0,
                       help="outage target of the single-code baseline")
    mu = float_attr(0.1, min=0.0, help="fraction spreading penalty")
    anchor_ratio = float_attr(0.1, min=0.0,
                              help="minimum fraction of the baseline code "
                                   "in multilevel designs")
    approx_threshold = float_attr(0.1, min=1e-300,
                                  help="bound standing for 'much less "
                                       "than 1' in the concentration report")
    seed = int_attr(20240101, min=0, help="master random seed")
    total_slots = int_attr(20000000, min=1,
                           help="simulated slots per sweep point")
    warmup_slots = int_attr(None, min=0,
                            help="slots simulated before counting "
                                 "(default L)")
    replications = int_attr(1, min=1,
                            help="independent runs of total_slots each")
    workers = int_attr(1, min=1, help="worker processes")
    poisson_counts = bool_attr(False,
                               help="draw Poisson blocker counts per slot "
                                    "instead of arrival indicators")
    histogram_L = int_list_attr((400,),
                                help="L values whose full histogram "
                                     "channel-stats writes")
    out = str_attr('results', help="output directory, '-' for stdout")
    format = str_attr('csv', choices=FORMATS, help="table format")

    @classmethod
    def load(cls, path=None):
        if path is None:
            cfg = cls()
        else:
            if not os.path.exists(path):
                raise MissingFileError(path, role='Config file')
            with open(path) as f:
                try:
                    data = yaml.safe_load(f)
                except yaml.YAMLError as ex:
                    raise ConfigError("cannot parse %s: %s" % (path, ex))
            cfg = cls.from_dict(data)
            cls.log.debug("Loaded config from '%s'", path)
        cfg.check()
        return cfg

    def override(self, **kwargs):
        """Apply command line values; None means 'not given'."""
        for name, val in kwargs.items():
            if val is not None:
                self.set(name, val)
        self.check()
        return self

    def check(self):
        if self.blockers_per_second is not None \
                and self.alpha_per_tti is not None:
            raise ConfigError("give either blockers_per_second or "
                              "alpha_per_tti, not both")
        for name in ('blockers_per_second', 'alpha_per_tti'):
            val = getattr(self, name)
            if isinstance(val, tuple) and len(val) != self.H:
                raise ConfigError("%s: expected %d per-path values, got %d"
                                  % (name, self.H, len(val)))

    def alphas(self):
        """Blocker intensity per slot on every path."""
        if self.alpha_per_tti is not None:
            val = self.alpha_per_tti
        else:
            val = self.blockers_per_second
            if val is None:
                val = DEFAULT_BLOCKERS_PER_SECOND
            if isinstance(val, tuple):
                val = tuple(alpha_from_rate(v, self.tti_seconds)
                            for v in val)
            else:
                val = alpha_from_rate(val, self.tti_seconds)
        if isinstance(val, tuple):
            return val
        return (val,) * self.H

    def channel(self, T=None, L=None):
        T = self.T if T is None else T
        L = self.L if L is None else L
        paths = tuple(PathParams.from_alpha(a) for a in self.alphas())
        return ChannelParams(self.H, T, L, paths, self.tti_seconds)

    def warmup_for(self, L):
        return L if self.warmup_slots is None else self.warmup_slots

    def resolved(self):
        """Everything a result table depends on, for provenance files."""
        ret = self.to_dict()
        ret['alpha_per_tti'] = list(self.alphas())
        return ret


def check_sweep(values, L, name='T_sweep'):
    """Reject sweep points the channel model cannot handle."""
    bad = [T for T in values if T > L]
    if bad:
        raise ConstraintError(
            "%s holds code durations longer than the blockage duration "
            "L=%d: %s; the model requires L >= T"
            % (name, L, ', '.join(str(T) for T in bad)))
