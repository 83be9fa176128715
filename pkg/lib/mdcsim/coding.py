# coding.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

"""Rate and outage of erasure codes and of their multilevel combination.

A multilevel design splits every transmitted packet between the codes
(n, k), k in 1..n, giving code (n, k) the fraction f_k of the packet.
Receiving r packets decodes every code with k <= r.
"""

import math

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from mdcsim.exceptions import ParameterError
from mdcsim.str_util import code_name

FRACTION_SUM_TOL = 1e-9
FRACTION_TOL = 1e-12

Anchor = namedtuple('Anchor', 'k_anchor min_fraction')
CurvePoint = namedtuple('CurvePoint', 'k rate outage')


def _check_int(name, value, low, high):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ParameterError("%s must be an integer, got %r" % (name, value))
    if not low <= value <= high:
        raise ParameterError("%s=%r out of range [%r, %r]"
                             % (name, value, low, high))
    return int(value)


@dataclass(frozen=True)
class ErasureCodeSpec:
    n: int
    k: int

    def __post_init__(self):
        n = _check_int('n', self.n, 1, math.inf)
        _check_int('k', self.k, 1, n)

    @property
    def nominal_rate(self):
        return self.k / self.n

    def __str__(self):
        return code_name(self.n, self.k)


class MultilevelDesign(object):
    """Packet fractions of a symmetric multilevel code.

    Fractions are stored densely; ``vector[k - 1]`` is f_k.
    """

    def __init__(self, n, fractions, anchor=None):
        self._n = _check_int('n', n, 1, math.inf)
        vector = np.zeros(self._n)
        for k, f in dict(fractions).items():
            k = _check_int('k', k, 1, self._n)
            vector[k - 1] = float(f)
        self._vector = self._validate(vector, anchor)
        self._anchor = None if anchor is None else Anchor(*anchor)

    def _validate(self, vector, anchor):
        if not np.all(np.isfinite(vector)):
            raise ParameterError("fractions must be finite")
        if vector.size and vector.min() < -FRACTION_TOL:
            raise ParameterError("fractions must be nonnegative")
        total = math.fsum(vector)
        if abs(total - 1.0) > FRACTION_SUM_TOL:
            raise ParameterError("fractions sum to %r, not 1" % total)
        vector = np.maximum(vector, 0.0)
        if anchor is not None:
            k_anchor, min_fraction = anchor
            k_anchor = _check_int('k_anchor', k_anchor, 1, self._n)
            if not 0.0 <= min_fraction <= 1.0:
                raise ParameterError("min_fraction must be in [0, 1], got %r"
                                     % (min_fraction,))
            if vector[k_anchor - 1] < min_fraction - FRACTION_TOL:
                raise ParameterError(
                    "fraction of code %s is %r, below the anchor bound %r"
                    % (code_name(self._n, k_anchor), vector[k_anchor - 1],
                       min_fraction))
        vector.flags.writeable = False
        return vector

    @classmethod
    def from_vector(cls, vector, anchor=None):
        vector = np.asarray(vector, dtype=np.float64)
        self = cls.__new__(cls)
        self._n = vector.size
        if self._n == 0:
            raise ParameterError("empty fraction vector")
        self._vector = self._validate(vector.copy(), anchor)
        self._anchor = None if anchor is None else Anchor(*anchor)
        return self

    @classmethod
    def single(cls, code):
        """Design that puts the whole packet on one erasure code."""
        return cls(code.n, {code.k: 1.0})

    @property
    def n(self):
        return self._n

    @property
    def vector(self):
        return self._vector

    @property
    def anchor(self):
        return self._anchor

    @property
    def fractions(self):
        """Nonzero fractions keyed by k."""
        return dict((int(i) + 1, float(self._vector[i]))
                    for i in np.flatnonzero(self._vector > 0))

    @property
    def support(self):
        return [int(i) + 1 for i in np.flatnonzero(self._vector > 0)]

    @property
    def code_count(self):
        return len(self.support)

    @property
    def norm2(self):
        """Squared l2 norm of the fractions."""
        return float(np.dot(self._vector, self._vector))

    def objective(self, coefficients, mu):
        return float(np.dot(coefficients, self._vector)) - mu * self.norm2

    def cumulative_rates(self):
        """Rates achieved for every received count 0..n."""
        i = np.arange(1, self._n + 1)
        return np.concatenate(([0.0], np.cumsum(self._vector * i / self._n)))

    def __repr__(self):
        return 'MultilevelDesign(n=%d, support=%r)' % (self._n, self.support)


def _check_pmf_size(n, pmf):
    if pmf.n_max != n:
        raise ParameterError("PMF covers 0..%d but the code has n=%d"
                             % (pmf.n_max, n))


def outage_probability(code, pmf):
    """P(X < k): the code cannot be decoded."""
    _check_pmf_size(code.n, pmf)
    return pmf.below(code.k)


def average_rate(code, pmf):
    return code.nominal_rate * (1.0 - outage_probability(code, pmf))


def multilevel_average_rate(design, pmf):
    _check_pmf_size(design.n, pmf)
    n = design.n
    i = np.arange(1, n + 1)
    return float(np.dot(design.vector * pmf.tails(), i / n))


def achieved_rate(design, received):
    """Information rate decoded when ``received`` packets arrive."""
    received = _check_int('received', received, 0, design.n)
    if received == 0:
        return 0.0
    return float(design.cumulative_rates()[received])


def rate_outage_curve(design, pmf):
    """(rate, outage) at every count where a new code becomes decodable."""
    _check_pmf_size(design.n, pmf)
    rates = design.cumulative_rates()
    return [CurvePoint(k, float(rates[k]), pmf.below(k))
            for k in design.support]
