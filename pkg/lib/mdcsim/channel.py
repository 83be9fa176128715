# channel.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

"""Number of packets received over blocked paths.

Blockers arrive on every path as a Poisson process; a blocker that shows up
during a slot occludes the path for that slot and the following L - 1 slots.
One packet per path is sent in every slot, and a code spans T slots.
"""

import math

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from mdcsim.exceptions import ConstraintError, ParameterError

NORMALIZATION_TOL = 1e-9
# slack for rounding in entries computed from exact formulas
ENTRY_TOL = 1e-12

DEFAULT_APPROX_THRESHOLD = 0.1
# relative mismatch allowed between epsilon and 1 - exp(-alpha)
PAIR_TOL = 1e-9


def _check_count(name, value, minimum=1):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ParameterError("%s must be an integer, got %r" % (name, value))
    if value < minimum:
        raise ParameterError("%s must be >= %d, got %d"
                             % (name, minimum, value))
    return int(value)


def _check_epsilon(epsilon):
    epsilon = float(epsilon)
    if not 0.0 <= epsilon <= 1.0:
        raise ParameterError("epsilon must be in [0, 1], got %r" % epsilon)
    return epsilon


def _check_horizon(T, L):
    T = _check_count('T', T)
    L = _check_count('L', L)
    if L < T:
        raise ConstraintError(
            "blockage duration L=%d is shorter than code duration T=%d; "
            "the model requires L >= T" % (L, T))
    return T, L


def epsilon_from_alpha(alpha):
    """Probability that at least one blocker arrives during a slot."""
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha < 0:
        raise ParameterError("alpha must be finite and nonnegative, got %r"
                             % alpha)
    return -math.expm1(-alpha)


def alpha_from_rate(blockers_per_second, tti_seconds):
    """Blocker intensity per slot from an intensity per second."""
    rate = float(blockers_per_second)
    tti = float(tti_seconds)
    if not math.isfinite(rate) or rate < 0:
        raise ParameterError("blockers_per_second must be finite and "
                             "nonnegative, got %r" % rate)
    if not math.isfinite(tti) or tti <= 0:
        raise ParameterError("tti_seconds must be positive, got %r" % tti)
    return rate * tti


@dataclass(frozen=True)
class PathParams:
    alpha: float
    epsilon: float

    def __post_init__(self):
        if math.isnan(self.alpha) or self.alpha < 0:
            raise ParameterError("alpha must be nonnegative, got %r"
                                 % self.alpha)
        _check_epsilon(self.epsilon)
        # alpha = inf stands for a path blocked in every slot
        expected = 1.0 if math.isinf(self.alpha) \
            else epsilon_from_alpha(self.alpha)
        if not math.isclose(expected, self.epsilon, rel_tol=PAIR_TOL,
                            abs_tol=ENTRY_TOL):
            raise ParameterError(
                "epsilon=%r does not match alpha=%r (expected %r)"
                % (self.epsilon, self.alpha, expected))

    @classmethod
    def from_alpha(cls, alpha):
        return cls(float(alpha), epsilon_from_alpha(alpha))

    @classmethod
    def from_epsilon(cls, epsilon):
        """Path with a given per-slot blockage probability.

        epsilon = 1 maps to an infinite intensity.
        """
        epsilon = _check_epsilon(epsilon)
        alpha = math.inf if epsilon == 1.0 else -math.log1p(-epsilon)
        return cls(alpha, epsilon)


@dataclass(frozen=True)
class ChannelParams:
    H: int
    T: int
    L: int
    paths: tuple
    tti: float = 250e-6

    def __post_init__(self):
        _check_count('H', self.H)
        _check_horizon(self.T, self.L)
        object.__setattr__(self, 'paths', tuple(self.paths))
        if len(self.paths) != self.H:
            raise ParameterError("expected %d paths, got %d"
                                 % (self.H, len(self.paths)))
        for path in self.paths:
            if not isinstance(path, PathParams):
                raise ParameterError("paths must hold PathParams, got %r"
                                     % (path,))
        tti = float(self.tti)
        if not math.isfinite(tti) or tti <= 0:
            raise ParameterError("tti must be positive, got %r" % self.tti)

    @classmethod
    def uniform(cls, H, T, L, alpha, tti=250e-6):
        """Channel whose paths all see the same blocker intensity."""
        path = PathParams.from_alpha(alpha)
        return cls(H, T, L, (path,) * H, tti)

    @property
    def HT(self):
        return self.H * self.T

    @property
    def delay_seconds(self):
        return self.T * self.tti

    def path_pmfs(self):
        return [path_pmf(p.epsilon, self.T, self.L) for p in self.paths]

    def aggregate_pmf(self):
        return aggregate_pmf(self.path_pmfs())


class PacketCountPmf(object):
    """Distribution of a packet count over 0..n_max."""

    def __init__(self, probs):
        probs = np.array(probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise ParameterError("PMF must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(probs)):
            raise ParameterError("PMF entries must be finite")
        if probs.min() < -ENTRY_TOL or probs.max() > 1 + ENTRY_TOL:
            raise ParameterError("PMF entries must lie in [0, 1]")
        total = math.fsum(probs)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ParameterError("PMF sums to %r, not 1" % total)
        probs = np.clip(probs, 0.0, 1.0)
        probs.flags.writeable = False
        self._probs = probs

        # below[k] = P(X < k), tails[k] = P(X >= k) for k in 0..n_max+1
        below = np.concatenate(([0.0], np.cumsum(probs)))
        below = np.minimum(below, 1.0)
        tails = np.concatenate((np.cumsum(probs[::-1])[::-1], [0.0]))
        tails[0] = 1.0
        tails = np.minimum(tails, 1.0)
        below.flags.writeable = False
        tails.flags.writeable = False
        self._below = below
        self._tails = tails

    @property
    def probs(self):
        return self._probs

    @property
    def n_max(self):
        return self._probs.size - 1

    def __len__(self):
        return self._probs.size

    def __getitem__(self, x):
        return float(self._probs[x])

    def __iter__(self):
        return iter(self._probs.tolist())

    def __eq__(self, other):
        if not isinstance(other, PacketCountPmf):
            return NotImplemented
        return np.array_equal(self._probs, other._probs)

    def __repr__(self):
        return 'PacketCountPmf(n_max=%d, mean=%.6g)' % (self.n_max,
                                                       self.mean)

    def _check_k(self, k):
        if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
            raise ParameterError("count must be an integer, got %r" % (k,))
        if not 0 <= k <= self.n_max + 1:
            raise ParameterError("count %d out of range [0, %d]"
                                 % (k, self.n_max + 1))
        return int(k)

    def tail(self, k):
        """P(X >= k)"""
        return float(self._tails[self._check_k(k)])

    def below(self, k):
        """P(X < k)"""
        return float(self._below[self._check_k(k)])

    def tails(self):
        """Array of P(X >= i) for i in 1..n_max."""
        return self._tails[1:-1].copy()

    @property
    def mean(self):
        return float(np.dot(np.arange(self._probs.size), self._probs))

    @property
    def stddev(self):
        x = np.arange(self._probs.size)
        var = float(np.dot((x - self.mean) ** 2, self._probs))
        return math.sqrt(max(var, 0.0))

    def total_variation(self, other):
        """Total variation distance, padding the shorter support."""
        size = max(len(self), len(other))
        p = np.zeros(size)
        q = np.zeros(size)
        p[:len(self)] = self._probs
        q[:len(other)] = other.probs
        return 0.5 * float(np.abs(p - q).sum())

    def endpoint_mass(self, T):
        """P(0) + P(T)"""
        return self[0] + self[T]

    @classmethod
    def from_counts(cls, counts, n_max):
        """Empirical PMF of integer samples in 0..n_max."""
        counts = np.asarray(counts)
        if counts.size == 0:
            raise ParameterError("no samples")
        if counts.min() < 0 or counts.max() > n_max:
            raise ParameterError("samples outside [0, %d]" % n_max)
        hist = np.bincount(counts, minlength=n_max + 1)
        return cls(hist / float(counts.size))


def path_pmf(epsilon, T, L):
    """PMF of the packets received on one path during T slots.

    Conditions on a stationary past: blockers that arrived during the
    previous L - 1 slots may still occlude the start of the block.
    0 ** 0 is taken as 1, so epsilon in {0, 1} gives a valid distribution.
    """
    epsilon = _check_epsilon(epsilon)
    T, L = _check_horizon(T, L)
    q = 1.0 - epsilon
    probs = np.zeros(T + 1)

    i = np.arange(1, T + 1)
    first = np.where(T - i > 0, epsilon, 1.0)
    probs[0] = epsilon + math.fsum(q ** i * first * (1.0 - q ** (L - i)))

    for r in range(1, T + 1):
        i = np.arange(0, T - r + 1)
        tail_block = np.where(T - r - i > 0, epsilon, 1.0)
        head_block = np.where(i > 0, epsilon, 1.0)
        terms = q ** (r + i) * tail_block * q ** (L - 1 - i) * head_block
        probs[r] = math.fsum(terms)

    return PacketCountPmf(probs)


def path_pmf_endpoints_closed_form(epsilon, T, L):
    """Closed forms of P(0) and P(T) for one path."""
    epsilon = _check_epsilon(epsilon)
    T, L = _check_horizon(T, L)
    q = 1.0 - epsilon
    qL = q ** L
    p0 = 1.0 - epsilon * (T - 1) * qL - qL
    pT = q ** (T + L - 1)
    return p0, pT


def aggregate_pmf(per_path):
    """PMF of the total count over independent paths (direct convolution)."""
    per_path = list(per_path)
    if not per_path:
        raise ParameterError("at least one path PMF is required")
    probs = per_path[0].probs
    for pmf in per_path[1:]:
        probs = np.convolve(probs, pmf.probs)
    return PacketCountPmf(probs)


def tail_probability(pmf, k):
    return pmf.tail(k)


ApproximationReport = namedtuple('ApproximationReport',
                                 'cond1 cond2 mass_at_endpoints gap')


def approximation_report(epsilon, T, L, threshold=DEFAULT_APPROX_THRESHOLD):
    """How well the per-path count concentrates on {0, T}.

    cond1: epsilon (T - 1) is small.
    cond2: (1 - epsilon)^L and epsilon (T - 1) (1 - epsilon)^L are small.
    """
    threshold = float(threshold)
    if not threshold > 0:
        raise ParameterError("threshold must be positive, got %r" % threshold)
    pmf = path_pmf(epsilon, T, L)
    q = 1.0 - float(epsilon)
    qL = q ** L
    spread = float(epsilon) * (T - 1)
    cond1 = spread < threshold
    cond2 = qL < threshold and spread * qL < threshold
    mass = pmf.endpoint_mass(T)
    return ApproximationReport(cond1, cond2, mass, 1.0 - mass)
