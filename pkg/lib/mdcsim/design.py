# design.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

"""Choosing packet fractions.

The fractions maximize

    sum_i (i / n) P(X >= i) f_i - mu ||f||^2

over the probability simplex, optionally with a lower bound on the fraction
of one anchor code. For mu > 0 the problem is solved exactly by completing
the square: the optimum is the Euclidean projection of c / (2 mu) onto the
feasible set.
"""

import logging
import math

from collections import namedtuple

import numpy as np

from mdcsim.coding import Anchor, ErasureCodeSpec, MultilevelDesign
from mdcsim.exceptions import InfeasibleDesignError, ParameterError
from mdcsim.str_util import code_name, int_set

log = logging.getLogger(__name__)

TAIL_TOL = 1e-12

MC = 'MC'
MC_RC = 'MC-RC'
EC_RO = 'EC-RO'
SCHEMES = (MC, MC_RC, EC_RO)

SchemeDesign = namedtuple('SchemeDesign', 'scheme design baseline k_min')


class DesignProblem(object):
    """Inputs of the fraction optimization.

    tails[i - 1] is P(X >= i) for i in 1..n.
    """

    def __init__(self, n, tails, mu, anchor=None):
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) \
                or n < 1:
            raise ParameterError("n must be a positive integer, got %r"
                                 % (n,))
        tails = np.array(tails, dtype=np.float64)
        if tails.shape != (n,):
            raise ParameterError("expected %d tail probabilities, got %d"
                                 % (n, tails.size))
        if not np.all(np.isfinite(tails)) or tails.min() < -TAIL_TOL \
                or tails.max() > 1 + TAIL_TOL:
            raise ParameterError("tail probabilities must lie in [0, 1]")
        if np.any(np.diff(tails) > TAIL_TOL):
            raise ParameterError("tail probabilities must be non-increasing")
        mu = float(mu)
        if not math.isfinite(mu) or mu < 0:
            raise ParameterError("mu must be finite and nonnegative, got %r"
                                 % mu)
        if anchor is not None:
            k_anchor, min_fraction = anchor
            if isinstance(k_anchor, bool) \
                    or not isinstance(k_anchor, (int, np.integer)) \
                    or not 1 <= k_anchor <= n:
                raise ParameterError("anchor code k=%r out of range [1, %d]"
                                     % (k_anchor, n))
            min_fraction = float(min_fraction)
            if not math.isfinite(min_fraction) or min_fraction < 0:
                raise ParameterError("anchor fraction must be nonnegative, "
                                     "got %r" % min_fraction)
            anchor = Anchor(int(k_anchor), min_fraction)

        tails = np.clip(tails, 0.0, 1.0)
        tails.flags.writeable = False
        self.n = int(n)
        self.tails = tails
        self.mu = mu
        self.anchor = anchor

    @classmethod
    def from_pmf(cls, pmf, mu, anchor=None):
        return cls(pmf.n_max, pmf.tails(), mu, anchor)

    def __repr__(self):
        return 'DesignProblem(n=%d, mu=%r, anchor=%r)' % (self.n, self.mu,
                                                         self.anchor)


def objective_coefficients(problem):
    """c_i = (i / n) P(X >= i): the average-rate weight of code (n, i)."""
    i = np.arange(1, problem.n + 1)
    return i / problem.n * problem.tails


def simplex_threshold(v, mass=1.0):
    """tau with sum(max(v - tau, 0)) == mass."""
    v = np.asarray(v, dtype=np.float64)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - mass
    j = np.arange(1, u.size + 1)
    rho = np.flatnonzero(u - css / j > 0)[-1]
    return css[rho] / (rho + 1)


def project_to_simplex(v, mass=1.0):
    """Euclidean projection of v onto {f >= 0, sum(f) == mass}."""
    v = np.array(v, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ParameterError("cannot project an empty vector")
    if not np.all(np.isfinite(v)):
        raise ParameterError("vector to project must be finite")
    mass = float(mass)
    if mass < 0:
        raise ParameterError("simplex mass must be nonnegative, got %r"
                             % mass)
    if mass == 0:
        return np.zeros_like(v)
    tau = simplex_threshold(v, mass)
    return np.maximum(v - tau, 0.0)


def _allowed_indices(problem, allowed):
    allowed = sorted(set(int(k) for k in allowed))
    if not allowed:
        raise ParameterError("the set of allowed codes is empty")
    if allowed[0] < 1 or allowed[-1] > problem.n:
        raise ParameterError("allowed codes %s fall outside [1, %d]"
                             % (int_set(allowed), problem.n))
    anchor = problem.anchor
    if anchor is not None:
        if anchor.k_anchor not in allowed:
            raise ParameterError("anchor code %s is not among allowed codes"
                                 % code_name(problem.n, anchor.k_anchor))
        if anchor.min_fraction > 1.0:
            raise InfeasibleDesignError(
                "anchor fraction %r exceeds 1" % anchor.min_fraction)
    return np.array(allowed) - 1


def _projection_target(problem, idx):
    """Target vector and free mass of the shifted projection."""
    c = objective_coefficients(problem)[idx]
    v = c / (2.0 * problem.mu)
    mass = 1.0
    anchor = problem.anchor
    if anchor is not None:
        pos = int(np.searchsorted(idx, anchor.k_anchor - 1))
        v[pos] -= anchor.min_fraction
        mass -= anchor.min_fraction
    return v, mass


def solve_fractions_restricted(problem, allowed):
    """Optimal fractions with f_i = 0 outside ``allowed``."""
    idx = _allowed_indices(problem, allowed)
    anchor = problem.anchor
    sub = np.zeros(idx.size)

    if problem.mu > 0:
        v, mass = _projection_target(problem, idx)
        sub = project_to_simplex(v, max(mass, 0.0))
        if anchor is not None:
            sub[np.searchsorted(idx, anchor.k_anchor - 1)] += \
                anchor.min_fraction
    else:
        c = objective_coefficients(problem)[idx]
        # np.argmax keeps the first maximum, i.e. the smallest k
        best = int(np.argmax(c))
        free = 1.0
        if anchor is not None:
            sub[np.searchsorted(idx, anchor.k_anchor - 1)] = \
                anchor.min_fraction
            free -= anchor.min_fraction
        sub[best] += free

    vector = np.zeros(problem.n)
    vector[idx] = sub
    design = MultilevelDesign.from_vector(vector, anchor)
    log.debug("Solved %r over %d codes: support %s", problem, idx.size,
              int_set(design.support))
    return design


def solve_fractions(problem):
    return solve_fractions_restricted(problem, range(1, problem.n + 1))


def kkt_residual(design, problem, allowed=None):
    """Distance of ``design`` from the projection optimality conditions."""
    if problem.mu <= 0:
        raise ParameterError("the projection certificate needs mu > 0")
    if allowed is None:
        allowed = range(1, problem.n + 1)
    idx = _allowed_indices(problem, allowed)
    v, mass = _projection_target(problem, idx)
    g = design.vector[idx].copy()
    anchor = problem.anchor
    if anchor is not None:
        g[np.searchsorted(idx, anchor.k_anchor - 1)] -= anchor.min_fraction
    outside = np.delete(design.vector, idx)
    if mass <= 0:
        return max(float(np.abs(g).max()), float(np.abs(outside).sum()))
    tau = simplex_threshold(v, mass)
    residual = float(np.abs(g - np.maximum(v - tau, 0.0)).max())
    residual = max(residual, abs(math.fsum(g) - mass))
    return max(residual, float(np.abs(outside).sum()))


def mc_rc_code_set(H, T, anchor_k=None):
    """Codes (HT, jT) for j in 1..H, plus the anchor code."""
    for name, value in (('H', H), ('T', T)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)) \
                or value < 1:
            raise ParameterError("%s must be a positive integer, got %r"
                                 % (name, value))
    codes = set(j * T for j in range(1, H + 1))
    if anchor_k is not None:
        if isinstance(anchor_k, bool) \
                or not isinstance(anchor_k, (int, np.integer)) \
                or not 1 <= anchor_k <= H * T:
            raise ParameterError("anchor code k=%r out of range [1, %d]"
                                 % (anchor_k, H * T))
        codes.add(int(anchor_k))
    return frozenset(codes)


def ec_ro_select(n, pmf, gamma):
    """Highest-rate code with outage at most gamma, else (n, 1)."""
    if pmf.n_max != n:
        raise ParameterError("PMF covers 0..%d but n=%d" % (pmf.n_max, n))
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ParameterError("gamma must be in [0, 1], got %r" % gamma)
    # P(X < k) is non-decreasing in k
    qualified = [k for k in range(1, n + 1) if pmf.below(k) <= gamma]
    if qualified:
        return ErasureCodeSpec(n, qualified[-1])
    log.debug("No code meets outage %r for n=%d, falling back to %s",
              gamma, n, code_name(n, 1))
    return ErasureCodeSpec(n, 1)


def design_scheme(scheme, pmf, H, T, gamma, mu, anchor_ratio):
    """Build one of the MC / MC-RC / EC-RO schemes for a channel PMF.

    Both multilevel schemes anchor the EC-RO code with a fraction of at
    least anchor_ratio, so they serve its rate share at its outage. Every
    scheme reports outage against that shared code.
    """
    n = H * T
    baseline = ec_ro_select(n, pmf, gamma)
    if scheme == EC_RO:
        design = MultilevelDesign.single(baseline)
    elif scheme in (MC, MC_RC):
        anchor = Anchor(baseline.k, float(anchor_ratio))
        problem = DesignProblem.from_pmf(pmf, mu, anchor)
        if scheme == MC:
            design = solve_fractions(problem)
        else:
            allowed = mc_rc_code_set(H, T, baseline.k)
            design = solve_fractions_restricted(problem, allowed)
    else:
        raise ParameterError("unknown scheme %r, expected one of %s"
                             % (scheme, ', '.join(SCHEMES)))
    return SchemeDesign(scheme, design, baseline, baseline.k)
