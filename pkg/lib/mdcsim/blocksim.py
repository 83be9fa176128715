# blocksim.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

"""Monte Carlo simulation of path blockages.

Every path draws, slot by slot, whether a new blocker arrives (probability
epsilon). An arrival at slot t blocks slots t..t+L-1; overlapping blockages
merge. Arrivals are generated sparsely from geometric gaps, which is the
same Bernoulli process, and blocked slots are counted per block from the
merged intervals, so the cost grows with the number of arrivals and blocks,
not with the number of slots.

Each (replication, path) pair owns a random stream spawned from the master
seed, so results do not depend on how replications are spread over workers.
"""

import math

from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field, replace

import numpy as np

from mdcsim.channel import ChannelParams, PacketCountPmf
from mdcsim.exceptions import ParameterError, SimulationError
from mdcsim.log_util import class_logger, timed

# slots per chunk when drawing Poisson counts slot by slot
POISSON_CHUNK = 1 << 20
# batch means for the rate stderr: blocks per batch and batches wanted
MIN_BATCH_BLOCKS = 100
BATCH_SPAN_FACTOR = 20
MIN_BATCHES = 10


@dataclass(frozen=True)
class SimConfig:
    channel: ChannelParams
    total_slots: int
    seed: int = 0
    warmup_slots: int = None
    replications: int = 1
    poisson_counts: bool = False
    # extra spawn key entries, to give sweep points independent streams
    stream: tuple = field(default=())

    def __post_init__(self):
        channel = self.channel
        if not isinstance(channel, ChannelParams):
            raise ParameterError("channel must be ChannelParams, got %r"
                                 % (channel,))
        if _not_int(self.total_slots) or self.total_slots < channel.T:
            raise ParameterError("total_slots must be an integer >= T=%d, "
                                 "got %r" % (channel.T, self.total_slots))
        if self.warmup_slots is None:
            object.__setattr__(self, 'warmup_slots', channel.L)
        elif _not_int(self.warmup_slots) or self.warmup_slots < 0:
            raise ParameterError("warmup_slots must be a nonnegative "
                                 "integer, got %r" % (self.warmup_slots,))
        if _not_int(self.seed) or not 0 <= self.seed < 2 ** 64:
            raise ParameterError("seed must be a 64-bit unsigned integer, "
                                 "got %r" % (self.seed,))
        if _not_int(self.replications) or self.replications < 1:
            raise ParameterError("replications must be a positive integer, "
                                 "got %r" % (self.replications,))
        object.__setattr__(self, 'stream',
                           tuple(int(s) for s in self.stream))

    @property
    def horizon(self):
        return self.warmup_slots + self.total_slots

    @property
    def blocks(self):
        return self.total_slots // self.channel.T


def _not_int(value):
    return isinstance(value, bool) or not isinstance(value, (int, np.integer))


@dataclass(frozen=True, eq=False)
class BlockReport:
    per_block_received: np.ndarray
    H: int
    T: int
    L: int = None

    def __post_init__(self):
        received = np.asarray(self.per_block_received, dtype=np.int64)
        if received.ndim != 1:
            raise ParameterError("per_block_received must be 1-D")
        if received.size and (received.min() < 0
                              or received.max() > self.H * self.T):
            raise ParameterError("received counts outside [0, %d]"
                                 % (self.H * self.T))
        received.flags.writeable = False
        object.__setattr__(self, 'per_block_received', received)
        if self.L is not None and (_not_int(self.L) or self.L < 1):
            raise ParameterError("L must be a positive integer, got %r"
                                 % (self.L,))

    @property
    def blocks(self):
        return self.per_block_received.size

    @property
    def HT(self):
        return self.H * self.T


@dataclass(frozen=True)
class DesignMetrics:
    k_min: int
    average_rate: float
    rate_stderr: float
    outage_percentage: float


@dataclass(frozen=True)
class SimReport:
    empirical_pmf: PacketCountPmf
    mean_received: float
    stddev_received: float
    average_rate: float = None
    rate_stderr: float = None
    outage_percentage: float = None
    k_min: int = None

    def with_metrics(self, metrics):
        return replace(self, average_rate=metrics.average_rate,
                       rate_stderr=metrics.rate_stderr,
                       outage_percentage=metrics.outage_percentage,
                       k_min=metrics.k_min)


def path_rng(seed, replication, path, stream=()):
    """Independent generator for one path of one replication."""
    key = tuple(stream) + (replication, path)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def arrival_slots(rng, epsilon, horizon):
    """Sorted slots in [0, horizon) where a new blockage starts."""
    if epsilon <= 0.0 or horizon <= 0:
        return np.zeros(0, dtype=np.int64)
    if epsilon >= 1.0:
        return np.arange(horizon, dtype=np.int64)
    chunks = []
    last = -1
    while last < horizon:
        expected = epsilon * (horizon - last)
        size = int(expected + 4 * math.sqrt(expected)) + 16
        slots = last + np.cumsum(rng.geometric(epsilon, size=size))
        chunks.append(slots)
        last = int(slots[-1])
    slots = np.concatenate(chunks)
    return slots[slots < horizon]


def poisson_arrival_slots(rng, alpha, horizon):
    """Like arrival_slots, but from Poisson blocker counts per slot."""
    chunks = []
    for start in range(0, horizon, POISSON_CHUNK):
        size = min(POISSON_CHUNK, horizon - start)
        counts = rng.poisson(alpha, size=size)
        chunks.append(start + np.flatnonzero(counts))
    if not chunks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(chunks).astype(np.int64)


def blocked_intervals(arrivals, L):
    """Merge [a, a + L) for every arrival a into disjoint intervals.

    Returns (starts, ends), half-open and sorted.
    """
    arrivals = np.asarray(arrivals, dtype=np.int64)
    if arrivals.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    arrivals = np.unique(arrivals)
    # an arrival opens a new interval when the previous one has ended
    opens = np.concatenate(([True], np.diff(arrivals) > L))
    starts = arrivals[opens]
    last_in_group = np.concatenate((np.flatnonzero(opens)[1:] - 1,
                                    [arrivals.size - 1]))
    ends = arrivals[last_in_group] + L
    return starts, ends


def blocked_before(starts, ends, x):
    """Number of blocked slots in [0, x) for every x."""
    x = np.asarray(x, dtype=np.int64)
    if starts.size == 0:
        return np.zeros(x.shape, dtype=np.int64)
    lengths = np.cumsum(ends - starts)
    idx = np.searchsorted(starts, x, side='right') - 1
    safe = np.maximum(idx, 0)
    # whole intervals up to idx, minus the part of interval idx beyond x
    total = lengths[safe] - np.maximum(ends[safe] - x, 0)
    return np.where(idx >= 0, total, 0)


def count_received(arrivals, L, first_slot, T, blocks):
    """Unblocked slots in each of ``blocks`` blocks of T slots."""
    starts, ends = blocked_intervals(arrivals, L)
    bounds = first_slot + T * np.arange(blocks + 1, dtype=np.int64)
    blocked = np.diff(blocked_before(starts, ends, bounds))
    return T - blocked


def _simulate_replication(config, replication):
    channel = config.channel
    received = np.zeros(config.blocks, dtype=np.int64)
    for j, path in enumerate(channel.paths):
        rng = path_rng(config.seed, replication, j, config.stream)
        if config.poisson_counts and math.isfinite(path.alpha):
            arrivals = poisson_arrival_slots(rng, path.alpha, config.horizon)
        else:
            arrivals = arrival_slots(rng, path.epsilon, config.horizon)
        received += count_received(arrivals, channel.L, config.warmup_slots,
                                   channel.T, config.blocks)
    return received


class BlockSimulator(object):
    log = class_logger()

    def __init__(self, config, workers=1):
        if _not_int(workers) or workers < 1:
            raise ParameterError("workers must be a positive integer, got %r"
                                 % (workers,))
        self.config = config
        self.workers = int(workers)
        if config.warmup_slots < config.channel.L:
            self.log.warning("warmup of %d slots is shorter than the "
                             "blockage duration L=%d; the first block is "
                             "biased", config.warmup_slots, config.channel.L)

    def run(self):
        config = self.config
        reps = range(config.replications)
        channel = config.channel
        try:
            with timed(self.log, "Simulated %d x %d slots on %d paths",
                       config.replications, config.horizon, channel.H):
                if self.workers == 1 or config.replications == 1:
                    parts = [_simulate_replication(config, r) for r in reps]
                else:
                    with ProcessPoolExecutor(max_workers=self.workers) \
                            as pool:
                        parts = list(pool.map(_simulate_replication,
                                              [config] * len(reps), reps))
        except (BrokenProcessPool, MemoryError) as ex:
            raise SimulationError("blockage simulation failed: %s" % ex)
        return BlockReport(np.concatenate(parts), channel.H, channel.T,
                           channel.L)


def simulate_blocks(config, workers=1):
    return BlockSimulator(config, workers).run()


def empirical_statistics(report, HT=None):
    if HT is None:
        HT = report.HT
    if report.blocks == 0:
        raise ParameterError("the report holds no completed blocks")
    received = report.per_block_received
    pmf = PacketCountPmf.from_counts(received, HT)
    return SimReport(pmf, float(received.mean()), float(received.std()))


def batch_length(blocks, T, L=None):
    """Blocks per batch for batch-means standard errors.

    A blockage spans about L / T consecutive blocks, so a batch covers many
    of those spans. Short reports are split into MIN_BATCHES batches instead.
    """
    span = 1 if L is None else -(-L // T)
    length = max(MIN_BATCH_BLOCKS, BATCH_SPAN_FACTOR * span)
    if blocks // length < MIN_BATCHES:
        length = max(1, blocks // MIN_BATCHES)
    return length


def batch_stderr(values, length):
    """Standard error of the mean of ``values`` from means of batches.

    Trailing values that do not fill a batch are dropped.
    """
    values = np.asarray(values, dtype=np.float64)
    count = values.size // length
    if count < 2:
        return 0.0
    means = values[:count * length].reshape(count, length).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(count))


def evaluate_design(report, design, k_min=None, batch_blocks=None):
    """Average decoded rate and outage percentage over simulated blocks.

    k_min defaults to the most reliable code the design uses. The rate
    stderr comes from batch means of ``batch_blocks`` blocks, by default
    batch_length(blocks, T, L) of the report.
    """
    if design.n != report.HT:
        raise ParameterError("design has n=%d but blocks carry %d packets"
                             % (design.n, report.HT))
    if k_min is None:
        k_min = min(design.support)
    if _not_int(k_min) or not 1 <= k_min <= report.HT:
        raise ParameterError("k_min=%r out of range [1, %d]"
                             % (k_min, report.HT))
    if report.blocks == 0:
        raise ParameterError("the report holds no completed blocks")
    blocks = report.blocks
    if batch_blocks is None:
        batch_blocks = batch_length(blocks, report.T, report.L)
    elif _not_int(batch_blocks) or batch_blocks < 1:
        raise ParameterError("batch_blocks must be a positive integer, "
                             "got %r" % (batch_blocks,))
    received = report.per_block_received
    rates = design.cumulative_rates()[received]
    outage = 100.0 * np.count_nonzero(received < k_min) / blocks
    return DesignMetrics(int(k_min), float(rates.mean()),
                         batch_stderr(rates, int(batch_blocks)),
                         float(outage))
