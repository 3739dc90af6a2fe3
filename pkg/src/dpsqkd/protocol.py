"""Classical bit-string pipeline of the block protocol, plus Monte Carlo.

One block = N pulses. Per block the parties hold:

    x   Alice's N modulation bits (pulse i carries phase bit x_i),
    l   difference bits l_i = x_i XOR x_{i-1} for slots i = 2..N,
    z   Bob's click indicators, z_1 forced to 0 (no partner pulse),
    y   Bob's measured phase-difference bits, 0 wherever z_i = 0,
    uA  = l_i * z_i,   uB = y_i * z_i.

Arrays here are 0-based: ``l[j]`` belongs to slot j+2, ``positions`` holds
0-based indices into ``z`` (all >= 1 since z[0] = 0). In the noiseless model
the wrong detector never fires, so y agrees with l on every clicked slot and
the bit error rate is exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import binom

from .config import SimulationConfig
from .entropy import ProbDist, binary_entropy
from .errors import InvalidDistributionError
from .optics import honest_click_rate

# Exhaustive click-pattern enumeration is limited to this block length.
MAX_ENUMERATION_PULSES = 16


@dataclass
class CountDistribution:
    """Distribution of Bob's total click count w = 0..N-1 per block."""

    p: ProbDist

    @property
    def weights(self) -> np.ndarray:
        return self.p.weights

    @property
    def n_pulses(self) -> int:
        # support 0..N-1 means the weight vector has N entries
        return len(self.p)

    def mean_count(self) -> float:
        w = np.arange(self.n_pulses, dtype=np.float64)
        return float((w * self.weights).sum())

    @classmethod
    def from_weights(cls, weights: np.ndarray) -> "CountDistribution":
        return cls(ProbDist(weights))

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "CountDistribution":
        counts = np.asarray(counts, dtype=np.float64)
        total = counts.sum()
        if total <= 0:
            raise InvalidDistributionError("empty histogram")
        return cls(ProbDist(counts / total))


@dataclass
class BlockRecord:
    """All classical data of one simulated block."""

    x: np.ndarray
    l: np.ndarray
    z: np.ndarray
    y: np.ndarray
    uA: np.ndarray
    uB: np.ndarray
    w: int
    positions: np.ndarray

    @property
    def n_pulses(self) -> int:
        return int(self.x.size)

    def check_invariants(self) -> None:
        """Assert the defining relations; used by tests, not the hot path."""
        assert self.z[0] == 0
        assert np.array_equal(self.uA[1:], self.l * self.z[1:])
        assert np.array_equal(self.uB, self.y * self.z)
        assert self.uA[0] == 0
        assert self.w == int(self.z.sum())
        assert np.array_equal(self.positions, np.nonzero(self.z)[0])
        assert np.all(self.y[self.z == 0] == 0)


@dataclass
class RunStatistics:
    """Channel-estimation summary of a Monte Carlo run."""

    n_blocks: int
    count_histogram: CountDistribution
    ber: float
    i_ab: float
    mean_w: float


def difference_bits(x: np.ndarray) -> np.ndarray:
    """XOR of adjacent modulation bits; entry j belongs to slot j+2."""
    x = np.asarray(x, dtype=np.uint8)
    if x.size < 2:
        raise ValueError("need at least two pulses to form differences")
    return x[1:] ^ x[:-1]


def simulate_block(
    x: np.ndarray, alpha: float, eta: float, rng: np.random.Generator
) -> BlockRecord:
    """Measure one honest-channel block.

    Per slot the correct detector fires independently with probability
    1 - exp(-eta*alpha^2); the wrong detector never fires, so the measured
    difference bit equals l_i on every click.
    """
    x = np.asarray(x, dtype=np.uint8)
    l = difference_bits(x)
    r = honest_click_rate(alpha, eta)
    n = x.size
    clicks = (rng.random(n - 1) < r).astype(np.uint8)
    z = np.zeros(n, dtype=np.uint8)
    z[1:] = clicks
    y = np.zeros(n, dtype=np.uint8)
    y[1:] = l & clicks
    ua = np.zeros(n, dtype=np.uint8)
    ua[1:] = l & z[1:]
    ub = y & z
    positions = np.nonzero(z)[0]
    return BlockRecord(
        x=x, l=l, z=z, y=y, uA=ua, uB=ub, w=int(z.sum()), positions=positions
    )


def block_rng(seed: int, index: int) -> np.random.Generator:
    """Deterministic per-block stream: child of (master seed, block index).

    The derivation is order-independent, so blocks can be simulated in any
    order (or in parallel) without changing results.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0, index)))


def publish_rng(seed: int) -> np.random.Generator:
    """Stream for the test-pair selection, disjoint from all block streams."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))


def simulate_run(config: SimulationConfig) -> list[BlockRecord]:
    """Simulate config.n_blocks blocks with uniform i.i.d. modulation bits."""
    blocks = []
    for k in range(config.n_blocks):
        rng = block_rng(config.seed, k)
        x = rng.integers(0, 2, size=config.n_pulses, dtype=np.uint8)
        blocks.append(simulate_block(x, config.alpha, config.eta, rng))
    return blocks


def sift(record: BlockRecord) -> tuple[np.ndarray, np.ndarray]:
    """Difference and measurement bits at the clicked slots, in click order."""
    pos = record.positions
    return record.l[pos - 1], record.y[pos]


def estimate_statistics(
    blocks: Sequence[BlockRecord],
    publish_fraction: float = 0.1,
    rng: np.random.Generator | None = None,
) -> RunStatistics:
    """Channel estimation over a run.

    BER is evaluated on a randomly drawn ``publish_fraction`` of all sifted
    (l, y) pairs; those pairs would be dropped from the final key but do not
    affect the statistics below. The conditional mutual information between
    the sifted strings is estimated with the factorized plug-in
    h(p1) * mean_w, where p1 is the pooled frequency of ones over all sifted
    difference bits: slots click independently of the modulation, so the
    per-block string entropy is the sum of identical per-slot terms. In the
    noiseless uniform-modulation model this converges to the mean count.
    """
    if len(blocks) == 0:
        raise ValueError("need at least one block")
    if not 0.0 < publish_fraction <= 1.0:
        raise ValueError(f"publish_fraction must lie in (0, 1], got {publish_fraction!r}")
    if rng is None:
        rng = np.random.default_rng(0)

    n = blocks[0].n_pulses
    counts = np.zeros(n, dtype=np.int64)
    ones = 0
    sifted_l = []
    sifted_y = []
    for rec in blocks:
        if rec.n_pulses != n:
            raise ValueError("all blocks in a run must share the block length")
        counts[rec.w] += 1
        l_z, y_z = sift(rec)
        ones += int(l_z.sum())
        sifted_l.append(l_z)
        sifted_y.append(y_z)

    all_l = np.concatenate(sifted_l) if sifted_l else np.empty(0, dtype=np.uint8)
    all_y = np.concatenate(sifted_y) if sifted_y else np.empty(0, dtype=np.uint8)
    n_pairs = int(all_l.size)
    n_published = int(round(publish_fraction * n_pairs))
    if n_published > 0:
        chosen = rng.choice(n_pairs, size=n_published, replace=False)
        ber = float(np.mean(all_l[chosen] != all_y[chosen]))
    else:
        ber = 0.0

    mean_w = float(counts.dot(np.arange(n)) / len(blocks))
    if n_pairs == 0:
        i_ab = 0.0
    else:
        i_ab = binary_entropy(ones / n_pairs) * mean_w

    return RunStatistics(
        n_blocks=len(blocks),
        count_histogram=CountDistribution.from_counts(counts),
        ber=ber,
        i_ab=i_ab,
        mean_w=mean_w,
    )


def exact_count_distribution(n_pulses: int, r: float) -> CountDistribution:
    """Binomial count distribution P(w) = C(N-1, w) r^w (1-r)^(N-1-w).

    Computed in log space (log-gamma) so block lengths up to 1e5 do not
    underflow; the exponentiated weights are renormalized by their sum to
    hold the unit-sum invariant to better than 1e-12.
    """
    if n_pulses < 2:
        raise ValueError("need at least two pulses")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"click probability must lie in [0, 1], got {r!r}")
    w = np.arange(n_pulses)
    weights = np.exp(binom.logpmf(w, n_pulses - 1, r))
    weights /= weights.sum()
    return CountDistribution.from_weights(weights)


def weight_invariance_check(n_pulses: int, r: float) -> float:
    """Max spread of exact click-pattern probabilities within a weight class.

    Enumerates every pattern z over slots 2..N under the honest channel,
    accumulating each probability factor-by-factor in slot order, and returns
    max over w of (max - min) of P(z) among patterns of weight w. The honest
    channel clicks independently of the modulation, so the result must be
    indistinguishable from zero: announcement statistics depend on the total
    count only, not on click positions.
    """
    if n_pulses > MAX_ENUMERATION_PULSES:
        raise ValueError(
            f"exact enumeration supports N <= {MAX_ENUMERATION_PULSES}, got {n_pulses}"
        )
    if n_pulses < 2:
        raise ValueError("need at least two pulses")
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"click probability must lie in [0, 1], got {r!r}")
    slots = n_pulses - 1
    lo = np.full(n_pulses, np.inf)
    hi = np.full(n_pulses, -np.inf)
    for pattern in range(2**slots):
        prob = 1.0
        weight = 0
        for j in range(slots):
            if (pattern >> j) & 1:
                prob *= r
                weight += 1
            else:
                prob *= 1.0 - r
        lo[weight] = min(lo[weight], prob)
        hi[weight] = max(hi[weight], prob)
    spread = hi - lo
    return float(spread[np.isfinite(spread)].max())
