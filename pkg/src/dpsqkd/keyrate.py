"""Lower-bound key-rate engine.

Inputs are the block length N, the source entropy S(A), and the distribution
P(w) of Bob's click count per block (exact binomial or empirical). The chain

    K  = (N-1)[1 - P(0)] - N*S(A)          Holevo-derived constraint
    w0 = largest count threshold admitted by K
    G >= sum_{w=1}^{w0} P(w) w - Delta     key bits per block

is the worst-case allocation of the adversary's conditional-entropy budget:
counts above w0 are written off entirely, counts up to w0 contribute their
full w bits. Delta is the shortfall of the parties' measured mutual
information below the maximum sum_w P(w) w (zero in the noiseless
uniform-modulation model). All functions are pure and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .entropy import source_entropy
from .errors import InconsistentStatisticsError
from .optics import honest_click_rate
from .protocol import CountDistribution, exact_count_distribution

# Delta below this is an estimation bug, not sampling noise.
SHORTFALL_ERROR_TOL = -1e-6

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass
class KeyRateReport:
    """All inputs and outputs of one key-rate evaluation."""

    n_pulses: int
    alpha: float
    eta: float
    s_a: float
    k_constraint: float
    w0: int
    delta: float
    g_block_raw: float
    g_block: float
    g_pulse: float
    distribution_source: str

    def to_dict(self) -> dict:
        return {
            "n_pulses": self.n_pulses,
            "alpha": self.alpha,
            "eta": self.eta,
            "s_a": self.s_a,
            "k_constraint": self.k_constraint,
            "w0": self.w0,
            "delta": self.delta,
            "g_block_raw": self.g_block_raw,
            "g_block": self.g_block,
            "g_pulse": self.g_pulse,
            "distribution_source": self.distribution_source,
        }


class KeyRateBound(NamedTuple):
    raw: float
    clamped: float


class GaussianLimit(NamedTuple):
    finite_rate: float
    limit_rate: float
    relative_gap: float | None


def _check_dist(dist: CountDistribution, n_pulses: int) -> None:
    if dist.n_pulses != n_pulses:
        raise ValueError(
            f"distribution supports counts 0..{dist.n_pulses - 1}, "
            f"inconsistent with N={n_pulses}"
        )


def holevo_constraint(dist: CountDistribution, n_pulses: int, s_a: float) -> float:
    """K = (N-1)[1 - P(0)] - N*S(A); may be negative."""
    _check_dist(dist, n_pulses)
    if not 0.0 <= s_a <= 1.0:
        raise ValueError(f"source entropy must lie in [0, 1], got {s_a!r}")
    p0 = float(dist.weights[0])
    return (n_pulses - 1) * (1.0 - p0) - n_pulses * s_a


def count_threshold(dist: CountDistribution, n_pulses: int, k: float) -> int:
    """Largest w0 with sum_{w=1}^{w0} P(w)(N-1) <= K.

    Returns 0 when K <= 0 (the constraint admits nothing) and N-1 when even
    the full sum stays within K. When a cumulative sum equals K exactly the
    larger threshold is taken, which is the deterministic, conservative
    reading of the boundary case.
    """
    _check_dist(dist, n_pulses)
    if k <= 0.0:
        return 0
    partial = (n_pulses - 1) * np.cumsum(dist.weights[1:])
    return int(np.searchsorted(partial, k, side="right"))


def key_rate_bound(
    dist: CountDistribution, n_pulses: int, w0: int, delta: float = 0.0
) -> KeyRateBound:
    """G >= sum_{w=1}^{w0} P(w) w - Delta, raw and clamped at zero."""
    _check_dist(dist, n_pulses)
    if not 0 <= w0 <= n_pulses - 1:
        raise ValueError(f"w0 must lie in [0, {n_pulses - 1}], got {w0!r}")
    w = np.arange(1, w0 + 1, dtype=np.float64)
    raw = float((w * dist.weights[1 : w0 + 1]).sum()) - delta
    return KeyRateBound(raw=raw, clamped=max(0.0, raw))


def information_shortfall(i_ab: float, dist: CountDistribution) -> float:
    """Delta = sum_w P(w) w - I(A:B|announcement), floored at zero.

    A shortfall below -1e-6 means the estimated mutual information exceeds
    the information-theoretic maximum and is flagged as inconsistent
    statistics; smaller negatives are sampling noise and clamp to zero.
    """
    if i_ab < 0.0:
        raise ValueError(f"mutual information must be nonnegative, got {i_ab!r}")
    delta = dist.mean_count() - i_ab
    if delta < SHORTFALL_ERROR_TOL:
        raise InconsistentStatisticsError(
            f"mutual information {i_ab!r} exceeds the mean count "
            f"{dist.mean_count()!r} by more than {-SHORTFALL_ERROR_TOL}"
        )
    return max(0.0, delta)


def asymptotic_rate(alpha: float, eta: float, convention: str = "paper") -> float:
    """Closed-form key bits per pulse in the large-block, noiseless limit.

    g = eta * alpha^2 * (1 - S(A)), linear in the channel transmission.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {eta!r}")
    return eta * alpha * alpha * (1.0 - source_entropy(alpha, convention))


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal scalar function."""
    a, b = lo, hi
    h = b - a
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc, yd = f(c), f(d)
    while h > tol:
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = f(d)
    x = (a + b) / 2.0
    return x, f(x)


def optimize_amplitude(
    eta: float,
    convention: str = "paper",
    lo: float = 0.01,
    hi: float = 1.5,
    grid_step: float = 1e-3,
    refine_tol: float = 1e-5,
) -> tuple[float, float]:
    """Amplitude maximizing the asymptotic per-pulse rate, and the maximum.

    Coarse grid scan over [lo, hi] followed by golden-section refinement of
    the bracketing interval down to ``refine_tol`` in alpha.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"transmission must lie in (0, 1], got {eta!r}")
    grid = np.arange(lo, hi + grid_step / 2.0, grid_step)
    rates = np.array([asymptotic_rate(a, eta, convention) for a in grid])
    best = int(np.argmax(rates))
    left = grid[max(best - 1, 0)]
    right = grid[min(best + 1, grid.size - 1)]
    alpha_star, g_star = _golden_max(
        lambda a: asymptotic_rate(a, eta, convention), left, right, refine_tol
    )
    if rates[best] > g_star:  # degenerate bracket at the domain edge
        return float(grid[best]), float(rates[best])
    return float(alpha_star), float(g_star)


def gaussian_limit(
    alpha: float, eta: float, n_pulses: int, convention: str = "paper"
) -> GaussianLimit:
    """Finite-N bound vs its large-block limit for the binomial channel.

    The finite bound runs the full chain on the exact binomial distribution
    with r = 1 - exp(-eta*alpha^2) and Delta = 0; the limit is
    (N-1) * r * [1 - S(A)], the delta-function concentration of the count
    distribution at its mean. The relative gap is undefined (None) when the
    limit vanishes.
    """
    r = honest_click_rate(alpha, eta)
    s_a = source_entropy(alpha, convention)
    dist = exact_count_distribution(n_pulses, r)
    k = holevo_constraint(dist, n_pulses, s_a)
    w0 = count_threshold(dist, n_pulses, k)
    finite = key_rate_bound(dist, n_pulses, w0).raw
    limit = (n_pulses - 1) * r * (1.0 - s_a)
    gap = abs(finite / limit - 1.0) if limit > 0.0 else None
    return GaussianLimit(finite_rate=finite, limit_rate=limit, relative_gap=gap)


def evaluate(
    dist: CountDistribution,
    alpha: float,
    eta: float,
    convention: str = "paper",
    i_ab: float | None = None,
    distribution_source: str = "exact",
) -> KeyRateReport:
    """Run the full chain on a count distribution and collect the report.

    With ``i_ab`` given, Delta is derived from it; otherwise Delta = 0 (the
    noiseless model's theoretical value).
    """
    n_pulses = dist.n_pulses
    s_a = source_entropy(alpha, convention)
    k = holevo_constraint(dist, n_pulses, s_a)
    w0 = count_threshold(dist, n_pulses, k)
    delta = 0.0 if i_ab is None else information_shortfall(i_ab, dist)
    bound = key_rate_bound(dist, n_pulses, w0, delta)
    return KeyRateReport(
        n_pulses=n_pulses,
        alpha=alpha,
        eta=eta,
        s_a=s_a,
        k_constraint=k,
        w0=w0,
        delta=delta,
        g_block_raw=bound.raw,
        g_block=bound.clamped,
        g_pulse=bound.clamped / (n_pulses - 1),
        distribution_source=distribution_source,
    )
