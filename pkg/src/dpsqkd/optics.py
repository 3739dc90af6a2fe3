"""Coherent-pulse optics: source block, lossy channel, interferometric detection.

A block of N phase-modulated coherent pulses enters a chain of delay
interferometers that beat every pulse against its predecessor. Slot i
(i = 2..N) feeds two threshold detectors: detector 1 fires on a phase
difference of pi, detector 0 on equal phases. Input modes are the N signal
paths a_1..a_N plus one vacuum port b_i per beam splitter; the output modes
at slot i are

    d_i^1 = (a_i - a_{i-1})/2 + i*(b_i + b_{i-1})/2
    d_i^0 = i*(a_i + a_{i-1})/2 + (b_{i-1} - b_i)/2

and two leftover modes carry the halves of pulse 1 and pulse N that never
meet a partner. Because the inputs are coherent states and the detectors are
threshold detectors, click statistics follow directly from the output
amplitudes (Poissonian photon counts) with no Fock-space truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Allowed defect in input-vs-output energy bookkeeping of the mode transform.
ENERGY_TOL = 1e-10

_SQRT_HALF = math.sqrt(0.5)


@dataclass
class CoherentBlock:
    """Amplitudes of one transmitted pulse block after channel loss.

    ``amplitudes[i]`` is the complex amplitude on path a_{i+1} in units of
    square-root photons; ``eta`` records the channel transmission already
    applied multiplicatively as sqrt(eta).
    """

    amplitudes: np.ndarray
    eta: float = 1.0

    def __post_init__(self) -> None:
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.size < 2:
            raise ValueError("a block needs at least two pulses")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"transmission must lie in [0, 1], got {self.eta!r}")

    @classmethod
    def honest(cls, x: np.ndarray, alpha: float, eta: float) -> "CoherentBlock":
        """Block produced by the lossless-modulator/pure-loss-channel model.

        Bit x_i = 1 encodes amplitude +alpha, x_i = 0 encodes -alpha; the
        channel scales every pulse by sqrt(eta), so all magnitudes are equal.
        """
        if alpha < 0.0:
            raise ValueError(f"amplitude must be nonnegative, got {alpha!r}")
        x = np.asarray(x, dtype=np.uint8)
        signs = np.where(x == 1, 1.0, -1.0)
        return cls(signs * (math.sqrt(eta) * alpha), eta)

    @property
    def n_pulses(self) -> int:
        return int(self.amplitudes.size)

    def total_energy(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass
class DetectorAmplitudes:
    """Output amplitudes of the interferometer network for one block.

    Entry j of ``delta0``/``delta1`` belongs to the slot beating pulse j+1
    against pulse j+2 (1-based), i.e. slots 2..N. ``undetected`` holds the
    two leftover amplitudes from the first and last pulse.
    """

    delta0: np.ndarray
    delta1: np.ndarray
    undetected: np.ndarray

    def total_energy(self) -> float:
        return float(
            np.sum(np.abs(self.delta0) ** 2)
            + np.sum(np.abs(self.delta1) ** 2)
            + np.sum(np.abs(self.undetected) ** 2)
        )


def mz_transform(block: CoherentBlock) -> DetectorAmplitudes:
    """Map block amplitudes to detector amplitudes.

    Vacuum ports contribute zero amplitude for coherent inputs, so only the
    signal part of the mode transform survives: delta1_i = (beta_i -
    beta_{i-1})/2, delta0_i = i*(beta_i + beta_{i-1})/2 (the global phase on
    delta0 is irrelevant to click statistics but kept for consistency with
    coefficient_matrix).
    """
    beta = block.amplitudes
    delta1 = (beta[1:] - beta[:-1]) / 2.0
    delta0 = 0.5j * (beta[1:] + beta[:-1])
    undetected = np.array([-1j * beta[0], 1j * beta[-1]]) * _SQRT_HALF
    out = DetectorAmplitudes(delta0=delta0, delta1=delta1, undetected=undetected)
    defect = abs(out.total_energy() - block.total_energy())
    if defect > ENERGY_TOL:
        raise AssertionError(f"energy bookkeeping defect {defect:.3e}")
    return out


def coefficient_matrix(n_pulses: int) -> np.ndarray:
    """Full unitary of the detection network on 2N modes.

    Columns are the input modes (a_1..a_N, b_1..b_N); rows are the output
    modes ordered (d_2^0, d_2^1, d_3^0, d_3^1, ..., d_N^0, d_N^1, leftover
    of pulse 1, leftover of pulse N). Coefficients are +-1/2 and +-i/2 on
    the detector rows, 1/sqrt(2) factors on the leftover rows.
    """
    n = int(n_pulses)
    if n < 2:
        raise ValueError("need at least two pulses")
    m = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    for i in range(1, n):  # slot beating pulse i-1 against pulse i (0-based)
        a_prev, a_cur = i - 1, i
        b_prev, b_cur = n + i - 1, n + i
        row0 = 2 * (i - 1)  # d^0 of this slot
        m[row0, a_cur] = 0.5j
        m[row0, a_prev] = 0.5j
        m[row0, b_prev] = 0.5
        m[row0, b_cur] = -0.5
        row1 = row0 + 1  # d^1 of this slot
        m[row1, a_cur] = 0.5
        m[row1, a_prev] = -0.5
        m[row1, b_cur] = 0.5j
        m[row1, b_prev] = 0.5j
    m[2 * n - 2, 0] = -1j * _SQRT_HALF  # half of pulse 1 with its vacuum port
    m[2 * n - 2, n] = _SQRT_HALF
    m[2 * n - 1, n - 1] = 1j * _SQRT_HALF  # half of pulse N with its vacuum port
    m[2 * n - 1, 2 * n - 1] = _SQRT_HALF
    return m


def click_probability(delta: complex) -> float:
    """Probability that an ideal threshold detector fires on amplitude delta.

    A coherent state of amplitude delta carries Poissonian photon counts with
    mean |delta|^2, so the no-click probability is exp(-|delta|^2).
    """
    mu = abs(delta) ** 2
    return float(-math.expm1(-mu))


def honest_click_rate(alpha: float, eta: float) -> float:
    """Per-slot click probability in the honest model: 1 - exp(-eta*alpha^2).

    Each slot's firing detector receives amplitude of magnitude
    sqrt(eta)*alpha regardless of slot index or modulation, which is what
    makes the announcement statistics depend on the count alone.
    """
    if alpha < 0.0:
        raise ValueError(f"amplitude must be nonnegative, got {alpha!r}")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission must lie in [0, 1], got {eta!r}")
    return float(-math.expm1(-eta * alpha * alpha))


def wrong_detector_amplitude(block: CoherentBlock, l: np.ndarray) -> np.ndarray:
    """Amplitude at the detector opposite to the encoded phase difference.

    For difference bit l_i the correct detector is DET_i^{l_i}; this returns
    the amplitude at DET_i^{1-l_i} per slot. In the honest model every entry
    is exactly zero (equal magnitudes cancel), which is precisely the
    no-bit-error condition; unequal pulse intensities break the cancellation
    and produce bit errors with nonzero probability.
    """
    l = np.asarray(l, dtype=np.uint8)
    if l.shape != (block.n_pulses - 1,):
        raise ValueError(
            f"expected {block.n_pulses - 1} difference bits, got shape {l.shape}"
        )
    out = mz_transform(block)
    return np.where(l == 1, out.delta0, out.delta1)
