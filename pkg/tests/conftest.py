"""Shared test helpers: independent oracles and state constructors."""

import math

import numpy as np
import pytest

from dpsqkd.entropy import DensityMatrix


def flat_index(idx, dims):
    f = 0
    for i, d in zip(idx, dims):
        f = f * d + i
    return f


def naive_partial_trace(entries, dims, keep):
    """Index-summation partial trace: explicit loops, no tensor machinery."""
    n = len(dims)
    keep = sorted(keep)
    drop = [i for i in range(n) if i not in keep]
    kept_dims = [dims[i] for i in keep]
    drop_dims = [dims[i] for i in drop]
    side = math.prod(kept_dims)
    out = np.zeros((side, side), dtype=np.complex128)
    traced_range = list(np.ndindex(*drop_dims)) if drop_dims else [()]
    for row_kept in np.ndindex(*kept_dims):
        for col_kept in np.ndindex(*kept_dims):
            acc = 0.0 + 0.0j
            for traced in traced_range:
                full_row = [0] * n
                full_col = [0] * n
                for pos, i in zip(keep, row_kept):
                    full_row[pos] = i
                for pos, i in zip(keep, col_kept):
                    full_col[pos] = i
                for pos, i in zip(drop, traced):
                    full_row[pos] = i
                    full_col[pos] = i
                acc += entries[flat_index(full_row, dims), flat_index(full_col, dims)]
            out[flat_index(row_kept, kept_dims), flat_index(col_kept, kept_dims)] = acc
    return out


def eigen_entropy_oracle(entries):
    """Entropy via scipy's eigensolver, independent of the library path."""
    from scipy.linalg import eigvalsh

    evals = eigvalsh((entries + entries.conj().T) / 2)
    evals = evals[evals > 1e-12]
    return float(-(evals * np.log2(evals)).sum())


def random_pure_state(rng, dims):
    d = math.prod(dims)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return DensityMatrix.from_pure(v, dims)


def random_mixed_state(rng, dims, ancilla=4):
    """Full-rank-ish mixed state: traced-out random pure state."""
    d = math.prod(dims)
    v = rng.standard_normal(d * ancilla) + 1j * rng.standard_normal(d * ancilla)
    v /= np.linalg.norm(v)
    a = v.reshape(d, ancilla)
    return DensityMatrix(a @ a.conj().T, dims)


@pytest.fixture
def bell_state():
    v = np.zeros(4)
    v[0] = v[3] = 1.0
    return DensityMatrix.from_pure(v, (2, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
