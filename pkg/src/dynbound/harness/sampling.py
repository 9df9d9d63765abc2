"""Seeded random states and Hermitian matrices."""

import numpy as np

from ..operators import HermitianOperator, PureState

MASK64 = (1 << 64) - 1


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit integer hash."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def child_seed(seed: int, index: int) -> int:
    """Seed for trial ``index`` of a campaign: ``mix64(seed XOR index)``."""
    return mix64((seed & MASK64) ^ (index & MASK64))


def sample_haar_state(dim: int, seed: int) -> PureState:
    """Uniform random pure state: normalized vector of complex Gaussians."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    rng = np.random.default_rng(seed & MASK64)
    z = rng.standard_normal(2 * dim)
    v = z[:dim] + 1j * z[dim:]
    return PureState(v / np.linalg.norm(v))


def sample_hermitian(dim: int, seed: int, scale: float = 1.0) -> HermitianOperator:
    """GUE-style draw: ``scale * (M + M^dagger) / 2`` for complex Gaussian ``M``."""
    if dim < 2:
        raise ValueError("dim must be >= 2")
    if not scale > 0:
        raise ValueError("scale must be positive")
    rng = np.random.default_rng(seed & MASK64)
    m = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(0.5 * scale * (m + m.conj().T))
