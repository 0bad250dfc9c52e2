"""Seeded random unitaries, pure states and density matrices."""

from __future__ import annotations

import numpy as np


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random n x n unitary: QR of a complex Ginibre matrix, phase-fixed."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph


def random_pure_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random state vector in C^n."""
    psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return psi / np.linalg.norm(psi)


def random_density_matrix(
    n: int, rng: np.random.Generator, rank: int | None = None
) -> np.ndarray:
    """Random mixed state: partial trace of a Haar-random pure state on C^n x C^rank."""
    k = n if rank is None else rank
    if k < 1:
        raise ValueError("rank must be >= 1")
    psi = random_pure_state(n * k, rng).reshape(n, k)
    return psi @ psi.conj().T


def random_hermitian_unit_trace(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix shifted to unit trace; generally indefinite."""
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (g + g.conj().T) / 2.0
    h += (1.0 - np.trace(h).real) / n * np.eye(n)
    return h
