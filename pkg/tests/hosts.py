"""Reusable matrix hosts for the test suite."""

from __future__ import annotations

import numpy as np

from trokit import Tro, closure_from_generators, direct_sum, matrix_unit


def diagonal_tro(n: int) -> Tro:
    return closure_from_generators([matrix_unit(n, i, i) for i in range(n)])


def full_matrix_tro(d: int) -> Tro:
    gens = [matrix_unit(d, i, j) for i in range(d) for j in range(d)]
    return closure_from_generators(gens)


def corner_tro(d: int, e: np.ndarray | None = None) -> Tro:
    """e M_d (1-e) + (1-e) M_d e for a projection e; defaults to the
    rank-1 projection onto the first coordinate."""
    if e is None:
        e = np.zeros((d, d), dtype=complex)
        e[0, 0] = 1.0
    f = np.eye(d) - e
    gens = [e @ matrix_unit(d, i, j) @ f for i in range(d) for j in range(d)]
    return closure_from_generators(gens, dim=d)


def random_projection(d: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(a)
    return q[:, :rank] @ q[:, :rank].conj().T


def random_generated_tro(d: int, k: int, rng: np.random.Generator) -> Tro:
    gens = [rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for _ in range(k)]
    return closure_from_generators(gens, dim=d)


def block_host(*dims: int) -> Tro:
    """Direct sum of full matrix algebras with the given block sizes."""
    parts = [full_matrix_tro(d) for d in dims]
    out = parts[0]
    for p in parts[1:]:
        out = direct_sum(out, p)
    return out
