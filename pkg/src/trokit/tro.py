"""Selfadjoint ternary rings of operators inside matrix algebras.

A *-TRO here is a subspace Z of d x d complex matrices that is closed
under the adjoint and under the ternary product ``[x, y, z] = x y* z``.
Such a space generates two auxiliary objects that drive the order
theory:

* its square ``Z^2 = span{z w : z, w in Z}`` (an honest *-algebra once
  Z is selfadjoint),
* the algebra part ``Z \\cap Z^2``, a C*-algebra whose positive cone is
  exactly the set of positive matrices lying in Z,
* the center: all ``v in Z`` commuting with every element of ``Z^2``.

:class:`Tro` certifies the defining conditions at construction time and
caches the derived subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import (
    Subspace,
    Tolerance,
    adjoint,
    as_matrix,
    hs_norm,
    intersect,
    orthonormalize,
    span_union,
    subspace_equal,
)

__all__ = [
    "Tro",
    "TroError",
    "ternary_product",
    "closure_from_generators",
    "is_ternary_closed",
    "is_selfadjoint_space",
    "algebra_part",
    "center_of",
    "orthocomplement_ideal",
    "direct_sum",
]


class TroError(ValueError):
    """Raised when a subspace fails *-TRO certification."""


def ternary_product(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    return as_matrix(x) @ adjoint(as_matrix(y)) @ as_matrix(z)


def _triple_batch(basis: np.ndarray) -> np.ndarray:
    """All ternary products of basis elements, flattened to (k^3, d, d).

    Chunked over the first index so certification of larger spans stays
    within memory bounds.
    """
    k = basis.shape[0]
    if k == 0:
        return basis.copy()
    out = []
    conj = basis.conj()
    for i in range(k):
        # products basis[i] @ basis[j]^* @ basis[l]
        left = basis[i][None, :, :] @ np.swapaxes(conj, 1, 2)  # (k, d, d)
        prod = np.einsum("jab,lbd->jlad", left, basis)
        out.append(prod.reshape(k * k, *basis.shape[1:]))
    return np.concatenate(out, axis=0)


def is_ternary_closed(space: Subspace, tol: Tolerance | float | None = None) -> bool:
    """Exhaustively checks ``[b_i, b_j, b_l]`` in ``space`` over the basis;
    by multilinearity this settles the whole space."""
    t = Tolerance.of(tol)
    if space.dim == 0:
        return True
    triples = _triple_batch(space.onb)
    flat = triples.reshape(triples.shape[0], -1)
    resid = flat - (flat @ np.conj(space.vecs.T)) @ space.vecs
    norms = np.linalg.norm(resid, axis=1)
    scales = np.maximum(1.0, np.linalg.norm(flat, axis=1))
    return bool(np.all(norms <= t.eps * scales))


def is_selfadjoint_space(space: Subspace, tol: Tolerance | float | None = None) -> bool:
    return space.is_selfadjoint_set(tol)


def _square_of(space: Subspace, tol: Tolerance) -> Subspace:
    """span{z w : z, w in space}.  Valid as the square once the space is
    selfadjoint, since then products z w and z w* span the same set."""
    if space.dim == 0:
        return Subspace.zero(space.ambient_dim)
    b = space.onb
    prods = np.einsum("iab,jbc->ijac", b, b).reshape(-1, *b.shape[1:])
    return orthonormalize(list(prods), dim=space.ambient_dim, tol=tol)


def _center_of(space: Subspace, square: Subspace, tol: Tolerance) -> Subspace:
    """Solve ``a c - c a = 0`` for c in ``space``, over all a in ``square``.

    The constraint is linear in the coordinates of c with respect to the
    basis of ``space``; the nullspace of the stacked commutator action
    gives the center coordinates.
    """
    d = space.ambient_dim
    if space.dim == 0:
        return Subspace.zero(d)
    if square.dim == 0:
        return Subspace(space.ambient_dim, space.onb.copy())
    rows = []
    for a in square.onb:
        comms = a[None, :, :] @ space.onb - space.onb @ a[None, :, :]
        rows.append(comms.reshape(space.dim, d * d).T)
    m = np.concatenate(rows, axis=0)  # (square.dim * d^2, space.dim)
    _, svals, vh = np.linalg.svd(m, full_matrices=True)
    scale = float(svals[0]) if svals.size else 0.0
    cut = tol.cutoff(scale)
    rank = int(np.sum(svals > cut))
    null = vh[rank:].conj()  # rows span the nullspace
    mats = [(c @ space.vecs).reshape(d, d) for c in null]
    return orthonormalize(mats, dim=d, tol=tol) if mats else Subspace.zero(d)


@dataclass(frozen=True)
class Tro:
    """A certified *-TRO with its cached derived subspaces."""

    space: Subspace
    square: Subspace
    alg_part: Subspace
    center: Subspace
    tol: Tolerance

    @property
    def ambient_dim(self) -> int:
        return self.space.ambient_dim

    @property
    def dim(self) -> int:
        return self.space.dim

    @staticmethod
    def certify(space: Subspace, tol: Tolerance | float | None = None) -> "Tro":
        t = Tolerance.of(tol)
        if not is_selfadjoint_space(space, t):
            raise TroError("subspace is not closed under the adjoint")
        if not is_ternary_closed(space, t):
            raise TroError("subspace is not closed under x y* z")
        square = _square_of(space, t)
        alg = intersect(space, square, t)
        cen = _center_of(space, square, t)
        return Tro(space=space, square=square, alg_part=alg, center=cen, tol=t)

    @staticmethod
    def from_matrices(mats: Sequence[np.ndarray], dim: int | None = None,
                      tol: Tolerance | float | None = None) -> "Tro":
        """Certify the span of the given matrices directly (no closure)."""
        t = Tolerance.of(tol)
        return Tro.certify(orthonormalize(mats, dim=dim, tol=t), t)


def closure_from_generators(generators: Sequence[np.ndarray], dim: int | None = None,
                            tol: Tolerance | float | None = None) -> Tro:
    """Smallest *-TRO containing the generators.

    Alternates adjoining adjoints and ternary products of a current basis,
    re-orthonormalizing, until the dimension stabilizes.  The dimension
    strictly grows per round, so at most d^2 rounds occur; the cap is
    still enforced defensively.
    """
    t = Tolerance.of(tol)
    gens = [as_matrix(g) for g in generators]
    if not gens and dim is None:
        raise ValueError("ambient dimension required for an empty generator list")
    d = dim if dim is not None else gens[0].shape[0]
    seed = gens + [adjoint(g) for g in gens]
    space = orthonormalize(seed, dim=d, tol=t)
    for _ in range(d * d + 1):
        if space.dim == 0:
            break
        triples = _triple_batch(space.onb)
        grown = orthonormalize(list(space.onb) + list(triples), dim=d, tol=t)
        if grown.dim == space.dim:
            space = grown
            break
        space = grown
    else:
        raise RuntimeError("ternary closure failed to stabilize within d^2 rounds")
    return Tro.certify(space, t)


def algebra_part(z: Tro) -> Subspace:
    """The C*-algebra ``Z \\cap Z^2`` inside Z; the span of Z's positives."""
    return z.alg_part


def center_of(z: Tro) -> Subspace:
    return z.center


def orthocomplement_ideal(z: Tro, ideal: Subspace,
                          tol: Tolerance | float | None = None) -> Subspace:
    """``{x in Z : x j = 0 for every j in the ideal}``.

    With ``ideal = algebra_part(z)`` this is the complementary ternary
    ideal: together they span Z again.
    """
    t = Tolerance.of(tol or z.tol)
    d = z.ambient_dim
    if z.dim == 0 or ideal.dim == 0:
        return Subspace(d, z.space.onb.copy())
    cols = []
    for j in ideal.onb:
        prods = z.space.onb @ j[None, :, :]
        cols.append(prods.reshape(z.dim, d * d).T)
    m = np.concatenate(cols, axis=0)
    _, svals, vh = np.linalg.svd(m, full_matrices=True)
    scale = float(svals[0]) if svals.size else 0.0
    rank = int(np.sum(svals > t.cutoff(scale)))
    null = vh[rank:].conj()
    mats = [(c @ z.space.vecs).reshape(d, d) for c in null]
    return orthonormalize(mats, dim=d, tol=t) if mats else Subspace.zero(d)


def direct_sum(a: Tro, b: Tro, tol: Tolerance | float | None = None) -> Tro:
    """Block-diagonal direct sum acting on the orthogonal sum of the
    ambient spaces."""
    t = Tolerance.of(tol or a.tol)
    da, db = a.ambient_dim, b.ambient_dim
    d = da + db
    mats = []
    for m in a.space.onb:
        big = np.zeros((d, d), dtype=complex)
        big[:da, :da] = m
        mats.append(big)
    for m in b.space.onb:
        big = np.zeros((d, d), dtype=complex)
        big[da:, da:] = m
        mats.append(big)
    return Tro.from_matrices(mats, dim=d, tol=t)


def reconstructs(z: Tro, parts: Sequence[Subspace],
                 tol: Tolerance | float | None = None) -> bool:
    """True iff the parts together span exactly ``z.space``."""
    t = Tolerance.of(tol or z.tol)
    joined = span_union(*(list(parts) or [Subspace.zero(z.ambient_dim)]), tol=t)
    return subspace_equal(joined, z.space, t)
