"""Selfadjoint central tripotents and their lattice.

A selfadjoint tripotent is a Hermitian matrix u with u^3 = u, i.e. a
difference p - q of two orthogonal projections.  The central ones (u in
the center of a *-TRO) classify the natural orderings of the space: u
``leq`` v iff ``u v u = u``, the meet of two central tripotents is
``(u v u + v u v) / 2``, and the maximal elements are the central
elements acting as a unit on the center.

Enumeration strategy: the selfadjoint part of the center is a commuting
Hermitian family, so it is simultaneously block-diagonalized; every
central element is a scalar on each joint eigenblock.  Candidate sign
patterns in {-1, 0, 1}^blocks are then filtered by membership in the
center subspace.  The pattern count is capped to keep enumeration at
desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Subspace, Tolerance, adjoint, as_matrix, hs_norm, is_hermitian, op_norm
from .tro import Tro

__all__ = [
    "Tripotent",
    "BlockCapError",
    "is_selfadjoint_tripotent",
    "leq",
    "meet",
    "central_blocks",
    "enumerate_central_tripotents",
    "maximal_central_tripotents",
]

# fixed seed for the generic combination used in the joint diagonalization;
# reports must be reproducible run to run
_BLOCK_SEED = 0x5EED


class BlockCapError(RuntimeError):
    """Enumeration would exceed the configured block cap."""


def is_selfadjoint_tripotent(u: np.ndarray, tol: Tolerance | float | None = None) -> bool:
    t = Tolerance.of(tol)
    m = as_matrix(u)
    if not is_hermitian(m, t):
        return False
    scale = max(1.0, op_norm(m)) ** 3
    return hs_norm(m @ m @ m - m) <= t.eps * scale


@dataclass(frozen=True)
class Tripotent:
    """A certified selfadjoint tripotent, flagged when it lies in the
    center of its host."""

    u: np.ndarray
    is_central: bool = False

    @staticmethod
    def certify(u: np.ndarray, host: Tro | None = None,
                tol: Tolerance | float | None = None) -> "Tripotent":
        t = Tolerance.of(tol)
        m = as_matrix(u)
        if not is_selfadjoint_tripotent(m, t):
            raise ValueError("matrix is not a selfadjoint tripotent")
        central = False
        if host is not None:
            if not host.space.contains(m, t):
                raise ValueError("tripotent does not lie in the host space")
            central = host.center.contains(m, t)
        return Tripotent(u=m, is_central=central)

    def negated(self) -> "Tripotent":
        return Tripotent(u=-self.u, is_central=self.is_central)

    def projection_split(self) -> tuple[np.ndarray, np.ndarray]:
        """The unique orthogonal projections p, q with u = p - q, pq = 0."""
        p = (self.u @ self.u + self.u) / 2.0
        q = (self.u @ self.u - self.u) / 2.0
        return p, q


def leq(u: np.ndarray | Tripotent, v: np.ndarray | Tripotent,
        tol: Tolerance | float | None = None) -> bool:
    """Tripotent order: u <= v iff u v u = u."""
    t = Tolerance.of(tol)
    a = u.u if isinstance(u, Tripotent) else as_matrix(u)
    b = v.u if isinstance(v, Tripotent) else as_matrix(v)
    scale = max(1.0, op_norm(a)) ** 2 * max(1.0, op_norm(b))
    return hs_norm(a @ b @ a - a) <= t.eps * scale


def meet(u: Tripotent, v: Tripotent, host: Tro | None = None,
         tol: Tolerance | float | None = None) -> Tripotent:
    """Greatest lower bound of two central tripotents: (u v u + v u v) / 2.

    Requires centrality; for non-commuting selfadjoint tripotents the
    formula need not even produce a tripotent.
    """
    t = Tolerance.of(tol)
    if not (u.is_central and v.is_central):
        raise ValueError("meet is defined for central tripotents")
    a, b = u.u, v.u
    w = (a @ b @ a + b @ a @ b) / 2.0
    out = Tripotent.certify(w, host=host, tol=t)
    if host is None:
        # centrality is inherited from the arguments
        out = Tripotent(u=out.u, is_central=True)
    return out


def _cluster(values: np.ndarray, thr: float) -> list[np.ndarray]:
    """Group sorted positions of a real vector into gap-separated clusters."""
    order = np.argsort(values)
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        if values[idx] - values[groups[-1][-1]] > thr:
            groups.append([])
        groups[-1].append(int(idx))
    return [np.array(g, dtype=int) for g in groups]


def _selfadjoint_family(center: Subspace) -> list[np.ndarray]:
    fam = []
    for c in center.onb:
        h1 = (c + adjoint(c)) / 2.0
        h2 = (c - adjoint(c)) / 2.0j
        for h in (h1, h2):
            if hs_norm(h) > 1e-14:
                fam.append(h)
    return fam


def central_blocks(z: Tro, tol: Tolerance | float | None = None) -> list[np.ndarray]:
    """Joint eigenblocks of the center: a list of matrices Q_b whose
    orthonormal columns span the common eigenspaces.  Every central
    element is scalar on each block.
    """
    t = Tolerance.of(tol or z.tol)
    d = z.ambient_dim
    fam = _selfadjoint_family(z.center)
    if not fam:
        return [np.eye(d, dtype=complex)]
    thr = np.sqrt(t.eps)
    rng = np.random.default_rng(_BLOCK_SEED)
    weights = rng.standard_normal(len(fam))
    generic = sum(w * h for w, h in zip(weights, fam))
    evals, evecs = np.linalg.eigh(generic)
    scale = max(1.0, float(np.max(np.abs(evals))))
    blocks = [evecs[:, g] for g in _cluster(evals, thr * scale)]
    # refine until every family member is scalar on every block
    for _ in range(d + 1):
        stable = True
        refined: list[np.ndarray] = []
        for q in blocks:
            pieces = [q]
            for h in fam:
                next_pieces = []
                for piece in pieces:
                    comp = piece.conj().T @ h @ piece
                    k = comp.shape[0]
                    mean = np.trace(comp) / k
                    hscale = max(1.0, op_norm(h))
                    if hs_norm(comp - mean * np.eye(k)) <= t.eps * hscale * k:
                        next_pieces.append(piece)
                        continue
                    sub_evals, sub_vecs = np.linalg.eigh(comp)
                    sub_scale = max(1.0, float(np.max(np.abs(sub_evals))))
                    groups = _cluster(sub_evals, thr * sub_scale)
                    if len(groups) == 1:
                        next_pieces.append(piece)
                        continue
                    stable = False
                    for g in groups:
                        next_pieces.append(piece @ sub_vecs[:, g])
                pieces = next_pieces
            refined.extend(pieces)
        blocks = refined
        if stable:
            break
    return blocks


def _pattern_space(z: Tro, blocks: list[np.ndarray]) -> np.ndarray:
    """Block-value vectors of the selfadjoint center family (rows)."""
    fam = _selfadjoint_family(z.center)
    if not fam:
        return np.zeros((0, len(blocks)))
    rows = []
    for h in fam:
        rows.append([float(np.real(np.trace(q.conj().T @ h @ q) / q.shape[1]))
                     for q in blocks])
    return np.array(rows)


def enumerate_central_tripotents(z: Tro, tol: Tolerance | float | None = None,
                                 max_blocks: int = 12) -> list[Tripotent]:
    """All selfadjoint tripotents in the center of z, zero included.

    Deterministic: the result is sorted by rounded matrix entries, so
    indices are stable across runs and platforms.
    """
    t = Tolerance.of(tol or z.tol)
    d = z.ambient_dim
    zero = Tripotent(np.zeros((d, d), dtype=complex), is_central=True)
    if z.center.dim == 0:
        return [zero]
    blocks = central_blocks(z, t)
    m = len(blocks)
    if m > max_blocks:
        raise BlockCapError(
            f"center splits into {m} joint eigenblocks; cap is {max_blocks}")
    patterns = _pattern_space(z, blocks)
    projectors = [q @ q.conj().T for q in blocks]
    found: list[Tripotent] = []
    for code in range(3 ** m):
        alpha = np.zeros(m)
        c = code
        for b in range(m):
            alpha[b] = float((c % 3) - 1)
            c //= 3
        # candidate must be a real combination of actual center directions
        coeff, resid, _, _ = np.linalg.lstsq(patterns.T, alpha, rcond=None)
        approx = patterns.T @ coeff
        if np.linalg.norm(alpha - approx) > t.cutoff(1.0):
            continue
        u = sum(a * p for a, p in zip(alpha, projectors))
        if not isinstance(u, np.ndarray):
            u = np.zeros((d, d), dtype=complex)
        if not z.center.contains(u, t):
            continue
        found.append(Tripotent.certify(u, host=z, tol=t))
    expected = 3 ** z.center.dim
    if len(found) != expected:
        raise RuntimeError(
            f"central tripotent enumeration found {len(found)}, expected "
            f"{expected} = 3^dim(center); joint-block refinement is suspect")
    found.sort(key=lambda tp: _sort_key(tp.u))
    return found


def _sort_key(u: np.ndarray) -> tuple:
    flat = u.ravel()
    re = np.round(flat.real, 9) + 0.0
    im = np.round(flat.imag, 9) + 0.0
    return tuple(np.concatenate([re, im]).tolist())


def maximal_central_tripotents(z: Tro, tol: Tolerance | float | None = None,
                               max_blocks: int = 12) -> list[Tripotent]:
    """Central tripotents acting as a unit on the center: u u c = c for
    every central c.  These are exactly the maximal elements of the
    tripotent order whenever the center is nonzero; for a trivial center
    the list is empty (only the zero tripotent exists and it generates
    no ordering).
    """
    t = Tolerance.of(tol or z.tol)
    if z.center.dim == 0:
        return []
    out = []
    for tp in enumerate_central_tripotents(z, t, max_blocks=max_blocks):
        uu = tp.u @ tp.u
        ok = all(
            hs_norm(uu @ c - c) <= t.cutoff(hs_norm(c))
            for c in z.center.onb
        )
        if ok:
            out.append(tp)
    return out
