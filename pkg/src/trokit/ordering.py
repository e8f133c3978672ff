"""Natural cones, Peirce calculus, and the classification report.

Each central selfadjoint tripotent u of a *-TRO Z induces a natural
cone: the set of x in Z with ``u x u = x`` and ``u x`` positive
semidefinite.  Matrix levels are ordered by the amplified tripotent
``diag(u, ..., u)``.  The Peirce space ``u Z u`` becomes a C*-algebra
under ``x . y = x u y`` with unit u, and a maximal tripotent splits Z
into that algebra and its orthocomplement ideal.

A space with trivial center admits no nonzero natural cone at all; the
classification report collects the counts that decide this.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    Subspace,
    Tolerance,
    adjoint,
    as_matrix,
    hs_norm,
    is_psd,
    orthonormalize,
)
from .tro import Tro
from .tripotents import (
    Tripotent,
    enumerate_central_tripotents,
    maximal_central_tripotents,
    meet,
)

__all__ = [
    "NaturalCone",
    "ClassificationReport",
    "cone_membership",
    "matrix_cone_membership",
    "peirce_space",
    "peirce_product",
    "decompose",
    "is_unorderable",
    "classify",
    "cone_intersection_is_meet",
]

MAX_MATRIX_LEVEL = 4


def cone_membership(x: np.ndarray, u: np.ndarray | Tripotent, z: Tro,
                    tol: Tolerance | float | None = None) -> bool:
    """x lies in the natural cone of u iff x is in Z, u x u = x, and u x
    is positive semidefinite."""
    t = Tolerance.of(tol or z.tol)
    a = as_matrix(x)
    w = u.u if isinstance(u, Tripotent) else as_matrix(u)
    if not z.space.contains(a, t):
        return False
    if hs_norm(w @ a @ w - a) > t.cutoff(hs_norm(a)):
        return False
    return is_psd(w @ a, t)


def matrix_cone_membership(blocks: list[list[np.ndarray]], u: np.ndarray | Tripotent,
                           z: Tro, tol: Tolerance | float | None = None) -> bool:
    """Membership of an n x n block matrix in the level-n matrix cone,
    tested against the amplified tripotent diag(u, ..., u).  Levels above
    MAX_MATRIX_LEVEL are rejected."""
    t = Tolerance.of(tol or z.tol)
    n = len(blocks)
    if n == 0 or any(len(row) != n for row in blocks):
        raise ValueError("blocks must form a square array")
    if n > MAX_MATRIX_LEVEL:
        raise ValueError(f"matrix level {n} exceeds the cap {MAX_MATRIX_LEVEL}")
    w = u.u if isinstance(u, Tripotent) else as_matrix(u)
    d = z.ambient_dim
    for row in blocks:
        for b in row:
            if not z.space.contains(as_matrix(b), t):
                return False
    big = np.block([[as_matrix(b) for b in row] for row in blocks])
    amp = np.kron(np.eye(n), w)
    if hs_norm(amp @ big @ amp - big) > t.cutoff(hs_norm(big)):
        return False
    return is_psd(amp @ big, t)


def peirce_space(u: np.ndarray | Tripotent, z: Tro,
                 tol: Tolerance | float | None = None) -> Subspace:
    """span{u b u : b a basis of Z}; for central u this is u^2 Z."""
    t = Tolerance.of(tol or z.tol)
    w = u.u if isinstance(u, Tripotent) else as_matrix(u)
    mats = [w @ b @ w for b in z.space.onb]
    return orthonormalize(mats, dim=z.ambient_dim, tol=t)


def peirce_product(x: np.ndarray, y: np.ndarray, u: np.ndarray | Tripotent) -> np.ndarray:
    """The C*-product x u y carried by the Peirce space of u."""
    w = u.u if isinstance(u, Tripotent) else as_matrix(u)
    return as_matrix(x) @ w @ as_matrix(y)


def decompose(z: Tro, u: Tripotent,
              tol: Tolerance | float | None = None) -> tuple[Subspace, Subspace]:
    """Split Z along a central tripotent into (u^2 Z, (1 - u^2) Z).

    For maximal u the first part is the Peirce algebra of u and the
    second is the orthocomplement ideal; their spans always reconstruct
    Z.  The zero tripotent yields ({0}, Z).
    """
    t = Tolerance.of(tol or z.tol)
    if not u.is_central:
        raise ValueError("decomposition requires a central tripotent")
    d = z.ambient_dim
    p = u.u @ u.u
    part = orthonormalize([p @ b for b in z.space.onb], dim=d, tol=t)
    complement = orthonormalize([b - p @ b for b in z.space.onb], dim=d, tol=t)
    return part, complement


def is_unorderable(z: Tro) -> bool:
    """True iff the center vanishes, i.e. the only natural cone is {0}."""
    return z.center.dim == 0


@dataclass(frozen=True)
class ClassificationReport:
    """Counts and invariants describing the natural orderings of a *-TRO."""

    ambient_dim: int
    space_dim: int
    square_dim: int
    algebra_part_dim: int
    center_dim: int
    block_count: int
    natural_cone_count: int
    maximal_cone_count: int
    unorderable: bool
    maximal_indices: tuple[int, ...]
    decomposition_dims: tuple[int, int]


def classify(z: Tro, tol: Tolerance | float | None = None,
             max_blocks: int = 12) -> ClassificationReport:
    """Full ordering classification of a *-TRO.

    The decomposition dimensions are computed at each maximal tripotent
    and verified to agree (they always do: maximal tripotents share the
    same support projection)."""
    t = Tolerance.of(tol or z.tol)
    from .tripotents import central_blocks

    tripotents = enumerate_central_tripotents(z, t, max_blocks=max_blocks)
    maximal = maximal_central_tripotents(z, t, max_blocks=max_blocks)
    block_count = len(central_blocks(z, t)) if z.center.dim else 0
    max_keys = {_key(m.u) for m in maximal}
    maximal_indices = tuple(i for i, tp in enumerate(tripotents)
                            if _key(tp.u) in max_keys)
    if maximal:
        seen: set[tuple[int, int]] = set()
        for m in maximal:
            part, comp = decompose(z, m, t)
            seen.add((part.dim, comp.dim))
        if len(seen) != 1:
            raise RuntimeError(f"maximal tripotents disagree on decomposition: {seen}")
        decomposition = next(iter(seen))
    else:
        decomposition = (0, z.dim)
    return ClassificationReport(
        ambient_dim=z.ambient_dim,
        space_dim=z.dim,
        square_dim=z.square.dim,
        algebra_part_dim=z.alg_part.dim,
        center_dim=z.center.dim,
        block_count=block_count,
        natural_cone_count=len(tripotents),
        maximal_cone_count=len(maximal),
        unorderable=is_unorderable(z),
        maximal_indices=maximal_indices,
        decomposition_dims=decomposition,
    )


def _key(u: np.ndarray) -> tuple:
    flat = u.ravel()
    return tuple(np.round(np.concatenate([flat.real, flat.imag]), 9).tolist())


@dataclass(frozen=True)
class NaturalCone:
    """The natural cone of a central tripotent inside a host *-TRO."""

    host: Tro
    tripotent: Tripotent

    def contains(self, x: np.ndarray, tol: Tolerance | float | None = None) -> bool:
        return cone_membership(x, self.tripotent, self.host, tol)

    def sample(self, rng: np.random.Generator, count: int) -> list[np.ndarray]:
        """Random cone elements e u e* with e drawn from the host space."""
        u = self.tripotent.u
        out = []
        for _ in range(count):
            e = self.host.space.random_element(rng)
            out.append(e @ u @ adjoint(e))
        return out

    def diagonal_rays(self, tol: Tolerance | float | None = None) -> list[np.ndarray]:
        """Extreme rays when the host consists of diagonal matrices only:
        one ray u_ii E_ii per nonvanishing diagonal entry of u."""
        t = Tolerance.of(tol or self.host.tol)
        d = self.host.ambient_dim
        offdiag = [abs(b[i, j]) for b in self.host.space.onb
                   for i in range(d) for j in range(d) if i != j]
        if offdiag and max(offdiag) > t.cutoff(1.0):
            raise ValueError("diagonal rays require a diagonal host")
        u = self.tripotent.u
        rays = []
        for i in range(d):
            val = u[i, i]
            if abs(val) > t.cutoff(1.0):
                ray = np.zeros((d, d), dtype=complex)
                ray[i, i] = val
                rays.append(ray)
        return rays


def cone_intersection_is_meet(u: Tripotent, v: Tripotent, z: Tro,
                              rng: np.random.Generator | None = None,
                              samples: int = 32,
                              tol: Tolerance | float | None = None,
                              ) -> tuple[bool, np.ndarray | None]:
    """Check that the intersection of two natural cones is the cone of
    the meet tripotent.

    Sampled evidence: elements of the meet cone must land in both cones,
    and sampled elements lying in both cones must land in the meet cone.
    On diagonal hosts the extreme rays are enumerated exhaustively, which
    settles the equality exactly.  Returns (verdict, witness).
    """
    t = Tolerance.of(tol or z.tol)
    rng = rng if rng is not None else np.random.default_rng(0)
    w = meet(u, v, host=z, tol=t)
    cu, cv, cw = NaturalCone(z, u), NaturalCone(z, v), NaturalCone(z, w)

    for x in cw.sample(rng, samples):
        if not (cu.contains(x, t) and cv.contains(x, t)):
            return False, x
    both = [x for x in cu.sample(rng, samples) + cv.sample(rng, samples)
            if cu.contains(x, t) and cv.contains(x, t)]
    # sums of common elements stay in the intersection
    both.extend(a + b for a, b in zip(both[::2], both[1::2]))
    for x in both:
        if not cw.contains(x, t):
            return False, x

    try:
        rays_u = cu.diagonal_rays(t)
        rays_v = cv.diagonal_rays(t)
        rays_w = cw.diagonal_rays(t)
    except ValueError:
        return True, None
    # on a diagonal host the cones are simplicial: compare ray sets
    def keyset(rays: list[np.ndarray]) -> set[tuple]:
        return {_key(r) for r in rays}

    common = keyset(rays_u) & keyset(rays_v)
    if common != keyset(rays_w):
        diff = common.symmetric_difference(keyset(rays_w))
        d = z.ambient_dim
        witness = np.array(list(diff)[0][: d * d]).reshape(d, d).astype(complex)
        return False, witness
    for r in rays_u:
        inter = cu.contains(r, t) and cv.contains(r, t)
        if inter != cw.contains(r, t):
            return False, r
    return True, None
