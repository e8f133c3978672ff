"""Linear maps between *-TROs: ternary morphisms, complete positivity,
idempotent compressions, and the period-two automorphism.

A :class:`LinearMap` acts on vectorized (row-major) ambient matrices, so
composition and amplification are plain matrix algebra.  The checks
here are the computational halves of the structure theory:

* a ternary *-morphism preserves ``x y* z`` and the adjoint, verified
  exhaustively on basis triples;
* a positive ternary *-morphism induces a *-homomorphism on the square
  via ``pi(x* y) = T(x)* T(y)``, verified on an overcomplete generating
  set;
* positivity of such maps upgrades to complete positivity, probed by
  sampled block positives plus a deterministic maximally entangled
  witness when the domain is a full matrix algebra;
* a completely positive completely contractive idempotent compresses a
  *-TRO to a new involutive ternary system with cone ``P(Z+)``;
* when Z meets its square trivially, ``Z + Z^2`` carries the period-two
  *-automorphism fixing the square and negating Z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .linalg import (
    Subspace,
    Tolerance,
    adjoint,
    as_matrix,
    hs_norm,
    is_psd,
    matrix_unit,
    op_norm,
    orthonormalize,
    span_union,
)
from .tro import Tro, ternary_product

__all__ = [
    "LinearMap",
    "is_ternary_star_morphism",
    "is_selfadjoint_map",
    "induced_hom",
    "cp_refutation",
    "is_completely_positive_up_to",
    "CompressedSystem",
    "compress",
    "Automorphism",
    "period_two_automorphism",
]


@dataclass(frozen=True)
class LinearMap:
    """A linear map from the ambient algebra of ``domain`` into the
    d' x d' matrices, represented on vectorized matrices."""

    domain: Tro
    codomain_dim: int
    matrix: np.ndarray  # shape (codomain_dim^2, domain.ambient_dim^2)

    def __post_init__(self) -> None:
        expect = (self.codomain_dim ** 2, self.domain.ambient_dim ** 2)
        if self.matrix.shape != expect:
            raise ValueError(f"map matrix must have shape {expect}, got {self.matrix.shape}")

    def apply(self, m: np.ndarray) -> np.ndarray:
        v = as_matrix(m).ravel()
        dc = self.codomain_dim
        return (self.matrix @ v).reshape(dc, dc)

    def apply_blocks(self, blocks: list[list[np.ndarray]]) -> np.ndarray:
        """Entrywise amplification to an n x n block matrix."""
        return np.block([[self.apply(b) for b in row] for row in blocks])

    def compose(self, other: "LinearMap") -> "LinearMap":
        if other.codomain_dim != self.domain.ambient_dim:
            raise ValueError("composition dimension mismatch")
        return LinearMap(other.domain, self.codomain_dim, self.matrix @ other.matrix)

    @staticmethod
    def from_function(fn: Callable[[np.ndarray], np.ndarray], domain: Tro,
                      codomain_dim: int | None = None) -> "LinearMap":
        """Materialize a linear function by its action on matrix units."""
        d = domain.ambient_dim
        dc = codomain_dim if codomain_dim is not None else fn(matrix_unit(d, 0, 0)).shape[0]
        cols = np.zeros((dc * dc, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                cols[:, i * d + j] = as_matrix(fn(matrix_unit(d, i, j))).ravel()
        return LinearMap(domain, dc, cols)

    @staticmethod
    def from_pairs(domain: Tro, codomain_dim: int,
                   pairs: list[tuple[np.ndarray, np.ndarray]],
                   tol: Tolerance | float | None = None) -> "LinearMap":
        """Least-squares extension of input/output samples; the inputs
        must span the domain space.  Off the span the map is zero."""
        t = Tolerance.of(tol or domain.tol)
        if not pairs:
            raise ValueError("at least one pair is required")
        d = domain.ambient_dim
        xs = np.stack([as_matrix(x).ravel() for x, _ in pairs], axis=1)
        ys = np.stack([as_matrix(y).ravel() for _, y in pairs], axis=1)
        covered = orthonormalize([x for x, _ in pairs], dim=d, tol=t)
        for b in domain.space.onb:
            if not covered.contains(b, t):
                raise ValueError("pairs do not span the domain space")
        m = ys @ np.linalg.pinv(xs)
        resid = float(np.linalg.norm(m @ xs - ys))
        if resid > t.cutoff(float(np.linalg.norm(ys))):
            raise ValueError("pairs are not consistent with a linear map")
        return LinearMap(domain, codomain_dim, m)

    @staticmethod
    def identity(domain: Tro) -> "LinearMap":
        d = domain.ambient_dim
        return LinearMap(domain, d, np.eye(d * d, dtype=complex))

    @staticmethod
    def transpose_map(domain: Tro) -> "LinearMap":
        return LinearMap.from_function(lambda m: m.T, domain, domain.ambient_dim)

    @staticmethod
    def conjugation(domain: Tro, v: np.ndarray) -> "LinearMap":
        """x -> v x v*; for unitary v a ternary *-isomorphism onto v Z v*."""
        w = as_matrix(v)
        return LinearMap.from_function(lambda m: w @ m @ adjoint(w), domain, w.shape[0])

    @staticmethod
    def compression(domain: Tro, p: np.ndarray) -> "LinearMap":
        """x -> p x p for a projection p."""
        q = as_matrix(p)
        return LinearMap.from_function(lambda m: q @ m @ q, domain, q.shape[0])


def is_ternary_star_morphism(t_map: LinearMap,
                             tol: Tolerance | float | None = None) -> bool:
    """T([x, y, z]) = [Tx, Ty, Tz] and T(x*) = T(x)* over all basis
    triples of the domain space.  Both sides are linear in the outer
    slots and conjugate-linear in the middle one, so the basis check is
    conclusive."""
    t = Tolerance.of(tol or t_map.domain.tol)
    basis = t_map.domain.space.onb
    images = [t_map.apply(b) for b in basis]
    for b, tb in zip(basis, images):
        lhs = t_map.apply(adjoint(b))
        if hs_norm(lhs - adjoint(tb)) > t.cutoff(hs_norm(tb)):
            return False
    k = len(basis)
    for i in range(k):
        for j in range(k):
            for l in range(k):
                lhs = t_map.apply(ternary_product(basis[i], basis[j], basis[l]))
                rhs = ternary_product(images[i], images[j], images[l])
                if hs_norm(lhs - rhs) > t.cutoff(max(hs_norm(lhs), hs_norm(rhs))):
                    return False
    return True


def is_selfadjoint_map(t_map: LinearMap, tol: Tolerance | float | None = None) -> bool:
    t = Tolerance.of(tol or t_map.domain.tol)
    for b in t_map.domain.space.onb:
        if hs_norm(t_map.apply(adjoint(b)) - adjoint(t_map.apply(b))) > t.cutoff(1.0):
            return False
    return True


def induced_hom(t_map: LinearMap,
                tol: Tolerance | float | None = None) -> tuple[LinearMap, bool]:
    """The *-homomorphism pi on the square determined by
    ``pi(x* y) = T(x)* T(y)``.

    Built by least squares over the overcomplete generating set
    ``{b_i* b_j}``; the boolean reports whether those constraints were
    simultaneously satisfiable (well-definedness).  The returned map is
    defined on the square of the domain, certified as a *-TRO.
    """
    t = Tolerance.of(tol or t_map.domain.tol)
    z = t_map.domain
    d = z.ambient_dim
    basis = z.space.onb
    if len(basis) == 0:
        square_tro = Tro.certify(z.square, t)
        return LinearMap(square_tro, t_map.codomain_dim,
                         np.zeros((t_map.codomain_dim ** 2, d * d), dtype=complex)), True
    xs = []
    ys = []
    for x in basis:
        tx = t_map.apply(x)
        for y in basis:
            xs.append((adjoint(x) @ y).ravel())
            ys.append((adjoint(tx) @ t_map.apply(y)).ravel())
    xmat = np.stack(xs, axis=1)
    ymat = np.stack(ys, axis=1)
    m = ymat @ np.linalg.pinv(xmat)
    resid = float(np.linalg.norm(m @ xmat - ymat))
    scale = float(np.linalg.norm(ymat))
    well_defined = resid <= t.cutoff(scale)
    square_tro = Tro.certify(z.square, t)
    return LinearMap(square_tro, t_map.codomain_dim, m), well_defined


def _random_block_positive(z: Tro, level: int, rng: np.random.Generator) -> list[list[np.ndarray]]:
    """A positive element of the level-n matrix space over Z: C* C with
    blocks of C drawn from the algebra part, so every block of the
    product stays inside Z."""
    d = z.ambient_dim
    blocks = [[z.alg_part.random_element(rng) for _ in range(level)]
              for _ in range(level)]
    c = np.block(blocks) if level > 1 else blocks[0][0]
    x = adjoint(c) @ c
    return [[x[i * d:(i + 1) * d, j * d:(j + 1) * d] for j in range(level)]
            for i in range(level)]


def cp_refutation(t_map: LinearMap, max_level: int = 3,
                  rng: np.random.Generator | None = None,
                  samples: int = 8,
                  tol: Tolerance | float | None = None,
                  ) -> tuple[int, np.ndarray, np.ndarray] | None:
    """Search for a violation of complete positivity up to the given
    matrix level.

    Returns (level, X, T_level(X)) for a positive X whose image fails to
    be positive semidefinite, or None if no violation was found.  When
    the domain is the full matrix algebra, the maximally entangled
    block matrix [E_ij] is included deterministically at level d, which
    is a Choi-type certificate.
    """
    t = Tolerance.of(tol or t_map.domain.tol)
    rng = rng if rng is not None else np.random.default_rng(0)
    z = t_map.domain
    d = z.ambient_dim
    full_domain = z.space.dim == d * d
    for level in range(1, max_level + 1):
        candidates: list[list[list[np.ndarray]]] = []
        for _ in range(samples):
            candidates.append(_random_block_positive(z, level, rng))
        if full_domain and level == d:
            candidates.append([[matrix_unit(d, i, j) for j in range(d)]
                               for i in range(d)])
        for blocks in candidates:
            big = np.block([[as_matrix(b) for b in row] for row in blocks]) \
                if level > 1 else as_matrix(blocks[0][0])
            if not is_psd(big, t):
                continue  # sampling artifact; positives only
            image = t_map.apply_blocks(blocks)
            if not is_psd(image, t):
                return level, big, image
    return None


def is_completely_positive_up_to(t_map: LinearMap, max_level: int = 3,
                                 rng: np.random.Generator | None = None,
                                 samples: int = 8,
                                 tol: Tolerance | float | None = None) -> bool:
    """True means no refutation was found up to the level cap; a False
    is backed by a concrete positive witness with non-positive image."""
    return cp_refutation(t_map, max_level=max_level, rng=rng,
                         samples=samples, tol=tol) is None


@dataclass(frozen=True)
class CompressedSystem:
    """Image of a *-TRO under a completely positive contractive
    idempotent, as an involutive ternary system.

    The inherited product is ``P([x, y, z])`` and the inherited cone is
    ``P(Z+)``, which coincides with ``range \\cap Z+``."""

    source: Tro
    projection: LinearMap
    range_space: Subspace
    cone_span: Subspace

    def triple(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        p = self.projection
        return p.apply(ternary_product(p.apply(x), p.apply(y), p.apply(z)))

    def cone_contains(self, x: np.ndarray,
                      tol: Tolerance | float | None = None) -> bool:
        t = Tolerance.of(tol or self.source.tol)
        return self.range_space.contains(x, t) and is_psd(as_matrix(x), t)


def compress(p_map: LinearMap, tol: Tolerance | float | None = None,
             rng: np.random.Generator | None = None,
             samples: int = 16) -> CompressedSystem:
    """Compress a *-TRO by a completely positive completely contractive
    idempotent.

    Certifies idempotency on the domain, samples complete positivity and
    contractivity at levels one and two, and verifies the involution law
    ``[x, y, z]* = [z*, y*, x*]`` for the inherited product on the range
    basis.  Raises ValueError when any certificate fails.
    """
    t = Tolerance.of(tol or p_map.domain.tol)
    rng = rng if rng is not None else np.random.default_rng(0)
    z = p_map.domain
    d = z.ambient_dim
    if p_map.codomain_dim != d:
        raise ValueError("an idempotent must map the ambient algebra to itself")
    for b in z.space.onb:
        once = p_map.apply(b)
        if hs_norm(p_map.apply(once) - once) > t.cutoff(hs_norm(once)):
            raise ValueError("map is not idempotent on the domain")
        if not z.space.contains(once, t):
            raise ValueError("map does not leave the domain space invariant")
    if cp_refutation(p_map, max_level=2, rng=rng, samples=samples, tol=t) is not None:
        raise ValueError("map is not completely positive at levels <= 2")
    for level in (1, 2):
        for _ in range(samples):
            blocks = [[z.space.random_element(rng) for _ in range(level)]
                      for _ in range(level)]
            big = np.block(blocks) if level > 1 else blocks[0][0]
            image = p_map.apply_blocks(blocks)
            if op_norm(image) > op_norm(big) * (1.0 + 1e3 * t.eps) + t.cutoff(0.0):
                raise ValueError("map is not contractive at level %d" % level)

    rng_mats = [p_map.apply(b) for b in z.space.onb]
    range_space = orthonormalize(rng_mats, dim=d, tol=t)
    cone_span = orthonormalize([p_map.apply(b) for b in z.alg_part.onb], dim=d, tol=t)
    system = CompressedSystem(source=z, projection=p_map,
                              range_space=range_space, cone_span=cone_span)
    # involutive ternary law under the inherited product
    basis = range_space.onb
    for x in basis:
        for y in basis:
            for w in basis:
                lhs = adjoint(system.triple(x, y, w))
                rhs = system.triple(adjoint(w), adjoint(y), adjoint(x))
                if hs_norm(lhs - rhs) > t.cutoff(max(hs_norm(lhs), hs_norm(rhs))):
                    raise ValueError("inherited product violates the involution law")
                if not range_space.contains(system.triple(x, y, w), t):
                    raise ValueError("inherited product leaves the range")
    return system


@dataclass(frozen=True)
class Automorphism:
    """The period-two *-automorphism of A = Z + Z^2 when Z meets Z^2
    trivially: fixes the square, negates Z."""

    algebra: Tro
    module: Subspace
    square: Subspace
    matrix: np.ndarray

    def apply(self, m: np.ndarray) -> np.ndarray:
        d = self.algebra.ambient_dim
        return (self.matrix @ as_matrix(m).ravel()).reshape(d, d)


def period_two_automorphism(z: Tro,
                            tol: Tolerance | float | None = None) -> Automorphism:
    """Construct theta(a + x) = a - x on A = Z^2 + Z.

    Requires Z and Z^2 to intersect trivially, otherwise the grading is
    ill-defined and a ValueError is raised.  The result is certified:
    theta is multiplicative, *-preserving, involutive, with fixed space
    Z^2 and (-1)-eigenspace Z.
    """
    t = Tolerance.of(tol or z.tol)
    d = z.ambient_dim
    if z.alg_part.dim != 0:
        raise ValueError("Z intersects its square; the flip automorphism needs Z \\cap Z^2 = 0")
    alg = Tro.certify(span_union(z.square, z.space, tol=t), t)
    if alg.dim != z.square.dim + z.dim:
        raise ValueError("square and module overlap unexpectedly")
    cols = []
    flipped = []
    for b in z.square.onb:
        cols.append(b.ravel())
        flipped.append(b.ravel())
    for b in z.space.onb:
        cols.append(b.ravel())
        flipped.append(-b.ravel())
    basis_mat = np.stack(cols, axis=1)
    image_mat = np.stack(flipped, axis=1)
    theta = image_mat @ np.linalg.pinv(basis_mat)

    def act(m: np.ndarray) -> np.ndarray:
        return (theta @ m.ravel()).reshape(d, d)

    for b in alg.space.onb:
        tb = act(b)
        if hs_norm(act(tb) - b) > t.cutoff(1.0):
            raise RuntimeError("flip automorphism failed the involution check")
        if hs_norm(act(adjoint(b)) - adjoint(tb)) > t.cutoff(1.0):
            raise RuntimeError("flip automorphism failed the *-check")
    for a in alg.space.onb:
        for b in alg.space.onb:
            if hs_norm(act(a @ b) - act(a) @ act(b)) > t.cutoff(1.0):
                raise RuntimeError("flip automorphism failed multiplicativity")
    return Automorphism(algebra=alg, module=z.space, square=z.square, matrix=theta)
