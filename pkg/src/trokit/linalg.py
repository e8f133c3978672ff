"""Dense complex matrix and subspace arithmetic.

Everything downstream (ternary closures, tripotent lattices, cone tests)
reduces to a handful of primitives defined here: Hilbert-Schmidt geometry
on vectorized matrices, Hermitian eigendecompositions, and tolerance
scaled rank decisions.

Matrices are plain square complex ``numpy`` arrays.  A :class:`Subspace`
stores an orthonormal basis (with respect to the Hilbert-Schmidt inner
product ``<a, b> = trace(a* b)``) of d x d matrices, vectorized row-major
internally.  Operator norms and positivity tests are obtained from
Hermitian eigendecompositions only; the largest singular value of ``m``
is recovered as the square root of the top eigenvalue of ``m* m``.

Every threshold is relative: a quantity counts as zero when it is below
``eps * max(1, scale)`` where ``scale`` is a norm of the inputs involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Tolerance",
    "TOL",
    "Subspace",
    "adjoint",
    "as_matrix",
    "hs_inner",
    "hs_norm",
    "op_norm",
    "is_hermitian",
    "is_psd",
    "matrix_unit",
    "orthonormalize",
    "span_union",
    "intersect",
    "subspace_equal",
]


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance used by every approximate decision.

    ``cutoff(scale)`` is the absolute threshold below which a residual of
    magnitude comparable to ``scale`` is treated as zero.
    """

    eps: float = 1e-9

    def __post_init__(self) -> None:
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")

    def cutoff(self, scale: float = 1.0) -> float:
        return self.eps * max(1.0, float(scale))

    @staticmethod
    def of(value: "Tolerance | float | None") -> "Tolerance":
        if value is None:
            return TOL
        if isinstance(value, Tolerance):
            return value
        return Tolerance(float(value))


TOL = Tolerance()


def as_matrix(m: np.ndarray | Sequence) -> np.ndarray:
    """Coerce input to a square complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(np.asarray(m, dtype=complex), -1, -2))


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product trace(a* b), conjugate-linear in a."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(m: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(m, dtype=complex)))


def op_norm(m: np.ndarray) -> float:
    """Operator (spectral) norm via the Hermitian eigenproblem for m* m."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    gram = adjoint(a) @ a
    evals = np.linalg.eigvalsh(gram)
    top = float(evals[-1])
    return float(np.sqrt(max(top, 0.0)))


def is_hermitian(m: np.ndarray, tol: Tolerance | float | None = None) -> bool:
    t = Tolerance.of(tol)
    a = as_matrix(m)
    return hs_norm(a - adjoint(a)) <= t.cutoff(hs_norm(a))


def is_psd(m: np.ndarray, tol: Tolerance | float | None = None) -> bool:
    """True iff m is Hermitian within tolerance and has no eigenvalue below
    ``-eps * max(1, |m|)``.  The zero matrix is positive semidefinite."""
    t = Tolerance.of(tol)
    a = as_matrix(m)
    if not is_hermitian(a, t):
        return False
    h = (a + adjoint(a)) / 2.0
    evals = np.linalg.eigvalsh(h)
    scale = float(np.max(np.abs(evals))) if evals.size else 0.0
    return bool(evals.size == 0 or evals[0] >= -t.cutoff(scale))


def matrix_unit(dim: int, i: int, j: int) -> np.ndarray:
    u = np.zeros((dim, dim), dtype=complex)
    u[i, j] = 1.0
    return u


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of d x d complex matrices.

    ``onb`` has shape (k, d, d); its rows, vectorized, form an orthonormal
    family for the Hilbert-Schmidt inner product.  Instances are built by
    :func:`orthonormalize` and treated as immutable.
    """

    ambient_dim: int
    onb: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.onb.shape[0])

    @property
    def vecs(self) -> np.ndarray:
        d = self.ambient_dim
        return self.onb.reshape(self.dim, d * d)

    def basis(self) -> list[np.ndarray]:
        return [self.onb[i].copy() for i in range(self.dim)]

    def coefficients(self, m: np.ndarray) -> np.ndarray:
        v = as_matrix(m).ravel()
        if v.shape[0] != self.ambient_dim ** 2:
            raise ValueError("ambient dimension mismatch")
        return np.conj(self.vecs) @ v

    def project(self, m: np.ndarray) -> np.ndarray:
        d = self.ambient_dim
        if self.dim == 0:
            return np.zeros((d, d), dtype=complex)
        c = self.coefficients(m)
        return (c @ self.vecs).reshape(d, d)

    def residual(self, m: np.ndarray) -> float:
        return hs_norm(as_matrix(m) - self.project(m))

    def contains(self, m: np.ndarray, tol: Tolerance | float | None = None) -> bool:
        t = Tolerance.of(tol)
        return self.residual(m) <= t.cutoff(hs_norm(m))

    def contains_all(self, mats: Iterable[np.ndarray],
                     tol: Tolerance | float | None = None) -> bool:
        return all(self.contains(m, tol) for m in mats)

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace, acting on vectorized
        matrices (a d^2 x d^2 matrix)."""
        v = self.vecs
        return v.conj().T @ v if self.dim else np.zeros(
            (self.ambient_dim ** 2, self.ambient_dim ** 2), dtype=complex)

    def is_selfadjoint_set(self, tol: Tolerance | float | None = None) -> bool:
        return self.contains_all((adjoint(b) for b in self.onb), tol)

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        d = self.ambient_dim
        if self.dim == 0:
            return np.zeros((d, d), dtype=complex)
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return (c @ self.vecs).reshape(d, d)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, np.zeros((0, ambient_dim, ambient_dim), dtype=complex))


def orthonormalize(mats: Sequence[np.ndarray], dim: int | None = None,
                   tol: Tolerance | float | None = None) -> Subspace:
    """Orthonormal basis of span(mats) under the Hilbert-Schmidt product.

    Linearly dependent inputs are dropped: directions whose singular value
    falls at or below ``eps * max(1, s_max)`` do not survive.  ``dim`` is
    required when ``mats`` is empty (the ambient size cannot be inferred).
    """
    t = Tolerance.of(tol)
    mats = [as_matrix(m) for m in mats]
    if not mats:
        if dim is None:
            raise ValueError("ambient dimension required for an empty spanning set")
        return Subspace.zero(dim)
    d = mats[0].shape[0]
    if dim is not None and dim != d:
        raise ValueError(f"ambient dimension mismatch: {dim} vs {d}")
    for m in mats:
        if m.shape[0] != d:
            raise ValueError("matrices of mixed sizes cannot span a subspace")
    stack = np.stack([m.ravel() for m in mats])
    _, svals, vh = np.linalg.svd(stack, full_matrices=False)
    if svals.size == 0 or svals[0] <= t.cutoff(0.0):
        return Subspace.zero(d)
    keep = svals > t.cutoff(float(svals[0]))
    rows = vh[keep]
    return Subspace(d, rows.reshape(-1, d, d))


def span_union(*spaces: Subspace, tol: Tolerance | float | None = None) -> Subspace:
    if not spaces:
        raise ValueError("need at least one subspace")
    d = spaces[0].ambient_dim
    for s in spaces:
        if s.ambient_dim != d:
            raise ValueError("ambient dimension mismatch")
    mats: list[np.ndarray] = []
    for s in spaces:
        mats.extend(s.basis())
    return orthonormalize(mats, dim=d, tol=tol)


def intersect(a: Subspace, b: Subspace,
              tol: Tolerance | float | None = None) -> Subspace:
    """Intersection of two subspaces.

    Computed from the Hermitian eigenproblem for the sum of the two
    orthogonal projectors: eigenvectors with eigenvalue 2 (within a
    tolerance-scaled gap) span the intersection.  The resulting vectors
    are polished by projecting back onto the first subspace.
    """
    t = Tolerance.of(tol)
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    d = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(d)
    s = a.projector() + b.projector()
    evals, evecs = np.linalg.eigh(s)
    # eigenvalues live in [0, 2]; the intersection sits at exactly 2
    gap = 1000.0 * t.eps
    cols = evecs[:, evals >= 2.0 - gap]
    if cols.shape[1] == 0:
        return Subspace.zero(d)
    polished = [a.project(cols[:, i].reshape(d, d)) for i in range(cols.shape[1])]
    return orthonormalize(polished, dim=d, tol=t)


def subspace_equal(a: Subspace, b: Subspace,
                   tol: Tolerance | float | None = None) -> bool:
    if a.ambient_dim != b.ambient_dim:
        return False
    if a.dim != b.dim:
        return False
    t = Tolerance.of(tol)
    return float(np.linalg.norm(a.projector() - b.projector())) <= t.cutoff(max(1.0, a.dim))
