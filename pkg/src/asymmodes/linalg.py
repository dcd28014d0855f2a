"""Dense complex operator primitives: norms, Kronecker/partial-trace algebra,
and superoperators in row-stacked Liouville form.

Vectorization convention (fixed globally): ``vec(X)`` stacks the *rows* of X,
so ``vec(|i><j|)`` is the basis vector with a 1 at index ``i*d + j``.  With
this convention the Liouville matrix of ``X -> A X B`` is ``kron(A, B.T)``
and of a Kraus map ``X -> sum_i K_i X K_i^dag`` is ``sum_i kron(K_i, conj(K_i))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10


def _as_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    return a


def vec(x) -> np.ndarray:
    """Row-stack a matrix into a vector."""
    return _as_matrix(x).reshape(-1)


def unvec(v, shape) -> np.ndarray:
    v = np.asarray(v, dtype=complex).reshape(-1)
    rows, cols = shape
    if v.size != rows * cols:
        raise ValueError(f"cannot unvec length {v.size} into shape {shape}")
    return v.reshape(rows, cols)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product tr(a^dag b)."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(a) -> float:
    return float(np.linalg.norm(_as_matrix(a)))


def is_hermitian(a, tol: float = DEFAULT_TOL) -> bool:
    a = _as_matrix(a)
    return a.shape[0] == a.shape[1] and np.abs(a - a.conj().T).max() <= tol


def trace_norm(a) -> float:
    """Sum of singular values.  Hermitian inputs shortcut through eigvalsh."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"trace_norm needs a square matrix, got {a.shape}")
    if is_hermitian(a, tol=1e-13):
        return float(np.abs(np.linalg.eigvalsh((a + a.conj().T) / 2)).sum())
    return float(np.linalg.svd(a, compute_uv=False).sum())


def tensor_product(a, b) -> np.ndarray:
    return np.kron(_as_matrix(a), _as_matrix(b))


def partial_trace(x, dims, keep) -> np.ndarray:
    """Reduce a bipartite operator on dims = (dA, dB); keep is 'A'/0 or 'B'/1."""
    x = _as_matrix(x)
    da, db = dims
    if x.shape != (da * db, da * db):
        raise ValueError(f"operator shape {x.shape} incompatible with dims {dims}")
    t = x.reshape(da, db, da, db)
    if keep in ("A", "a", 0):
        return np.einsum("ijkj->ik", t)
    if keep in ("B", "b", 1):
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def min_eigval(a) -> float:
    """Smallest eigenvalue of the Hermitian part (graded PSD residual)."""
    a = _as_matrix(a)
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2).min())


@dataclass(frozen=True)
class DensityMatrix:
    """A validated quantum state."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_array(cls, a, tol: float = DEFAULT_TOL) -> "DensityMatrix":
        a = _as_matrix(a)
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"density matrix must be square, got {a.shape}")
        herm = np.abs(a - a.conj().T).max()
        if herm > tol:
            raise ValueError(f"not Hermitian: max |M - M^dag| = {herm:.3e} > {tol:.1e}")
        tr = a.trace()
        if abs(tr - 1.0) > tol:
            raise ValueError(f"trace {tr} differs from 1 beyond {tol:.1e}")
        lo = min_eigval(a)
        if lo < -tol:
            raise ValueError(f"not PSD: min eigenvalue {lo:.3e} < -{tol:.1e}")
        return cls(a)

    @classmethod
    def from_vector(cls, psi) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))


@dataclass(frozen=True)
class POVM:
    """Measurement effects {M_lambda}: Hermitian, PSD, summing to identity."""

    elements: tuple
    labels: tuple

    @classmethod
    def from_elements(cls, elements, labels=None, tol: float = DEFAULT_TOL) -> "POVM":
        mats = tuple(_as_matrix(m) for m in elements)
        if not mats:
            raise ValueError("POVM needs at least one element")
        d = mats[0].shape[0]
        for i, m in enumerate(mats):
            if m.shape != (d, d):
                raise ValueError(f"element {i} has shape {m.shape}, expected {(d, d)}")
            if not is_hermitian(m, tol):
                raise ValueError(f"element {i} is not Hermitian within {tol:.1e}")
            if min_eigval(m) < -tol:
                raise ValueError(f"element {i} is not PSD within {tol:.1e}")
        total = sum(mats)
        if np.abs(total - np.eye(d)).max() > tol:
            raise ValueError("POVM elements do not sum to identity")
        if labels is None:
            labels = tuple(range(len(mats)))
        return cls(mats, tuple(labels))

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]


@dataclass(frozen=True)
class Superoperator:
    """Linear map B(C^in_dim) -> B(C^out_dim) as a row-stacking Liouville matrix."""

    liouville: np.ndarray
    in_dim: int
    out_dim: int
    trace_preserving: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        expected = (self.out_dim**2, self.in_dim**2)
        if self.liouville.shape != expected:
            raise ValueError(
                f"Liouville shape {self.liouville.shape} inconsistent with dims, expected {expected}"
            )

    def __call__(self, x) -> np.ndarray:
        return apply_superop(self, x)


def identity_superop(dim: int) -> Superoperator:
    return Superoperator(np.eye(dim**2, dtype=complex), dim, dim, trace_preserving=True)


def channel_from_kraus(kraus, tol: float = DEFAULT_TOL) -> Superoperator:
    """Liouville matrix of X -> sum_i K_i X K_i^dag; flags trace preservation."""
    mats = [_as_matrix(k) for k in kraus]
    if not mats:
        raise ValueError("need at least one Kraus operator")
    shape = mats[0].shape
    for i, k in enumerate(mats):
        if k.shape != shape:
            raise ValueError(f"Kraus operator {i} has shape {k.shape}, expected {shape}")
    out_dim, in_dim = shape
    liou = sum(np.kron(k, k.conj()) for k in mats)
    ssum = sum(k.conj().T @ k for k in mats)
    tp = bool(np.abs(ssum - np.eye(in_dim)).max() <= tol)
    return Superoperator(liou, in_dim, out_dim, trace_preserving=tp)


def superop_from_map(fn, in_dim: int, out_dim: int) -> Superoperator:
    """Build the Liouville matrix by applying fn to every |i><j| basis matrix."""
    liou = np.zeros((out_dim**2, in_dim**2), dtype=complex)
    for i in range(in_dim):
        for j in range(in_dim):
            e = np.zeros((in_dim, in_dim), dtype=complex)
            e[i, j] = 1.0
            liou[:, i * in_dim + j] = vec(fn(e))
    return Superoperator(liou, in_dim, out_dim)


def apply_superop(e: Superoperator, x) -> np.ndarray:
    x = _as_matrix(x)
    if x.shape != (e.in_dim, e.in_dim):
        raise ValueError(f"operator shape {x.shape} does not match in_dim {e.in_dim}")
    return unvec(e.liouville @ vec(x), (e.out_dim, e.out_dim))


def compose_superops(e2: Superoperator, e1: Superoperator) -> Superoperator:
    """e2 after e1."""
    if e1.out_dim != e2.in_dim:
        raise ValueError(f"cannot compose: {e1.out_dim} -> {e2.in_dim}")
    tp = None
    if e1.trace_preserving is not None and e2.trace_preserving is not None:
        tp = e1.trace_preserving and e2.trace_preserving
    return Superoperator(e2.liouville @ e1.liouville, e1.in_dim, e2.out_dim, trace_preserving=tp)


def conjugation_superop(u) -> Superoperator:
    """X -> U X U^dag."""
    u = _as_matrix(u)
    return Superoperator(np.kron(u, u.conj()), u.shape[1], u.shape[0])


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    g = rng.normal(size=(dim, rank or dim)) + 1j * rng.normal(size=(dim, rank or dim))
    rho = g @ g.conj().T
    return rho / rho.trace()
