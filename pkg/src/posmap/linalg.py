"""Dense complex linear-algebra kernel shared by every other module.

Conventions, used bit-exactly everywhere:

- Matrices are dense complex numpy arrays in row-major order.
- Vectorization stacks rows: ``vec(a)[i * cols + j] = a[i, j]``.
- ``kron`` keeps the first factor slowest, so
  ``kron(A, B)[i*p + k, j*q + l] = A[i, j] * B[k, l]``.
- Randomness comes from the counter-based Philox generator; every search
  takes an explicit integer seed and independent streams are obtained with
  :func:`rng_stream`, so any sampled verdict is replayable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NotHermitianError,
    NotPsdError,
    NotSquareError,
    RankOutOfRangeError,
    SingularForNegativePowerError,
)

HERMITIAN_RTOL = 1e-8
PSD_RTOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix has non-finite entries")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def psd_tol(a) -> float:
    """Scale-aware PSD tolerance: a Hermitian matrix counts as PSD when its
    smallest eigenvalue is >= -psd_tol(a)."""
    return PSD_RTOL * max(1.0, frobenius(a))


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


def check_hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate Hermitian symmetry and return the symmetrized matrix."""
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected square matrix, got shape {m.shape}")
    defect = frobenius(m - m.conj().T)
    if defect > rtol * max(frobenius(m), 1e-300):
        raise NotHermitianError(f"Hermitian defect {defect:.3e} exceeds tolerance")
    return hermitian_part(m)


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvalues ascend; eigenvector columns are orthonormal with the phase
    fixed so the largest-magnitude component of each column is real positive,
    which makes the output deterministic for identical input.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(a, rtol: float = HERMITIAN_RTOL) -> HermEig:
    """Eigendecomposition of a Hermitian matrix with a deterministic phase rule."""
    m = check_hermitian(a, rtol)
    w, v = np.linalg.eigh(m)
    idx = np.argmax(np.abs(v), axis=0)
    lead = v[idx, np.arange(v.shape[1])]
    phases = np.where(np.abs(lead) > 0, lead / np.maximum(np.abs(lead), 1e-300), 1.0)
    return HermEig(w, v * phases.conj())


def psd_min_eig(a, rtol: float = HERMITIAN_RTOL) -> float:
    """Smallest eigenvalue of a Hermitian matrix; caller compares to a tolerance."""
    m = check_hermitian(a, rtol)
    return float(np.linalg.eigvalsh(m)[0])


def frac_power(a, beta: float) -> np.ndarray:
    """``a**beta`` for a PSD matrix via its eigendecomposition.

    Eigenvalues in ``[-tol, 0]`` are clamped to zero.  A negative power
    requires the matrix to be invertible well beyond the clamping tolerance.
    """
    eig = herm_eig(a)
    w = eig.eigenvalues.copy()
    tol = psd_tol(a)
    if w[0] < -tol:
        raise NotPsdError(f"min eigenvalue {w[0]:.3e} below -{tol:.3e}")
    w = np.clip(w, 0.0, None)
    if beta < 0:
        norm = w[-1] if w.size else 0.0
        if w[0] <= 1e-12 * max(norm, 1.0):
            raise SingularForNegativePowerError(
                f"min eigenvalue {w[0]:.3e} too small for power {beta}"
            )
    v = eig.eigenvectors
    return (v * w**beta) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product with the first factor slowest (row-major convention)."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_transpose(h, dim_first: int, dim_second: int, side: str = "first") -> np.ndarray:
    """Transpose one tensor factor of an operator on C^dim_first (x) C^dim_second."""
    m = as_matrix(h)
    d = dim_first * dim_second
    if m.shape != (d, d):
        raise DimensionMismatchError(
            f"matrix shape {m.shape} does not match {dim_first}x{dim_second} product"
        )
    t = m.reshape(dim_first, dim_second, dim_first, dim_second)
    if side == "first":
        t = t.transpose(2, 1, 0, 3)
    elif side == "second":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"side must be 'first' or 'second', got {side!r}")
    return np.ascontiguousarray(t.reshape(d, d))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(a* b), conjugate-linear in the first slot."""
    ma, mb = as_matrix(a), as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatchError(f"shape mismatch {ma.shape} vs {mb.shape}")
    return complex(np.vdot(ma, mb))


# ---------------------------------------------------------------------------
# seeded sampling
# ---------------------------------------------------------------------------


def rng_stream(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator stream `stream` of the Philox counter keyed by `seed`."""
    return np.random.Generator(np.random.Philox(key=int(seed)).jumped(int(stream)))


def random_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = random_complex(rng, dim)
    return v / np.linalg.norm(v)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = random_complex(rng, (dim, dim))
    return hermitian_part(g)


def random_psd(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    r = dim if rank is None else rank
    g = random_complex(rng, (dim, r))
    return g @ g.conj().T


def random_state(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    p = random_psd(rng, dim, rank)
    return p / np.trace(p).real


def random_faithful_state(
    rng: np.random.Generator, dim: int, floor: float = 0.05
) -> np.ndarray:
    """Random full-rank density matrix with spectrum bounded away from zero."""
    w = floor + (1.0 - floor) * rng.random(dim)
    w = w / w.sum()
    u = haar_isometry(rng, dim, dim)
    return (u * w) @ u.conj().T


def haar_isometry(rng: np.random.Generator, dim: int, rank: int) -> np.ndarray:
    """dim x rank isometry distributed per the Haar measure."""
    g = random_complex(rng, (dim, rank))
    q, r = np.linalg.qr(g)
    d = np.diag(r).copy()
    d = np.where(np.abs(d) > 0, d / np.maximum(np.abs(d), 1e-300), 1.0)
    return q * d.conj()


def haar_projection(dim: int, rank: int, seed) -> np.ndarray:
    """Haar-random rank-`rank` orthogonal projection on C^dim.

    `seed` may be an integer or a Generator; an integer always yields the
    same projection.
    """
    if not 1 <= rank <= dim:
        raise RankOutOfRangeError(f"rank {rank} outside 1..{dim}")
    rng = seed if isinstance(seed, np.random.Generator) else rng_stream(seed)
    v = haar_isometry(rng, dim, rank)
    return v @ v.conj().T
