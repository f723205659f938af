"""Catalog of named maps and random map generators."""

from __future__ import annotations

import numpy as np

from .choi import MatrixMap
from .linalg import partial_transpose, random_psd


def identity_map(n: int) -> MatrixMap:
    return MatrixMap.from_function(lambda a: a, n, n)


def transposition_map(n: int) -> MatrixMap:
    return MatrixMap.from_function(lambda a: a.T, n, n)


def trace_times_identity(n: int, scale: float = 1.0) -> MatrixMap:
    """a -> scale * Tr(a) * I_n; completely positive for scale > 0."""
    return MatrixMap.from_function(lambda a: scale * np.trace(a) * np.eye(n), n, n)


def reduction_family(lam: float, n: int = 3) -> MatrixMap:
    """The one-parameter family a -> lam * Tr(a) I - a on B(C^n).

    Its k-positivity threshold sits exactly at lam = k, which makes the family
    the standard calibration target for the bisection experiments.
    """
    return MatrixMap.from_function(lambda a: lam * np.trace(a) * np.eye(n) - a, n, n)


def choi_qutrit_map() -> MatrixMap:
    """The classical positive but non-decomposable map on B(C^3).

    Diagonal entries are reinforced cyclically, off-diagonal entries negated:
    out[0,0] = a[0,0] + a[2,2], out[1,1] = a[1,1] + a[0,0],
    out[2,2] = a[2,2] + a[1,1], and out[i,j] = -a[i,j] for i != j.
    """

    def f(a: np.ndarray) -> np.ndarray:
        out = -a.astype(complex)
        out[0, 0] = a[0, 0] + a[2, 2]
        out[1, 1] = a[1, 1] + a[0, 0]
        out[2, 2] = a[2, 2] + a[1, 1]
        return out

    return MatrixMap.from_function(f, 3, 3)


def random_hermiticity_preserving(rng: np.random.Generator, m: int, n: int) -> MatrixMap:
    """Random map with a Hermitian Choi matrix (normalized to unit norm)."""
    g = rng.standard_normal((m * n, m * n)) + 1j * rng.standard_normal((m * n, m * n))
    h = (g + g.conj().T) / 2
    h = h / np.linalg.norm(h)
    return MatrixMap.from_choi(h, m, n)


def random_cp_map(rng: np.random.Generator, m: int, n: int, rank: int | None = None) -> MatrixMap:
    """Random completely positive map (PSD Choi matrix, unit trace)."""
    h = random_psd(rng, m * n, rank)
    h = h / np.trace(h).real
    return MatrixMap.from_choi(h, m, n)


def random_ccp_map(rng: np.random.Generator, m: int, n: int, rank: int | None = None) -> MatrixMap:
    """Random completely copositive map: a CP map composed with transposition."""
    return random_cp_map(rng, m, n, rank).compose_transposition()


def random_map_near_cp(
    rng: np.random.Generator, m: int, n: int, mix: float = 0.2
) -> MatrixMap:
    """CP Choi matrix mixed with a Hermitian perturbation; mostly block positive."""
    h = random_psd(rng, m * n)
    h = h / np.trace(h).real
    g = rng.standard_normal((m * n, m * n)) + 1j * rng.standard_normal((m * n, m * n))
    p = (g + g.conj().T) / 2
    p = p / np.linalg.norm(p)
    return MatrixMap.from_choi(h + mix * p, m, n)


def random_decomposable_map(
    rng: np.random.Generator, m: int, n: int
) -> tuple[MatrixMap, MatrixMap, MatrixMap]:
    """Random CP + co-CP sum; returns (total, cp_part, ccp_part)."""
    phi1 = random_cp_map(rng, m, n)
    phi2 = random_ccp_map(rng, m, n)
    return phi1 + phi2, phi1, phi2


def swap_operator(n: int) -> np.ndarray:
    """The flip on C^n (x) C^n; Choi matrix of transposition."""
    s = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            s[i * n + j, j * n + i] = 1.0
    return s


def max_entangled_projector(n: int) -> np.ndarray:
    """Rank-1 projector onto sum_i e_i (x) e_i / sqrt(n)."""
    v = np.zeros(n * n, dtype=complex)
    for i in range(n):
        v[i * n + i] = 1.0
    v /= np.sqrt(n)
    return np.outer(v, v.conj())


def ppt_state_family(b: float, c: float) -> np.ndarray:
    """Two-parameter circulant family on C^3 (x) C^3 used as the witness oracle.

    w(b, c) ~ P+ + b * sigma_plus + c * sigma_minus, normalized to unit trace;
    positive under partial transposition exactly when b * c >= 1.
    """

    def ket(i: int, j: int) -> np.ndarray:
        v = np.zeros(9, dtype=complex)
        v[i * 3 + j] = 1.0
        return v

    sig_p = sum(np.outer(ket(i, (i + 1) % 3), ket(i, (i + 1) % 3).conj()) for i in range(3)) / 3
    sig_m = sum(np.outer(ket((i + 1) % 3, i), ket((i + 1) % 3, i).conj()) for i in range(3)) / 3
    w = max_entangled_projector(3) + b * sig_p + c * sig_m
    return w / np.trace(w).real


def is_ppt(w: np.ndarray, dim_first: int, dim_second: int, tol: float = 1e-12) -> bool:
    pt = partial_transpose(w, dim_first, dim_second, side="first")
    return bool(
        np.linalg.eigvalsh((w + w.conj().T) / 2)[0] >= -tol
        and np.linalg.eigvalsh((pt + pt.conj().T) / 2)[0] >= -tol
    )


def random_ppt_state(
    rng: np.random.Generator, dim_first: int, dim_second: int, max_tries: int = 200
) -> np.ndarray | None:
    """Rejection-sample a PPT state; None when the budget is exhausted."""
    d = dim_first * dim_second
    for _ in range(max_tries):
        w = random_psd(rng, d)
        w = w / np.trace(w).real
        if is_ppt(w, dim_first, dim_second, tol=1e-14):
            return w
    return None
