"""GNS representation of a matrix algebra with a faithful state, and the
modular description of transposition.

For an invertible density matrix rho on C^d the representation space is
B(C^d) itself with the Hilbert-Schmidt inner product; the cyclic vector is
Omega = rho^(1/2).  All operators on that space ("superoperators") are built
in the eigenbasis of rho (the *frame*), where rho is diagonal and everything
has a closed form:

- Delta(xi)      = rho xi rho^(-1)       (modular operator),
- Jm(xi)         = xi*                   (modular conjugation, antilinear),
- J(xi)          = conj(xi)              (basis conjugation, antilinear),
- U(xi)          = xi^T                  (swap unitary, U E_ij = E_ji),
- tau(xi)        = rho^(-1/2) xi^T rho^(1/2)   (transposition carrier).

Vectors of the representation space are passed and returned as d x d frame
matrices; `GnsContext.to_frame` / `from_frame` convert operators expressed in
the original basis.  Superoperator matrices act on the row-major
vectorization of frame matrices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .choi import MatrixMap, block_positivity
from .errors import (
    BetaOutOfRangeError,
    DimensionMismatchError,
    InconsistentSystemError,
    NotAStateError,
    NotFaithfulError,
    NotInNaturalConeError,
)
from .linalg import (
    as_matrix,
    frobenius,
    herm_eig,
    hermitian_part,
    psd_min_eig,
    psd_tol,
    random_complex,
    random_psd,
    rng_stream,
)
from .verdicts import BlockPosVerdict

FAITHFUL_FLOOR = 1e-8
CONDITION_GUARD = 1e6


@dataclass(frozen=True)
class Superoperator:
    """Operator on the representation space, stored as a matrix acting on
    row-major vectorized frame matrices plus an antilinearity tag.

    An antilinear operator is its linear matrix composed with entrywise
    conjugation of the input; composition combines tags accordingly.
    """

    matrix: np.ndarray
    antilinear: bool = False

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))

    def apply_vec(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ (np.conj(v) if self.antilinear else v)

    def apply(self, xi) -> np.ndarray:
        m = as_matrix(xi)
        d = self.dim
        if m.shape != (d, d):
            raise DimensionMismatchError(f"expected ({d}, {d}) frame matrix, got {m.shape}")
        return self.apply_vec(m.reshape(-1)).reshape(d, d)

    def compose(self, other: "Superoperator") -> "Superoperator":
        """self after other."""
        mat = self.matrix @ (other.matrix.conj() if self.antilinear else other.matrix)
        return Superoperator(mat, self.antilinear ^ other.antilinear)

    def defect(self, other: "Superoperator") -> float:
        """Frobenius distance, evaluated on basis vectors when the tags differ."""
        if self.antilinear == other.antilinear:
            return frobenius(self.matrix - other.matrix)
        d2 = self.matrix.shape[0]
        total = 0.0
        for v in (np.eye(d2), 1j * np.eye(d2)):
            total += sum(
                float(np.linalg.norm(self.apply_vec(v[:, r]) - other.apply_vec(v[:, r])) ** 2)
                for r in range(d2)
            )
        return float(np.sqrt(total))

    def adjoint(self) -> "Superoperator":
        if self.antilinear:
            raise ValueError("adjoint implemented for linear superoperators only")
        return Superoperator(self.matrix.conj().T, False)

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


def superop_from_function(f, dim: int, antilinear: bool = False) -> Superoperator:
    """Assemble the matrix of a superoperator by applying it to the frame units."""
    mat = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, j] = 1.0
            mat[:, i * dim + j] = np.asarray(f(e), dtype=complex).reshape(-1)
    return Superoperator(mat, antilinear)


def identity_superop(dim: int) -> Superoperator:
    return Superoperator(np.eye(dim * dim, dtype=complex), False)


@dataclass(frozen=True)
class GnsContext:
    """GNS and modular data of (B(C^d), omega_rho) with faithful rho."""

    rho: np.ndarray
    eigenvalues: np.ndarray
    basis: np.ndarray
    dim: int
    Omega: np.ndarray
    U: Superoperator
    Jm: Superoperator
    J: Superoperator
    tau: Superoperator
    _delta_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def to_frame(self, a) -> np.ndarray:
        return self.basis.conj().T @ as_matrix(a) @ self.basis

    def from_frame(self, a) -> np.ndarray:
        return self.basis @ as_matrix(a) @ self.basis.conj().T

    def rho_power(self, beta: float) -> np.ndarray:
        """rho^beta as a diagonal frame matrix."""
        return np.diag(self.eigenvalues**beta).astype(complex)

    def delta_apply(self, beta: float, xi) -> np.ndarray:
        """Delta^beta applied to a frame matrix: entrywise (lam_i / lam_j)^beta."""
        m = as_matrix(xi)
        lam = self.eigenvalues
        return (lam**beta)[:, None] * m * (lam ** (-beta))[None, :]

    def delta_power(self, beta: float) -> Superoperator:
        key = float(beta)
        if key not in self._delta_cache:
            lam = self.eigenvalues
            scale = np.outer(lam**beta, lam ** (-beta)).reshape(-1)
            self._delta_cache[key] = Superoperator(np.diag(scale).astype(complex), False)
        return self._delta_cache[key]

    def left_mult(self, a_frame) -> Superoperator:
        """Superoperator of xi -> a xi for a frame operator a."""
        a = as_matrix(a_frame)
        return Superoperator(np.kron(a, np.eye(self.dim, dtype=complex)), False)

    def right_mult(self, a_frame) -> Superoperator:
        """Superoperator of xi -> xi a for a frame operator a."""
        a = as_matrix(a_frame)
        return Superoperator(np.kron(np.eye(self.dim, dtype=complex), a.T), False)


def gns_context(rho, *, faithful_floor: float = FAITHFUL_FLOOR) -> GnsContext:
    """Build the GNS/modular bundle for the state with density matrix rho.

    The eigenbasis of rho fixes the frame (ascending eigenvalues, phases made
    deterministic by the kernel's eigendecomposition rule).
    """
    r = as_matrix(rho)
    if r.shape[0] != r.shape[1]:
        raise NotAStateError(f"state matrix must be square, got {r.shape}")
    if frobenius(r - r.conj().T) > 1e-10 * max(1.0, frobenius(r)):
        raise NotAStateError("state matrix is not Hermitian")
    if abs(np.trace(r).real - 1.0) > 1e-12 or abs(np.trace(r).imag) > 1e-12:
        raise NotAStateError(f"trace {np.trace(r):.6g} != 1")
    eig = herm_eig(r)
    lam = eig.eigenvalues
    if lam[0] < -psd_tol(r):
        raise NotAStateError(f"negative eigenvalue {lam[0]:.3e}")
    if lam[0] < faithful_floor:
        raise NotFaithfulError(f"min eigenvalue {lam[0]:.3e} below {faithful_floor:.1e}")
    if lam[-1] / lam[0] > CONDITION_GUARD:
        warnings.warn(
            f"state condition number {lam[-1] / lam[0]:.2e} exceeds the guard "
            f"{CONDITION_GUARD:.0e}; modular powers lose accuracy",
            stacklevel=2,
        )
    d = r.shape[0]
    sqrt_lam = np.sqrt(lam)

    u_op = superop_from_function(lambda e: e.T, d, antilinear=False)
    jm_op = Superoperator(u_op.matrix.copy(), antilinear=True)  # xi -> xi* = conj(xi^T)
    j_op = Superoperator(np.eye(d * d, dtype=complex), antilinear=True)  # xi -> conj(xi)
    tau_op = superop_from_function(
        lambda e: (1 / sqrt_lam)[:, None] * e.T * sqrt_lam[None, :], d, antilinear=False
    )
    return GnsContext(
        rho=r,
        eigenvalues=lam,
        basis=eig.eigenvectors,
        dim=d,
        Omega=np.diag(sqrt_lam).astype(complex),
        U=u_op,
        Jm=jm_op,
        J=j_op,
        tau=tau_op,
    )


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------


def transpose_via_conjugations(ctx: GnsContext, a, xi) -> tuple[np.ndarray, np.ndarray, float]:
    """Both sides of the identity a^t xi = J a* J xi on the representation space.

    `a` is an operator and `xi` a vector of the representation space, both as
    frame matrices; the left side multiplies by the transposed operator, the
    right side conjugates, multiplies by a*, and conjugates back.
    """
    am = as_matrix(a)
    xm = as_matrix(xi)
    lhs = am.T @ xm
    rhs = np.conj(am.conj().T @ np.conj(xm))
    return lhs, rhs, frobenius(lhs - rhs)


def check_unitary_relations(ctx: GnsContext) -> dict[str, float]:
    """Defects of the structural identities among U, J, Jm, and Delta.

    Covers: U is a self-adjoint involution; J = U Jm; J, Jm, U mutually
    commute; J commutes with Delta; U Delta = Delta^(-1) U.  The returned
    dict carries one Frobenius defect per identity plus their maximum.
    """
    d2 = ctx.dim**2
    eye = np.eye(d2, dtype=complex)
    delta = ctx.delta_power(1.0)
    delta_inv = ctx.delta_power(-1.0)
    defects = {
        "u_involution": frobenius(ctx.U.matrix @ ctx.U.matrix - eye),
        "u_selfadjoint": frobenius(ctx.U.matrix - ctx.U.matrix.conj().T),
        "j_equals_u_jm": ctx.J.defect(ctx.U.compose(ctx.Jm)),
        "j_jm_commute": ctx.J.compose(ctx.Jm).defect(ctx.Jm.compose(ctx.J)),
        "u_j_commute": ctx.U.compose(ctx.J).defect(ctx.J.compose(ctx.U)),
        "u_jm_commute": ctx.U.compose(ctx.Jm).defect(ctx.Jm.compose(ctx.U)),
        "j_delta_commute": ctx.J.compose(delta).defect(delta.compose(ctx.J)),
        "u_delta_flip": ctx.U.compose(delta).defect(delta_inv.compose(ctx.U)),
    }
    defects["max"] = max(defects.values())
    return defects


def check_polar_factorization(ctx: GnsContext) -> float:
    """Defect of the polar identity tau = U Delta^(1/2)."""
    return ctx.tau.defect(ctx.U.compose(ctx.delta_power(0.5)))


def swap_conjugate(ctx: GnsContext, op) -> np.ndarray:
    """U A U* for an operator A on the representation space (d^2 x d^2)."""
    a = as_matrix(op)
    d2 = ctx.dim**2
    if a.shape != (d2, d2):
        raise DimensionMismatchError(f"expected ({d2}, {d2}) superoperator, got {a.shape}")
    return ctx.U.matrix @ a @ ctx.U.matrix.conj().T


def commutant_defect(ctx: GnsContext, op) -> float:
    """Largest commutator norm of `op` against all left multiplications."""
    a = as_matrix(op)
    worst = 0.0
    for i in range(ctx.dim):
        for j in range(ctx.dim):
            e = np.zeros((ctx.dim, ctx.dim), dtype=complex)
            e[i, j] = 1.0
            lm = ctx.left_mult(e).matrix
            worst = max(worst, frobenius(a @ lm - lm @ a))
    return worst


# ---------------------------------------------------------------------------
# the interpolating cone family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeMembershipResult:
    member: bool
    witness: np.ndarray
    hermitian_defect: float
    min_eig: float


def v_beta_member(ctx: GnsContext, beta: float, xi, *, tol: float | None = None) -> ConeMembershipResult:
    """Membership in the cone {Delta^beta a Omega : a >= 0} for beta in [0, 1/2].

    The candidate a is reconstructed exactly (the cone is closed in finite
    dimension), so membership reduces to a being Hermitian PSD within
    tolerance.  beta = 1/4 is the natural cone.
    """
    if not 0.0 <= beta <= 0.5:
        raise BetaOutOfRangeError(f"beta={beta} outside [0, 1/2]")
    xm = as_matrix(xi)
    if xm.shape != (ctx.dim, ctx.dim):
        raise DimensionMismatchError(f"expected ({ctx.dim}, {ctx.dim}), got {xm.shape}")
    lam = ctx.eigenvalues
    a = xm * (lam ** (-beta))[:, None] * (lam ** (beta - 0.5))[None, :]
    bound = psd_tol(a) if tol is None else tol
    herm_defect = frobenius(a - a.conj().T)
    if herm_defect > bound:
        return ConeMembershipResult(False, a, herm_defect, float("nan"))
    min_eig = float(np.linalg.eigvalsh(hermitian_part(a))[0])
    return ConeMembershipResult(min_eig >= -bound, a, herm_defect, min_eig)


def cone_vector(ctx: GnsContext, beta: float, a) -> np.ndarray:
    """Delta^beta (a Omega) as a frame matrix."""
    return ctx.delta_apply(beta, as_matrix(a) @ ctx.Omega)


def v_beta_duality_check(
    ctx: GnsContext, beta: float, *, samples: int = 100, seed: int = 0
) -> dict[str, float]:
    """Sampled duality between the cones at beta and 1/2 - beta.

    Pairs sampled members of the two cones (real part must be nonnegative,
    imaginary part zero) and checks that U carries members at beta to members
    at 1/2 - beta.
    """
    if not 0.0 <= beta <= 0.5:
        raise BetaOutOfRangeError(f"beta={beta} outside [0, 1/2]")
    min_real = np.inf
    max_imag = 0.0
    flips_failed = 0
    for s in range(samples):
        rng = rng_stream(seed, s)
        xi = cone_vector(ctx, beta, random_psd(rng, ctx.dim))
        eta = cone_vector(ctx, 0.5 - beta, random_psd(rng, ctx.dim))
        pairing = complex(np.vdot(eta, xi))
        min_real = min(min_real, pairing.real)
        max_imag = max(max_imag, abs(pairing.imag))
        if not v_beta_member(ctx, 0.5 - beta, ctx.U.apply(xi)).member:
            flips_failed += 1
    return {
        "min_real_pairing": float(min_real),
        "max_imag_pairing": float(max_imag),
        "flip_failures": float(flips_failed),
        "samples": float(samples),
        "seed": float(seed),
    }


# ---------------------------------------------------------------------------
# maps carried to the representation space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InducedOperator:
    """Hilbert-space operator implementing a map against the cyclic vector."""

    source: MatrixMap
    operator: Superoperator
    invariance_defect: float
    extension_defect: float
    delta_commutation_defect: float
    contraction_defect: float


def t_phi(ctx: GnsContext, phi: MatrixMap, *, invariance_warn: float = 1e-8) -> InducedOperator:
    """The operator T with T(a Omega) = phi(a) Omega, built by linear
    extension from the frame units.

    The state is assumed invariant under phi for the cone-mapping theory; a
    larger invariance defect triggers a warning, not an error, because T is
    well defined regardless.  Reported defects: the unit-extension residual,
    commutation with Delta, and the excess of the operator norm over 1.
    """
    if phi.m != ctx.dim or phi.n != ctx.dim:
        raise DimensionMismatchError(
            f"map acts on B(C^{phi.m}) -> B(C^{phi.n}), context dimension {ctx.dim}"
        )
    inv = np.zeros((ctx.dim, ctx.dim), dtype=complex)
    for p in range(ctx.dim):
        for q in range(ctx.dim):
            e = np.zeros((ctx.dim, ctx.dim), dtype=complex)
            e[p, q] = 1.0
            inv[p, q] = np.trace(ctx.rho @ phi(e)) - np.trace(ctx.rho @ e)
    invariance_defect = frobenius(inv)
    if invariance_defect > invariance_warn:
        warnings.warn(
            f"state is not invariant under the map (defect {invariance_defect:.3e}); "
            "cone-mapping statements need invariance",
            stacklevel=2,
        )

    x = ctx.basis
    phi_frame = MatrixMap.from_function(
        lambda e: x.conj().T @ phi(x @ e @ x.conj().T) @ x, ctx.dim, ctx.dim
    )
    omega_inv = np.diag(1.0 / np.sqrt(ctx.eigenvalues)).astype(complex)
    t_op = superop_from_function(
        lambda e: phi_frame(e @ omega_inv) @ ctx.Omega, ctx.dim, antilinear=False
    )

    ext = 0.0
    for i in range(ctx.dim):
        for j in range(ctx.dim):
            e = np.zeros((ctx.dim, ctx.dim), dtype=complex)
            e[i, j] = 1.0
            ext = max(ext, frobenius(t_op.apply(e @ ctx.Omega) - phi_frame(e) @ ctx.Omega))

    delta = ctx.delta_power(1.0)
    comm = frobenius(t_op.matrix @ delta.matrix - delta.matrix @ t_op.matrix)
    contraction = max(0.0, t_op.norm() - 1.0)
    return InducedOperator(phi, t_op, invariance_defect, ext, comm, contraction)


def frame_transposition_map(ctx: GnsContext) -> MatrixMap:
    """Transposition with respect to the eigenbasis of the state.

    This is the transposition the modular theory describes: it leaves the
    state invariant, and its induced operator coincides with the polar
    carrier tau.  At a diagonal state (ascending spectrum) it reduces to the
    plain standard-basis transposition.
    """
    x = ctx.basis
    return MatrixMap.from_function(
        lambda a: x @ (x.conj().T @ a @ x).T @ x.conj().T, ctx.dim, ctx.dim
    )


def schwarz_defect(
    phi: MatrixMap, *, samples: int = 50, seed: int = 0, reversed_product: bool = False
) -> float:
    """Largest sampled violation of phi(a* a) >= phi(a)* phi(a); zero means the
    sampled operators found no counterexample.

    `reversed_product` tests phi(a* a) >= phi(a) phi(a)* instead, the order
    that anti-multiplicative maps satisfy (transposition fulfils it with
    equality, while it fails the direct order).
    """
    worst = 0.0
    for s in range(samples):
        rng = rng_stream(seed, s)
        a = random_complex(rng, (phi.m, phi.m))
        image = phi(a)
        square = image @ image.conj().T if reversed_product else image.conj().T @ image
        gap = hermitian_part(phi(a.conj().T @ a) - square)
        worst = max(worst, max(0.0, -psd_min_eig(gap)))
    return worst


@dataclass(frozen=True)
class BalanceAdjoint:
    """Adjoint map with respect to the state pairing, with diagnostics."""

    adjoint_map: MatrixMap
    identity_defect: float
    positivity: BlockPosVerdict


def db_adjoint(
    ctx: GnsContext,
    phi: MatrixMap,
    *,
    tol: float = 1e-10,
    seed: int = 0,
    restarts: int = 16,
) -> BalanceAdjoint:
    """Solve omega(a* phi(b)) = omega(psi(a*) b) for the adjoint map psi.

    With a faithful state the linear system over all unit pairs has a unique
    solution; the residual of the defining identity over every unit pair is
    reported, and block positivity of the solution attaches the usual
    evidence-level search.
    """
    if phi.m != ctx.dim or phi.n != ctx.dim:
        raise DimensionMismatchError("map and context dimensions differ")
    d = ctx.dim
    rho = ctx.rho
    image_rho = np.einsum("klab,bc->klac", phi.unit_images, rho)  # phi(e_kl) rho
    units = np.zeros((d, d, d, d), dtype=complex)
    try:
        rho_inv = np.linalg.inv(rho)
    except np.linalg.LinAlgError as exc:
        raise InconsistentSystemError("state is numerically singular") from exc
    for p in range(d):
        for q in range(d):
            # psi(e_pq) from (rho psi(e_pq))[l, k] = (phi(e_kl) rho)[q, p]
            rhs = image_rho[:, :, q, p].T  # [l, k] -> matrix with rows l, cols k
            units[p, q] = rho_inv @ rhs
    psi = MatrixMap(units)

    defect = 0.0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for el in range(d):
                    a = np.zeros((d, d), dtype=complex)
                    a[j, i] = 1.0  # a* for a = e_ij
                    b = np.zeros((d, d), dtype=complex)
                    b[k, el] = 1.0
                    lhs = np.trace(rho @ a @ phi(b))
                    rhs_val = np.trace(rho @ psi(a) @ b)
                    defect = max(defect, abs(lhs - rhs_val))
    if defect > tol:
        raise InconsistentSystemError(f"identity defect {defect:.3e} exceeds {tol:.1e}")
    pos = block_positivity(hermitian_part(psi.choi()), d, d, restarts=restarts, seed=seed)
    return BalanceAdjoint(psi, defect, pos)


def cone_state(ctx: GnsContext, xi, *, tol: float | None = None) -> np.ndarray:
    """Density matrix of the vector state of a natural-cone element.

    Tr(result @ a) = <xi, a xi> for every frame operator a acting by left
    multiplication; requires xi in the natural cone (beta = 1/4).
    """
    membership = v_beta_member(ctx, 0.25, xi, tol=tol)
    if not membership.member:
        raise NotInNaturalConeError(
            f"vector fails natural-cone membership (min eig {membership.min_eig:.3e})"
        )
    xm = as_matrix(xi)
    return xm @ xm.conj().T
