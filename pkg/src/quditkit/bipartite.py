"""Two-qudit states in component form: purity chains, Z matrix, Werner family.

A pair of dimension-N qudits is parametrized as

    rho = (1/N^2) [ 1x1 + (L_i x 1) x_i + (1 x L_i) y_i + (L_i x L_j) w_ij ]

with real vectors x, y of length N^2-1 and a real matrix w.  Component
extraction uses x_i = (N/2) Tr(rho L_i x 1) and w_ij = (N^2/4) Tr(rho L_i x L_j).

The Werner convention here is w = alpha * identity, so at N = 2 the value
alpha = -1 gives the singlet projector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import (
    DEFAULT_TOL,
    GellMannBasis,
    StructureTensors,
    cached_basis,
    cached_tensors,
)
from .qudit import QuditState, from_bloch, to_bloch
from .sympoly import require_hermitian


@dataclass(frozen=True, eq=False)
class BipartiteState:
    dim: int            # N per subsystem
    x: np.ndarray       # length N^2-1, read-only
    y: np.ndarray
    omega: np.ndarray   # (N^2-1, N^2-1), read-only
    rho: np.ndarray     # derived N^2 x N^2 matrix, read-only

    def to_json_dict(self) -> dict:
        return {
            "N": self.dim,
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "omega": self.omega.tolist(),
        }


@dataclass(frozen=True)
class PurityResiduals:
    """Residuals of the four pure-state conditions; all vanish iff rho^2 = rho."""

    r_sum: float    # signed scalar condition
    r_x: float      # max-abs of the x-vector condition
    r_y: float
    r_omega: float  # max-abs of the correlation-matrix condition

    def total(self) -> float:
        return abs(self.r_sum) + self.r_x + self.r_y + self.r_omega

    def is_pure(self, tol: float = 1e-8) -> bool:
        return self.total() <= 4 * tol


@dataclass(frozen=True, eq=False)
class ZMatrix:
    """Entanglement quantifier for two qubits: -Z^T is the adjugate of omega."""

    Z: np.ndarray
    det_omega: float
    adjugate_residual: float  # max-abs of omega Z^T + det(omega) 1
    entangled: bool           # Z != 0; Z vanishes on pure product states


@dataclass(frozen=True, eq=False)
class WernerState:
    dim: int
    alpha: float
    state: BipartiteState


@dataclass(frozen=True)
class WernerConsistencyReport:
    """The two independent determinations of alpha for a pure Werner state.

    alpha_norm comes from the scalar purity condition (alpha^2 = N^2/4);
    alpha_omega from the correlation-matrix condition (-N(N^2-2)/4).  They
    agree only at N = 2.  min_residual is the smallest total purity
    residual of the Werner family over the scanned alpha range.
    """

    dim: int
    alpha_norm: float          # magnitude N/2; both signs solve the norm condition
    alpha_omega: float
    consistent: bool
    min_residual: float
    argmin_alpha: float

    def to_json_dict(self) -> dict:
        return {
            "N": self.dim,
            "alpha_norm_magnitude": self.alpha_norm,
            "alpha_omega": self.alpha_omega,
            "consistent": self.consistent,
            "min_purity_residual": self.min_residual,
            "argmin_alpha": self.argmin_alpha,
        }


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _det(m: np.ndarray) -> float:
    # exactly singular omegas are a meaningful input (det = 0 marks product
    # states); numpy's LU path warns on the zero pivot
    with np.errstate(divide="ignore", invalid="ignore"):
        return float(np.linalg.det(m))


@lru_cache(maxsize=None)
def _product_operators(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Stacked L_i x 1, 1 x L_i and L_i x L_j for subsystem dimension N."""
    lam = cached_basis(N).generators
    eye = np.eye(N, dtype=complex)
    left = np.stack([np.kron(l, eye) for l in lam])
    right = np.stack([np.kron(eye, l) for l in lam])
    both = np.stack([np.stack([np.kron(a, b) for b in lam]) for a in lam])
    for arr in (left, right, both):
        arr.setflags(write=False)
    return left, right, both


def from_components(
    N: int, x: np.ndarray, y: np.ndarray, omega: np.ndarray
) -> BipartiteState:
    n = N * N - 1
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    omega = np.asarray(omega, dtype=float)
    if x.shape != (n,) or y.shape != (n,):
        raise ValueError(f"x and y must have length {n}")
    if omega.shape != (n, n):
        raise ValueError(f"omega must be {n}x{n}, got {omega.shape}")
    left, right, both = _product_operators(N)
    rho = np.eye(N * N, dtype=complex)
    rho += np.einsum("i,iab->ab", x, left)
    rho += np.einsum("i,iab->ab", y, right)
    rho += np.einsum("ij,ijab->ab", omega, both)
    rho /= N * N
    return BipartiteState(
        dim=N, x=_freeze(x.copy()), y=_freeze(y.copy()),
        omega=_freeze(omega.copy()), rho=_freeze(rho),
    )


def to_components(
    rho: np.ndarray, basis: GellMannBasis, tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Project a Hermitian unit-trace N^2 x N^2 matrix onto component form."""
    rho = require_hermitian(rho, tol)
    N = basis.dim
    if rho.shape != (N * N, N * N):
        raise ValueError(f"matrix is {rho.shape}, expected {(N * N, N * N)}")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"trace must be 1, got {tr!r}")
    left, right, both = _product_operators(N)
    x = (N / 2.0) * np.einsum("iab,ba->i", left, rho).real
    y = (N / 2.0) * np.einsum("iab,ba->i", right, rho).real
    omega = (N * N / 4.0) * np.einsum("ijab,ba->ij", both, rho).real
    return x, y, omega


def from_density_matrix(
    rho: np.ndarray, N: int, tol: float = DEFAULT_TOL
) -> BipartiteState:
    x, y, omega = to_components(rho, cached_basis(N), tol)
    return from_components(N, x, y, omega)


def reduced_states(state: BipartiteState) -> tuple[QuditState, QuditState]:
    """Partial traces over the second and first subsystem; Bloch vectors are x, y."""
    N = state.dim
    R = state.rho.reshape(N, N, N, N)
    rho1 = np.einsum("ajbj->ab", R)
    rho2 = np.einsum("jajb->ab", R)
    basis = cached_basis(N)
    return (
        from_bloch(N, to_bloch(rho1, basis), basis),
        from_bloch(N, to_bloch(rho2, basis), basis),
    )


# ---------------------------------------------------------------------------
# two-qubit (N = 2) purity chain and derived identities
# ---------------------------------------------------------------------------

def _require_qubit(state: BipartiteState) -> None:
    if state.dim != 2:
        raise ValueError(f"operation is defined for N = 2 only, got N = {state.dim}")


def purity_residuals_qubit(state: BipartiteState) -> PurityResiduals:
    """Residuals of the four two-qubit pure-state conditions."""
    _require_qubit(state)
    x, y, w = state.x, state.y, state.omega
    trw = np.trace(w)
    trw2 = np.trace(w @ w)
    r_sum = 1.0 + x @ x + y @ y + np.sum(w * w) - 4.0
    r_x = np.abs(x - w @ y).max()
    r_y = np.abs(y - w.T @ x).max()
    m = (
        np.outer(x, y)
        - 0.5 * (trw**2 - trw2) * np.eye(3)
        + trw * w.T
        - (w @ w).T
    )
    r_omega = np.abs(w - m).max()
    return PurityResiduals(
        r_sum=float(r_sum), r_x=float(r_x), r_y=float(r_y), r_omega=float(r_omega)
    )


def derived_qubit_identities(state: BipartiteState, tol: float = 1e-8) -> dict:
    """Identities that follow from purity: |x|^2 = |y|^2 = 1 + det(omega) etc.

    Refuses input that is not pure (the identities are consequences of
    rho^2 = rho).
    """
    _require_qubit(state)
    res = purity_residuals_qubit(state)
    if not res.is_pure(tol):
        raise ValueError(f"state is not pure: purity residual total {res.total():.3e}")
    x, y, w = state.x, state.y, state.omega
    trw = float(np.trace(w))
    trw2 = float(np.trace(w @ w))
    det_w = _det(w)
    xx = float(x @ x)
    yy = float(y @ y)
    return {
        "x_norm_sq": xx,
        "y_norm_sq": yy,
        "det_omega": det_w,
        "trace_identity_residual": abs(trw - float(x @ y) + 0.5 * (trw**2 - trw2)),
        "norm_equality_residual": abs(xx - yy),
        "gram_identity_residual": abs(float(np.sum(w * w)) - xx + 3.0 * det_w),
        "det_connection_residual": max(abs(xx - 1.0 - det_w), abs(yy - 1.0 - det_w)),
    }


def z_matrix(state: BipartiteState, tol: float = DEFAULT_TOL) -> ZMatrix:
    """Z_ij = -d_ij e2(omega) + omega_ji tr(omega) - (omega^2)_ji, for N = 2."""
    _require_qubit(state)
    w = state.omega
    trw = np.trace(w)
    trw2 = np.trace(w @ w)
    Z = -0.5 * (trw**2 - trw2) * np.eye(3) + trw * w.T - (w @ w).T
    det_w = _det(w)
    residual = float(np.abs(w @ Z.T + det_w * np.eye(3)).max())
    return ZMatrix(
        Z=_freeze(Z),
        det_omega=det_w,
        adjugate_residual=residual,
        entangled=bool(np.abs(Z).max() > tol),
    )


def mixed_positivity_qubit(state: BipartiteState, tol: float = DEFAULT_TOL) -> dict:
    """The three necessary positivity inequalities for a two-qubit state.

    Component forms of e_2, e_3, e_4 >= 0 for the 4 x 4 matrix (scaled by
    8, 16 and 256 respectively):

        ineq1 = 3 - S                           with S = |x|^2 + |y|^2 + w:w
        ineq2 = 1 - S + 2 G                     with G = x.w.y - det(w)
        ineq3 = 1 - 2S + S^2 + 8G - 4 x.w.wT.x - 4 y.wT.w.y
                - 4 (|x|^2 |y|^2 + 2 x.Z.y + Z:Z)

    Necessary but not sufficient: every PSD state passes all three, and
    equality holds only for pure states.
    """
    _require_qubit(state)
    x, y, w = state.x, state.y, state.omega
    S = float(x @ x + y @ y + np.sum(w * w))
    det_w = _det(w)
    G = float(x @ w @ y) - det_w
    Z = z_matrix(state).Z
    ineq1 = 3.0 - S
    ineq2 = 1.0 - S + 2.0 * G
    ineq3 = (
        1.0 - 2.0 * S + S**2 + 8.0 * G
        - 4.0 * float(x @ (w @ w.T) @ x)
        - 4.0 * float(y @ (w.T @ w) @ y)
        - 4.0 * (float(x @ x) * float(y @ y) + 2.0 * float(x @ Z @ y) + float(np.sum(Z * Z)))
    )
    min_eig = float(np.linalg.eigvalsh(state.rho)[0])
    return {
        "values": (ineq1, ineq2, ineq3),
        "satisfied": tuple(v >= -tol for v in (ineq1, ineq2, ineq3)),
        "equality": tuple(abs(v) <= tol for v in (ineq1, ineq2, ineq3)),
        "min_eigenvalue": min_eig,
        "psd": min_eig >= -tol,
    }


# ---------------------------------------------------------------------------
# general-N purity chain
# ---------------------------------------------------------------------------

def purity_residuals_qudit(
    state: BipartiteState, tensors: StructureTensors | None = None
) -> PurityResiduals:
    """Residuals of the four pure-state conditions for two dimension-N qudits.

    The conditions are stated with the (N^2 - 2)-normalization, so at N = 2
    the vector and matrix residuals are twice the qubit-form ones; the zero
    sets coincide.
    """
    N = state.dim
    tensors = tensors if tensors is not None else cached_tensors(N)
    if tensors.dim != N:
        raise ValueError("tensors do not match the state dimension")
    x, y, w = state.x, state.y, state.omega
    d, f = tensors.d, tensors.f
    c = N * N - 2.0

    r_sum = 1.0 + (2.0 / N) * (x @ x + y @ y) + (4.0 / N**2) * np.sum(w * w) - N * N

    vx = (
        c * x
        - np.einsum("kji,k,j->i", d, x, x)
        - (4.0 / N) * w @ y
        - (2.0 / N) * np.einsum("mki,ml,kl->i", d, w, w)
    )
    vy = (
        c * y
        - np.einsum("kji,k,j->i", d, y, y)
        - (4.0 / N) * w.T @ x
        - (2.0 / N) * np.einsum("mki,lm,lk->i", d, w, w)
    )
    C = np.einsum("mn,kl,nlj,mki->ij", w, w, d, d, optimize=True)
    C -= np.einsum("mn,kl,nlj,mki->ij", w, w, f, f, optimize=True)
    vw = (
        c * w
        - 2.0 * np.outer(x, y)
        - 2.0 * np.einsum("kli,k,lj->ij", d, x, w)
        - 2.0 * np.einsum("klj,k,il->ij", d, y, w)
        - C
    )
    return PurityResiduals(
        r_sum=float(r_sum),
        r_x=float(np.abs(vx).max()),
        r_y=float(np.abs(vy).max()),
        r_omega=float(np.abs(vw).max()),
    )


def trace_identity_residual(
    state: BipartiteState, tensors: StructureTensors | None = None
) -> float:
    """Residual of the trace consequence of the correlation-matrix condition.

    (N^2-2) tr(w) = 2 x.y + 2 (x+y).z + (1/2) d_imk d_inl (w+wT)_mn (w+wT)_kl
                    - (2/N) [tr(w)^2 - tr(w^2)] - |z|^2,   z_i = d_imk w_mk.

    Vanishes on every state satisfying the four purity conditions; it
    reduces to the two-qubit trace identity at N = 2.
    """
    N = state.dim
    tensors = tensors if tensors is not None else cached_tensors(N)
    x, y, w = state.x, state.y, state.omega
    d = tensors.d
    z = np.einsum("imk,mk->i", d, w)
    ws = w + w.T
    quad = 0.5 * np.einsum("imk,inl,mn,kl->", d, d, ws, ws, optimize=True)
    trw = np.trace(w)
    trw2 = np.trace(w @ w)
    lhs = (N * N - 2.0) * trw
    rhs = (
        2.0 * float(x @ y)
        + 2.0 * float((x + y) @ z)
        + float(quad)
        - (2.0 / N) * (trw**2 - trw2)
        - float(z @ z)
    )
    return abs(float(lhs - rhs))


# ---------------------------------------------------------------------------
# Werner states
# ---------------------------------------------------------------------------

def werner(N: int, alpha: float) -> WernerState:
    """Werner-family state: x = y = 0, omega = alpha * identity.

    Invariant under U x U conjugation for every unitary U.  alpha outside
    the physical range is representable and diagnosable.
    """
    n = N * N - 1
    state = from_components(N, np.zeros(n), np.zeros(n), alpha * np.eye(n))
    return WernerState(dim=N, alpha=float(alpha), state=state)


def werner_alpha_norm(N: int) -> float:
    """|alpha| forced by the scalar purity condition: N/2."""
    return N / 2.0

def werner_alpha_omega(N: int) -> float:
    """alpha forced by the correlation-matrix purity condition: -N(N^2-2)/4."""
    return -N * (N * N - 2.0) / 4.0


def werner_residual_curve(
    N: int, alphas: np.ndarray, tensors: StructureTensors | None = None
) -> np.ndarray:
    """Total purity residual of werner(N, alpha) for an array of alphas.

    The four residuals are polynomial in alpha, so the omega = identity
    contractions are evaluated once and rescaled; this matches
    purity_residuals_qudit(werner(N, a).state) pointwise.
    """
    tensors = tensors if tensors is not None else cached_tensors(N)
    d, f = tensors.d, tensors.f
    n = N * N - 1
    eye = np.eye(n)
    alphas = np.asarray(alphas, dtype=float)

    r_sum = np.abs(1.0 + (4.0 / N**2) * alphas**2 * n - N * N)
    # vector conditions: only the d-contraction survives, and it vanishes
    # because sum_l d_lli = 0; evaluate it anyway from the tensors
    vec_base = np.abs((2.0 / N) * np.einsum("mki,ml,kl->i", d, eye, eye)).max()
    r_vec = 2.0 * alphas**2 * vec_base
    C_base = (
        np.einsum("mn,kl,nlj,mki->ij", eye, eye, d, d, optimize=True)
        - np.einsum("mn,kl,nlj,mki->ij", eye, eye, f, f, optimize=True)
    )
    c = N * N - 2.0
    vw = c * alphas[:, None, None] * eye[None] - alphas[:, None, None] ** 2 * C_base[None]
    r_omega = np.abs(vw).max(axis=(1, 2))
    return r_sum + r_vec + r_omega


def werner_consistency(
    N: int,
    tensors: StructureTensors | None = None,
    grid_points: int = 10_000,
    refine_iters: int = 200,
) -> WernerConsistencyReport:
    """Both alpha determinations plus the scanned minimum purity residual.

    The residual scan covers alpha in [-N, N] on a uniform grid and then
    refines around the grid minimizer by golden-section search, certifying
    a lower bound on the family's distance from purity (zero only at N=2).
    """
    if N < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {N}")
    tensors = tensors if tensors is not None else cached_tensors(N)
    a_norm = werner_alpha_norm(N)
    a_omega = werner_alpha_omega(N)
    consistent = min(abs(a_norm - a_omega), abs(-a_norm - a_omega)) < 1e-12

    alphas = np.linspace(-N, N, grid_points)
    totals = werner_residual_curve(N, alphas, tensors)
    k = int(np.argmin(totals))
    lo = alphas[max(k - 1, 0)]
    hi = alphas[min(k + 1, grid_points - 1)]

    def curve(a: float) -> float:
        return float(werner_residual_curve(N, np.array([a]), tensors)[0])

    gr = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c1 = b - gr * (b - a)
    c2 = a + gr * (b - a)
    f1, f2 = curve(c1), curve(c2)
    for _ in range(refine_iters):
        if f1 < f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - gr * (b - a)
            f1 = curve(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + gr * (b - a)
            f2 = curve(c2)
        if b - a < 1e-14:
            break
    argmin = (a + b) / 2.0
    best = min(curve(argmin), float(totals[k]))
    return WernerConsistencyReport(
        dim=N,
        alpha_norm=a_norm,
        alpha_omega=a_omega,
        consistent=consistent,
        min_residual=best,
        argmin_alpha=float(argmin),
    )


def werner_positivity_scan(
    N: int,
    alpha_min: float | None = None,
    alpha_max: float | None = None,
    steps: int = 101,
    tol: float = DEFAULT_TOL,
) -> list[dict]:
    """Tabulate e_2, e_3 and the full spectrum verdict along the Werner family.

    Demonstrates that the symmetric-polynomial conditions are necessary but
    not sufficient: part of the e_2-allowed window fails the eigenvalue test.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if alpha_min is None:
        alpha_min = -N / 2.0
    if alpha_max is None:
        alpha_max = N / 2.0
    tensors = cached_tensors(N)
    rows = []
    for alpha in np.linspace(alpha_min, alpha_max, steps):
        ws = werner(N, float(alpha))
        rho = ws.state.rho
        p = [float(np.trace(np.linalg.matrix_power(rho, k)).real) for k in (1, 2, 3)]
        e2 = 0.5 - 0.5 * p[1]
        e3 = 1.0 / 6.0 - 0.5 * p[1] + p[2] / 3.0
        eigs = np.linalg.eigvalsh(rho)
        res = purity_residuals_qudit(ws.state, tensors)
        rows.append(
            {
                "N": N,
                "alpha": float(alpha),
                "e2": float(e2),
                "e3": float(e3),
                "min_eigenvalue": float(eigs[0]),
                "psd": bool(eigs[0] >= -tol),
                "purity_residual": res.total(),
            }
        )
    return rows


def werner_scan_csv(rows: list[dict]) -> str:
    cols = ["N", "alpha", "e2", "e3", "min_eigenvalue", "psd", "purity_residual"]
    lines = [",".join(cols)]
    for r in rows:
        lines.append(
            ",".join(
                str(int(r[c])) if c in ("N", "psd") else repr(float(r[c])) for c in cols
            )
        )
    return "\n".join(lines) + "\n"
