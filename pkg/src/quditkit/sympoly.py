"""Power sums and elementary symmetric polynomials of density-matrix spectra.

A Hermitian unit-trace matrix is positive semidefinite exactly when all the
elementary symmetric polynomials e_1..e_N of its eigenvalues are
non-negative, which gives a positivity test that never diagonalizes.  The
e_k are obtained from the power sums p_k = Tr(rho^k) through Newton's
recursion  k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .basis import DEFAULT_TOL


@dataclass(frozen=True)
class SymPolyReport:
    """Spectral symmetric-function report for one Hermitian unit-trace matrix."""

    dim: int
    power_sums: tuple[float, ...]   # p_1..p_dim
    elementary: tuple[float, ...]   # e_1..e_dim
    psd: bool
    min_eigenvalue: float
    eig_psd: bool

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "power_sums": list(self.power_sums),
            "elementary": list(self.elementary),
            "psd": self.psd,
            "min_eigenvalue": self.min_eigenvalue,
        }


def require_hermitian(M: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    dev = float(np.abs(M - M.conj().T).max())
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: deviation {dev:.3e} > {tol:.3e}")
    return M


def power_sums(M: np.ndarray, K: int, tol: float = DEFAULT_TOL) -> list[float]:
    """p_k = Tr(M^k) for k = 1..K, by repeated multiplication."""
    if K < 1:
        raise ValueError("K must be >= 1")
    M = require_hermitian(M, tol)
    out = []
    P = M.copy()
    for _ in range(K):
        out.append(float(np.trace(P).real))
        P = P @ M
    return out


def elementary_from_power(p: list[float] | np.ndarray) -> list[float]:
    """e_1..e_K from p_1..p_K via Newton's recursion (e_0 = 1)."""
    p = list(p)
    e = [1.0]
    for k in range(1, len(p) + 1):
        s = 0.0
        for i in range(1, k + 1):
            s += (-1) ** (i - 1) * e[k - i] * p[i - 1]
        e.append(s / k)
    return e[1:]


# Closed forms for e_1..e_6 of a unit-trace matrix, in terms of p_k = Tr rho^k.
# Used as an independent oracle for the Newton recursion.
def elementary_closed_forms(p: list[float]) -> list[float]:
    """Explicit e_1..e_K (K <= 6) for p_1 = 1; expansion of the Newton chain."""
    if abs(p[0] - 1.0) > 1e-9:
        raise ValueError("closed forms assume unit trace, p_1 = 1")
    if len(p) > 6:
        raise ValueError("closed forms available up to e_6 only")
    p2 = p[1] if len(p) > 1 else None
    p3 = p[2] if len(p) > 2 else None
    p4 = p[3] if len(p) > 3 else None
    p5 = p[4] if len(p) > 4 else None
    p6 = p[5] if len(p) > 5 else None
    e = [1.0]
    if p2 is not None:
        e.append(0.5 - 0.5 * p2)
    if p3 is not None:
        e.append(1.0 / 6.0 - 0.5 * p2 + p3 / 3.0)
    if p4 is not None:
        e.append((1.0 - 6.0 * p2 + 3.0 * p2**2 + 8.0 * p3 - 6.0 * p4) / 24.0)
    if p5 is not None:
        e.append(
            (1.0 - 10.0 * p2 + 15.0 * p2**2 + 20.0 * p3 - 20.0 * p2 * p3
             - 30.0 * p4 + 24.0 * p5) / 120.0
        )
    if p6 is not None:
        e.append(
            (1.0 - 15.0 * p2 + 45.0 * p2**2 - 15.0 * p2**3 + 40.0 * p3
             - 120.0 * p2 * p3 + 40.0 * p3**2 - 90.0 * p4 + 90.0 * p2 * p4
             + 144.0 * p5 - 120.0 * p6) / 720.0
        )
    return e


def positivity_check(rho: np.ndarray, tol: float = DEFAULT_TOL) -> SymPolyReport:
    """PSD verdict from e_k >= 0, cross-checked against the spectrum.

    Requires Tr rho = 1 within ``tol``.  The e_k verdict and the
    eigenvalue verdict must agree; a disagreement beyond tolerance raises
    ArithmeticError (numerical breakdown).
    """
    rho = require_hermitian(rho, tol)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"trace must be 1, got {tr!r}")
    n = rho.shape[0]
    p = power_sums(rho, n, tol)
    e = elementary_from_power(p)
    psd = all(ek >= -tol for ek in e)
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    eig_psd = min_eig >= -tol
    if psd != eig_psd:
        raise ArithmeticError(
            f"positivity verdicts disagree: e_k -> {psd}, spectrum -> {eig_psd} "
            f"(min eigenvalue {min_eig:.3e})"
        )
    return SymPolyReport(
        dim=n,
        power_sums=tuple(p),
        elementary=tuple(e),
        psd=psd,
        min_eigenvalue=min_eig,
        eig_psd=eig_psd,
    )


def trace_powers_from_traceless(
    a_traces: list[float] | np.ndarray, N: int, k: int, tol: float = DEFAULT_TOL
) -> float:
    """Tr rho^k for rho = (1 + A)/N from the traces Tr A^m, m = 0..k.

    Binomial expansion: Tr rho^k = N^-k sum_m C(k, m) Tr A^m.  Requires
    Tr A^0 = N and Tr A = 0.
    """
    a_traces = list(a_traces)
    if len(a_traces) < k + 1:
        raise ValueError(f"need Tr A^0..Tr A^{k}, got {len(a_traces)} values")
    if abs(a_traces[0] - N) > tol:
        raise ValueError(f"Tr A^0 must equal N={N}, got {a_traces[0]!r}")
    if abs(a_traces[1]) > tol:
        raise ValueError(f"A must be traceless, got Tr A = {a_traces[1]!r}")
    return sum(comb(k, m) * a_traces[m] for m in range(k + 1)) / N**k
