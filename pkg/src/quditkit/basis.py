"""Generalized Gell-Mann generators of SU(N) and their structure tensors.

Conventions used throughout the package:

* generators are Hermitian, traceless and normalized to Tr(L_a L_b) = 2 d_ab;
* ordering is "sym-antisym-diag": all symmetric off-diagonal generators
  S_jk (j < k, lexicographic), then the antisymmetric A_jk in the same
  order, then the N-1 diagonal generators D_l;
* f_abc = Tr([L_a, L_b] L_c) / 4i is totally antisymmetric,
  d_abc = Tr({L_a, L_b} L_c) / 4 is totally symmetric, both real.

For N = 2 the canonical ordering yields exactly (sigma_x, sigma_y, sigma_z)
and d vanishes identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

DEFAULT_TOL = 1e-9
SPARSE_CUTOFF = 1e-12


class CheckResult(NamedTuple):
    ok: bool
    max_residual: float


@dataclass(frozen=True, eq=False)
class GellMannBasis:
    """The N^2 - 1 generalized Gell-Mann matrices in canonical ordering."""

    dim: int
    generators: np.ndarray  # shape (N^2-1, N, N), complex, read-only
    labels: tuple[str, ...]

    @property
    def size(self) -> int:
        return self.dim * self.dim - 1

    def to_json_dict(self, tolerance: float = DEFAULT_TOL) -> dict:
        """JSON export: header plus one {re, im} record per generator."""
        return {
            "header": {
                "N": self.dim,
                "tolerance": tolerance,
                "ordering": "sym-antisym-diag",
            },
            "labels": list(self.labels),
            "generators": [
                {"re": g.real.tolist(), "im": g.imag.tolist()}
                for g in self.generators
            ],
        }


@dataclass(frozen=True, eq=False)
class StructureTensors:
    """Sparse f/d tensors of SU(N), with dense views for contractions."""

    dim: int
    f_entries: tuple[tuple[int, int, int, float], ...]
    d_entries: tuple[tuple[int, int, int, float], ...]
    f: np.ndarray = field(repr=False)  # dense (n, n, n), read-only
    d: np.ndarray = field(repr=False)

    def to_json_dict(self, tolerance: float = DEFAULT_TOL) -> dict:
        return {
            "header": {
                "N": self.dim,
                "tolerance": tolerance,
                "ordering": "sym-antisym-diag",
            },
            "f": [{"a": a, "b": b, "c": c, "value": v} for a, b, c, v in self.f_entries],
            "d": [{"a": a, "b": b, "c": c, "value": v} for a, b, c, v in self.d_entries],
        }


@dataclass(frozen=True, eq=False)
class AdjointMatrix:
    """Adjoint-representation image of a fundamental unitary U."""

    dim: int
    R: np.ndarray  # shape (N^2-1, N^2-1), real, read-only


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def generate_basis(N: int) -> GellMannBasis:
    """Build the N^2 - 1 generalized Gell-Mann matrices for SU(N).

    Raises ValueError for N < 2.  generate_basis(2) returns the Pauli
    matrices in the order (sigma_x, sigma_y, sigma_z).
    """
    if N < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {N}")
    mats = []
    labels = []
    for j in range(N):
        for k in range(j + 1, N):
            m = np.zeros((N, N), dtype=complex)
            m[j, k] = 1.0
            m[k, j] = 1.0
            mats.append(m)
            labels.append(f"s{j + 1}{k + 1}")
    for j in range(N):
        for k in range(j + 1, N):
            m = np.zeros((N, N), dtype=complex)
            m[j, k] = -1.0j
            m[k, j] = 1.0j
            mats.append(m)
            labels.append(f"a{j + 1}{k + 1}")
    for l in range(1, N):
        m = np.zeros((N, N), dtype=complex)
        norm = np.sqrt(2.0 / (l * (l + 1)))
        for j in range(l):
            m[j, j] = norm
        m[l, l] = -l * norm
        mats.append(m)
        labels.append(f"d{l}")
    gen = _readonly(np.stack(mats))
    return GellMannBasis(dim=N, generators=gen, labels=tuple(labels))


@lru_cache(maxsize=None)
def cached_basis(N: int) -> GellMannBasis:
    """Memoized generate_basis; the basis is deterministic per N."""
    return generate_basis(N)


def compute_tensors(basis: GellMannBasis, tol: float = DEFAULT_TOL) -> StructureTensors:
    """Compute f_abc and d_abc from the generator traces.

    Raises ValueError when any computed entry carries an imaginary residue
    above ``tol`` (which would signal a broken basis).
    """
    lam = basis.generators
    # T3[a, b, c] = Tr(L_a L_b L_c)
    prod = np.einsum("aij,bjk->abik", lam, lam)
    t3 = np.einsum("abik,cki->abc", prod, lam)
    anti = 0.25 * (t3 + np.swapaxes(t3, 0, 1))  # Tr({L_a,L_b} L_c)/4
    comm = t3 - np.swapaxes(t3, 0, 1)           # Tr([L_a,L_b] L_c)
    d_dense = anti.real
    f_dense = comm.imag / 4.0
    residue = max(np.abs(anti.imag).max(), np.abs(comm.real).max() / 4.0)
    if residue > tol:
        raise ValueError(
            f"structure tensors have imaginary residue {residue:.3e} > {tol:.3e}; "
            "generator basis is inconsistent"
        )
    d_dense = _readonly(d_dense)
    f_dense = _readonly(f_dense)
    return StructureTensors(
        dim=basis.dim,
        f_entries=_sparsify(f_dense),
        d_entries=_sparsify(d_dense),
        f=f_dense,
        d=d_dense,
    )


@lru_cache(maxsize=None)
def cached_tensors(N: int) -> StructureTensors:
    return compute_tensors(cached_basis(N))


def _sparsify(t: np.ndarray) -> tuple[tuple[int, int, int, float], ...]:
    idx = np.argwhere(np.abs(t) > SPARSE_CUTOFF)
    return tuple((int(a), int(b), int(c), float(t[a, b, c])) for a, b, c in idx)


def verify_product_rule(
    basis: GellMannBasis, tensors: StructureTensors, tol: float = DEFAULT_TOL
) -> CheckResult:
    """Check L_a L_b = (2/N) delta_ab 1 + (d_abc + i f_abc) L_c for all pairs."""
    if basis.dim != tensors.dim:
        raise ValueError("basis and tensors have different dimensions")
    N = basis.dim
    lam = basis.generators
    n = basis.size
    lhs = np.einsum("aij,bjk->abik", lam, lam)
    rhs = np.einsum("abc,cik->abik", tensors.d + 1j * tensors.f, lam)
    rhs += (2.0 / N) * np.eye(n)[:, :, None, None] * np.eye(N)[None, None, :, :]
    res = float(np.abs(lhs - rhs).max())
    return CheckResult(res <= tol, res)


def verify_ff_dd_identity(tensors: StructureTensors, tol: float = DEFAULT_TOL) -> CheckResult:
    """Check f_mki f_nli = (2/N)(delta_mn delta_kl - delta_ml delta_kn) + d_mni d_kli - d_kni d_mli."""
    N = tensors.dim
    f, d = tensors.f, tensors.d
    n = f.shape[0]
    lhs = np.einsum("mki,nli->mnkl", f, f)
    eye = np.eye(n)
    rhs = (2.0 / N) * (
        np.einsum("mn,kl->mnkl", eye, eye) - np.einsum("ml,kn->mnkl", eye, eye)
    )
    rhs += np.einsum("mni,kli->mnkl", d, d) - np.einsum("kni,mli->mnkl", d, d)
    res = float(np.abs(lhs - rhs).max())
    return CheckResult(res <= tol, res)


def require_unitary(U: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {U.shape}")
    dev = float(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max())
    if dev > tol:
        raise ValueError(f"matrix is not unitary: |U^dag U - 1| = {dev:.3e} > {tol:.3e}")
    return U


def adjoint_of(U: np.ndarray, basis: GellMannBasis, tol: float = DEFAULT_TOL) -> AdjointMatrix:
    """Adjoint-representation matrix R with U L_j U^dag = R_kj L_k.

    R is real orthogonal and leaves f and d invariant as rank-3 tensors.
    Rejects non-unitary U.
    """
    U = require_unitary(U, tol)
    if U.shape[0] != basis.dim:
        raise ValueError(f"unitary is {U.shape[0]}x{U.shape[0]}, basis has N={basis.dim}")
    lam = basis.generators
    conj = np.einsum("ij,ajk,lk->ail", U, lam, U.conj())
    R = 0.5 * np.einsum("kij,aji->ka", lam, conj)
    residue = float(np.abs(R.imag).max())
    if residue > tol:
        raise ValueError(f"adjoint matrix has imaginary residue {residue:.3e}")
    return AdjointMatrix(dim=basis.dim, R=_readonly(R.real))
