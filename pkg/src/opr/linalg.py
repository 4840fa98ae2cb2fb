"""Dense complex matrix algebra: adjoints, norms, Hermitian eigenwork,
spectral functional calculus, block constructions, matrix-valued quadrature.

All operators are square ``numpy`` arrays of dtype complex128.  Nothing here
mutates its inputs; every function returns a fresh array, so values are safe
to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EigensolverError",
    "HermitianContractError",
    "QuadratureError",
    "HermitianEigen",
    "as_operator",
    "adjoint",
    "op_norm",
    "hermitian_eigen",
    "absolute",
    "psd_power",
    "apply_scalar_function_psd",
    "real_part",
    "imag_part",
    "offdiag_block",
    "integrate_matrix_function",
    "gauss_legendre_01",
]


class EigensolverError(RuntimeError):
    """Hermitian eigendecomposition failed or missed its certificates."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class HermitianContractError(ValueError):
    """Input violates a Hermitian / positive-semidefinite precondition."""


class QuadratureError(RuntimeError):
    """Node doubling stopped improving before the cap was reached."""

    def __init__(self, message: str, last_delta: float):
        super().__init__(message)
        self.last_delta = last_delta


def as_operator(entries) -> np.ndarray:
    """Coerce to a square complex128 matrix, rejecting non-square or
    non-finite input."""
    T = np.asarray(entries, dtype=np.complex128)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T.real)) or not np.all(np.isfinite(T.imag)):
        raise ValueError("operator entries must be finite")
    return T


def adjoint(T: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return T.conj().T.copy()


def _hermitian_part(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


def op_norm(T: np.ndarray) -> float:
    """Largest singular value, computed as sqrt of the top eigenvalue of T*T."""
    T = np.asarray(T, dtype=np.complex128)
    G = _hermitian_part(T.conj().T @ T)
    try:
        w = np.linalg.eigvalsh(G)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed on T*T: {exc}") from exc
    return float(np.sqrt(max(float(w[-1]), 0.0)))


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition A = U diag(eigenvalues) U* with ascending
    eigenvalues and orthonormal columns in ``eigenvectors``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eigen(A: np.ndarray, check: bool = True) -> HermitianEigen:
    """Eigendecompose a Hermitian matrix with reconstruction and
    orthonormality certificates.

    Raises :class:`EigensolverError` carrying the offending residual when a
    certificate fails.
    """
    A = np.asarray(A, dtype=np.complex128)
    H = _hermitian_part(A)
    try:
        w, U = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"Hermitian eigensolver did not converge: {exc}") from exc
    if check:
        scale = 1.0 + float(np.linalg.norm(H, "fro"))
        resid = float(np.linalg.norm(H - (U * w) @ U.conj().T, "fro"))
        if resid > 1e-10 * scale:
            raise EigensolverError(
                f"eigendecomposition residual {resid:.3e} exceeds 1e-10*{scale:.3e}",
                residual=resid,
            )
        ortho = float(np.linalg.norm(U.conj().T @ U - np.eye(len(w)), "fro"))
        if ortho > 1e-10:
            raise EigensolverError(
                f"eigenvector orthonormality defect {ortho:.3e} exceeds 1e-10",
                residual=ortho,
            )
    return HermitianEigen(eigenvalues=w, eigenvectors=U)


def _require_hermitian(A: np.ndarray, what: str) -> np.ndarray:
    A = np.asarray(A, dtype=np.complex128)
    defect = float(np.linalg.norm(A - A.conj().T, "fro"))
    if defect > 1e-10 * (1.0 + float(np.linalg.norm(A, "fro"))):
        raise HermitianContractError(
            f"{what} requires a Hermitian input; defect {defect:.3e}"
        )
    return _hermitian_part(A)


def _clamped_psd_eigen(A: np.ndarray, what: str) -> tuple[np.ndarray, np.ndarray]:
    """Eigensystem of a nominally PSD Hermitian matrix, negatives clamped to 0.

    Eigenvalues below -1e-10*(1+max|lambda|) are a contract violation, not
    floating-point dust.
    """
    H = _require_hermitian(A, what)
    eig = hermitian_eigen(H)
    w = eig.eigenvalues
    top = float(np.max(np.abs(w))) if w.size else 0.0
    if w.size and float(w[0]) < -1e-10 * (1.0 + top):
        raise HermitianContractError(
            f"{what} requires PSD input; min eigenvalue {float(w[0]):.3e}"
        )
    return np.maximum(w, 0.0), eig.eigenvectors


def absolute(T: np.ndarray) -> np.ndarray:
    """Matrix absolute value (T*T)^{1/2}; Hermitian PSD."""
    T = np.asarray(T, dtype=np.complex128)
    w, U = _clamped_psd_eigen(T.conj().T @ T, "absolute")
    return _hermitian_part((U * np.sqrt(w)) @ U.conj().T)


def psd_power(A: np.ndarray, s: float) -> np.ndarray:
    """Spectral power A^s of a Hermitian PSD matrix, s >= 0.

    s = 0 yields the support projection under the convention 0^0 := 0, so
    kernels stay kernels (eigenvalues at or below the clamping noise floor
    map to 0, not 1).
    """
    if s < 0:
        raise ValueError(f"exponent must be nonnegative, got {s}")
    w, U = _clamped_psd_eigen(A, "psd_power")
    if s == 0:
        top = float(w[-1]) if w.size else 0.0
        vals = (w > 1e-12 * (1.0 + top)).astype(float)
    else:
        vals = w**s
    return _hermitian_part((U * vals) @ U.conj().T)


def _scalar_values(f, w: np.ndarray, what: str) -> np.ndarray:
    """Evaluate a scalar function on an eigenvalue vector, naming the
    eigenvalue on failure.  Accepts ScalarRadiusFunction-likes or bare
    callables; tries a vectorized call first."""
    fn = getattr(f, "evaluate", f)
    try:
        out = np.asarray(fn(w), dtype=float)
        if out.shape == w.shape:
            return out
    except Exception:
        pass
    vals = np.empty_like(w, dtype=float)
    for i, lam in enumerate(w):
        try:
            vals[i] = float(fn(float(lam)))
        except Exception as exc:
            raise ValueError(
                f"{what}: scalar function failed at eigenvalue {float(lam)!r}: {exc}"
            ) from exc
    return vals


def apply_scalar_function_psd(f, A: np.ndarray) -> np.ndarray:
    """U diag(f(lambda_i)) U* for Hermitian PSD A (eigenvalues clamped to 0
    before evaluation)."""
    w, U = _clamped_psd_eigen(A, "apply_scalar_function_psd")
    vals = _scalar_values(f, w, "apply_scalar_function_psd")
    return _hermitian_part((U * vals) @ U.conj().T)


def real_part(T: np.ndarray) -> np.ndarray:
    """Hermitian real part (T + T*)/2 of the Cartesian decomposition."""
    T = np.asarray(T, dtype=np.complex128)
    return (T + T.conj().T) / 2


def imag_part(T: np.ndarray) -> np.ndarray:
    """Hermitian imaginary part (T - T*)/(2i); T = real_part + i*imag_part."""
    T = np.asarray(T, dtype=np.complex128)
    return (T - T.conj().T) / 2j


def offdiag_block(T1: np.ndarray, T2: np.ndarray) -> np.ndarray:
    """Off-diagonal operator matrix [[O, T1], [T2*, O]].

    The adjoint of the second argument is applied here, once, so callers
    always pass the un-adjointed T2.
    """
    T1 = np.asarray(T1, dtype=np.complex128)
    T2 = np.asarray(T2, dtype=np.complex128)
    if T1.shape != T2.shape:
        raise ValueError(f"block parts must share a dimension: {T1.shape} vs {T2.shape}")
    d = T1.shape[0]
    B = np.zeros((2 * d, 2 * d), dtype=np.complex128)
    B[:d, d:] = T1
    B[d:, :d] = T2.conj().T
    return B


def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


_QUAD_CAP = 384


def _quad_once(f, A: np.ndarray, B: np.ndarray, n: int) -> np.ndarray:
    t, w = gauss_legendre_01(n)
    M = t[:, None, None] * A[None] + (1.0 - t)[:, None, None] * B[None]
    M = (M + M.conj().transpose(0, 2, 1)) / 2
    try:
        lam, U = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"batched eigensolver failed in quadrature: {exc}") from exc
    lam = np.maximum(lam, 0.0)
    vals = _scalar_values(f, lam.ravel(), "integrate_matrix_function").reshape(lam.shape)
    F = np.einsum("nij,nj,nkj->nik", U, vals, U.conj())
    return np.einsum("n,nik->ik", w, F)


def integrate_matrix_function(f, A: np.ndarray, B: np.ndarray, nodes: int = 48) -> np.ndarray:
    """Gauss-Legendre approximation of the integral over t in [0,1] of
    f(t*A + (1-t)*B) for Hermitian PSD A, B.

    Starts at ``nodes`` points and doubles until consecutive iterates agree
    to 1e-10*(1+||result||_F), capping at 384 nodes.
    """
    if nodes <= 0:
        raise ValueError("node count must be positive")
    A = _require_hermitian(A, "integrate_matrix_function")
    B = _require_hermitian(B, "integrate_matrix_function")
    if A.shape != B.shape:
        raise ValueError(f"endpoints must share a dimension: {A.shape} vs {B.shape}")
    n = nodes
    prev = _quad_once(f, A, B, n)
    last_delta = float("inf")
    while 2 * n <= _QUAD_CAP:
        n *= 2
        cur = _quad_once(f, A, B, n)
        last_delta = float(np.linalg.norm(cur - prev, "fro"))
        if last_delta <= 1e-10 * (1.0 + float(np.linalg.norm(cur, "fro"))):
            return _hermitian_part(cur)
        prev = cur
    raise QuadratureError(
        f"quadrature did not settle by {_QUAD_CAP} nodes; last doubling moved "
        f"the iterate by {last_delta:.3e}",
        last_delta=last_delta,
    )
