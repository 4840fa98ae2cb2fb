"""Dense-grid brute-force evaluators at desk scale.

These recompute the supremum quantities straight from their definitions on
uniform parameter grids, sharing nothing with the optimizers in
:mod:`opr.radii` beyond plain matrix arithmetic.  They validate the
optimizers and generate frozen expected values for tests.

Grids are half-open (``k/R`` spacing on both parameters), so doubling the
resolution refines the grid in place and the returned maximum can only grow.
"""

from __future__ import annotations

import numpy as np

from .functions import feval, numeric_inverse
from .linalg import as_operator

__all__ = [
    "grid_numerical_range_sup",
    "grid_euclidean_norm_pair",
    "grid_omega_f_pair",
]

_CHUNK = 128


def _angle_grids(resolution: int) -> tuple[np.ndarray, np.ndarray]:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    a = (np.pi / 2) * np.arange(resolution) / resolution
    b = (2.0 * np.pi) * np.arange(resolution) / resolution
    return a, b


def _form_parts(T: np.ndarray, a: np.ndarray, b: np.ndarray):
    """<T x, x> over x = (cos a, e^{ib} sin a) splits into a part depending
    only on a and a part depending only on b, scaled by cos(a) sin(a)."""
    c, s = np.cos(a), np.sin(a)
    e = np.exp(1j * b)
    A = T[0, 0] * c * c + T[1, 1] * s * s
    B = T[0, 1] * e + T[1, 0] * np.conj(e)
    return A, c * s, B


def _require_dim2(T: np.ndarray, what: str) -> np.ndarray:
    T = as_operator(T)
    if T.shape[0] != 2:
        raise ValueError(f"{what} is a dimension-2 oracle, got dim {T.shape[0]}")
    return T


def grid_numerical_range_sup(T: np.ndarray, resolution: int = 2000) -> float:
    """max |<Tx, x>| over the (a, b) unit-vector grid; dimension 2 only."""
    T = _require_dim2(T, "grid_numerical_range_sup")
    a, b = _angle_grids(resolution)
    A, cs, B = _form_parts(T, a, b)
    best = 0.0
    for lo in range(0, resolution, _CHUNK):
        hi = min(lo + _CHUNK, resolution)
        m = np.abs(A[lo:hi, None] + cs[lo:hi, None] * B[None, :])
        best = max(best, float(m.max()))
    return best


def grid_euclidean_norm_pair(T1: np.ndarray, T2: np.ndarray, resolution: int = 2000) -> float:
    """max ||cos(t) T1 + e^{i phi} sin(t) T2|| over the coefficient grid.

    Works at any dimension since the grid runs over coefficients; a global
    coefficient phase does not change the norm.  Dimension 2 uses the closed
    form for the top singular value; larger dimensions fall back to batched
    Hermitian eigenvalues of M*M.
    """
    T1 = as_operator(T1)
    T2 = as_operator(T2)
    if T1.shape != T2.shape:
        raise ValueError(f"pair must share a dimension: {T1.shape} vs {T2.shape}")
    d = T1.shape[0]
    t, phi = _angle_grids(resolution)
    c, s = np.cos(t), np.sin(t)
    e = np.exp(1j * phi)
    best = 0.0
    for lo in range(0, resolution, _CHUNK):
        hi = min(lo + _CHUNK, resolution)
        cc = c[lo:hi, None, None, None]
        se = s[lo:hi, None, None, None] * e[None, :, None, None]
        M = cc * T1[None, None] + se * T2[None, None]
        if d == 2:
            F = np.abs(M[..., 0, 0]) ** 2 + np.abs(M[..., 0, 1]) ** 2
            F += np.abs(M[..., 1, 0]) ** 2 + np.abs(M[..., 1, 1]) ** 2
            det2 = np.abs(M[..., 0, 0] * M[..., 1, 1] - M[..., 0, 1] * M[..., 1, 0]) ** 2
            smax2 = 0.5 * (F + np.sqrt(np.maximum(F * F - 4.0 * det2, 0.0)))
            best = max(best, float(np.sqrt(smax2.max())))
        else:
            G = np.einsum("tpji,tpjk->tpik", M.conj(), M)
            w = np.linalg.eigvalsh(G)[..., -1]
            best = max(best, float(np.sqrt(max(w.max(), 0.0))))
    return best


def _omega_f_grid_argmax(Tstack: np.ndarray, f, resolution: int) -> tuple[float, np.ndarray]:
    """Maximize sum_i f(|<T_i x, x>|) over the (a, b) grid at dimension 2.

    Returns the best objective value and the witness unit vector.
    """
    n = Tstack.shape[0]
    a, b = _angle_grids(resolution)
    parts = [_form_parts(Tstack[i], a, b) for i in range(n)]
    best = -np.inf
    best_idx = (0, 0)
    for lo in range(0, resolution, _CHUNK):
        hi = min(lo + _CHUNK, resolution)
        g = None
        for A, cs, B in parts:
            m = np.abs(A[lo:hi, None] + cs[lo:hi, None] * B[None, :])
            term = np.asarray(feval(f, m.ravel()), dtype=float).reshape(m.shape)
            g = term if g is None else g + term
        k = int(np.argmax(g))
        if float(g.flat[k]) > best:
            best = float(g.flat[k])
            best_idx = (lo + k // resolution, k % resolution)
    ia, ib = best_idx
    x = np.array([np.cos(a[ia]), np.exp(1j * b[ib]) * np.sin(a[ia])], dtype=np.complex128)
    return best, x


def grid_omega_f_pair(T1: np.ndarray, T2: np.ndarray, f, resolution: int = 2000) -> float:
    """f^{-1} of the grid maximum of f(|<T1 x, x>|) + f(|<T2 x, x>|);
    dimension 2 only."""
    T1 = _require_dim2(T1, "grid_omega_f_pair")
    T2 = _require_dim2(T2, "grid_omega_f_pair")
    g, _ = _omega_f_grid_argmax(np.stack([T1, T2]), f, resolution)
    return numeric_inverse(f, g)
