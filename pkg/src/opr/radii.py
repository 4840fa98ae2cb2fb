"""Certified computation of the supremum quantities: numerical radius,
Euclidean operator norm of tuples, the generalized f-operator radius, and
the phase-swept norm sup_theta ||A + e^{i theta} B*||.

Every optimizer returns a :class:`CertifiedValue`: the best value found, the
argument that achieves it (re-evaluating the objective at the witness
reproduces the value), and, where one is computable, a rigorous upper
certificate.  All randomness is derived from the budget seed, restart by
restart, so results are bit-reproducible and restarts may run in any order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .functions import feval, numeric_inverse
from .linalg import as_operator, op_norm

__all__ = [
    "OptimizerBudget",
    "CertifiedValue",
    "DEFAULT_BUDGET",
    "numerical_radius",
    "sup_theta_norm",
    "euclidean_norm",
    "omega_f",
    "omega_q",
    "omega_e",
    "omega_objective",
    "sup_theta_objective",
    "euclidean_objective",
    "omega_f_objective",
]

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN_MIX = 0x9E3779B97F4A7C15
_PATTERN_MIN_STEP = 1e-9
_GOLDEN_WIDTH = 1e-12


@dataclass(frozen=True)
class OptimizerBudget:
    grid_points: int = 1024
    restarts: int = 16
    max_iterations: int = 10_000
    tolerance: float = 1e-10
    seed: int = 0xC0FFEE

    def __post_init__(self):
        if self.grid_points <= 0 or self.restarts <= 0 or self.max_iterations <= 0:
            raise ValueError("grid_points, restarts and max_iterations must be positive")
        if not 0.0 < self.tolerance <= 1e-2:
            raise ValueError(f"tolerance must lie in (0, 1e-2], got {self.tolerance}")

    def restart_seed(self, r: int) -> int:
        return (self.seed ^ (r * _GOLDEN_MIX)) & _MASK64

    def scaled(self, factor: int) -> "OptimizerBudget":
        return replace(
            self,
            grid_points=self.grid_points * factor,
            restarts=self.restarts * factor,
            max_iterations=self.max_iterations * factor,
        )


DEFAULT_BUDGET = OptimizerBudget()


@dataclass(frozen=True)
class CertifiedValue:
    """A computed supremum: best value, the witness achieving it, and an
    optional rigorous upper bound."""

    value: float
    lower_witness: object
    upper_certificate: float | None
    restarts_used: int
    iterations_used: int
    converged: bool


# ---------------------------------------------------------------------------
# theta sweeps (numerical radius, phase-swept norm)


def _eigmax_rotated(T: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """lambda_max of (e^{i theta} T + e^{-i theta} T*)/2 for each theta."""
    E = np.exp(1j * thetas)
    H = E[:, None, None] * T[None] + np.conj(E)[:, None, None] * T.conj().T[None]
    return np.linalg.eigvalsh(H / 2)[..., -1]


def _golden_max(g, lo: float, hi: float, width: float) -> tuple[float, int]:
    """Golden-section maximization of a unimodal-near-peak scalar function."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    evals = 2
    while b - a > width:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
        evals += 1
    return (c if gc >= gd else d), evals


def numerical_radius(T: np.ndarray, budget: OptimizerBudget | None = None) -> CertifiedValue:
    """Numerical radius via the phase sweep
    omega(T) = max over theta of lambda_max((e^{i theta} T + e^{-i theta} T*)/2).

    A uniform theta grid locates the peak, golden-section refines it, and the
    Lipschitz bound |d lambda_max / d theta| <= ||T|| turns the grid maximum
    into a rigorous upper certificate.  The witness is the top eigenvector of
    the optimal rotated Hermitian part.
    """
    T = as_operator(T)
    budget = budget or DEFAULT_BUDGET
    N = budget.grid_points
    thetas = np.linspace(0.0, 2.0 * np.pi, N, endpoint=False)
    lam = _eigmax_rotated(T, thetas)
    k = int(np.argmax(lam))
    grid_best = float(lam[k])
    nrm = op_norm(T)
    h = 2.0 * np.pi / N

    def g(th: float) -> float:
        return float(_eigmax_rotated(T, np.array([th]))[0])

    th_star, evals = _golden_max(g, thetas[k] - h, thetas[k] + h, _GOLDEN_WIDTH)
    if g(th_star) < grid_best:
        th_star = float(thetas[k])
    E = np.exp(1j * th_star)
    H = (E * T + np.conj(E) * T.conj().T) / 2
    w, U = np.linalg.eigh(H)
    x = U[:, -1]
    value = float(abs(np.vdot(x, T @ x)))
    cert = grid_best + nrm * np.pi / N
    return CertifiedValue(
        value=min(value, cert),
        lower_witness=x,
        upper_certificate=cert,
        restarts_used=1,
        iterations_used=N + evals + 2,
        converged=True,
    )


def omega_objective(T: np.ndarray, x: np.ndarray) -> float:
    """|<Tx, x>| at a unit vector x."""
    x = np.asarray(x, dtype=np.complex128)
    return float(abs(np.vdot(x, np.asarray(T, dtype=np.complex128) @ x)))


def sup_theta_norm(
    A: np.ndarray, B: np.ndarray, budget: OptimizerBudget | None = None
) -> CertifiedValue:
    """sup over theta of ||A + e^{i theta} B*||, by grid plus golden-section
    refinement.  The Lipschitz constant in theta is ||B||, which yields the
    upper certificate; the witness is the optimal phase angle."""
    A = as_operator(A)
    B = as_operator(B)
    if A.shape != B.shape:
        raise ValueError(f"operands must share a dimension: {A.shape} vs {B.shape}")
    budget = budget or DEFAULT_BUDGET
    N = budget.grid_points
    thetas = np.linspace(0.0, 2.0 * np.pi, N, endpoint=False)
    Bs = B.conj().T
    M = A[None] + np.exp(1j * thetas)[:, None, None] * Bs[None]
    G = np.einsum("nji,njk->nik", M.conj(), M)
    vals = np.sqrt(np.maximum(np.linalg.eigvalsh(G)[..., -1], 0.0))
    k = int(np.argmax(vals))
    grid_best = float(vals[k])
    h = 2.0 * np.pi / N

    def g(th: float) -> float:
        return op_norm(A + np.exp(1j * th) * Bs)

    th_star, evals = _golden_max(g, thetas[k] - h, thetas[k] + h, _GOLDEN_WIDTH)
    if g(th_star) < grid_best:
        th_star = float(thetas[k])
    value = g(th_star)
    cert = grid_best + op_norm(B) * np.pi / N
    return CertifiedValue(
        value=min(value, cert),
        lower_witness=float(th_star % (2.0 * np.pi)),
        upper_certificate=cert,
        restarts_used=1,
        iterations_used=N + evals + 2,
        converged=True,
    )


def sup_theta_objective(A: np.ndarray, B: np.ndarray, theta: float) -> float:
    return op_norm(np.asarray(A) + np.exp(1j * theta) * np.asarray(B).conj().T)


# ---------------------------------------------------------------------------
# Euclidean operator norm of a tuple


def _stack_tuple(Ts) -> np.ndarray:
    mats = [as_operator(T) for T in Ts]
    if not mats:
        raise ValueError("operator tuple must be nonempty")
    dims = {m.shape[0] for m in mats}
    if len(dims) > 1:
        raise ValueError(f"operators in a tuple must share a dimension, got {sorted(dims)}")
    return np.stack(mats)


def euclidean_norm(Ts, budget: OptimizerBudget | None = None) -> CertifiedValue:
    """sup over unit coefficient tuples lambda of ||sum lambda_i T_i||.

    Alternating ascent: given unit vectors (x, y), the optimal coefficients
    are lambda_i ~ conj(<T_i x, y>); given lambda, the optimal (x, y) is the
    top singular pair of sum lambda_i T_i.  Each half-step is an exact
    argmax, so the objective is nondecreasing.  Restarts alternate random
    (x, y) pairs with singular pairs of random phase combinations of the
    tuple.  The value is a guaranteed lower bound; the certificate
    ||sum T_i T_i*||^{1/2} is always attached.
    """
    Tstack = _stack_tuple(Ts)
    budget = budget or DEFAULT_BUDGET
    n, d, _ = Tstack.shape
    cert = float(np.sqrt(op_norm(np.einsum("nab,ncb->ac", Tstack, Tstack.conj()))))

    R = budget.restarts
    X = np.empty((R, d), dtype=np.complex128)
    Y = np.empty((R, d), dtype=np.complex128)
    for r in range(R):
        rng = np.random.default_rng(budget.restart_seed(r))
        if r % 2 == 0:
            for V in (X, Y):
                v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
                V[r] = v / np.linalg.norm(v)
        else:
            phases = rng.uniform(0.0, 2.0 * np.pi, n)
            M = np.einsum("n,nab->ab", np.exp(1j * phases), Tstack)
            U, _, Vh = np.linalg.svd(M)
            X[r] = Vh[0].conj()
            Y[r] = U[:, 0]

    lam = np.zeros((R, n), dtype=np.complex128)
    lam[:, 0] = 1.0
    val = np.zeros(R)
    done = np.zeros(R, dtype=bool)
    iters = 0
    for _ in range(budget.max_iterations):
        iters += 1
        TX = np.einsum("nab,rb->rna", Tstack, X)
        C = np.einsum("rd,rnd->rn", Y.conj(), TX)
        norms = np.linalg.norm(C, axis=1)
        nonzero = norms > 0
        lam[nonzero] = C[nonzero].conj() / norms[nonzero, None]
        M = np.einsum("rn,nab->rab", lam, Tstack)
        U, S, Vh = np.linalg.svd(M)
        new_val = S[:, 0]
        X = Vh[:, 0, :].conj()
        Y = U[:, :, 0]
        gain = new_val - val
        val = new_val
        done |= gain < budget.tolerance * (1.0 + new_val)
        if done.all():
            break

    best = int(np.argmax(val))
    witness = lam[best].copy()
    value = float(val[best])
    return CertifiedValue(
        value=min(value, cert),
        lower_witness=witness,
        upper_certificate=cert,
        restarts_used=R,
        iterations_used=iters * R,
        converged=bool(done[best]),
    )


def euclidean_objective(Ts, lam) -> float:
    """||sum lambda_i T_i|| at a unit coefficient tuple."""
    Tstack = _stack_tuple(Ts)
    lam = np.asarray(lam, dtype=np.complex128)
    return op_norm(np.einsum("n,nab->ab", lam, Tstack))


# ---------------------------------------------------------------------------
# f-operator radius


def _g_batch(Tstack: np.ndarray, f, X: np.ndarray) -> np.ndarray:
    """sum_i f(|<T_i x, x>|) for each row x of X."""
    TX = np.einsum("nab,rb->rna", Tstack, X)
    Q = np.abs(np.einsum("ra,rna->rn", X.conj(), TX))
    vals = feval(f, Q.ravel())
    return np.asarray(vals, dtype=float).reshape(Q.shape).sum(axis=1)


def _to_complex(U: np.ndarray, d: int) -> np.ndarray:
    return U[..., :d] + 1j * U[..., d:]


def _pattern_search(
    Tstack: np.ndarray, f, U0: np.ndarray, budget: OptimizerBudget
) -> tuple[np.ndarray, np.ndarray, int]:
    """Derivative-free ascent of the omega_f objective over the real
    parametrization of unit vectors.

    Coordinate moves of size ``step`` are tried in all 2d real directions at
    once; the best strict improvement is taken, otherwise the step halves.
    A run stops when its step drops below 1e-9.  Returns final parameter
    rows, objective values, and sweep count.
    """
    R, m = U0.shape
    d = m // 2
    D = np.concatenate([np.eye(m), -np.eye(m)])  # (2m, m)
    U = U0.copy()
    step = np.full(R, 0.5)
    g_cur = _g_batch(Tstack, f, _to_complex(U, d))
    sweeps = 0
    while sweeps < budget.max_iterations:
        active = step >= _PATTERN_MIN_STEP
        if not active.any():
            break
        sweeps += 1
        cand = U[:, None, :] + step[:, None, None] * D[None, :, :]
        cand /= np.linalg.norm(cand, axis=2, keepdims=True)
        g = _g_batch(Tstack, f, _to_complex(cand.reshape(-1, m), d)).reshape(R, 2 * m)
        j = np.argmax(g, axis=1)
        g_best = g[np.arange(R), j]
        improved = active & (g_best > g_cur)
        U[improved] = cand[improved, j[improved]]
        g_cur[improved] = g_best[improved]
        shrink = active & ~improved
        step[shrink] *= 0.5
    return U, g_cur, sweeps


def omega_f(Ts, f, budget: OptimizerBudget | None = None) -> CertifiedValue:
    """f-operator radius: sup over unit x of f^{-1}(sum_i f(|<T_i x, x>|)).

    Monotonicity of f^{-1} lets the optimizer maximize g(x) = sum f(|.|)
    directly.  Seeded restarts alternate random unit vectors with top
    eigenvectors of random phase combinations of the tuple; each restart is
    polished by pattern search.  At dimension 2 the dense two-parameter
    oracle grid supplements the search (and supplies a Lipschitz upper
    certificate when f carries a derivative bound).
    """
    Tstack = _stack_tuple(Ts)
    budget = budget or DEFAULT_BUDGET
    n, d, _ = Tstack.shape

    if d == 1:
        g0 = float(np.sum(feval(f, np.abs(Tstack[:, 0, 0]))))
        value = numeric_inverse(f, g0)
        return CertifiedValue(
            value=value,
            lower_witness=np.array([1.0 + 0.0j]),
            upper_certificate=value,
            restarts_used=1,
            iterations_used=1,
            converged=True,
        )

    R = budget.restarts
    m = 2 * d
    U0 = np.empty((R, m))
    for r in range(R):
        rng = np.random.default_rng(budget.restart_seed(r))
        if r % 2 == 0:
            u = rng.standard_normal(m)
        else:
            phases = rng.uniform(0.0, 2.0 * np.pi, n)
            M = np.einsum("n,nab->ab", np.exp(1j * phases), Tstack)
            H = (M + M.conj().T) / 2
            _, V = np.linalg.eigh(H)
            x = V[:, -1]
            u = np.concatenate([x.real, x.imag])
        U0[r] = u / np.linalg.norm(u)

    U, g_vals, sweeps = _pattern_search(Tstack, f, U0, budget)
    restarts_used = R
    cert = None

    if d == 2:
        from .oracle import _omega_f_grid_argmax

        resolution = max(64, budget.grid_points // 2)
        g_grid, x_grid = _omega_f_grid_argmax(Tstack, f, resolution)
        u_grid = np.concatenate([x_grid.real, x_grid.imag])
        u_grid /= np.linalg.norm(u_grid)
        U2, g2, s2 = _pattern_search(Tstack, f, u_grid[None, :], budget)
        U = np.vstack([U, U2])
        g_vals = np.concatenate([g_vals, g2])
        sweeps += s2
        restarts_used += 1
        deriv = getattr(f, "derivative_sup", None)
        if deriv is not None:
            norms = [op_norm(T) for T in Tstack]
            L = sum(2.0 * nrm * float(deriv(nrm)) for nrm in norms)
            delta = ((np.pi / 2) / resolution + (2.0 * np.pi) / resolution) / 2.0
            cert = numeric_inverse(f, g_grid + L * delta)

    best = int(np.argmax(g_vals))
    x_best = _to_complex(U[best], d)
    value = numeric_inverse(f, float(g_vals[best]))
    if cert is not None:
        value = min(value, cert)
    return CertifiedValue(
        value=value,
        lower_witness=x_best,
        upper_certificate=cert,
        restarts_used=restarts_used,
        iterations_used=sweeps,
        converged=True,
    )


def omega_f_objective(Ts, f, x) -> float:
    """f^{-1}(sum_i f(|<T_i x, x>|)) at a unit vector x."""
    Tstack = _stack_tuple(Ts)
    x = np.asarray(x, dtype=np.complex128)
    g = float(np.sum(feval(f, np.abs(np.einsum("a,nab,b->n", x.conj(), Tstack, x)))))
    return numeric_inverse(f, g)


def omega_q(Ts, q: float, budget: OptimizerBudget | None = None) -> CertifiedValue:
    from .functions import power_function

    return omega_f(Ts, power_function(q), budget)


def omega_e(Ts, budget: OptimizerBudget | None = None) -> CertifiedValue:
    return omega_q(Ts, 2.0, budget)
