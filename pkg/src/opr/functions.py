"""Scalar radius functions: the strictly increasing convex f with f(0) = 0
feeding the generalized operator radius, plus its inverse machinery and the
four-term convex interpolation chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .linalg import gauss_legendre_01

__all__ = [
    "DivergenceError",
    "ScalarRadiusFunction",
    "power_function",
    "parse_function_spec",
    "numeric_inverse",
    "farissi_chain",
    "feval",
]

# Construction-time sanity grid: 10^4 steps up to X = 10^3.  Cheap and
# explicitly non-exhaustive.
_GRID_X = 1e3
_GRID_STEPS = 10_000


class DivergenceError(RuntimeError):
    """Bracket expansion for the numeric inverse ran away (f bounded above)."""


def feval(f, t):
    """Evaluate ``f`` (a ScalarRadiusFunction or bare callable) on a scalar
    or array, vectorizing scalar-only callables as needed."""
    fn = getattr(f, "evaluate", f)
    arr = np.asarray(t, dtype=float)
    if arr.ndim == 0:
        return float(fn(float(arr)))
    try:
        out = np.asarray(fn(arr), dtype=float)
        if out.shape == arr.shape:
            return out
    except Exception:
        pass
    return np.vectorize(fn, otypes=[float])(arr)


@dataclass(frozen=True)
class ScalarRadiusFunction:
    """A strictly increasing convex function with f(0) = 0 on [0, inf).

    ``inverse`` is an optional closed form; ``derivative_sup``, when present,
    maps hi -> sup of f' over [0, hi] and unlocks Lipschitz certificates.
    Operator convexity is a declared flag, never verified programmatically.
    """

    name: str
    evaluate: Callable
    inverse: Optional[Callable] = None
    is_convex: bool = True
    is_operator_convex: bool = False
    derivative_sup: Optional[Callable] = None
    power_exponent: Optional[float] = field(default=None)

    def __post_init__(self):
        if float(feval(self, 0.0)) != 0.0:
            raise ValueError(f"{self.name}: f(0) must be exactly 0")
        t = np.linspace(0.0, _GRID_X, _GRID_STEPS + 1)
        vals = feval(self, t)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"{self.name}: f overflows on the validation grid")
        if not np.all(np.diff(vals) > 0):
            raise ValueError(f"{self.name}: f is not strictly increasing on the validation grid")
        if self.inverse is not None:
            back = feval(self.inverse, vals)
            if not np.all(np.abs(back - t) <= 1e-9 * (1.0 + t)):
                worst = int(np.argmax(np.abs(back - t) - 1e-9 * (1.0 + t)))
                raise ValueError(
                    f"{self.name}: inverse round-trip fails at t={t[worst]!r} "
                    f"(got {back[worst]!r})"
                )

    def __call__(self, t):
        return feval(self, t)


def power_function(q: float) -> ScalarRadiusFunction:
    """t -> t**q for q >= 1; operator convex exactly when q <= 2."""
    q = float(q)
    if q < 1:
        raise ValueError(f"power exponent must be >= 1, got {q}")
    return ScalarRadiusFunction(
        name=f"pow:{q:g}",
        evaluate=lambda t: t**q,
        inverse=lambda y: y ** (1.0 / q),
        is_convex=True,
        is_operator_convex=q <= 2.0,
        derivative_sup=lambda hi: q * hi ** (q - 1.0) if hi > 0 else (1.0 if q == 1.0 else 0.0),
        power_exponent=q,
    )


def parse_function_spec(spec: str) -> ScalarRadiusFunction:
    """Parse CLI function syntax, currently the family "pow:<q>"."""
    prefix, _, arg = spec.partition(":")
    if prefix != "pow" or not arg:
        raise ValueError(f"unknown function spec {spec!r}; supported families: pow:<q>")
    try:
        q = float(arg)
    except ValueError as exc:
        raise ValueError(f"bad exponent in {spec!r}: {arg!r}") from exc
    return power_function(q)


def numeric_inverse(f, y: float) -> float:
    """Solve f(t) = y for t >= 0 to |f(t) - y| <= 1e-12*(1+y).

    Uses the closed-form inverse when the function carries one; otherwise
    doubles the bracket [0, hi] from hi = 1 and bisects (200 iterations max).
    """
    y = float(y)
    if y < 0:
        raise ValueError(f"numeric_inverse needs y >= 0, got {y}")
    if y == 0.0:
        return 0.0
    inv = getattr(f, "inverse", None)
    if inv is not None:
        return float(inv(y))
    tol = 1e-12 * (1.0 + y)
    hi = 1.0
    while feval(f, hi) < y:
        hi *= 2.0
        if hi > 1e30:
            raise DivergenceError(
                f"bracket expansion passed 1e30 with f({hi / 2:g}) still below {y:g}; "
                "f appears bounded above"
            )
    lo = 0.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = feval(f, mid)
        if abs(fm - y) <= tol:
            return mid
        if fm < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


_FARISSI_NODES, _FARISSI_WEIGHTS = gauss_legendre_01(64)


def farissi_chain(f, a: float, b: float, lam: float) -> tuple[float, float, float, float]:
    """The four terms of the convex interpolation chain on [a, b]:
    midpoint value, the lambda-interpolant l(lambda), the integral mean, and
    the endpoint average.

    For convex f these come out ordered m <= l <= mean <= end.  Accepts any
    real-domain convex evaluator (a ScalarRadiusFunction or bare callable),
    since a may be negative.
    """
    a, b, lam = float(a), float(b), float(lam)
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    m = feval(f, (a + b) / 2.0)
    l = (1.0 - lam) * feval(f, ((1.0 - lam) * a + (1.0 + lam) * b) / 2.0) + lam * feval(
        f, ((2.0 - lam) * a + lam * b) / 2.0
    )
    nodes = a + (b - a) * _FARISSI_NODES
    mean = float(np.dot(_FARISSI_WEIGHTS, feval(f, nodes)))
    end = (feval(f, a) + feval(f, b)) / 2.0
    return float(m), float(l), float(mean), float(end)
