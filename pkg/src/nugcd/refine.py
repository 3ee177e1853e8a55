"""Gauss-Newton refinement of a GCD triplet ``(u, v, w)`` of fixed degree ``k``.

The map is ``f_h(u, v, w) = [h^H u; u*v; u*w]`` against the target
``[beta; p; q]``; the scaling row removes the ``(a u, v/a, w/a)`` ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import solve_triangular

from .poly import Polynomial, PolynomialPair, as_polynomial
from .subspace import RngLike, smallest_singular
from .sylvester import conv_matrix

__all__ = [
    "DegenerateCandidate",
    "GcdSystem",
    "GcdTriplet",
    "initial_gcd",
    "assemble_jacobian",
    "gauss_newton",
    "condition_estimate",
]

_EPS = np.finfo(float).eps


class DegenerateCandidate(ArithmeticError):
    """A candidate degree whose linear subproblem is numerically rank deficient."""


def _arr(x) -> np.ndarray:
    return x.coeffs if isinstance(x, Polynomial) else np.asarray(x)


@dataclass
class GcdSystem:
    pair: PolynomialPair
    k: int
    h: np.ndarray
    beta: float = 1.0

    def __post_init__(self):
        self.h = np.asarray(self.h)
        if self.h.size != self.k + 1:
            raise ValueError(f"scaling vector needs {self.k + 1} entries")
        if not 0 <= self.k <= min(self.pair.m, self.pair.n):
            raise ValueError(f"GCD degree {self.k} is infeasible for this pair")

    @classmethod
    def from_initial(cls, pair: PolynomialPair, k: int, u0) -> "GcdSystem":
        """Use ``h = u0 / ||u0||^2`` so that ``h^H u0 = beta = 1``."""
        u0 = _arr(u0)
        nu = np.vdot(u0, u0).real
        if nu == 0.0:
            raise DegenerateCandidate("initial GCD approximation is zero")
        return cls(pair, k, u0 / nu, 1.0)

    @property
    def m(self) -> int:
        return self.pair.m

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def target(self) -> np.ndarray:
        p, q = self.pair.p.coeffs, self.pair.q.coeffs
        dtype = np.result_type(p, q, self.h, float)
        return np.concatenate([np.array([self.beta], dtype=dtype), p, q])

    def sizes(self):
        return self.k + 1, self.m - self.k + 1, self.n - self.k + 1

    def split(self, z: np.ndarray):
        a, b, _ = self.sizes()
        return z[:a], z[a:a + b], z[a + b:]

    def evaluate(self, u, v, w) -> np.ndarray:
        u, v, w = _arr(u), _arr(v), _arr(w)
        return np.concatenate([[np.vdot(self.h, u)], np.convolve(u, v), np.convolve(u, w)])

    def residual(self, u, v, w) -> np.ndarray:
        """``f_h(u, v, w) - [beta; p; q]``, accumulated in extended precision.

        The products and the subtraction are carried out in ``longdouble`` and
        only the (small) result is rounded, which lets the refinement resolve
        the solution below the working-precision noise of ``u*v`` itself.
        """
        u, v, w = _arr(u), _arr(v), _arr(w)
        ext = np.clongdouble if np.iscomplexobj(self.target) or np.iscomplexobj(u) else np.longdouble
        ue, ve, we = (x.astype(ext) for x in (u, v, w))
        t = self.target.astype(ext)
        m1 = self.m + 2
        out = np.empty(t.size, dtype=ext)
        out[0] = np.sum(self.h.conj().astype(ext) * ue) - t[0]
        out[1:m1] = np.convolve(ue, ve) - t[1:m1]
        out[m1:] = np.convolve(ue, we) - t[m1:]
        return out.astype(np.result_type(u, v, w, self.target))


@dataclass
class GcdTriplet:
    u: Polynomial
    v: Polynomial
    w: Polynomial
    rho: float
    kappa: float
    gn_steps: int
    converged: bool = True
    h: Optional[np.ndarray] = None
    beta: float = 1.0
    history: List[float] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.u.degree


def _conv(f: np.ndarray, m: int) -> np.ndarray:
    # a zero block is legal here; the rank test downstream reports it
    if not np.any(f):
        return np.zeros((f.size + m, m + 1), dtype=np.result_type(f, float))
    return conv_matrix(f, m)


def _qr_solve(A: np.ndarray, b: np.ndarray, what: str, rtol: float = 1e-14):
    Q, R = np.linalg.qr(A)
    d = np.abs(np.diag(R))
    if d.size and d.min() <= rtol * max(np.linalg.norm(A), np.finfo(float).tiny):
        raise DegenerateCandidate(f"{what} is numerically rank deficient")
    x = solve_triangular(R, Q.conj().T @ b, lower=False, check_finite=False)
    return x, R


def _initial_gcd(v0: np.ndarray, w0: np.ndarray, p: np.ndarray, q: np.ndarray, k: int):
    A = np.vstack([_conv(v0, k), _conv(w0, k)])
    b = np.concatenate([p, q])
    u0, _ = _qr_solve(A, b, "stacked cofactor convolution matrix")
    return u0


def initial_gcd(v0, w0, pair: PolynomialPair, k: int) -> Polynomial:
    """Least-squares ``u0`` from ``[C_k(v0); C_k(w0)] u = [p; q]``."""
    v0, w0 = _arr(v0), _arr(w0)
    if v0.size != pair.m - k + 1 or w0.size != pair.n - k + 1:
        raise ValueError("cofactor lengths do not match the candidate degree")
    u0 = _initial_gcd(v0, w0, pair.p.coeffs, pair.q.coeffs, k)
    if u0[-1] == 0:
        raise DegenerateCandidate("initial GCD has a zero leading coefficient")
    return Polynomial(u0)


def assemble_jacobian(sys: GcdSystem, u, v, w) -> np.ndarray:
    """``[h^H 0 0; C_k(v) C_{m-k}(u) 0; C_k(w) 0 C_{n-k}(u)]``."""
    u, v, w = _arr(u), _arr(v), _arr(w)
    k, m, n = sys.k, sys.m, sys.n
    a, b, c = sys.sizes()
    dtype = np.result_type(u, v, w, sys.h, float)
    J = np.zeros((1 + (m + 1) + (n + 1), a + b + c), dtype=dtype)
    J[0, :a] = sys.h.conj()
    J[1:m + 2, :a] = _conv(v, k)
    J[1:m + 2, a:a + b] = _conv(u, m - k)
    J[m + 2:, :a] = _conv(w, k)
    J[m + 2:, a + b:] = _conv(u, n - k)
    return J


def condition_estimate(exit_triangle: np.ndarray, seed: RngLike = None, steps: int = 5) -> float:
    """``1 / sigma_min`` from a few inverse-iteration steps on the QR triangle."""
    R = np.asarray(exit_triangle)
    scale = float(np.linalg.norm(R))
    sp = smallest_singular(R, seed, max_iter=steps, rtol=0.0, atol=0.0)
    if sp.sigma <= _EPS * scale:
        return float("inf")
    return 1.0 / sp.sigma


def gauss_newton(sys: GcdSystem, u0, v0, w0, *, max_steps: int = 50,
                 decrease: float = 1e-3, seed: RngLike = None,
                 kappa_steps: int = 5, patience: int = 2) -> GcdTriplet:
    """Refine ``(u0, v0, w0)`` until the residual stops decreasing.

    A step counts as progress when it shrinks the residual by more than a
    factor ``1 - decrease``.  Up to ``patience`` steps without progress are
    tolerated, since the initial iterate may lie outside the region where the
    residual decreases monotonically.  The best iterate seen is returned
    together with the condition estimate from the QR triangle of the Jacobian
    there.
    """
    z = np.concatenate([_arr(u0), _arr(v0), _arr(w0)])
    a, b, c = sys.sizes()
    if z.size != a + b + c:
        raise ValueError("initial triplet sizes do not match the system")
    dtype = np.result_type(z, sys.target)
    z = z.astype(dtype)

    def resid(zz):
        return sys.residual(*sys.split(zz))

    r = resid(z)
    delta = float(np.linalg.norm(r))
    history = [delta]
    best_z, best_delta = z, delta
    steps = 0
    converged = False
    while steps < max_steps:
        J = assemble_jacobian(sys, *sys.split(z))
        try:
            dz, _ = _qr_solve(J, r, "Gauss-Newton Jacobian")
        except DegenerateCandidate:
            if steps == 0:
                raise
            break
        z_new = z - dz
        r_new = resid(z_new)
        delta_new = float(np.linalg.norm(r_new))
        steps += 1
        history.append(delta_new)
        if delta_new < best_delta:
            best_z, best_delta = z_new, delta_new
        if not delta_new < delta * (1.0 - decrease):
            if patience > 0 and np.isfinite(delta_new):
                patience -= 1
            else:
                # a large jump at the stall point means the iteration was diverging
                converged = delta_new <= 2.0 * delta
                break
        z, r, delta = z_new, r_new, delta_new
    if best_delta == 0.0:
        converged = True

    u, v, w = sys.split(best_z)
    J = assemble_jacobian(sys, u, v, w)
    _, R = np.linalg.qr(J)
    kappa = condition_estimate(R, seed, steps=kappa_steps)
    try:
        trip = (Polynomial(u), Polynomial(v), Polynomial(w))
    except ValueError as exc:
        raise DegenerateCandidate(str(exc)) from None
    return GcdTriplet(*trip, rho=best_delta, kappa=kappa, gn_steps=steps,
                      converged=converged, h=sys.h, beta=sys.beta, history=history)
