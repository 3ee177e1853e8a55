"""Smallest singular pair of an upper-triangular factor by inverse iteration.

Each step solves ``R^H y = z`` forward and ``R z' = y`` backward, then
normalizes ``z'``.  The estimate is ``sigma = ||R z||``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.linalg import solve_triangular

from .poly import Polynomial

__all__ = ["SingularPair", "smallest_singular", "extract_cofactors", "as_rng"]

_EPS = np.finfo(float).eps

RngLike = Union[None, int, np.random.Generator]


def as_rng(seed: RngLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass
class SingularPair:
    sigma: float
    y: np.ndarray
    iterations: int
    converged: bool
    # estimated sigma_min / sigma_second from the contraction of the iterates
    ratio: float = float("nan")


def _random_unit(rng: np.random.Generator, size: int, complex_: bool) -> np.ndarray:
    z = rng.standard_normal(size)
    if complex_:
        z = z + 1j * rng.standard_normal(size)
    return z / np.linalg.norm(z)


def smallest_singular(R: np.ndarray, seed: RngLike = None, *, max_iter: int = 2000,
                      rtol: float = 1e-12, atol: float = 1e-15,
                      z0: Optional[np.ndarray] = None) -> SingularPair:
    """Estimate ``sigma_min(R)`` and its unit right singular vector.

    Stops when successive estimates differ by at most
    ``(rtol * sigma + atol * ||R||) * (1 - q)``, where ``q`` is the observed
    contraction of those differences, when the differences stop shrinking at
    the rounding floor, or after ``max_iter`` steps.  Diagonal
    entries below ``eps * ||R||`` are lifted to that floor, keeping their
    phase, for the triangular solves only.
    """
    R = np.asarray(R)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError("R must be square")
    size = R.shape[0]
    is_complex = np.iscomplexobj(R)
    scale = float(np.linalg.norm(R))
    if size == 0:
        raise ValueError("empty matrix")
    if scale == 0.0:
        y = np.zeros(size, dtype=R.dtype)
        y[0] = 1.0
        return SingularPair(0.0, y, 0, True)

    Rs = np.triu(R)
    d = np.diag(Rs).copy()
    floor = _EPS * scale
    small = np.abs(d) < floor
    if np.any(small):
        ds = d[small]
        mag = np.abs(ds)
        phase = np.ones_like(ds)
        phase[mag > 0] = ds[mag > 0] / mag[mag > 0]
        d[small] = floor * phase
        Rs[np.diag_indices(size)] = d

    rng = as_rng(seed)
    z = _random_unit(rng, size, is_complex) if z0 is None else np.asarray(z0) / np.linalg.norm(z0)

    sigma_prev = dsig_prev = None
    dz_prev = None
    ratio = float("nan")
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = solve_triangular(Rs, z, trans="C", lower=False, check_finite=False)
        z_new = solve_triangular(Rs, y, lower=False, check_finite=False)
        z_new /= np.linalg.norm(z_new)
        sigma = float(np.linalg.norm(R @ z_new))

        dz = float(np.linalg.norm(z_new - z))
        if dz_prev and dz_prev > 0 and dz > 0:
            ratio = float(np.sqrt(min(dz / dz_prev, 1.0)))
        dz_prev = dz
        z = z_new

        if sigma_prev is not None:
            dsig = abs(sigma - sigma_prev)
            q = 0.0
            if dsig_prev:
                q = min(dsig / dsig_prev, 0.999)
            if dsig <= (rtol * sigma + atol * scale) * (1.0 - q):
                converged = True
                break
            # steps no longer shrink: the estimate is at its rounding floor
            if dsig_prev and dsig >= dsig_prev and dsig <= 100.0 * atol * scale:
                converged = True
                break
            dsig_prev = dsig
        sigma_prev = sigma

    return SingularPair(sigma, z, it, converged, ratio)


def _split_cofactors(y: np.ndarray, perm: np.ndarray, n: int, j: int):
    x = np.empty_like(y)
    x[np.asarray(perm)] = y
    w0 = x[: n - j + 1]
    v0 = -x[n - j + 1:]
    return v0, w0


def extract_cofactors(y: np.ndarray, P, m: int, n: int, j: int):
    """Split ``y = P_j [w0; -v0]`` into cofactor polynomials ``(v0, w0)``.

    ``P`` is the permutation as an index sequence (physical -> logical), or a
    permutation matrix.  Returned degrees are ``m - j`` and ``n - j``.
    """
    y = np.asarray(y)
    P = np.asarray(P)
    if P.ndim == 2:
        P = np.argmax(P, axis=0)
    if y.size != (m - j + 1) + (n - j + 1):
        raise ValueError("singular vector length does not match S_j")
    v0, w0 = _split_cofactors(y, P, n, j)
    return Polynomial(v0), Polynomial(w0)
