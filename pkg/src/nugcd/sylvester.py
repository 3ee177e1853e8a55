"""Convolution and Sylvester matrices, and the QR update across Sylvester indices.

``S_j(p, q) = [C_{n-j}(p) | C_{m-j}(q)]``.  Going from ``S_j`` to ``S_{j-1}``
appends one zero row and two columns ``[0; p]`` and ``[0; q]``.  The state keeps
those two columns at the right end of ``S_j P_j`` and restores triangularity
with two Householder reflections on the trailing rows.
"""

from __future__ import annotations

import numpy as np

from .poly import Polynomial, PolynomialPair, as_polynomial

__all__ = [
    "conv_matrix",
    "sylvester",
    "SylvesterQrState",
    "qr_init",
    "qr_downdate",
]


def _coeff_array(f) -> np.ndarray:
    if isinstance(f, Polynomial):
        return f.coeffs
    return np.asarray(f)


def conv_matrix(f, m: int) -> np.ndarray:
    """The ``(deg f + m + 1) x (m + 1)`` matrix of ``g -> f*g`` on degree <= m.

    ``f`` may be a :class:`Polynomial` or a raw coefficient array; arrays are
    taken at their structural length even when the leading entry is tiny.
    """
    c = _coeff_array(f)
    if c.size == 0 or not np.any(c):
        raise ValueError("convolution matrix of the zero polynomial")
    if m < 0:
        raise ValueError(f"column degree must be >= 0, got {m}")
    d = c.size - 1
    out = np.zeros((d + m + 1, m + 1), dtype=np.result_type(c, float))
    for j in range(m + 1):
        out[j:j + d + 1, j] = c
    return out


def sylvester(pair: PolynomialPair, j: int) -> np.ndarray:
    """The ``j``-th Sylvester matrix, ``(m+n-j+1) x (m+n-2j+2)``."""
    m, n = pair.m, pair.n
    if not 1 <= j <= min(m, n):
        raise ValueError(f"Sylvester index {j} outside 1..{min(m, n)}")
    return np.hstack([conv_matrix(pair.p, n - j), conv_matrix(pair.q, m - j)])


def _reflect(x: np.ndarray):
    """Householder vector ``v`` and ``alpha`` with ``H x = alpha e_0``.

    ``H = I - 2 v v^H / (v^H v)``; returns ``None`` when ``x[1:]`` is already 0.
    """
    tail = np.linalg.norm(x[1:])
    if tail == 0.0:
        return None
    nx = np.hypot(abs(x[0]), tail)
    phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
    alpha = -phase * nx
    v = x.copy()
    v[0] -= alpha
    return v, alpha


def _apply_left(v, A):
    A -= np.outer(v, (2.0 / np.vdot(v, v).real) * (v.conj() @ A))


def _apply_right(A, v):
    A -= np.outer(A @ v, (2.0 / np.vdot(v, v).real) * v.conj())


class SylvesterQrState:
    """Running factorization ``S_j(p, q) P_j = Q_j R_j`` for the degree sweep.

    ``perm[c]`` is the logical column of ``S_j`` sitting at physical position
    ``c``.  ``R`` is the square upper triangle; ``Q`` is kept so that the two
    inserted columns can be brought into the current basis.
    """

    def __init__(self, p: np.ndarray, q: np.ndarray, j: int, Q: np.ndarray,
                 R_full: np.ndarray, perm: np.ndarray):
        self.p = p
        self.q = q
        self.m = p.size - 1
        self.n = q.size - 1
        self.j = j
        self.Q = Q
        self.R_full = R_full
        self.perm = perm

    @property
    def rows(self) -> int:
        return self.m + self.n - self.j + 1

    @property
    def cols(self) -> int:
        return self.m + self.n - 2 * self.j + 2

    @property
    def R(self) -> np.ndarray:
        c = self.cols
        return self.R_full[:c, :c]

    @property
    def P(self) -> np.ndarray:
        """Permutation matrix with ``S_j @ P`` equal to the physical layout."""
        P = np.zeros((self.cols, self.cols))
        P[self.perm, np.arange(self.cols)] = 1.0
        return P

    def permuted_sylvester(self) -> np.ndarray:
        pair = PolynomialPair(Polynomial(self.p), Polynomial(self.q))
        return sylvester(pair, self.j)[:, self.perm]

    def __repr__(self):
        return (f"SylvesterQrState(m={self.m}, n={self.n}, j={self.j}, "
                f"R={self.cols}x{self.cols})")


def qr_init(pair: PolynomialPair) -> SylvesterQrState:
    """Factor ``S_n(p, q)`` for a pair oriented with ``m >= n >= 1``."""
    pair = PolynomialPair(as_polynomial(pair.p), as_polynomial(pair.q))
    if pair.n < 1:
        raise ValueError("the Sylvester sweep needs deg q >= 1")
    if pair.m < pair.n:
        raise ValueError("orient the pair so that deg p >= deg q")
    S = sylvester(pair, pair.n)
    Q, R = np.linalg.qr(S, mode="complete")
    return SylvesterQrState(pair.p.coeffs, pair.q.coeffs, pair.n, Q, R,
                            np.arange(S.shape[1]))


def qr_downdate(state: SylvesterQrState) -> SylvesterQrState:
    """Move ``state`` from index ``j`` to ``j - 1`` in place and return it."""
    j = state.j
    if j < 2:
        raise ValueError("cannot step the Sylvester index below 1")
    m, n = state.m, state.n
    rows, cols = state.rows, state.cols
    dtype = np.result_type(state.R_full, state.p, state.q)

    Q = np.zeros((rows + 1, rows + 1), dtype=dtype)
    Q[:rows, :rows] = state.Q
    Q[rows, rows] = 1.0

    new = np.zeros((rows + 1, 2), dtype=dtype)
    new[n - j + 1:, 0] = state.p
    new[m - j + 1:, 1] = state.q

    R = np.zeros((rows + 1, cols + 2), dtype=dtype)
    R[:rows, :cols] = state.R_full
    R[:, cols:] = Q.conj().T @ new

    for c in (cols, cols + 1):
        refl = _reflect(R[c:, c])
        if refl is None:
            continue
        v, alpha = refl
        _apply_left(v, R[c:, c + 1:])
        R[c, c] = alpha
        R[c + 1:, c] = 0.0
        _apply_right(Q[:, c:], v)

    # logical q-columns shift right by one when the p-block grows
    old_pcols = n - j + 1
    perm = state.perm.copy()
    perm[perm >= old_pcols] += 1
    perm = np.concatenate([perm, [old_pcols, cols + 1]])

    state.j = j - 1
    state.Q = Q
    state.R_full = R
    state.perm = perm
    return state
