"""Dense univariate polynomials in the monomial basis.

Coefficients are stored in ascending power order, ``[c0, c1, ..., cd]``.
Real input stays in ``float64``; anything with an imaginary part is kept as
``complex128``.  Either way the polynomial is an element of C[x].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

__all__ = [
    "NEG_INF_DEGREE",
    "Polynomial",
    "PolynomialPair",
    "as_polynomial",
    "multiply",
    "norm",
    "pair_distance",
    "evaluate",
    "format_coefficients",
    "parse_coefficients",
]

#: Degree reported for the zero polynomial.
NEG_INF_DEGREE = -math.inf

PolyLike = Union["Polynomial", Sequence[complex], np.ndarray]


def _coerce(coeffs) -> np.ndarray:
    arr = np.array(coeffs)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise ValueError("coefficients must form a one-dimensional sequence")
    if arr.size == 0:
        return np.zeros(0, dtype=float)
    if np.iscomplexobj(arr):
        arr = arr.astype(complex)
    else:
        arr = arr.astype(float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    return arr


class Polynomial:
    """Immutable polynomial ``c0 + c1 x + ... + cd x^d``.

    The degree is the supplied length minus one.  An exactly zero leading
    coefficient is rejected instead of trimmed, since the GCD thresholds
    depend on the declared degrees.  The zero polynomial is ``Polynomial([])``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        if isinstance(coeffs, Polynomial):
            arr = coeffs._c
        else:
            arr = _coerce(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs)
            if arr.size and arr[-1] == 0:
                raise ValueError(
                    "leading coefficient is exactly zero; pass the coefficients "
                    "of the intended degree (use [] for the zero polynomial)"
                )
            arr.setflags(write=False)
        self._c = arr

    @classmethod
    def trimmed(cls, coeffs) -> "Polynomial":
        """Build from coefficients after dropping exactly-zero leading entries."""
        arr = _coerce(coeffs)
        nz = np.flatnonzero(arr)
        return cls(arr[: nz[-1] + 1] if nz.size else arr[:0])

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1.0) -> "Polynomial":
        c = np.array([lead])
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if len(self._c) else NEG_INF_DEGREE

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 0

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(tuple(self._c.tolist()))

    def __repr__(self) -> str:
        return f"Polynomial({self._c.tolist()!r})"

    def __call__(self, x):
        return evaluate(self, x)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        if np.isscalar(other):
            if other == 0:
                return Polynomial()
            return Polynomial(self._c * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(-self._c) if len(self) else self

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = as_polynomial(other)
        a, b = _pad(self._c, other._c)
        return Polynomial.trimmed(a + b)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = as_polynomial(other)
        a, b = _pad(self._c, other._c)
        return Polynomial.trimmed(a - b)

    def derivative(self) -> "Polynomial":
        if len(self) <= 1:
            return Polynomial()
        return Polynomial(self._c[1:] * np.arange(1, len(self)))

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("the zero polynomial has no monic form")
        return Polynomial(self._c / self._c[-1])

    def norm(self) -> float:
        return norm(self)


def as_polynomial(obj: PolyLike) -> Polynomial:
    if isinstance(obj, Polynomial):
        return obj
    if np.isscalar(obj):
        return Polynomial([obj]) if obj != 0 else Polynomial()
    return Polynomial(obj)


def _pad(a: np.ndarray, b: np.ndarray):
    n = max(len(a), len(b))
    dtype = np.result_type(a, b, float)
    out_a = np.zeros(n, dtype=dtype)
    out_b = np.zeros(n, dtype=dtype)
    out_a[: len(a)] = a
    out_b[: len(b)] = b
    return out_a, out_b


def multiply(a: PolyLike, b: PolyLike) -> Polynomial:
    """Product ``a*b``; the coefficient sequence is the convolution of the inputs."""
    a, b = as_polynomial(a), as_polynomial(b)
    if a.is_zero or b.is_zero:
        return Polynomial()
    return Polynomial(np.convolve(a.coeffs, b.coeffs))


def norm(p: PolyLike) -> float:
    """Euclidean norm of the coefficient vector."""
    c = p.coeffs if isinstance(p, Polynomial) else np.asarray(p)
    return float(np.linalg.norm(c)) if c.size else 0.0


def pair_distance(a, b) -> float:
    """``sqrt(||a.p - b.p||^2 + ||a.q - b.q||^2)`` with zero padding."""
    ap, aq = _members(a)
    bp, bq = _members(b)
    dp = np.subtract(*_pad(ap, bp))
    dq = np.subtract(*_pad(aq, bq))
    return float(math.hypot(np.linalg.norm(dp), np.linalg.norm(dq)))


def _members(pair):
    if isinstance(pair, PolynomialPair):
        return pair.p.coeffs, pair.q.coeffs
    p, q = pair
    return (as_polynomial(p).coeffs if not isinstance(p, np.ndarray) else p,
            as_polynomial(q).coeffs if not isinstance(q, np.ndarray) else q)


def evaluate(p: PolyLike, x):
    """Horner evaluation; ``x`` may be a scalar or an array."""
    c = as_polynomial(p).coeffs
    acc = np.zeros_like(np.asarray(x, dtype=np.result_type(c, x, float)))
    for coef in c[::-1]:
        acc = acc * x + coef
    return acc[()] if acc.ndim == 0 else acc


@dataclass(frozen=True)
class PolynomialPair:
    """Two nonzero polynomials ``(p, q)`` of degrees ``m`` and ``n``."""

    p: Polynomial
    q: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "p", as_polynomial(self.p))
        object.__setattr__(self, "q", as_polynomial(self.q))
        if self.p.is_zero or self.q.is_zero:
            raise ValueError("both members of a polynomial pair must be nonzero")

    @property
    def m(self) -> int:
        return self.p.degree

    @property
    def n(self) -> int:
        return self.q.degree

    @property
    def is_real(self) -> bool:
        return self.p.is_real and self.q.is_real

    def norm(self) -> float:
        return float(math.hypot(norm(self.p), norm(self.q)))

    def swapped(self) -> "PolynomialPair":
        return PolynomialPair(self.q, self.p)

    def scaled(self, c) -> "PolynomialPair":
        return PolynomialPair(self.p * c, self.q * c)

    def __iter__(self):
        yield self.p
        yield self.q


# -- text format -----------------------------------------------------------

def _format_scalar(c) -> str:
    if isinstance(c, (complex, np.complexfloating)):
        re, im = float(c.real), float(c.imag)
        if im == 0.0 and not math.copysign(1.0, im) < 0:
            return repr(re)
        sign = "-" if math.copysign(1.0, im) < 0 else "+"
        return f"{re!r}{sign}{abs(im)!r}i"
    return repr(float(c))


def format_coefficients(p: PolyLike) -> str:
    """One-line text form: ascending coefficients separated by spaces."""
    return " ".join(_format_scalar(c) for c in as_polynomial(p).coeffs)


def _parse_scalar(token: str):
    t = token.strip()
    try:
        if t.endswith(("i", "j")):
            return complex(t[:-1] + "j")
        return float(t)
    except ValueError:
        raise ValueError(f"malformed coefficient {token!r}") from None


def parse_coefficients(line: str) -> Polynomial:
    """Inverse of :func:`format_coefficients` (``"10 1"`` is ``x + 10``)."""
    tokens = line.split()
    vals = [_parse_scalar(t) for t in tokens]
    if any(isinstance(v, complex) for v in vals):
        vals = [complex(v) for v in vals]
    return Polynomial(vals)
