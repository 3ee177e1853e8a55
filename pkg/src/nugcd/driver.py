"""Two-stage numerical GCD: Sylvester sweep for the degree, then Gauss-Newton."""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .poly import Polynomial, PolynomialPair, multiply, pair_distance
from .refine import (DegenerateCandidate, GcdSystem, GcdTriplet, _initial_gcd,
                     assemble_jacobian, condition_estimate, gauss_newton)
from .subspace import _split_cofactors, smallest_singular
from .sylvester import qr_downdate, qr_init

__all__ = ["GcdConfig", "GcdResult", "VerificationReport", "uvgcd", "verify_result"]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GcdConfig:
    """Tolerance and iteration caps for :func:`uvgcd`.

    ``epsilon`` is an absolute backward-error tolerance unless ``relative`` is
    set, in which case it is multiplied by ``||(p, q)||``.
    """

    epsilon: float = 1e-10
    relative: bool = False
    rng_seed: int = 0
    max_gn_steps: int = 50
    # non-decreasing Gauss-Newton steps tolerated before stopping
    gn_patience: int = 2
    max_iter_steps: int = 2000
    iter_rtol: float = 1e-12
    kappa_steps: int = 5
    normalize_inputs: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    def absolute_epsilon(self, pair: PolynomialPair) -> float:
        return self.epsilon * pair.norm() if self.relative else self.epsilon


@dataclass
class GcdResult:
    triplet: GcdTriplet
    degree: int
    certified: bool
    epsilon: float
    sigma_trace: List[Tuple[int, float]] = field(default_factory=list)
    swapped: bool = False
    # (j, rho) of every refinement attempted, in sweep order
    attempts: List[Tuple[int, float]] = field(default_factory=list)

    @property
    def u(self) -> Polynomial:
        return self.triplet.u

    @property
    def v(self) -> Polynomial:
        return self.triplet.v

    @property
    def w(self) -> Polynomial:
        return self.triplet.w

    @property
    def rho(self) -> float:
        return self.triplet.rho

    @property
    def kappa(self) -> float:
        return self.triplet.kappa

    def to_json(self) -> dict:
        def pairs(poly):
            return [[float(c.real), float(c.imag)] for c in np.asarray(poly.coeffs, dtype=complex)]

        return {
            "degree": self.degree,
            "certified": self.certified,
            "rho": self.rho,
            "kappa": self.kappa,
            "u": pairs(self.u),
            "v": pairs(self.v),
            "w": pairs(self.w),
            "sigma_trace": [[j, s] for j, s in self.sigma_trace],
            "swapped": self.swapped,
        }


def _as_pair(pair) -> PolynomialPair:
    if isinstance(pair, PolynomialPair):
        return pair
    p, q = pair
    return PolynomialPair(p, q)


def _trivial(pair: PolynomialPair, seed) -> GcdTriplet:
    sys = GcdSystem(pair, 0, np.ones(1))
    u = np.ones(1)
    J = assemble_jacobian(sys, u, pair.p.coeffs, pair.q.coeffs)
    _, R = np.linalg.qr(J)
    return GcdTriplet(Polynomial([1.0]), pair.p, pair.q, rho=0.0,
                      kappa=condition_estimate(R, seed), gn_steps=0,
                      h=sys.h, beta=1.0)


def uvgcd(pair, config: Optional[GcdConfig] = None, **overrides) -> GcdResult:
    """Numerical GCD of ``pair = (p, q)`` within the configured tolerance.

    Sweeps ``j = n, n-1, ..., 1`` over the Sylvester matrices of the pair
    oriented with ``deg p >= deg q``.  When ``sigma_min(S_j)`` drops below
    ``eps * sqrt(m - j + 1)`` the cofactors are read off the singular vector,
    the GCD is solved for, and Gauss-Newton refines the triplet.  The first
    ``j`` whose residual falls below ``eps`` is returned; otherwise the result
    is the uncertified trivial triplet ``(1, p, q)``.

    Keyword overrides are applied to ``config``, e.g. ``uvgcd(pair, epsilon=1e-8)``.
    """
    config = config or GcdConfig()
    if overrides:
        config = dataclasses.replace(config, **overrides)
    pair = _as_pair(pair)
    if not math.isfinite(pair.norm()):
        raise FloatingPointError("coefficient norm of the pair is not finite")
    eps = config.absolute_epsilon(pair)
    rng = np.random.default_rng(config.rng_seed)

    scale = 1.0
    work = pair
    if config.normalize_inputs:
        scale = 1.0 / pair.norm()
        work = pair.scaled(scale)
    eps_work = eps * scale

    swapped = work.m < work.n
    if swapped:
        work = work.swapped()
    m, n = work.m, work.n

    trace: List[Tuple[int, float]] = []
    attempts: List[Tuple[int, float]] = []

    def trivial() -> GcdResult:
        # the trivial triplet is the input pair itself, in its original orientation
        trip = dataclasses.replace(_trivial(work, rng), v=pair.p, w=pair.q)
        return GcdResult(trip, 0, False, eps, trace, swapped, attempts)

    def finish(trip: GcdTriplet, k: int, certified: bool) -> GcdResult:
        if scale != 1.0:
            trip = dataclasses.replace(trip, v=trip.v * (1.0 / scale), w=trip.w * (1.0 / scale),
                                       rho=trip.rho / scale)
        if swapped:
            trip = dataclasses.replace(trip, v=trip.w, w=trip.v)
        return GcdResult(trip, k, certified, eps, trace, swapped, attempts)

    if n == 0:
        return trivial()

    p, q = work.p.coeffs, work.q.coeffs
    state = qr_init(work)
    for j in range(n, 0, -1):
        sp = smallest_singular(state.R, rng, max_iter=config.max_iter_steps,
                               rtol=config.iter_rtol)
        trace.append((j, sp.sigma))
        if sp.sigma < eps_work * math.sqrt(m - j + 1):
            try:
                v0, w0 = _split_cofactors(sp.y, state.perm, n, j)
                u0 = _initial_gcd(v0, w0, p, q, j)
                sys = GcdSystem.from_initial(work, j, u0)
                trip = gauss_newton(sys, u0, v0, w0, max_steps=config.max_gn_steps,
                                    patience=config.gn_patience,
                                    seed=rng, kappa_steps=config.kappa_steps)
            except DegenerateCandidate as exc:
                log.debug("candidate degree %d rejected: %s", j, exc)
                attempts.append((j, math.inf))
            else:
                attempts.append((j, trip.rho))
                log.debug("candidate degree %d: rho=%.3e (eps=%.3e)", j, trip.rho, eps_work)
                if trip.rho < eps_work:
                    return finish(trip, j, True)
        if j > 1:
            qr_downdate(state)

    return trivial()


@dataclass
class VerificationReport:
    checks: Dict[str, bool]
    backward_error: float
    scaling_residual: float

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def __str__(self):
        lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in self.checks.items()]
        lines.append(f"backward error {self.backward_error:.3e}, "
                     f"scaling residual {self.scaling_residual:.3e}")
        return "\n".join(lines)


def verify_result(pair, result: GcdResult) -> VerificationReport:
    """Recompute the backward error of ``result`` from scratch and check it."""
    pair = _as_pair(pair)
    t = result.triplet
    k = result.degree
    prod = (multiply(t.u, t.v), multiply(t.u, t.w))
    backward = pair_distance(prod, pair)
    if t.h is not None and t.h.size == len(t.u):
        scaling = abs(np.vdot(t.h, t.u.coeffs) - t.beta)
    else:
        scaling = math.nan

    checks = {
        "degrees": (t.u.degree == k and t.v.degree == pair.m - k
                    and t.w.degree == pair.n - k),
        "certified_flag": result.certified == (k > 0),
    }
    if result.certified:
        checks["backward_error_below_eps"] = backward < result.epsilon
        checks["scaling_row"] = scaling <= 1e-8 * max(1.0, abs(t.beta))
        rho2 = scaling ** 2 + backward ** 2
        checks["rho_consistent"] = abs(math.sqrt(rho2) - t.rho) <= 1e-8 * max(t.rho, 1e-300) + 1e-13 * pair.norm()
    else:
        checks["trivial_triplet"] = (t.u == Polynomial([1.0]) and backward == 0.0)
    checks = {name: bool(ok) for name, ok in checks.items()}
    return VerificationReport(checks, float(backward), float(scaling))
