"""Walk through one GCD computation step by step.

The pair below is (x + 10) times two degree-9 cofactors, with every
coefficient rounded to ten significant digits.  The exact common factor is
gone, but a degree-1 GCD survives within a tolerance of 1e-8.
"""

import numpy as np

from nugcd import (GcdSystem, Polynomial, PolynomialPair, gauss_newton, initial_gcd,
                   qr_downdate, qr_init, smallest_singular, uvgcd, verify_result)
from nugcd.parse import format_expression, parse_polynomial
from nugcd.subspace import _split_cofactors

P = "x^10 + 10.33333333*x^9 + 3.333333333*x^8 + x + 10."
Q = "x^10 + 10.14285714*x^9 + 1.428571429*x^8 - 0.8571428571*x - 8.571428571"
EPS = 1e-8

pair = PolynomialPair(parse_polynomial(P), parse_polynomial(Q))
print(f"p = {P}\nq = {Q}\neps = {EPS:g}\n")

# 1. sweep j = n .. 1, watching sigma_min(S_j) against the threshold
state = qr_init(pair)
print(" j   sigma_min(S_j)   threshold")
while True:
    sp = smallest_singular(state.R, seed=0)
    thr = EPS * np.sqrt(pair.m - state.j + 1)
    print(f"{state.j:2d}   {sp.sigma:14.3e}   {thr:9.3e}{'  <- fires' if sp.sigma < thr else ''}")
    if sp.sigma < thr or state.j == 1:
        break
    qr_downdate(state)

# 2. cofactors from the singular vector, then the GCD by least squares
k = state.j
v0, w0 = _split_cofactors(sp.y, state.perm, pair.n, k)
u0 = initial_gcd(v0, w0, pair, k)
print(f"\ninitial u0 (monic): {format_expression(u0.monic())}")

# 3. Gauss-Newton on the scaled system
sys = GcdSystem.from_initial(pair, k, u0)
trip = gauss_newton(sys, u0, v0, w0)
print("residual history:", " ".join(f"{d:.2e}" for d in trip.history))
print(f"refined u (monic): {format_expression(trip.u.monic())}")
print(f"rho = {trip.rho:.3e}, kappa = {trip.kappa:.3g}")

# 4. the same thing through the driver, checked from scratch
res = uvgcd(pair, epsilon=EPS)
print(f"\nuvgcd: degree {res.degree}, certified {res.certified}")
print(verify_result(pair, res))
