"""Why floating-point Euclid cannot find approximate GCDs.

f = (x + 10)(x^9 + x^8/3 + 1) is divisible by g = x + 10.  Rounding its
coefficients to ten digits moves the first remainder from 0 to about 3.3,
and plain Euclid reports the two polynomials as coprime.  The GCD solver
recovers x + 10 from the same rounded data.
"""

from fractions import Fraction

from nugcd import Polynomial, PolynomialPair, uvgcd
from nugcd.bench import euclid_demo
from nugcd.cli import DEMO_P, DEMO_Q
from nugcd.parse import format_expression, parse_polynomial

exact = [Fraction(10), Fraction(1), 0, 0, 0, 0, 0, 0, Fraction(10, 3), Fraction(31, 3), Fraction(1)]
rem = Fraction(0)
for c in reversed(exact):
    rem = rem * -10 + c
print(f"exact rational f mod (x + 10)      = {rem}")

as_float = PolynomialPair(Polynomial([float(c) for c in exact]), Polynomial([10.0, 1.0]))
print(f"nearest doubles, first remainder   = {euclid_demo(as_float).remainder_norms[0]:.3e}")

rounded = PolynomialPair(parse_polynomial(DEMO_P), parse_polynomial(DEMO_Q))
rep = euclid_demo(rounded)
print(f"ten-digit coefficients, remainder  = {rep.remainder_norms[0]:.6g}")
print(f"Euclid's GCD degree: {rep.gcd.degree}\n")

for eps in (1e-6, 1e-8):
    res = uvgcd(rounded, epsilon=eps)
    print(f"uvgcd eps={eps:g}: degree {res.degree}, u = {format_expression(res.u.monic())}, "
          f"rho = {res.rho:.2e}")
