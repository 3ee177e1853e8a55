"""One pair, many tolerances: the certified GCD degree drops as eps shrinks.

The degree-10 pair has roots (-1)^j j/2 and the same roots shifted by
10^-j, so the j-th common root is only approximate at level 10^-j.  The
table lists, for each tolerance, our certified degree and nearness next to
the reference values.  Below eps = 1e-5 the two disagree; see the README.
"""

from nugcd import (GcdSystem, gauss_newton, initial_gcd, qr_downdate, qr_init,
                   smallest_singular, uvgcd)
from nugcd.bench import TEST2_LADDER, gen_test2
from nugcd.subspace import _split_cofactors

print(f"{'eps':>8} {'degree':>7} {'ref':>4} {'rho':>10} {'ref rho':>9} {'kappa':>9}")
for case, (eps, deg, near) in zip(gen_test2(), TEST2_LADDER):
    res = uvgcd(case.pair, epsilon=eps)
    mark = "" if res.degree == deg else "  *"
    print(f"{eps:8.0e} {res.degree:7d} {deg:4d} {res.rho:10.2e} {near:9.1e} {res.kappa:9.3g}{mark}")

print("\nrefined nearness at each fixed degree, independent of eps:")
pair = gen_test2()[0].pair
state = qr_init(pair)
while state.j >= 2:
    sp = smallest_singular(state.R, seed=0)
    k = state.j
    if k <= 9:
        v0, w0 = _split_cofactors(sp.y, state.perm, pair.n, k)
        u0 = initial_gcd(v0, w0, pair, k)
        trip = gauss_newton(GcdSystem.from_initial(pair, k, u0), u0, v0, w0)
        print(f"  degree {k}: rho {trip.rho:.2e}")
    qr_downdate(state)
