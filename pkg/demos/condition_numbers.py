"""GCD condition numbers: two pairs that look alike but behave differently.

In the first pair the cofactors nearly share the root x = 1 (offset by
+-delta), so the degree-2 GCD x^2 - 1 is close to becoming degree 3 and its
condition number grows like 1/delta.  In the second, S_2 is nearly singular
for small mu, yet the GCD x^2 + 1 stays well conditioned.
"""

from nugcd import uvgcd
from nugcd.bench import coef_error, near_degenerate_sylvester_pair, near_double_root_pair

print("x^2 - 1 with cofactor roots 1 - delta and 1 + delta")
for delta in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5):
    case = near_double_root_pair(delta)
    res = uvgcd(case.pair, epsilon=1e-10)
    print(f"  delta {delta:7.0e}: degree {res.degree}, kappa {res.kappa:10.4g}, "
          f"kappa*delta {res.kappa * delta:.3f}")

print("\nx^2 + 1 with nearly singular S_2")
for mu in (1e-2, 1e-4, 1e-6, 1e-8):
    case = near_degenerate_sylvester_pair(mu)
    res = uvgcd(case.pair, epsilon=1e-12)
    err = coef_error(res.u, case.true_gcd)
    print(f"  mu {mu:7.0e}: degree {res.degree}, kappa {res.kappa:6.3g}, GCD error {err:.1e}")
