import dataclasses
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nugcd import (GcdConfig, Polynomial, PolynomialPair, multiply, pair_distance, uvgcd,
                   verify_result)
from nugcd.bench import coef_error, gen_test2

from conftest import random_int_poly, random_poly


def constructed(rng, k, dv, dw):
    u = random_int_poly(rng, k)
    v = random_int_poly(rng, dv)
    w = random_int_poly(rng, dw)
    return u, v, w, PolynomialPair(multiply(u, v), multiply(u, w))


def is_coprime(v, w, tol=1e-3):
    rv, rw = np.roots(v.coeffs[::-1]), np.roots(w.coeffs[::-1])
    return np.min(np.abs(rv[:, None] - rw[None, :])) > tol


def test_example1(ex1_pair):
    res = uvgcd(ex1_pair, GcdConfig(epsilon=1e-8))
    assert res.certified and res.degree == 1
    np.testing.assert_allclose(res.u.monic().coeffs, [9.999999998, 1.0], atol=5e-9)
    report = verify_result(ex1_pair, res)
    assert report.passed, str(report)
    assert report.backward_error <= 1e-8


def test_test2_at_1e4():
    case = next(c for c in gen_test2() if c.epsilon == 1e-4)
    res = uvgcd(case.pair, epsilon=case.epsilon)
    assert res.degree == 7
    assert 1.4e-5 / 10 <= res.rho <= 1.4e-5 * 10


def test_coprime_random_pair_is_uncertified(rng):
    p = random_poly(rng, 6)
    q = random_poly(rng, 5)
    pair = PolynomialPair(Polynomial(p.coeffs / p.norm()), Polynomial(q.coeffs / q.norm()))
    res = uvgcd(pair, epsilon=1e-10)
    assert not res.certified
    assert res.degree == 0
    assert res.u == Polynomial([1.0])
    assert res.v == pair.p and res.w == pair.q
    assert res.kappa > 0
    assert verify_result(pair, res).passed


def test_constant_input_short_circuits():
    pair = PolynomialPair(Polynomial([1.0, 2.0, 1.0]), Polynomial([3.0]))
    res = uvgcd(pair)
    assert res.degree == 0 and not res.certified
    assert res.sigma_trace == []
    assert res.v == pair.p and res.w == pair.q
    res2 = uvgcd(pair.swapped())
    assert res2.v == pair.q and res2.w == pair.p


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        uvgcd(PolynomialPair(Polynomial([]), Polynomial([1.0, 1.0])))


@pytest.mark.parametrize("eps", [0.0, -1e-8, float("nan")])
def test_config_rejects_nonpositive_epsilon(eps):
    with pytest.raises(ValueError):
        GcdConfig(epsilon=eps)


def test_relative_epsilon(ex1_pair):
    cfg = GcdConfig(epsilon=1e-9, relative=True)
    assert cfg.absolute_epsilon(ex1_pair) == pytest.approx(1e-9 * ex1_pair.norm())
    assert uvgcd(ex1_pair, cfg).degree == 1


def test_swap_restores_orientation(rng):
    u, v, w, pair = constructed(rng, 2, 2, 5)
    res = uvgcd(pair, epsilon=1e-8)
    assert res.swapped
    assert res.v.degree == pair.m - res.degree
    assert res.w.degree == pair.n - res.degree
    assert verify_result(pair, res).passed


def test_normalize_inputs(ex1_pair):
    res = uvgcd(ex1_pair, epsilon=1e-8, normalize_inputs=True)
    assert res.degree == 1
    assert verify_result(ex1_pair, res).checks["backward_error_below_eps"]


def test_tampered_result_fails(ex1_pair):
    res = uvgcd(ex1_pair, epsilon=1e-8)
    bad_trip = dataclasses.replace(res.triplet, u=res.u * 2.0)
    bad = dataclasses.replace(res, triplet=bad_trip)
    report = verify_result(ex1_pair, bad)
    assert not report.passed
    assert not report.checks["backward_error_below_eps"]


def test_certified_results_verify(rng):
    for _ in range(20):
        k = int(rng.integers(1, 5))
        u, v, w, pair = constructed(rng, k, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        res = uvgcd(pair, epsilon=1e-8 * pair.norm())
        if res.certified:
            back = pair_distance((multiply(res.u, res.v), multiply(res.u, res.w)), pair)
            assert back < res.epsilon
            assert verify_result(pair, res).passed


def test_sigma_trace_is_monotone_in_j(rng):
    for _ in range(10):
        u, v, w, pair = constructed(rng, 2, 4, 3)
        res = uvgcd(pair, epsilon=1e-8 * pair.norm())
        js = [j for j, _ in res.sigma_trace]
        assert js == list(range(min(pair.m, pair.n), min(pair.m, pair.n) - len(js), -1))
        # refinement only where the threshold test fired
        m = max(pair.m, pair.n)
        fired = {j for j, s in res.sigma_trace if s < res.epsilon * np.sqrt(m - j + 1)}
        assert {j for j, _ in res.attempts} <= fired


def test_exact_gcd_recovery(rng):
    done = 0
    while done < 25:
        k = int(rng.integers(1, 6))
        u, v, w, pair = constructed(rng, k, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        if not is_coprime(v, w, 0.1):
            continue
        done += 1
        for eps in (1e-12 * pair.norm(), 1e-9 * pair.norm()):
            res = uvgcd(pair, epsilon=eps)
            assert res.degree == k
            assert coef_error(res.u, u) <= 1e-10


@pytest.mark.parametrize("eta", [1e-10, 1e-8, 1e-6])
def test_convergence_under_perturbation(rng, eta):
    done = 0
    while done < 10:
        k = int(rng.integers(1, 5))
        u, v, w, pair = constructed(rng, k, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        if not is_coprime(v, w, 0.1):
            continue
        done += 1
        e = [rng.standard_normal(pair.m + 1), rng.standard_normal(pair.n + 1)]
        s = eta / np.sqrt(np.sum(e[0] ** 2) + np.sum(e[1] ** 2))
        noisy = PolynomialPair(Polynomial(pair.p.coeffs + s * e[0]),
                               Polynomial(pair.q.coeffs + s * e[1]))
        res = uvgcd(noisy, epsilon=100 * eta)
        assert res.degree == k
        uh = res.u.coeffs * (np.vdot(res.u.coeffs, u.coeffs) / np.vdot(res.u.coeffs, res.u.coeffs))
        assert np.linalg.norm(uh - u.coeffs) / np.linalg.norm(u.coeffs) <= 10 * res.kappa * eta


@settings(max_examples=25)
@given(c=st.sampled_from([1e-3, 0.5, 3.0, 1e3]), seed=st.integers(0, 10_000))
def test_scale_equivariance(c, seed):
    rng = np.random.default_rng(seed)
    u, v, w, pair = constructed(rng, 2, 3, 3)
    eps = 1e-8 * pair.norm()
    a = uvgcd(pair, epsilon=eps)
    b = uvgcd(pair.scaled(c), epsilon=c * eps)
    assert a.degree == b.degree
    if a.certified:
        for x, y in ((multiply(a.u, a.v), multiply(b.u, b.v)),
                     (multiply(a.u, a.w), multiply(b.u, b.w))):
            np.testing.assert_allclose(y.coeffs, c * x.coeffs, rtol=0,
                                       atol=1e-12 * c * pair.norm())


def test_config_overrides(ex1_pair):
    res = uvgcd(ex1_pair, GcdConfig(epsilon=1e-20), epsilon=1e-8)
    assert res.degree == 1


def test_deterministic(ex1_pair):
    a = uvgcd(ex1_pair, epsilon=1e-8, rng_seed=7)
    b = uvgcd(ex1_pair, epsilon=1e-8, rng_seed=7)
    np.testing.assert_array_equal(a.u.coeffs, b.u.coeffs)
    assert a.sigma_trace == b.sigma_trace


def test_json_schema(ex1_pair):
    res = uvgcd(ex1_pair, epsilon=1e-8)
    doc = json.loads(json.dumps(res.to_json()))
    assert set(doc) == {"degree", "certified", "rho", "kappa", "u", "v", "w",
                        "sigma_trace", "swapped"}
    assert doc["degree"] == 1
    assert all(len(c) == 2 for c in doc["u"])
    assert len(doc["v"]) == 10
    assert doc["sigma_trace"][0][0] == 10


def test_complex_pair(rng):
    u = random_poly(rng, 2, complex_=True)
    v = random_poly(rng, 3, complex_=True)
    w = random_poly(rng, 3, complex_=True)
    pair = PolynomialPair(multiply(u, v), multiply(u, w))
    res = uvgcd(pair, epsilon=1e-10 * pair.norm())
    assert res.degree == 2
    assert coef_error(res.u, u) < 1e-9


def test_overflowing_pair_raises():
    pair = PolynomialPair(Polynomial([1e308, 0.0, 1e308]), Polynomial([1e308, 1e308]))
    with pytest.raises(FloatingPointError):
        uvgcd(pair)
