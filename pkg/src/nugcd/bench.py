"""Benchmark families, the Euclidean-division demo, and CSV reporting."""

from __future__ import annotations

import csv
import dataclasses
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from .driver import GcdConfig, GcdResult, uvgcd
from .poly import Polynomial, PolynomialPair, multiply, norm

__all__ = [
    "BenchCase",
    "BenchRow",
    "BenchReport",
    "coef_error",
    "gen_test1",
    "gen_test2",
    "gen_test3",
    "gen_test5",
    "gen_test6",
    "near_double_root_pair",
    "near_degenerate_sylvester_pair",
    "euclid_demo",
    "EuclidReport",
    "parse_selection",
    "build_cases",
    "run_case",
    "run_suite",
    "write_report_csv",
    "read_report_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ["case", "name-metadata", "degree", "rho", "kappa", "coef_error", "ms"]

# cofactors shared by Tests 3 and 5
_V3 = Polynomial([1.0, 1.0, 1.0, 1.0])
_W3 = Polynomial([1.0, -1.0, 1.0, -1.0, 1.0])

TEST2_LADDER = [
    # (epsilon, degree, nearness reported for the reference implementation)
    (1e-2, 9, 0.56e-2),
    (1e-3, 8, 0.26e-3),
    (1e-4, 7, 0.14e-4),
    (1e-5, 6, 0.11e-5),
    (1e-6, 5, 0.41e-7),
    (1e-8, 4, 0.42e-8),
    (1e-9, 3, 0.14e-9),
    (1e-10, 2, 0.24e-10),
]

TEST1_BOUNDS = {6: 1e-13, 10: 1e-10, 16: 1e-7}
TEST6_BOUNDS = {(2, 1, 1, 0): 1e-11, (3, 2, 1, 0): 1e-11, (4, 3, 2, 1): 1e-11,
                (5, 3, 2, 1): 1e-11, (9, 6, 4, 2): 1e-9}
TEST3_BOUND = 1e-12
TEST5_MEDIAN_BOUND = 1e-9
RELATIVE_EPS = 1e-10


@dataclass
class BenchCase:
    name: str
    pair: PolynomialPair
    true_gcd: Optional[Polynomial]
    epsilon: float
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def family(self) -> str:
        return self.name.split("[", 1)[0]


def _relative_case(name, u, v, w, **meta) -> BenchCase:
    pair = PolynomialPair(multiply(u, v), multiply(u, w))
    eps = RELATIVE_EPS * pair.norm()
    meta.setdefault("eps_rule", f"{RELATIVE_EPS:g}*||(p,q)||")
    return BenchCase(name, pair, u, eps, meta)


def _circle_quadratics(r: float, idx: Iterable[int], n: int) -> Polynomial:
    out = Polynomial([1.0])
    for j in idx:
        a, b = math.cos(j * math.pi / n), math.sin(j * math.pi / n)
        # (x - r a)^2 + r^2 b^2
        out = multiply(out, Polynomial([(r * a) ** 2 + (r * b) ** 2, -2.0 * r * a, 1.0]))
    return out


def gen_test1(n: int) -> BenchCase:
    """Roots on circles of radius 0.5 and 1.5; GCD of degree ``n``."""
    if n % 2 or n < 4:
        raise ValueError(f"Test 1 needs an even n >= 4, got {n}")
    k = n // 2
    u = _circle_quadratics(0.5, range(1, k + 1), n)
    v = _circle_quadratics(1.5, range(1, k + 1), n)
    w = _circle_quadratics(0.5, range(k + 1, n + 1), n)
    meta = {"n": n, "expected_degree": n}
    if n in TEST1_BOUNDS:
        meta["max_error"] = TEST1_BOUNDS[n]
    return _relative_case(f"test1[n={n}]", u, v, w, **meta)


def gen_test2() -> List[BenchCase]:
    """One pair with nested near-common roots, at each tolerance of the ladder.

    Both polynomials are scaled to unit max-norm before the absolute ladder is
    applied.
    """
    roots = [(-1) ** j * (j / 2) for j in range(1, 11)]
    p = Polynomial.from_roots(roots)
    q = Polynomial.from_roots([x - 10.0 ** (-j) for j, x in enumerate(roots, start=1)])
    pair = PolynomialPair(p * (1.0 / np.abs(p.coeffs).max()), q * (1.0 / np.abs(q.coeffs).max()))
    cases = []
    for eps, deg, near in TEST2_LADDER:
        cases.append(BenchCase(f"test2[eps={eps:g}]", pair, None, eps,
                               {"expected_degree": deg, "reference_nearness": near,
                                "eps_rule": "absolute, max-norm scaled pair"}))
    return cases


def gen_test3(n: int, seed: int = 0) -> BenchCase:
    """Random integer GCD of degree ``n`` with fixed small cofactors."""
    if n < 1:
        raise ValueError("Test 3 needs n >= 1")
    rng = np.random.default_rng(seed)
    c = rng.integers(-5, 6, size=n + 1).astype(float)
    while c[-1] == 0:
        c[-1] = rng.integers(-5, 6)
    return _relative_case(f"test3[n={n},seed={seed}]", Polynomial(c), _V3, _W3,
                          n=n, seed=seed, expected_degree=n, max_error=TEST3_BOUND)


def gen_test5(seed: int, zero_exponents: bool = False) -> BenchCase:
    """Degree-15 GCD whose coefficients ``c 10^e`` span up to seven decades."""
    rng = np.random.default_rng(seed)
    c = rng.integers(-5, 6, size=16).astype(float)
    while c[-1] == 0:
        c[-1] = rng.integers(-5, 6)
    e = np.zeros(16) if zero_exponents else rng.integers(0, 7, size=16)
    u = Polynomial(c * 10.0 ** e)
    return _relative_case(f"test5[seed={seed}]", u, _V3, _W3, seed=seed,
                          expected_degree=15, median_bound=TEST5_MEDIAN_BOUND)


def gen_test6(multiplicities: Sequence[int]) -> BenchCase:
    """``(p, p')`` for ``p = (x-1)^m1 (x-2)^m2 (x-3)^m3 (x-4)^m4``."""
    ms = tuple(int(m) for m in multiplicities)
    if len(ms) != 4 or min(ms) < 0 or not any(ms):
        raise ValueError("need four nonnegative multiplicities, not all zero")
    p = Polynomial.from_roots([r for r, m in zip((1, 2, 3, 4), ms) for _ in range(m)])
    gcd = Polynomial.from_roots([r for r, m in zip((1, 2, 3, 4), ms) for _ in range(max(m - 1, 0))])
    pair = PolynomialPair(p, p.derivative())
    tag = "/".join(map(str, ms))
    meta = {"m": tag, "expected_degree": gcd.degree}
    if ms in TEST6_BOUNDS:
        meta["max_error"] = TEST6_BOUNDS[ms]
    meta["eps_rule"] = f"{RELATIVE_EPS:g}*||(p,q)||"
    return BenchCase(f"test6[m={tag}]", pair, gcd, RELATIVE_EPS * pair.norm(), meta)


def near_double_root_pair(delta: float) -> BenchCase:
    """GCD ``x^2 - 1`` whose cofactors share the near-root ``x = 1 +- delta``.

    As ``delta -> 0`` the pair approaches a degree-3 GCD, so the degree-2 GCD
    condition number grows like ``1/delta``.
    """
    u = Polynomial([-1.0, 0.0, 1.0])
    v = multiply(Polynomial([-1.0 + delta, 1.0]), Polynomial([1.0, 0, 0, 0, 1.0]))
    w = multiply(Polynomial([-1.0 - delta, 1.0]), Polynomial([2.0, 0, 0, 1.0]))
    pair = PolynomialPair(multiply(u, v), multiply(u, w))
    return BenchCase(f"near_double_root[delta={delta:g}]", pair, u, 1e-10,
                     {"delta": delta, "expected_degree": 2})


def near_degenerate_sylvester_pair(mu: float) -> BenchCase:
    """GCD ``x^2 + 1`` with a tiny ``S_2`` singular value, yet well conditioned.

    ``p = u (x - 1 + mu)(x^4 + 1)`` and ``q = u (x - 1)(x^3 - 2)``.
    """
    u = Polynomial([1.0, 0.0, 1.0])
    v = multiply(Polynomial([-1.0 + mu, 1.0]), Polynomial([1.0, 0, 0, 0, 1.0]))
    w = multiply(Polynomial([-1.0, 1.0]), Polynomial([-2.0, 0, 0, 1.0]))
    pair = PolynomialPair(multiply(u, v), multiply(u, w))
    return BenchCase(f"near_degenerate_sylvester[mu={mu:g}]", pair, u, 1e-10,
                     {"mu": mu, "expected_degree": 2})


def coef_error(computed: Polynomial, true: Polynomial, floor: float = 1e-3) -> float:
    """Coefficient-wise relative error after making both polynomials monic.

    Each denominator is ``max(|t_i|, floor * ||t||)`` so that coefficients
    that vanish, or nearly so, do not dominate; the maximum is returned.
    """
    if computed.degree != true.degree:
        return math.inf
    c = computed.monic().coeffs
    t = true.monic().coeffs
    denom = np.maximum(np.abs(t), floor * np.linalg.norm(t))
    return float(np.max(np.abs(c - t) / denom))


# -- Euclid demo -------------------------------------------------------------

@dataclass
class EuclidReport:
    remainder_norms: List[float]
    relative_norms: List[float]
    gcd: Polynomial

    @property
    def steps(self) -> int:
        return len(self.remainder_norms)

    def __str__(self):
        lines = [f"step {i + 1}: ||r|| = {a:.6g} (relative {r:.3g})"
                 for i, (a, r) in enumerate(zip(self.remainder_norms, self.relative_norms))]
        lines.append(f"Euclidean GCD has degree {self.gcd.degree}")
        return "\n".join(lines)


def _divmod(a: np.ndarray, b: np.ndarray):
    a = a.astype(np.result_type(a, b, float)).copy()
    db = b.size - 1
    quo = np.zeros(max(a.size - db, 1), dtype=a.dtype)
    for i in range(a.size - 1 - db, -1, -1):
        quo[i] = a[i + db] / b[-1]
        a[i:i + db + 1] -= quo[i] * b
    return quo, a[:db]


def euclid_demo(pair, tol: float = 1e-12) -> EuclidReport:
    """Plain floating-point Euclidean algorithm on ``(p, q)``, ``deg p >= deg q``.

    A remainder counts as zero once its norm is below ``tol`` times the norm of
    the dividend; leading coefficients below that level are dropped as well.
    """
    if not isinstance(pair, PolynomialPair):
        pair = PolynomialPair(*pair)
    if pair.m < pair.n:
        raise ValueError("euclid_demo expects deg p >= deg q")
    a, b = pair.p.coeffs, pair.q.coeffs
    norms, rel = [], []
    while b.size > 1:
        _, r = _divmod(a, b)
        na = np.linalg.norm(a)
        nr = float(np.linalg.norm(r))
        norms.append(nr)
        rel.append(nr / na)
        if nr <= tol * na:
            break
        keep = np.flatnonzero(np.abs(r) > tol * na)
        r = r[: keep[-1] + 1]
        a, b = b, r
    else:
        # b is a nonzero constant: the remainder of anything divided by it is 0
        norms.append(0.0)
        rel.append(0.0)
    return EuclidReport(norms, rel, Polynomial(b))


# -- suite -------------------------------------------------------------------

@dataclass
class BenchRow:
    case: str
    metadata: str
    degree: int
    rho: float
    kappa: float
    coef_error: float
    ms: float
    certified: bool = True
    failures: List[str] = field(default_factory=list)

    def as_csv(self) -> List[str]:
        return [self.case, self.metadata, str(self.degree), repr(self.rho),
                repr(self.kappa), repr(self.coef_error), repr(self.ms)]


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = f"{'case':<28}{'deg':>5}{'rho':>12}{'kappa':>12}{'coef_err':>12}{'ms':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(f"{r.case:<28}{r.degree:>5}{r.rho:>12.3e}{r.kappa:>12.3e}"
                         f"{r.coef_error:>12.3e}{r.ms:>10.1f}")
        for f in self.failures:
            lines.append(f"FAIL {f}")
        return "\n".join(lines)


def _meta_str(meta: Dict[str, object]) -> str:
    return ";".join(f"{k}={v}" for k, v in meta.items())


def run_case(case: BenchCase, config: Optional[GcdConfig] = None) -> BenchRow:
    config = dataclasses.replace(config or GcdConfig(), epsilon=case.epsilon, relative=False)
    t0 = time.perf_counter()
    res: GcdResult = uvgcd(case.pair, config)
    ms = (time.perf_counter() - t0) * 1e3
    err = coef_error(res.u, case.true_gcd) if case.true_gcd is not None else math.nan
    row = BenchRow(case.name, _meta_str(case.metadata), res.degree, res.rho, res.kappa,
                   err, ms, res.certified)
    meta = case.metadata
    if "expected_degree" in meta and res.degree != meta["expected_degree"]:
        row.failures.append(f"{case.name}: degree {res.degree} != {meta['expected_degree']}")
    if "max_error" in meta and not err <= meta["max_error"]:
        row.failures.append(f"{case.name}: error {err:.3e} > {meta['max_error']:.1e}")
    if "reference_nearness" in meta:
        ref = meta["reference_nearness"]
        if not ref / 10 <= res.rho <= ref * 10:
            row.failures.append(f"{case.name}: nearness {res.rho:.3e} not within 10x of {ref:.2e}")
    return row


_DEFAULTS = {
    "test1": {"n": [6, 10, 16]},
    "test2": {},
    "test3": {"n": [50, 100, 200]},
    "test5": {"seeds": list(range(10))},
    "test6": {"m": ["2/1/1/0", "3/2/1/0", "4/3/2/1", "5/3/2/1", "9/6/4/2"]},
}


def parse_selection(selection: Union[str, Sequence[str], None]) -> List[tuple]:
    """``"test1:n=6,10 test2"`` -> ``[("test1", {"n": ["6", "10"]}), ("test2", {})]``.

    Entries are separated by whitespace or ``+``; a bare comma-separated list
    such as ``"test1,test2"`` also works when no entry carries options.
    """
    if selection is None:
        return []
    if isinstance(selection, str):
        if ":" not in selection:
            items = [s for s in selection.replace("+", ",").replace(" ", ",").split(",") if s]
        else:
            items = [s for s in selection.replace("+", " ").split() if s]
    else:
        items = list(selection)
    out = []
    for item in items:
        name, _, opts = item.partition(":")
        name = name.strip().lower()
        if name not in _DEFAULTS:
            raise ValueError(f"unknown suite {name!r}; choose from {sorted(_DEFAULTS)}")
        params = {}
        for opt in filter(None, opts.split(";")):
            key, _, vals = opt.partition("=")
            params[key.strip()] = [v for v in vals.split(",") if v]
        out.append((name, params))
    return out


def build_cases(selection) -> List[BenchCase]:
    cases: List[BenchCase] = []
    for name, params in parse_selection(selection):
        opts = {**_DEFAULTS[name], **params}
        if name == "test1":
            cases += [gen_test1(int(n)) for n in opts["n"]]
        elif name == "test2":
            cases += gen_test2()
        elif name == "test3":
            seed = int(opts.get("seed", [0])[0])
            cases += [gen_test3(int(n), seed) for n in opts["n"]]
        elif name == "test5":
            seeds = opts["seeds"]
            if "count" in opts:
                seeds = range(int(opts["count"][0]))
            cases += [gen_test5(int(s)) for s in seeds]
        elif name == "test6":
            cases += [gen_test6([int(x) for x in m.split("/")]) for m in opts["m"]]
    return cases


def _family_checks(cases: List[BenchCase], rows: List[BenchRow]) -> List[str]:
    out = []
    t5 = [r.coef_error for c, r in zip(cases, rows) if c.family == "test5"]
    if t5:
        med = statistics.median(t5)
        if not med <= TEST5_MEDIAN_BOUND:
            out.append(f"test5: median error {med:.3e} > {TEST5_MEDIAN_BOUND:.0e}")
    return out


def run_suite(selection, config: Optional[GcdConfig] = None,
              out: Union[str, Path, None] = None, workers: int = 1) -> BenchReport:
    """Run the selected families, write the CSV report, and collect failures."""
    cases = build_cases(selection)
    if workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_case, cases, [config] * len(cases)))
    else:
        rows = [run_case(c, config) for c in cases]
    order = sorted(range(len(rows)), key=lambda i: rows[i].case)
    cases = [cases[i] for i in order]
    rows = [rows[i] for i in order]
    failures = [f for r in rows for f in r.failures] + _family_checks(cases, rows)
    report = BenchReport(rows, failures)
    if out is not None:
        write_report_csv(report, out)
    return report


def write_report_csv(report: BenchReport, path: Union[str, Path, io.TextIOBase]) -> None:
    if isinstance(path, (str, Path)):
        with open(path, "w", newline="") as fh:
            write_report_csv(report, fh)
        return
    writer = csv.writer(path)
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        writer.writerow(r.as_csv())


def read_report_csv(path: Union[str, Path, io.TextIOBase]) -> BenchReport:
    if isinstance(path, (str, Path)):
        with open(path, newline="") as fh:
            return read_report_csv(fh)
    reader = csv.reader(path)
    header = next(reader)
    if header != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    rows = [BenchRow(case, meta, int(deg), float(rho), float(kappa), float(err), float(ms))
            for case, meta, deg, rho, kappa, err, ms in reader]
    return BenchReport(rows)
