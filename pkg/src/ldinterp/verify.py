"""Numerical property suite run by ``ldinterp verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .chebyshev import eval_series
from .interp import coefficient_matrix, coefficient_shape, interpolate, lagrange_basis, lagrange_matrix, trig_lagrange_oracle
from .nodes import (
    IndexVariant,
    LissajousParams,
    curve_point,
    expected_counts,
    generate_nodes,
    generate_nodes_by_sampling,
    index_set,
)
from .quadrature import TrigRestriction, exactness_pairs, line_integral, quadrature_moments

SEED = 12345


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    cases: int

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e} cases={self.cases}"


def coprime_pairs(max_sum: int) -> Iterator[LissajousParams]:
    """All valid ``(n, p)`` with ``n + p <= max_sum``, ordered by ``n`` then ``p``."""
    for n in range(1, max_sum):
        for p in range(1, max_sum - n + 1):
            if math.gcd(n, n + p) == 1:
                yield LissajousParams(n, p)


def random_coefficients(params: LissajousParams, rng, variant=IndexVariant.GAMMA_L) -> np.ndarray:
    """Standard normal coefficients on the index set ``variant``, zero elsewhere."""
    c = np.zeros(coefficient_shape(params, variant))
    for i, j in index_set(params, variant):
        c[i, j] = rng.standard_normal()
    return c


def check_counts(max_sum: int = 40) -> CheckResult:
    bad = cases = 0
    for params in coprime_pairs(max_sum):
        counts = generate_nodes(params).counts()
        expected = expected_counts(params)
        bad += any(counts[k] != v for k, v in expected.items())
        cases += 1
    return CheckResult("node counts", bad == 0, float(bad), 0.0, cases)


def check_constructions(max_sum: int = 40) -> CheckResult:
    worst = 0.0
    cases = 0
    for params in coprime_pairs(max_sum):
        a = generate_nodes(params)
        b = generate_nodes_by_sampling(params)
        if [q.key for q in a] != [q.key for q in b]:
            worst = math.inf
        else:
            worst = max(worst, float(np.max(np.abs(a.x - b.x))), float(np.max(np.abs(a.y - b.y))))
        cases += 1
    return CheckResult("two node constructions", worst <= 1e-12, worst, 1e-12, cases)


EXACTNESS_PAIRS = ((2, 1), (3, 2), (4, 3), (5, 2), (7, 4))


def check_exactness(pairs=EXACTNESS_PAIRS) -> CheckResult:
    worst = 0.0
    cases = 0
    for n, p in pairs:
        params = LissajousParams(n, p)
        moments = quadrature_moments(params, (2 * params.m, 2 * params.n))
        for i, j in exactness_pairs(params):
            exact = 1.0 if i == 0 and j == 0 else 0.0
            worst = max(worst, abs(moments[i, j] - exact))
            cases += 1
    return CheckResult("quadrature exactness", worst <= 1e-13, worst, 1e-13, cases)


def check_delta(max_sum: int = 30) -> CheckResult:
    worst = 0.0
    cases = 0
    for params in coprime_pairs(max_sum):
        nodes = generate_nodes(params)
        for variant in (IndexVariant.GAMMA_L, IndexVariant.GAMMA_L_TILDE):
            L = lagrange_matrix(nodes, nodes.x, nodes.y, variant)
            worst = max(worst, float(np.max(np.abs(L - np.eye(len(nodes))))))
            cases += 1
    return CheckResult("Lagrange delta property", worst <= 1e-10, worst, 1e-10, cases)


REPRODUCTION_PAIRS = ((3, 2), (5, 2), (9, 2), (8, 5))


def check_reproduction(pairs=REPRODUCTION_PAIRS, trials: int = 50, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    cases = 0
    for n, p in pairs:
        params = LissajousParams(n, p)
        nodes = generate_nodes(params)
        for variant in (IndexVariant.GAMMA_L, IndexVariant.GAMMA_L_TILDE):
            for _ in range(trials):
                c = random_coefficients(params, rng, variant)
                data = eval_series(c, nodes.x, nodes.y)
                worst = max(worst, float(np.max(np.abs(coefficient_matrix(nodes, data, variant) - c))))
                cases += 1
    return CheckResult("polynomial reproduction", worst <= 1e-11, worst, 1e-11, cases)


ISOMETRY_PAIRS = ((2, 1), (3, 2), (4, 3), (5, 2), (7, 4), (9, 2))


def check_isometry(pairs=ISOMETRY_PAIRS, trials: int = 100, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    cases = 0
    for n, p in pairs:
        params = LissajousParams(n, p)
        for _ in range(trials):
            c1 = random_coefficients(params, rng)
            c2 = random_coefficients(params, rng)
            trace = TrigRestriction(params, lambda x, y: eval_series(c1, x, y) * eval_series(c2, x, y))
            lhs = float(np.sum(c1 * c2))
            worst = max(worst, abs(lhs - line_integral(trace, 2 * params.period)))
            cases += 1
    return CheckResult("restriction isometry", worst <= 1e-10, worst, 1e-10, cases)


def check_trig_oracle(pairs=((3, 2), (4, 3)), samples: int = 200, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    cases = 0
    for n, p in pairs:
        params = LissajousParams(n, p)
        nodes = generate_nodes(params)
        t = rng.uniform(0.0, math.pi, samples)
        x, y = curve_point(params, t)
        for node in nodes:
            diff = lagrange_basis(nodes, node, x, y) - trig_lagrange_oracle(params, node, t)
            worst = max(worst, float(np.max(np.abs(diff))))
            cases += 1
    return CheckResult("curve trace of Lagrange basis", worst <= 1e-10, worst, 1e-10, cases)


def check_two_routes(pairs=((3, 2), (5, 2), (6, 5), (10, 3)), points: int = 100, seed: int = SEED) -> CheckResult:
    rng = np.random.default_rng(seed + 3)
    worst = 0.0
    cases = 0
    for n, p in pairs:
        params = LissajousParams(n, p)
        nodes = generate_nodes(params)
        data = rng.standard_normal(len(nodes))
        x, y = rng.uniform(-1.0, 1.0, (2, points))
        series = interpolate(params, data, nodeset=nodes)(x, y)
        lagrange = lagrange_matrix(nodes, x, y) @ data
        worst = max(worst, float(np.max(np.abs(series - lagrange))))
        cases += 1
    return CheckResult("series vs Lagrange evaluation", worst <= 1e-10, worst, 1e-10, cases)


def run_checks(quick: bool = False) -> list:
    """Run every check; ``quick`` shrinks the parameter ranges."""
    checks: list[Callable[[], CheckResult]]
    if quick:
        checks = [
            lambda: check_counts(16),
            lambda: check_constructions(16),
            lambda: check_exactness(EXACTNESS_PAIRS[:3]),
            lambda: check_delta(12),
            lambda: check_reproduction(REPRODUCTION_PAIRS[:2], trials=10),
            lambda: check_isometry(ISOMETRY_PAIRS[:3], trials=10),
            lambda: check_trig_oracle(samples=50),
            lambda: check_two_routes(points=20),
        ]
    else:
        checks = [check_counts, check_constructions, check_exactness, check_delta, check_reproduction,
                  check_isometry, check_trig_oracle, check_two_routes]
    return [check() for check in checks]
