"""Acceptance suite: one test per criterion, at the stated tolerances.

A per-criterion PASS/FAIL line is printed in the terminal summary.
"""

import itertools
import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from interpbound.field import FunctionTable, enumerate_family
from interpbound.hard_instances import (
    BlockTemplate,
    Delta,
    EtaPolynomial,
    RandomInputPoly,
    Xi,
    exhaustive_orbit_average,
    paturi_min_degree,
    run_pipeline,
    symmetrize_two_var,
)
from interpbound.independence import PropertySpec, check_independence, max_gap_up_to_degree
from interpbound.polymethod import (
    build_feasibility_lp,
    lp_feasible,
    min_separating_degree,
    query_lower_bound_from_degree,
)
from interpbound.query_sim import (
    ChosenOracle,
    RandomOracle,
    classical_interpolation_strategy,
    grover_closed_form,
    run_dj_parity,
    run_grover,
)

LP_TOL = 1e-7


def test_criterion_1_theorem1_gap_engine():
    start = time.perf_counter()
    fam = enumerate_family(5, 2, [1, 2, 3, 4])
    spec = PropertySpec.value_bit(0, {0, 1})
    at_d = max_gap_up_to_degree(fam, spec, 2)
    above = max_gap_up_to_degree(fam, spec, 3)
    elapsed = time.perf_counter() - start
    assert at_d.max_gap == Fraction(0) and isinstance(at_d.max_gap, Fraction)
    assert above.max_gap > 0 and above.monomial.degree == 3
    assert elapsed < 10


def test_criterion_2_lp_degree_threshold():
    start = time.perf_counter()
    gf3 = enumerate_family(3, 1, [1, 2])
    deg3 = min_separating_degree(gf3, PropertySpec.value_bit(0, {0}), 0.5, 3, tol=LP_TOL)
    assert deg3 == 2
    assert query_lower_bound_from_degree(deg3) == 1 == (1 + 1) // 2

    gf5 = enumerate_family(5, 2, [1, 2, 3, 4])
    deg5 = min_separating_degree(gf5, PropertySpec.value_bit(0, {0}), 0.1, 3, tol=LP_TOL)
    assert deg5 == 3
    assert query_lower_bound_from_degree(deg5) == 2 >= math.ceil((2 + 1) / 2)
    assert time.perf_counter() - start < 60


def test_criterion_3_dj_parity_tightness():
    for bits in itertools.product((0, 1), repeat=4):
        f = FunctionTable((0, 1, 2, 3), bits, 2)
        res = run_dj_parity(f, [0, 1, 2, 3])
        assert res.parity == sum(bits) % 2
        assert res.queries_used == 2
        assert abs(res.success_probability - 1) <= 1e-9


def _settings(d_max):
    for p in (2, 3, 5):
        for d in range(d_max + 1):
            for z in range(p):
                yield p, d, z


def test_criterion_4_independence_checker():
    checked = {"a": 0, "b": 0, "c": 0}
    for p, d, z in _settings(2):
        outside = [x for x in range(p) if x != z]
        spec = PropertySpec.value_bit(z, {0})
        # (a) z outside D
        for r in range(1, len(outside) + 1):
            for D in itertools.combinations(outside, r):
                assert check_independence(enumerate_family(p, d, D), spec, d).holds
                checked["a"] += 1
        if d == 0:
            continue
        # (b), (c) z inside D
        for r in range(len(outside) + 1):
            for rest in itertools.combinations(outside, r):
                D = tuple(sorted(rest + (z,)))
                fam = enumerate_family(p, d, D)
                rep = check_independence(fam, spec, d)
                assert not rep.holds
                assert z in rep.witness.z_tuple
                d0, d1 = rep.witness.distributions
                assert d0 != d1
                checked["b"] += 1
                assert check_independence(fam, spec, d, S=(z,)).holds
                checked["c"] += 1
    assert min(checked.values()) > 0


def test_criterion_5_grover_leg():
    start = time.perf_counter()
    n = 1024
    oracle = RandomOracle((0,) + (1,) * (n - 1), (0,) * n, 2)
    res = run_grover(oracle, {0}, 25)
    elapsed = time.perf_counter() - start
    closed = math.sin(51 * math.asin(math.sqrt(1 / 1024))) ** 2
    assert closed == grover_closed_form(1024, 1, 25)
    assert res.success_probability >= 0.99
    assert abs(res.success_probability - closed) <= 1e-6
    assert res.queries_used == 25
    assert elapsed < 5


def _random_eta(B, rng):
    out = {}
    for _ in range(12):
        js = rng.sample(range(B), rng.randint(0, min(B, 4)))
        key = frozenset((j, rng.randrange(B)) for j in js)
        out[key] = out.get(key, Fraction(0)) + Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    return EtaPolynomial(out, B)


def _random_input_poly(tpl, rng, R=3):
    items = []
    for _ in range(10):
        variables = []
        for i in rng.sample(range(1, tpl.n + 1), rng.randint(0, min(3, tpl.n))):
            if rng.random() < 0.5:
                variables.append(Delta(i, rng.choice(tpl.exceptional), rng.randrange(R)))
            else:
                variables.append(Xi(i, rng.choice(tpl.z_order)))
        items.append((variables, Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
    return RandomInputPoly.from_terms(items)


def test_criterion_6_symmetrization_pipeline():
    rng = random.Random(0)
    for B in range(1, 7):
        for _ in range(5):
            poly = _random_eta(B, rng)
            q = symmetrize_two_var(poly)
            brute = exhaustive_orbit_average(poly)
            assert brute and all(q(a, b) == v for (a, b), v in brute.items())
            assert q.degree <= poly.degree
    for k in (1, 2, 3):
        for B in range(1, 7):
            n = k * B + rng.randrange(k)
            g = tuple(rng.randrange(3) for _ in range(k))
            h = tuple((v + 1) % 3 for v in g)
            tpl = BlockTemplate(n, k, tuple(range(1, n + 1)), g, h)
            for _ in range(3):
                trace = run_pipeline(_random_input_poly(tpl, rng), tpl, paturi=False)
                assert trace.q_hat_degree <= trace.q_degree <= trace.input_degree
                assert trace.degree_chain_holds


def test_criterion_7_paturi_scaling():
    start = time.perf_counter()
    T = {m: paturi_min_degree(m, 0.5, tol=LP_TOL) for m in (25, 100, 400)}
    elapsed = time.perf_counter() - start
    assert 1.6 <= T[100] / T[25] <= 2.4
    assert 1.6 <= T[400] / T[100] <= 2.4
    assert elapsed < 120


def _sandwich_instances():
    for p in (2, 3, 5):
        for d in range(4):
            for z in range(p):
                outside = [x for x in range(p) if x != z]
                for r in range(d + 1, len(outside) + 1):
                    for D in itertools.combinations(outside, r):
                        yield p, d, z, D


def test_criterion_8_factor_two_sandwich():
    seen = 0
    for p, d, z, D in _sandwich_instances():
        fam = enumerate_family(p, d, D)
        for accept in ({0}, {1}) if p > 2 else ({0},):
            spec = PropertySpec.value_bit(z, accept)
            # no degree-d polynomial sees any bias, so no degree-d separator exists
            assert max_gap_up_to_degree(fam, spec, d).max_gap == 0
            if p ** len(D) <= 125:
                assert not lp_feasible(build_feasibility_lp(fam, spec, d, 1e-3), LP_TOL).feasible
        lower = query_lower_bound_from_degree(d + 1)
        assert lower == math.ceil((d + 1) / 2)
        for poly, table in zip(fam.polys, fam.members):
            res = classical_interpolation_strategy(ChosenOracle(table), d, z)
            assert res.success and res.queries_used == d + 1
            assert res.estimate == sum(
                int(poly.coefficient(i)) * z**i for i in range(d + 1)
            ) % p
        assert (d + 1) / lower <= 2
        seen += 1
    assert seen > 0


REPRO_CONFIGS = [
    ["theorem1", "--p", "5", "--d", "2", "--domain", "1,2,3,4", "--z", "0", "--accept", "0,1"],
    ["min-degree", "--p", "3", "--d", "1", "--domain", "1,2", "--z", "0", "--eps", "0.5"],
    ["block-symmetrize", "--n", "10", "--k", "2", "--seed", "4"],
    ["paturi-scan", "--m", "9,25", "--jobs", "2"],
    ["grover", "--n", "256", "--marked", "3", "--iterations", "0,4,8", "--seed", "11"],
    ["interpolate", "--model", "random", "--p", "5", "--d", "2", "--domain", "1,2,3,4", "--n", "20", "--seed", "2"],
    ["parity", "--u", "5"],
]


def _results_record(argv):
    proc = subprocess.run([sys.executable, "-m", "interpbound", *argv], capture_output=True, check=False)
    assert proc.returncode == 0, proc.stderr
    return json.dumps(json.loads(proc.stdout)["results"], sort_keys=True).encode()


@pytest.mark.parametrize("argv", REPRO_CONFIGS, ids=lambda a: a[0])
def test_criterion_9_reproducibility(argv):
    assert _results_record(argv) == _results_record(argv)
