"""Acceptance suite: one test per shipped guarantee, in order.

Run with `python3 -m pytest tests/test_acceptance.py -v` to get one
pass/fail line per guarantee.  Everything here is exact arithmetic; the
only tolerances are the wall-clock target in guarantee 1 and the
factor-of-4 cost band in guarantee 7.

The structural matrix (guarantees 3, 5, 8) covers every ramification
set over F_3, F_5, F_7 built from irreducibles of degree <= 2 with
deg r <= 5.  By default a deterministic stratified sample of the 1376
cases runs (~90 s); set BTQUOT_FULL_MATRIX=1 to run all of them
(~2 h, same outcome — see scripts/structure_matrix.py for a standalone
driver).

The hom-solver cross-check (guarantee 4) is exhaustive and is the slow
part of this file: it enumerates every order element up to the height
bound (about a million candidates per case) and takes a few minutes.
"""

import itertools
import os
import random
import time
from collections import Counter

import pytest

from btquot.algebra import (GF, enumerate_monic_irreducibles, format_poly,
                            hilbert_symbol, is_irreducible, parse_poly,
                            poly_deg)
from btquot.homspace import hom
from btquot.laurent import Laurent, newton_sqrt
from btquot.quaternion import QUAT_ONE, build_algebra, height
from btquot.quotient import (compute_quotient, diameter_bound, evaluate_word,
                             express_in_generators, graph_diameter,
                             presentation, reduce, transport,
                             two_cycle_counts, verify_structure)
from btquot.tree import BASE_VERTEX, Vertex, distance

from oracle_units import (ball, enumerate_units, image_in_ball_filter,
                          pair_incidences)

F3, F5, F7 = GF(3), GF(5), GF(7)


def build(F, prime_texts):
    return build_algebra(F, [parse_poly(F, t) for t in prime_texts])


# --------------------------------------------------------------------------
# shared case matrix: q in {3, 5, 7}, even-cardinality ramification sets
# from irreducibles of degree <= 2, deg r <= 5
# --------------------------------------------------------------------------

def case_matrix():
    cases = []
    for F in (F3, F5, F7):
        small = [p for d in (1, 2) for p in enumerate_monic_irreducibles(F, d)]
        per_field = []
        for size in (2, 4):
            for combo in itertools.combinations(small, size):
                if sum(poly_deg(p) for p in combo) <= 5:
                    per_field.append((F, combo))
        cases.append(per_field)
    counts = [len(c) for c in cases]
    assert counts == [18, 210, 1148], counts   # enumeration sanity check
    return cases


def sampled_matrix():
    """Stratified deterministic sample, or everything under the env flag."""
    cases = case_matrix()
    if os.environ.get("BTQUOT_FULL_MATRIX"):
        return [c for per_field in cases for c in per_field]
    picked = []
    for per_field, want in zip(cases, (18, 12, 8)):
        stride = max(1, len(per_field) // want)
        picked.extend(per_field[::stride][:want])
    # always include the worked example
    quad = (F5, tuple(parse_poly(F5, t) for t in ("T", "T+1", "T+2", "T+3")))
    if quad not in picked:
        picked.append(quad)
    return picked


@pytest.fixture(scope="module")
def matrix_reports():
    out = []
    for F, primes in sampled_matrix():
        alg = build_algebra(F, primes)
        G = compute_quotient(alg)
        out.append((alg, G, verify_structure(alg, G)))
    return out


@pytest.fixture(scope="module")
def quad():
    """The q=5, r = T(T+1)(T+2)(T+3) domain, with its build time."""
    t0 = time.monotonic()
    alg = build(F5, ["T", "T+1", "T+2", "T+3"])
    G = compute_quotient(alg)
    report = verify_structure(alg, G)
    return alg, G, report, time.monotonic() - t0


# --------------------------------------------------------------------------
# 1. worked example: exact shape of the q=5 quotient and its presentation
# --------------------------------------------------------------------------

def test_1_worked_example_structure(quad):
    alg, G, report, elapsed = quad
    assert elapsed < 60.0, f"build took {elapsed:.1f}s"
    assert report.passed, [c for c in report.checks if not c.passed]

    assert len(G.vertices) == 12
    assert len(G.terminal_ids()) == 8
    assert sum(G.stable) == 4
    assert len(G.pairings) == 5
    assert G.levels == 3
    assert all(e.src != e.dst for e in G.edges)

    sets = [hom(alg, Vertex.make(2, 0, ()), Vertex.make(2, 1, (4,))),
            hom(alg, Vertex.make(2, 1, (1,)), Vertex.make(2, 1, (3,)))]
    assert [h.cardinality for h in sets] == [4, 4]

    pres = presentation(G)
    names = [name for name, _ in pres.generator_items()]
    assert names == (["g0"] + [f"gv{i}" for i in range(1, 9)]
                     + [f"g{k}" for k in range(1, 6)])
    assert pres.relation_strings() == (
        ["g0^4 = 1"] + [f"gv{i}^6 = g0" for i in range(1, 9)]
        + [f"[g{k}, g0] = 1" for k in range(1, 6)])


# --------------------------------------------------------------------------
# 2. the two-cycle count separates r = (T^2+T+1)T(T+1)(T+2) from
#    r = (T^2+2)T(T+1)(T+2)
# --------------------------------------------------------------------------

def test_2_two_cycle_separation():
    expected = {"T^2+T+1": 14, "T^2+2": 10}
    for quad_prime, want in expected.items():
        alg = build(F5, [quad_prime, "T", "T+1", "T+2"])
        G = compute_quotient(alg)
        pairs, rotations = two_cycle_counts(G)
        assert pairs == want, (quad_prime, pairs)
        assert rotations == 2 * want


# --------------------------------------------------------------------------
# 3. structural invariants across the case matrix
# --------------------------------------------------------------------------

def test_3_structural_invariants_matrix(matrix_reports):
    structural = ["no loops", "degrees match labels", "terminal vertex count",
                  "internal vertex count",
                  "paired edges = first Betti number = genus"]
    for alg, G, report in matrix_reports:
        by_name = {c.name: c for c in report.checks}
        for name in structural:
            assert by_name[name].passed, (alg.ram.primes, name,
                                          by_name[name].detail)


# --------------------------------------------------------------------------
# 4. hom solver vs exhaustive search over the order
# --------------------------------------------------------------------------

def test_4_hom_solver_vs_exhaustive_search():
    radius = 4
    for prime_texts in (["T", "T+1"], ["T", "T^2+1"]):
        alg = build(F3, prime_texts)
        rows, units = enumerate_units(alg, alg.m + radius)
        near = units[image_in_ball_filter(alg, rows, units,
                                          BASE_VERTEX, 2 * radius)]
        vertices = ball(F3, radius)
        oracle = pair_incidences(alg, rows, near, vertices, radius)

        sizes = Counter()
        for v in vertices:
            for w in vertices:
                got = set(hom(alg, v, w).elements())
                assert got == oracle.get((v, w), set()), (
                    prime_texts, v, w, len(got),
                    len(oracle.get((v, w), set())))
                sizes[len(got)] += 1
        assert set(sizes) <= {0, 2, 8}, sizes
        assert sizes[2] + sizes[8] > 0


# --------------------------------------------------------------------------
# 5. stored label heights and graph diameters stay within the bounds
# --------------------------------------------------------------------------

def test_5_height_and_diameter_bounds(matrix_reports):
    for alg, G, report in matrix_reports:
        by_name = {c.name: c for c in report.checks}
        for name in ("label heights", "diameter bound"):
            assert by_name[name].passed, (alg.ram.primes, name,
                                          by_name[name].detail)
        if len(G.vertices) >= 3:
            assert graph_diameter(G) <= diameter_bound(
                alg.F.q, alg.ram.d) + 1e-9


# --------------------------------------------------------------------------
# 6. reduction and word round-trips
# --------------------------------------------------------------------------

def random_unit(alg, pres, rng, max_letters=6):
    gens = [g for _, g in pres.generator_items()]
    out = QUAT_ONE
    for _ in range(rng.randrange(max_letters + 1)):
        g = rng.choice(gens)
        if rng.random() < 0.5:
            g = alg.inverse_unit(g)
        out = alg.mul(out, g)
    return out


def test_6_reduction_round_trips(quad):
    cases = [(F3, ["T", "T+1"]), (F3, ["T", "T^2+1"]),
             (F7, ["T", "T^2+1"])]
    graphs = [(a, compute_quotient(a)) for a in (build(F, p)
                                                 for F, p in cases)]
    graphs.append((quad[0], quad[1]))

    for alg, G in graphs:
        pres = presentation(G)
        rng = random.Random(20260816)
        for _ in range(200):
            gamma = random_unit(alg, pres, rng)
            w = rng.choice(G.vertices)
            v = transport(alg, gamma, w)
            w_back, mover = reduce(G, v)
            assert w_back == w
            assert transport(alg, mover, w_back) == v

            word = express_in_generators(G, gamma, pres)
            assert evaluate_word(alg, pres, word) == gamma


# --------------------------------------------------------------------------
# 7. series square root: digit-exact accuracy, cubic cost scaling
# --------------------------------------------------------------------------

def test_7_series_sqrt_accuracy_and_cost():
    rng = random.Random(7)
    samples = []
    for F in (F3, F5, F7):
        for deg in (2, 4, 6):
            f = [rng.randrange(F.q) for _ in range(deg)] + [1]
            samples.append((F, tuple(f)))

    for F, f in samples:
        m = poly_deg(f) // 2
        for n in (1, 2, 3, 5, 10, 25, 50, 100, 200):
            s = newton_sqrt(F, f, n)
            err = s * s - Laurent.from_poly(F, f, n + 2 * m + 2)
            assert all(err.coeff(k) == 0 for k in range(-2 * m, n)), (
                F.q, f, n)

    F, f = samples[-1]

    def cost(n):
        runs = []
        for _ in range(3):
            t0 = time.perf_counter()
            newton_sqrt(F, f, n)
            runs.append(time.perf_counter() - t0)
        return min(runs)

    ratio = cost(200) / cost(100)
    # doubling n should cost ~8x for an O(n^3) kernel; allow 4x slack
    assert 2.0 <= ratio <= 32.0, ratio


# --------------------------------------------------------------------------
# 8. ramification certificate: Hilbert symbols and the degree bound
# --------------------------------------------------------------------------

def expected_degree_bound(q: int, nprimes: int, deg_r: int) -> int:
    if q == 3:
        if nprimes <= 4:
            return deg_r + 7
        if nprimes == 6:
            return deg_r + 5
        return deg_r + 1
    if q in (5, 7):
        return deg_r + 3 if nprimes <= 6 else deg_r + 1
    if q == 9:
        return deg_r + 3 if nprimes <= 4 else deg_r + 1
    return deg_r + 3 if nprimes == 2 else deg_r + 1


def test_8_ramification_certificate(matrix_reports):
    for alg, G, report in matrix_reports:
        F = alg.F
        r = alg.ram.r
        assert is_irreducible(F, alg.alpha)
        for varpi in alg.ram.primes:
            assert hilbert_symbol(F, alg.alpha, r, varpi) == -1, (
                F.q, format_poly(F, varpi))
        assert hilbert_symbol(F, alg.alpha, r, alg.alpha) == 1
        assert poly_deg(alg.alpha) % 2 == 0
        assert poly_deg(alg.alpha) <= expected_degree_bound(
            F.q, len(alg.ram.primes), alg.ram.d)
