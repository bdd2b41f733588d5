"""Acceptance criteria; each test records one PASS/FAIL line in the terminal summary."""

import json
import random
import time
from itertools import product

from conftest import CONSTRUCTED, hamming, random_code, repetition, simplex
from lrckit.bounds import availability_bound, general_bound, rate_bound_ok, singleton_like
from lrckit.characterize import characterize, check_l_window
from lrckit.cli import main
from lrckit.code import LinearCode, distance_by_columns, distance_by_enumeration, locality_profile
from lrckit.constructions import AlphaAssignment, ConstructionParams, check_alpha_hypotheses, construct
from lrckit.galois import felts, gf, linearly_independent_over_base, moore_determinant
from lrckit.repair import encode, repair_single
from lrckit.verifier import R_DIVIDES_K, check_necessary_conditions, verify


def cli_construct(capsys, *flags):
    status = main(["construct", *flags, "--format", "structured"])
    doc = json.loads(capsys.readouterr().out)
    assert status == 0
    return doc["result"], LinearCode.from_text("\n".join(doc["result"]["code"]))


def test_criterion_01_vdm_d4(capsys, report):
    start = time.perf_counter()
    res, code = cli_construct(capsys, "--family", "vdm_d4", "--q", "5", "--n", "8", "--r", "3")
    d = distance_by_enumeration(code)
    elapsed = time.perf_counter() - start
    ok = (code.n, code.k) == (8, 4) and d == 4 == singleton_like(8, 4, 3) == res["d_exact"] and elapsed < 1.0
    report(1, ok, f"(8,4) d={d} bound={singleton_like(8, 4, 3)} in {elapsed:.2f}s (limit 1s)")
    assert ok


def test_criterion_02_vdm_d5(capsys, report):
    start = time.perf_counter()
    res, code = cli_construct(capsys, "--family", "vdm_d5", "--q", "23", "--n", "10", "--r", "4")
    d = distance_by_enumeration(code)
    elapsed = time.perf_counter() - start
    ok = (code.n, code.k) == (10, 5) and d == 5 == singleton_like(10, 5, 4) == res["d_exact"] and elapsed < 5.0
    report(2, ok, f"(10,5) d={d} bound={singleton_like(10, 5, 4)} in {elapsed:.2f}s (limit 5s)")
    assert ok


def test_criterion_03_linearized(report):
    start = time.perf_counter()
    small = construct(ConstructionParams("linearized", 2, 6, 2, m=4, k=2))
    d_small = distance_by_enumeration(small)
    loc = locality_profile(small).all_symbol
    t_small = time.perf_counter() - start
    start = time.perf_counter()
    big = construct(ConstructionParams("linearized", 2, 12, 3, m=9, k=3))
    d_big = distance_by_columns(big)[0]
    t_big = time.perf_counter() - start
    ok = (
        d_small == 5 == singleton_like(6, 2, 2) and loc == 2 and t_small < 1.0
        and (big.n, big.k) == (12, 3) and d_big == 10 == singleton_like(12, 3, 3) and t_big < 60.0
    )
    report(3, ok, f"(6,2,2) d={d_small} locality={loc} in {t_small:.2f}s; (12,3,3) d={d_big} in {t_big:.2f}s")
    assert ok


def test_criterion_04_simplex(report):
    start = time.perf_counter()
    code = simplex()
    loc = locality_profile(code).all_symbol
    d = distance_by_enumeration(code)
    bound, t = general_bound(7, 3, 2, 2)
    elapsed = time.perf_counter() - start
    ok = (code.n, code.k) == (7, 3) and loc == 2 and (bound, t) == (4, 1) and d == bound and elapsed < 1.0
    report(4, ok, f"[7,3] locality={loc} d={d} general bound={bound} at t={t} in {elapsed:.2f}s")
    assert ok


def test_criterion_05_distance_methods_agree(report):
    rng = random.Random(505)
    checked = mismatches = 0
    for q in (2, 3, 5):
        f = gf(q)
        for _ in range(80):
            n = rng.randint(2, 12)
            # keep q^k within 2^16 codewords
            k = rng.randint(1, max(k for k in range(1, n) if q**k <= 1 << 16))
            code = random_code(f, n, k, rng)
            checked += 1
            if distance_by_enumeration(code) != code.pcm.min_dependent_columns().size:
                mismatches += 1
    ok = checked >= 200 and mismatches == 0
    report(5, ok, f"{checked} random codes over GF(2), GF(3), GF(5), {mismatches} mismatches")
    assert ok


def locality_codes():
    codes = [(repetition(), 1), (repetition(5), 1), (simplex(), 2), (hamming(), 3)]
    codes += [(construct(p), p.r) for p in CONSTRUCTED.values()]
    rng = random.Random(606)
    while len(codes) < 120:
        q = rng.choice([2, 3, 4, 5])
        n = rng.randint(3, 9)
        code = random_code(gf(q), n, rng.randint(1, n - 1), rng)
        r = locality_profile(code).all_symbol
        if r:
            codes.append((code, r))
    return codes


def characterize_failures(code, r):
    cp = characterize(code, r)
    dual = code.dual()
    supports = cp.supports()
    problems = []
    if any(len(s) > r + 1 for s in supports):
        problems.append("weight")
    if not all(dual.contains(row) for row in cp.h1.data):
        problems.append("not dual")
    if frozenset().union(*supports) != frozenset(range(code.n)):
        problems.append("coverage")
    if cp.h.rank() != code.n - code.k:
        problems.append("rank")
    if any(not a < b for a, b in zip((frozenset(),) + cp.coverage_trace, cp.coverage_trace)):
        problems.append("trace")
    if not check_l_window(code.n, code.k, r, cp.l):
        problems.append("window")
    return problems


def test_criterion_06_characterization_invariants(report):
    codes = locality_codes()
    failures = [(i, p) for i, (code, r) in enumerate(codes) if (p := characterize_failures(code, r))]
    ok = not failures
    report(6, ok, f"{len(codes)} codes with all-symbol locality, {len(failures)} failures")
    assert ok, failures


def optimal_generated_codes():
    """Constructed codes plus random valid alpha grids, kept when verified optimal with r < k."""
    params = list(CONSTRUCTED.values()) + [
        ConstructionParams("linearized", 2, 12, 3, m=9, k=6),
        ConstructionParams("linearized", 4, 9, 2, m=6, k=4),
        ConstructionParams("linearized", 2, 12, 3, m=9, k=3),
    ]
    out = [(construct(p), p.r) for p in params]
    rng = random.Random(707)
    for family, q, n, r in [("vdm_d4", 7, 8, 3), ("vdm_d4", 8, 12, 3), ("vdm_d5", 23, 10, 4), ("d3_variant", 5, 9, 2)]:
        f = gf(q)
        for _ in range(6):
            grid = tuple(tuple(rng.sample(range(q), r + 1)) for _ in range(n // (r + 1)))
            alphas = AlphaAssignment(f, grid)
            if not check_alpha_hypotheses(alphas, family).ok:
                continue
            out.append((construct(ConstructionParams(family, q, n, r, alphas=alphas)), r))
    return out


def test_criterion_07_necessary_conditions(report):
    checked = failures = skipped = r_divides = 0
    for code, r in optimal_generated_codes():
        rep = verify(code, r)
        if not rep.optimal:
            failures += 1
            continue
        if r >= code.k:
            skipped += 1  # outside the r < k hypothesis
            continue
        verdict = check_necessary_conditions(characterize(code, r), code.n, code.k, r)
        checked += 1
        r_divides += verdict.case == R_DIVIDES_K
        failures += not verdict.ok or rep.thm2_ok is not True
    ok = failures == 0 and checked > 0 and r_divides > 0
    report(7, ok, f"{checked} optimal codes checked ({r_divides} with r | k), {failures} failures, {skipped} with r >= k skipped")
    assert ok


def brute_independent(f, values, base):
    sub = f.subfield(base)
    for cs in product(sub, repeat=len(values)):
        if any(cs):
            acc = 0
            for c, v in zip(cs, values):
                acc = f.add(acc, f.mul(c, v))
            if not acc:
                return False
    return True


def test_criterion_08_moore_equivalence(report):
    rng = random.Random(808)
    sets = discrepancies = 0
    for q, base in [(16, 2), (16, 4), (81, 3), (81, 9)]:
        f = gf(q)
        dim = f.m // f.check_subfield(base)
        for _ in range(150):
            size = rng.randint(1, dim)
            values = [rng.randrange(q) for _ in range(size)]
            elems = felts(f, values)
            nonzero = bool(moore_determinant(elems, base))
            indep = linearly_independent_over_base(elems, base)
            sets += 1
            if not nonzero == indep == brute_independent(f, values, base):
                discrepancies += 1
    ok = sets >= 500 and discrepancies == 0
    report(8, ok, f"{sets} random sets in GF(16), GF(81), {discrepancies} discrepancies")
    assert ok


def test_criterion_09_repair_completeness(report):
    rng = random.Random(909)
    trials = successes = worst_excess = 0
    for params in CONSTRUCTED.values():
        code = construct(params)
        profile = locality_profile(code)
        for _ in range(100):
            word = encode(code, [rng.randrange(code.q) for _ in range(code.k)])
            for i in range(code.n):
                received = list(word)
                received[i] = None
                trace = repair_single(code, received, profile, original=word[i])
                trials += 1
                successes += trace.success and trace.recovered == word[i]
                worst_excess = max(worst_excess, trace.read_count - params.r)
    rate = successes / trials
    ok = rate == 1.0 and worst_excess <= 0
    report(9, ok, f"{trials} single erasures over {len(CONSTRUCTED)} codes, success rate {rate}, reads <= r: {worst_excess <= 0}")
    assert ok


def bound_grid(size=1000):
    points = []
    for n in range(3, 60):
        for k in range(2, n):
            for r in range(1, k):
                if rate_bound_ok(n, k, r):
                    points.append((n, k, r))
    rng = random.Random(1010)
    picked = rng.sample(points, size)
    return [(n, k, r, rng.choice([2, 3, 4, 5, 7, 8, 9, 16])) for n, k, r in picked]


def test_criterion_10_bound_consistency(report):
    grid = bound_grid()
    above = mismatch = 0
    for n, k, r, q in grid:
        sl = singleton_like(n, k, r)
        above += general_bound(n, k, r, q)[0] > sl
        mismatch += availability_bound(n, k, r, 1) != sl
    ok = len(grid) == 1000 and above == 0 and mismatch == 0
    report(10, ok, f"{len(grid)} grid points, general > singleton-like: {above}, availability(s=1) mismatches: {mismatch}")
    assert ok
