from __future__ import annotations

import random
from itertools import product

import pytest

from lrckit.code import LinearCode
from lrckit.constructions import ConstructionParams, construct
from lrckit.galois import gf
from lrckit.matrix import GfMatrix

HAMMING_H = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]


def hamming():
    return LinearCode(GfMatrix(gf(2), HAMMING_H))


def simplex():
    # [7,3,4]: parity-check matrix is the Hamming generator
    return hamming().dual()


def repetition(n=3):
    return LinearCode(GfMatrix(gf(2), [[1] + [0] * (i) + [1] + [0] * (n - i - 2) for i in range(n - 1)]))


def single_parity(n, q=2):
    return LinearCode(GfMatrix(gf(q), [[1] * n]))


def random_code(field, n, k, rng):
    while True:
        rows = [[rng.randrange(field.order) for _ in range(n)] for _ in range(n - k)]
        h = GfMatrix(field, rows)
        if h.rank() == n - k:
            return LinearCode(h)


def brute_words(field, gen):
    """All words of the row space, plain Python."""
    for msg in product(range(field.order), repeat=gen.rows):
        word = [0] * gen.cols
        for c, row in zip(msg, gen.data):
            for j, v in enumerate(row):
                word[j] = field.add(word[j], field.mul(c, v))
        yield word


def brute_distance(code):
    return min(sum(1 for v in w if v) for w in brute_words(code.field, code.generator) if any(w))


def brute_localities(code):
    out = []
    duals = [w for w in brute_words(code.field, code.pcm) if any(w)]
    for i in range(code.n):
        ws = [sum(1 for v in w if v) for w in duals if w[i]]
        out.append(min(ws) - 1 if ws else None)
    return out


CONSTRUCTED = {
    "vdm_d4_q5_n8": ConstructionParams("vdm_d4", 5, 8, 3),
    "vdm_d4_q7_n12": ConstructionParams("vdm_d4", 7, 12, 3),
    "vdm_d4_q4_n8": ConstructionParams("vdm_d4", 4, 8, 3),
    "vdm_d5_q23_n10": ConstructionParams("vdm_d5", 23, 10, 4),
    "d3_q5_n8": ConstructionParams("d3_variant", 5, 8, 3),
    "d3_q5_n4": ConstructionParams("d3_variant", 5, 4, 3),
    "r2_d5_q7_n6": ConstructionParams("r2_d5_variant", 7, 6, 2),
    "lin_q2_m4_n6": ConstructionParams("linearized", 2, 6, 2, m=4, k=2),
    "lin_q2_m6_n9": ConstructionParams("linearized", 2, 9, 2, m=6, k=4),
    "lin_q2_m6_n8": ConstructionParams("linearized", 2, 8, 3, m=6, k=4),
}


@pytest.fixture(scope="session")
def constructed():
    return {name: construct(p) for name, p in CONSTRUCTED.items()}


@pytest.fixture
def rng():
    return random.Random(20240601)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
