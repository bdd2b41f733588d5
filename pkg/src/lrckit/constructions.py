"""Optimal LRC families built as [locality rows; power rows] parity-check matrices.

Columns are split into l = n/(r+1) repair groups of r+1 consecutive columns;
each group gets an all-ones locality row. Below them sit rows of powers of
per-column values alpha[i][j]: Frobenius powers (linearized family) or
ordinary powers (Vandermonde families).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import singleton_like
from .code import LinearCode
from .galois import (
    FieldSpec,
    field_new,
    gf,
    linearly_independent_over_base,
    parse_header,
    prime_power,
)
from .matrix import GfMatrix

FAMILIES = ("linearized", "vdm_d4", "vdm_d5", "d3_variant", "r2_d5_variant")
# power rows appended below the locality rows
POWER_ROWS = {"vdm_d4": 2, "vdm_d5": 3, "d3_variant": 1, "r2_d5_variant": 2}


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class AlphaAssignment:
    field: FieldSpec
    grid: Tuple[Tuple[int, ...], ...]

    @property
    def l(self) -> int:
        return len(self.grid)

    @property
    def r(self) -> int:
        return len(self.grid[0]) - 1

    def flat(self) -> List[int]:
        return [a for group in self.grid for a in group]

    def to_text(self) -> str:
        lines = [self.field.header()] + [" ".join(str(a) for a in g) for g in self.grid]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AlphaAssignment":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        owner = parse_header(lines[0])
        grid = tuple(tuple(owner.element(int(x)) for x in ln.split()) for ln in lines[1:])
        if not grid or len({len(g) for g in grid}) != 1:
            raise ConstructionError("alpha file needs l lines of equal length r+1")
        return cls(owner, grid)


@dataclass
class ConstructionParams:
    family: str
    q: int
    n: int
    r: int
    m: int = 1
    k: Optional[int] = None
    alphas: Optional[AlphaAssignment] = None

    @property
    def l(self) -> int:
        return self.n // (self.r + 1)

    def field(self) -> FieldSpec:
        if self.family == "linearized":
            p, t = prime_power(self.q)
            return field_new(p, t * self.m)
        return gf(self.q)

    def derived_k(self) -> int:
        if self.family == "linearized":
            if self.k is None:
                raise ConstructionError("the linearized family needs k")
            return self.k
        k = self.n - self.l - POWER_ROWS[self.family]
        if self.k is not None and self.k != k:
            raise ConstructionError(f"{self.family} fixes k = n - l - {POWER_ROWS[self.family]} = {k}, got k={self.k}")
        return k

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise ConstructionError(f"unknown family {self.family!r}")
        if self.r < 1 or self.n < 2 or self.n % (self.r + 1):
            raise ConstructionError(f"need (r+1) | n, got n={self.n} r={self.r}")
        prime_power(self.q)
        fam = self.family
        if fam == "linearized":
            k = self.derived_k()
            if self.n - k - self.l - 1 < 0:
                raise ConstructionError(f"s = n-k-l-1 = {self.n - k - self.l - 1} < 0")
            if k < 1:
                raise ConstructionError("k must be positive")
        elif fam == "vdm_d4" and self.r < 3:
            raise ConstructionError("vdm_d4 needs r >= 3")
        elif fam == "vdm_d5" and self.r < 4:
            raise ConstructionError("vdm_d5 needs r >= 4")
        elif fam == "d3_variant" and self.r < 2:
            raise ConstructionError("d3_variant needs r >= 2")
        elif fam == "r2_d5_variant" and self.r != 2:
            raise ConstructionError("r2_d5_variant needs r = 2")
        if fam != "linearized" and self.derived_k() < 1:
            raise ConstructionError("parameters leave no information symbols")


# --- alpha selection ---

def auto_alphas(params: ConstructionParams) -> AlphaAssignment:
    f = params.field()
    l, r = params.l, params.r
    fam = params.family
    if fam == "linearized":
        # alpha[i][r] = 1, alpha[i][j] = 1 + x^((i r) + j): differences form a basis prefix
        need = l * r
        if f.m // prime_power(params.q)[1] < need:
            raise ConstructionError(f"auto alphas need m >= nr/(r+1) = {need}, got m={params.m}")
        x = f.element(f.p)
        grid = []
        for i in range(l):
            grid.append(tuple(f.add(1, f.pow(x, i * r + j)) for j in range(r)) + (1,))
        return AlphaAssignment(f, tuple(grid))
    if f.order < r + 1:
        raise ConstructionError(f"GF({f.order}) has fewer than r+1 = {r + 1} elements")
    if fam in ("vdm_d5", "r2_d5_variant") and l > 1:
        # consecutive values with offset r per group keep pairwise-sum ranges
        # [2a+1, 2a+2r-1] disjoint as integers; q >= 2n keeps them disjoint mod q
        if f.m != 1:
            raise ConstructionError("automatic sum-distinct alphas need a prime q; pass --alphas")
        grid = AlphaAssignment(f, tuple(tuple((i * r + j) % f.order for j in range(r + 1)) for i in range(l)))
        if not check_alpha_hypotheses(grid, fam).ok:
            raise ConstructionError(f"automatic alphas collide over GF({f.order}); use q >= 2n or pass --alphas")
        return grid
    return AlphaAssignment(f, tuple(tuple(range(r + 1)) for _ in range(l)))


# --- hypothesis checks ---

@dataclass
class AlphaCheck:
    family: str
    checks: Dict[str, bool] = field(default_factory=dict)
    violations: Dict[str, list] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _within_group_distinct(grid) -> list:
    bad = []
    for i, g in enumerate(grid):
        for j1, j2 in combinations(range(len(g)), 2):
            if g[j1] == g[j2]:
                bad.append((i, j1, j2))
    return bad


def _cross_group_sums_distinct(f: FieldSpec, grid) -> list:
    sums = []
    for i, g in enumerate(grid):
        sums.append({f.add(g[a], g[b]): (a, b) for a, b in combinations(range(len(g)), 2)})
    bad = []
    for i1, i2 in combinations(range(len(grid)), 2):
        for s in sorted(set(sums[i1]) & set(sums[i2])):
            bad.append((i1, sums[i1][s], i2, sums[i2][s]))
    return bad


def check_alpha_hypotheses(
    assignment: AlphaAssignment, family: str, base_q: Optional[int] = None, samples: int = 50, seed: int = 0
) -> AlphaCheck:
    """Evaluate the family's hypotheses on the alpha grid."""
    f = assignment.field
    grid = assignment.grid
    report = AlphaCheck(family)
    if family == "linearized":
        if base_q is None:
            raise ValueError("base_q is required for the linearized family")
        r = assignment.r
        diffs = [f(f.sub(g[j], g[r])) for g in grid for j in range(r)]
        report.checks["differences_independent"] = linearly_independent_over_base(diffs, base_q)
        # the shifted difference sets for arbitrary pivots w_i stay independent
        rng = random.Random(seed)
        failed = []
        for _ in range(samples if report.checks["differences_independent"] else 0):
            pivots = [rng.randrange(r + 1) for _ in grid]
            shifted = [f(f.sub(g[j], g[w])) for g, w in zip(grid, pivots) for j in range(r + 1) if j != w]
            if not linearly_independent_over_base(shifted, base_q):
                failed.append(pivots)
        report.checks["shifted_differences_independent"] = not failed
        if failed:
            report.violations["shifted_differences_independent"] = failed
        return report
    bad = _within_group_distinct(grid)
    report.checks["within_group_distinct"] = not bad
    if bad:
        report.violations["within_group_distinct"] = bad
    if family in ("vdm_d5", "r2_d5_variant"):
        bad = _cross_group_sums_distinct(f, grid)
        report.checks["cross_group_sums_distinct"] = not bad
        if bad:
            report.violations["cross_group_sums_distinct"] = bad
    return report


# --- matrix builders ---

def locality_rows(f: FieldSpec, l: int, r: int) -> List[List[int]]:
    n = l * (r + 1)
    return [[int(i * (r + 1) <= j < (i + 1) * (r + 1)) for j in range(n)] for i in range(l)]


def power_rows(f: FieldSpec, values: Sequence[int], exponents: Sequence[int]) -> List[List[int]]:
    return [[f.pow(a, e) for a in values] for e in exponents]


def vandermonde_pcm(f: FieldSpec, grid, extra_rows: int) -> GfMatrix:
    l, r = len(grid), len(grid[0]) - 1
    flat = [a for g in grid for a in g]
    rows = locality_rows(f, l, r) + power_rows(f, flat, range(1, extra_rows + 1))
    return GfMatrix(f, rows, len(flat))


def linearized_pcm(f: FieldSpec, grid, base_q: int, s: int) -> GfMatrix:
    l, r = len(grid), len(grid[0]) - 1
    flat = [a for g in grid for a in g]
    rows = locality_rows(f, l, r) + power_rows(f, flat, [base_q**t for t in range(s + 1)])
    return GfMatrix(f, rows, len(flat))


def _resolve_alphas(params: ConstructionParams) -> AlphaAssignment:
    alphas = params.alphas or auto_alphas(params)
    f = params.field()
    if alphas.field != f:
        raise ConstructionError(f"alphas are over {alphas.field}, construction needs {f}")
    if alphas.l != params.l or alphas.r != params.r:
        raise ConstructionError(f"alpha grid must be {params.l} x {params.r + 1}")
    return alphas


def construct_linearized(params: ConstructionParams) -> LinearCode:
    params.validate()
    alphas = _resolve_alphas(params)
    check = check_alpha_hypotheses(alphas, "linearized", base_q=params.q, samples=0)
    if not check.ok:
        raise ConstructionError("alpha differences are not linearly independent over GF(q)")
    s = params.n - params.derived_k() - params.l - 1
    return LinearCode(linearized_pcm(alphas.field, alphas.grid, params.q, s))


def _construct_vandermonde(params: ConstructionParams, family: str) -> LinearCode:
    params = replace(params, family=family)
    params.validate()
    alphas = _resolve_alphas(params)
    check = check_alpha_hypotheses(alphas, family)
    if not check.ok:
        failed = ", ".join(name for name, ok in check.checks.items() if not ok)
        raise ConstructionError(f"alpha hypotheses violated: {failed}")
    return LinearCode(vandermonde_pcm(alphas.field, alphas.grid, POWER_ROWS[family]))


def construct_vdm_d4(params: ConstructionParams) -> LinearCode:
    return _construct_vandermonde(params, "vdm_d4")


def construct_vdm_d5(params: ConstructionParams) -> LinearCode:
    return _construct_vandermonde(params, "vdm_d5")


def construct_low_d_variant(params: ConstructionParams) -> LinearCode:
    if params.family not in ("d3_variant", "r2_d5_variant"):
        raise ConstructionError("low-d variants are d3_variant and r2_d5_variant")
    return _construct_vandermonde(params, params.family)


def construct(params: ConstructionParams) -> LinearCode:
    if params.family == "linearized":
        return construct_linearized(params)
    if params.family in POWER_ROWS:
        return _construct_vandermonde(params, params.family)
    raise ConstructionError(f"unknown family {params.family!r}")


def design_distance(params: ConstructionParams) -> int:
    """The Singleton-like value each family is claimed to reach."""
    return singleton_like(params.n, params.derived_k(), params.r)


# --- alpha search ---

@dataclass
class SearchResult:
    found: bool
    alphas: Optional[AlphaAssignment]
    reason: str
    evaluated: int
    phase: Optional[str] = None
    seed: Optional[int] = None


def search_alphas(
    q: int,
    n: int,
    r: int,
    extra_rows: int,
    target_d: int,
    seed: int = 0,
    scan_cap: int = 20000,
    random_tries: int = 2000,
) -> SearchResult:
    """Find alphas so the Vandermonde-style matrix with ``extra_rows`` power rows
    defines a code of minimum distance >= target_d.

    Grids are scanned in lexicographic order, restricted to increasing values
    within a group and non-decreasing groups (column permutations inside a
    group, and group permutations, preserve the distance). Then seeded random
    grids are tried.
    """
    if r < 1 or n % (r + 1):
        raise ConstructionError(f"need (r+1) | n, got n={n} r={r}")
    l = n // (r + 1)
    k = n - l - extra_rows
    if k < 1:
        return SearchResult(False, None, "no information symbols left", 0)
    if target_d > singleton_like(n, k, r):
        return SearchResult(False, None, "exceeds Singleton-like bound", 0)
    f = gf(q)
    if f.order < r + 1:
        return SearchResult(False, None, f"GF({q}) has fewer than r+1 elements", 0)

    def good(grid) -> bool:
        h = vandermonde_pcm(f, grid, extra_rows)
        if h.rank() != h.rows:
            return False
        return h.columns_independent(target_d - 1)

    evaluated = 0
    groups = list(combinations(range(f.order), r + 1))
    for choice in combinations_with_replacement(range(len(groups)), l):
        if evaluated >= scan_cap:
            break
        grid = tuple(groups[c] for c in choice)
        evaluated += 1
        if good(grid):
            return SearchResult(True, AlphaAssignment(f, grid), "found", evaluated, "scan")
    rng = random.Random(seed)
    for _ in range(random_tries):
        grid = tuple(tuple(sorted(rng.sample(range(f.order), r + 1))) for _ in range(l))
        evaluated += 1
        if good(grid):
            return SearchResult(True, AlphaAssignment(f, grid), "found", evaluated, "random", seed)
    return SearchResult(False, None, "search cap exhausted", evaluated, seed=seed)


def corrupt_alphas(assignment: AlphaAssignment) -> AlphaAssignment:
    """Copy of the grid with the first group's second value duplicated (test helper)."""
    grid = [list(g) for g in assignment.grid]
    grid[0][1] = grid[0][0]
    return AlphaAssignment(assignment.field, tuple(tuple(g) for g in grid))


__all__ = [
    "AlphaAssignment",
    "AlphaCheck",
    "ConstructionError",
    "ConstructionParams",
    "FAMILIES",
    "POWER_ROWS",
    "SearchResult",
    "auto_alphas",
    "check_alpha_hypotheses",
    "construct",
    "construct_linearized",
    "construct_low_d_variant",
    "construct_vdm_d4",
    "construct_vdm_d5",
    "corrupt_alphas",
    "design_distance",
    "linearized_pcm",
    "locality_rows",
    "power_rows",
    "search_alphas",
    "vandermonde_pcm",
]
