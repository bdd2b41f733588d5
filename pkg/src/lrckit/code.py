"""Linear codes given by a full-rank parity-check matrix.

Minimum distance and symbol locality are computed exactly, either by
enumerating a code (numpy, chunked) or by searching column subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .galois import FieldSpec
from .matrix import Dependence, GfMatrix, MatrixError

DEFAULT_ENUM_CAP = 1 << 26
CHUNK = 1 << 15


class CodeError(ValueError):
    pass


class CapExceeded(CodeError):
    """An exhaustive computation would exceed its configured cap."""


@dataclass(frozen=True, eq=False)
class LinearCode:
    """[n, k] code over ``field`` with parity-check matrix ``pcm`` of shape (n-k) x n."""

    pcm: GfMatrix

    def __post_init__(self):
        n = self.pcm.cols
        if self.pcm.rank() != self.pcm.rows:
            raise CodeError("parity-check matrix must have full row rank")
        if not 1 <= n - self.pcm.rows < n:
            raise CodeError(f"need 1 <= k < n, got n={n}, k={n - self.pcm.rows}")

    @property
    def field(self) -> FieldSpec:
        return self.pcm.field

    @property
    def n(self) -> int:
        return self.pcm.cols

    @property
    def k(self) -> int:
        return self.pcm.cols - self.pcm.rows

    @property
    def q(self) -> int:
        return self.field.order

    @cached_property
    def generator(self) -> GfMatrix:
        return generator_from_pcm(self)

    def dual(self) -> "LinearCode":
        return LinearCode(self.generator)

    def contains(self, word: Sequence[int]) -> bool:
        return not any(self.pcm.mul_vector(word))

    def to_text(self) -> str:
        return self.pcm.to_text() + f"n={self.n} k={self.k}\n"

    @classmethod
    def from_text(cls, text: str) -> "LinearCode":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        mat, used = GfMatrix.from_lines(lines)
        code = cls(mat)
        if used < len(lines):
            try:
                params = dict(tok.split("=") for tok in lines[used].split())
                n, k = int(params["n"]), int(params["k"])
            except (KeyError, ValueError) as exc:
                raise CodeError(f"bad parameter line {lines[used]!r}") from exc
            if (n, k) != (code.n, code.k):
                raise CodeError(f"parameter line says n={n} k={k}, matrix gives n={code.n} k={code.k}")
        return code


def generator_from_pcm(code: LinearCode) -> GfMatrix:
    """Systematic k x n generator (identity on the non-pivot columns of rref(H))."""
    return code.pcm.nullspace()


# --- enumeration of a row space ---

def _add_arrays(f: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if f.p == 2:
        return a ^ b
    if f.m == 1:
        return (a + b) % f.p
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    scale = 1
    for _ in range(f.m):
        out += ((a // scale % f.p + b // scale % f.p) % f.p) * scale
        scale *= f.p
    return out


def _scaled_rows(f: FieldSpec, row: Sequence[int]) -> np.ndarray:
    """All multiples c * row, c ranging over the field in canonical order."""
    return np.array([[f.mul(c, v) for v in row] for c in f.elements()], dtype=np.int64)


def iter_span(gen: GfMatrix, cap: int = DEFAULT_ENUM_CAP) -> Iterator[np.ndarray]:
    """Yield the row space of ``gen`` in chunks of rows.

    Words appear in lexicographic order of their message vectors (first
    message coordinate most significant).
    """
    f = gen.field
    q, k = f.order, gen.rows
    if q**k > cap:
        raise CapExceeded(f"{q}^{k} words exceed enumeration cap {cap}")
    scaled = [_scaled_rows(f, gen.row(i)) for i in range(k)]
    # the trailing rows are expanded in numpy, the leading ones looped in Python
    inner = 0
    while inner < k and q ** (inner + 1) <= CHUNK:
        inner += 1
    outer = k - inner
    block = np.zeros((1, gen.cols), dtype=np.int64)
    for i in range(outer, k):
        block = _add_arrays(f, block[:, None, :], scaled[i][None, :, :]).reshape(-1, gen.cols)
    for msg in product(range(q), repeat=outer):
        base = np.zeros(gen.cols, dtype=np.int64)
        for i, c in enumerate(msg):
            if c:
                base = _add_arrays(f, base, scaled[i][c])
        yield _add_arrays(f, block, base[None, :])


def distance_by_enumeration(code: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> int:
    best = code.n + 1
    for chunk in iter_span(code.generator, cap):
        w = np.count_nonzero(chunk, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def distance_by_columns(code: LinearCode) -> Tuple[int, Dependence]:
    dep = code.pcm.min_dependent_columns()
    if dep is None:  # pragma: no cover - n-k+1 columns are always dependent
        raise CodeError("no dependent column set")
    return dep.size, dep


def _column_search_cost(code: LinearCode) -> int:
    n, r = code.n, code.pcm.rows
    return sum(comb(n, i) * i * r for i in range(1, min(n, r + 1) + 1))


def min_distance(code: LinearCode, method: str = "auto", cap: int = DEFAULT_ENUM_CAP) -> int:
    """Exact minimum Hamming distance.

    ``method`` is "enumerate", "columns" or "auto" (the cheaper estimate wins).
    """
    if method == "auto":
        words = code.q**code.k
        # numpy enumeration is far cheaper per word than a Python field operation
        method = "enumerate" if words <= cap and words * code.n <= 64 * _column_search_cost(code) else "columns"
    if method == "enumerate":
        return distance_by_enumeration(code, cap)
    if method == "columns":
        return distance_by_columns(code)[0]
    raise ValueError(f"unknown method {method!r}")


# --- locality ---

@dataclass(frozen=True)
class LocalityWitness:
    coordinate: int
    locality: Optional[int]
    row: Optional[Tuple[int, ...]]

    @property
    def helpers(self) -> Tuple[int, ...]:
        if self.row is None:
            return ()
        return tuple(j for j, v in enumerate(self.row) if v and j != self.coordinate)


@dataclass(frozen=True)
class LocalityProfile:
    per_symbol: Tuple[Optional[int], ...]
    witnesses: Tuple[LocalityWitness, ...] = field(repr=False)

    @property
    def all_symbol(self) -> Optional[int]:
        if any(r is None for r in self.per_symbol):
            return None
        return max(self.per_symbol)


def _normalize(f: FieldSpec, row: Sequence[int]) -> Tuple[int, ...]:
    lead = next(v for v in row if v)
    inv = f.inv(lead)
    return tuple(f.mul(inv, v) for v in row)


def witness_key(row: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Tie-break among equal-weight witnesses: sorted support first, then the
    normalized vector compared on canonical encodings."""
    return tuple(j for j, v in enumerate(row) if v), tuple(row)


def _first_candidate(cand: np.ndarray) -> Tuple[int, ...]:
    # equal-weight rows: the lex-smallest support has the lex-largest indicator;
    # among multiples of one word the normalized one is the smallest raw vector
    keys = np.hstack([-(cand != 0).astype(np.int64), cand.astype(np.int64)])
    return tuple(int(v) for v in cand[np.lexsort(keys.T[::-1])[0]])


def locality_by_dual_enumeration(code: LinearCode, i: int, cap: int = DEFAULT_ENUM_CAP) -> LocalityWitness:
    """Minimum-weight dual codeword nonzero at ``i``, ties broken by ``witness_key``."""
    best_w, best = None, None
    for chunk in iter_span(code.pcm, cap):
        sel = chunk[chunk[:, i] != 0]
        if not sel.size:
            continue
        w = np.count_nonzero(sel, axis=1)
        wmin = int(w.min())
        if best_w is not None and wmin > best_w:
            continue
        top = _first_candidate(sel[w == wmin])
        if best_w is None or wmin < best_w or witness_key(top) < witness_key(best):
            best_w, best = wmin, top
    if best is None:
        return LocalityWitness(i, None, None)
    return LocalityWitness(i, best_w - 1, _normalize(code.field, best))


def locality_by_column_span(code: LinearCode, i: int, max_r: Optional[int] = None) -> LocalityWitness:
    """Smallest set T of other coordinates whose generator columns span column i.

    Every minimum-weight dual word covering i arises from such a minimal T and is
    unique up to scaling, so scanning all minimal T and taking the first
    normalized word under ``witness_key`` gives the same witness as dual enumeration.
    """
    f = code.field
    gen = code.generator
    n = code.n
    target = gen.column(i)
    others = [j for j in range(n) if j != i]
    if not any(target):
        row = [0] * n
        row[i] = 1
        return LocalityWitness(i, 0, tuple(row))
    max_r = code.k if max_r is None else max_r
    for size in range(1, max_r + 1):
        best = None
        for T in combinations(others, size):
            sub = gen.select_columns(T)
            try:
                x = sub.solve(target)
            except MatrixError:
                continue
            if not all(x):
                continue  # a smaller span exists inside T; covered at a smaller size
            row = [0] * n
            row[i] = 1
            for j, c in zip(T, x):
                row[j] = f.neg(c)
            cand = _normalize(f, row)
            if best is None or witness_key(cand) < witness_key(best):
                best = cand
        if best is not None:
            return LocalityWitness(i, size, best)
    return LocalityWitness(i, None, None)


def _dual_enumeration_cheaper(code: LinearCode, cap: int) -> bool:
    words = code.q ** (code.n - code.k)
    return words <= min(cap, 1 << 18)


def symbol_locality(code: LinearCode, i: int, method: str = "auto", cap: int = DEFAULT_ENUM_CAP) -> LocalityWitness:
    """Locality of coordinate ``i``: min weight of a dual word covering i, minus one.

    A coordinate covered by no dual word has locality None.
    """
    if not 0 <= i < code.n:
        raise IndexError(f"coordinate {i} out of range")
    if method == "auto":
        method = "dual" if _dual_enumeration_cheaper(code, cap) else "span"
    if method == "dual":
        return locality_by_dual_enumeration(code, i, cap)
    if method == "span":
        return locality_by_column_span(code, i)
    raise ValueError(f"unknown method {method!r}")


def locality_profile(code: LinearCode, method: str = "auto", cap: int = DEFAULT_ENUM_CAP) -> LocalityProfile:
    if method == "auto":
        method = "dual" if _dual_enumeration_cheaper(code, cap) else "span"
    if method == "dual":
        witnesses = _profile_by_dual(code, cap)
    else:
        witnesses = [symbol_locality(code, i, method, cap) for i in range(code.n)]
    return LocalityProfile(tuple(w.locality for w in witnesses), tuple(witnesses))


def _profile_by_dual(code: LinearCode, cap: int) -> List[LocalityWitness]:
    # one pass over the dual code for all coordinates
    n = code.n
    best_w: List[Optional[int]] = [None] * n
    best: List[Optional[tuple]] = [None] * n
    for chunk in iter_span(code.pcm, cap):
        weights = np.count_nonzero(chunk, axis=1)
        for i in range(n):
            mask = chunk[:, i] != 0
            if not mask.any():
                continue
            w = weights[mask]
            wmin = int(w.min())
            if best_w[i] is not None and wmin > best_w[i]:
                continue
            top = _first_candidate(chunk[mask][w == wmin])
            if best_w[i] is None or wmin < best_w[i] or witness_key(top) < witness_key(best[i]):
                best_w[i], best[i] = wmin, top
    return [
        LocalityWitness(i, None, None) if best[i] is None
        else LocalityWitness(i, best_w[i] - 1, _normalize(code.field, best[i]))
        for i in range(n)
    ]


def code_from_rows(field: FieldSpec, rows: Sequence[Sequence[int]]) -> LinearCode:
    return LinearCode(GfMatrix(field, rows))


def read_code(path) -> LinearCode:
    with open(path) as fh:
        return LinearCode.from_text(fh.read())


__all__ = [
    "CapExceeded",
    "CodeError",
    "LinearCode",
    "LocalityProfile",
    "LocalityWitness",
    "DEFAULT_ENUM_CAP",
    "code_from_rows",
    "distance_by_columns",
    "distance_by_enumeration",
    "generator_from_pcm",
    "iter_span",
    "locality_by_column_span",
    "locality_by_dual_enumeration",
    "locality_profile",
    "min_distance",
    "read_code",
    "symbol_locality",
    "witness_key",
]
