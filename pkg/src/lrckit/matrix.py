"""Dense matrices over a finite field, stored as rows of canonical integers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .galois import Felt, FieldError, FieldSpec, parse_header


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Dependence:
    """A set of linearly dependent columns and a nonzero kernel combination on them."""

    columns: Tuple[int, ...]
    coefficients: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.columns)


class GfMatrix:
    """Immutable rows x cols matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: Iterable[Sequence], cols: Optional[int] = None):
        rows = []
        for row in data:
            rows.append(tuple(field.element(int(v)) if not isinstance(v, Felt) else _own(field, v) for v in row))
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise MatrixError("ragged matrix rows")
        self.field = field
        self.data: Tuple[Tuple[int, ...], ...] = tuple(rows)
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GfMatrix":
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def entry(self, i: int, j: int) -> Felt:
        return Felt(self.field, self.data[i][j])

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, GfMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"GfMatrix({self.field}, {[list(r) for r in self.data]})"

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.data]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "GfMatrix":
        return GfMatrix(self.field, [self.column(j) for j in range(self.cols)], self.rows)

    def select_columns(self, idx: Sequence[int]) -> "GfMatrix":
        return GfMatrix(self.field, [[r[j] for j in idx] for r in self.data], len(idx))

    def select_rows(self, idx: Sequence[int]) -> "GfMatrix":
        return GfMatrix(self.field, [self.data[i] for i in idx], self.cols)

    def stack(self, other: "GfMatrix") -> "GfMatrix":
        if other.field != self.field or other.cols != self.cols:
            raise MatrixError("cannot stack matrices of different width or field")
        return GfMatrix(self.field, self.data + other.data, self.cols)

    def matmul(self, other: "GfMatrix") -> "GfMatrix":
        if other.field != self.field:
            raise FieldError("matrices over different fields")
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        out_cols = [other.column(j) for j in range(other.cols)]
        return GfMatrix(f, [[_dot(f, r, c) for c in out_cols] for r in self.data], other.cols)

    def mul_vector(self, vec: Sequence[int]) -> List[int]:
        """M @ vec for a column vector of canonical ints."""
        if len(vec) != self.cols:
            raise MatrixError("vector length mismatch")
        return [_dot(self.field, r, vec) for r in self.data]

    def vector_mul(self, vec: Sequence[int]) -> List[int]:
        """vec @ M for a row vector of canonical ints."""
        if len(vec) != self.rows:
            raise MatrixError("vector length mismatch")
        f = self.field
        out = [0] * self.cols
        for c, r in zip(vec, self.data):
            if c:
                for j, v in enumerate(r):
                    if v:
                        out[j] = f.add(out[j], f.mul(c, v))
        return out

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    # --- elimination ---

    def rref(self) -> Tuple["GfMatrix", List[int]]:
        """Reduced row echelon form and pivot columns."""
        work, pivots = _rref_rows(self.field, [list(r) for r in self.data], self.cols)
        return GfMatrix(self.field, work, self.cols), pivots

    def rank(self) -> int:
        return len(_rref_rows(self.field, [list(r) for r in self.data], self.cols, reduce_up=False)[1])

    def determinant(self) -> Felt:
        if self.rows != self.cols:
            raise MatrixError("determinant of a non-square matrix")
        f = self.field
        work = [list(r) for r in self.data]
        det = 1
        n = self.rows
        for c in range(n):
            piv = next((i for i in range(c, n) if work[i][c]), None)
            if piv is None:
                return Felt(f, 0)
            if piv != c:
                work[c], work[piv] = work[piv], work[c]
                det = f.neg(det)
            det = f.mul(det, work[c][c])
            inv = f.inv(work[c][c])
            for i in range(c + 1, n):
                if work[i][c]:
                    factor = f.mul(work[i][c], inv)
                    work[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(work[i], work[c])]
        return Felt(f, det)

    def solve(self, rhs: Sequence[int]) -> List[int]:
        """One solution x of M x = rhs (free variables set to zero)."""
        if len(rhs) != self.rows:
            raise MatrixError("right-hand side length mismatch")
        aug = [list(r) + [int(b)] for r, b in zip(self.data, rhs)]
        work, pivots = _rref_rows(self.field, aug, self.cols + 1)
        if self.cols in pivots:
            raise MatrixError("inconsistent system")
        x = [0] * self.cols
        for row, pc in zip(work, pivots):
            x[pc] = row[self.cols]
        return x

    def inverse(self) -> "GfMatrix":
        if self.rows != self.cols:
            raise MatrixError("inverse of a non-square matrix")
        n = self.rows
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.data)]
        work, pivots = _rref_rows(self.field, aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise MatrixError("singular matrix")
        return GfMatrix(self.field, [r[n:] for r in work], n)

    def nullspace(self) -> "GfMatrix":
        """Basis of {x : M x = 0} as rows, identity on the non-pivot coordinates."""
        f = self.field
        work, pivots = _rref_rows(f, [list(r) for r in self.data], self.cols)
        free = [j for j in range(self.cols) if j not in set(pivots)]
        basis = []
        for fj in free:
            v = [0] * self.cols
            v[fj] = 1
            for row, pc in zip(work, pivots):
                v[pc] = f.neg(row[fj])
            basis.append(v)
        return GfMatrix(f, basis, self.cols)

    def row_space_contains(self, vec: Sequence[int]) -> bool:
        return self.stack(GfMatrix(self.field, [vec], self.cols)).rank() == self.rank()

    # --- column dependence (minimum distance of the code with this parity-check matrix) ---

    def min_dependent_columns(self, limit: Optional[int] = None) -> Optional[Dependence]:
        """Smallest lexicographically-first set of linearly dependent columns.

        Subset sizes are tried in increasing order up to ``limit`` (default: all
        columns). Returns None when every set of at most ``limit`` columns is
        independent.
        """
        limit = self.cols if limit is None else min(limit, self.cols)
        for size in range(1, limit + 1):
            found = self.first_dependent_subset(size)
            if found is not None:
                return found
        return None

    def first_dependent_subset(self, size: int) -> Optional[Dependence]:
        """First (lexicographic) set of ``size`` columns whose last column lies in
        the span of the others, assuming all smaller sets are independent."""
        f = self.field
        cols = [self.column(j) for j in range(self.cols)]
        n = self.cols
        # DFS over prefixes, keeping an echelon basis of the prefix columns
        chosen: List[int] = []
        basis: List[Tuple[int, List[int]]] = []

        def reduce(v: List[int]) -> List[int]:
            v = list(v)
            for piv, b in basis:
                c = v[piv]
                if c:
                    v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, b)]
            return v

        def dfs(start: int) -> Optional[int]:
            depth = len(chosen)
            if depth == size - 1:
                for j in range(start, n):
                    if not any(reduce(cols[j])):
                        return j
                return None
            for j in range(start, n - (size - 1 - depth) + 1):
                v = reduce(cols[j])
                piv = next((i for i, x in enumerate(v) if x), None)
                if piv is None:
                    # a smaller dependent set; caller guarantees this does not happen
                    continue
                inv = f.inv(v[piv])
                basis.append((piv, [f.mul(inv, x) for x in v]))
                chosen.append(j)
                hit = dfs(j + 1)
                if hit is not None:
                    return hit
                basis.pop()
                chosen.pop()
            return None

        last = dfs(0)
        if last is None:
            return None
        idx = tuple(chosen) + (last,)
        kernel = self.select_columns(idx).nullspace()
        return Dependence(idx, tuple(kernel.row(0)))

    def columns_independent(self, size: int) -> bool:
        """True iff every set of ``size`` columns is linearly independent."""
        if size > self.rows:
            return False
        for s in range(1, size + 1):
            if self.first_dependent_subset(s) is not None:
                return False
        return True

    # --- text format ---

    def to_text(self) -> str:
        lines = [self.field.header(), f"{self.rows} {self.cols}"]
        lines += [" ".join(str(v) for v in r) for r in self.data]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_lines(cls, lines: List[str], field: Optional[FieldSpec] = None) -> Tuple["GfMatrix", int]:
        """Parse a matrix block; returns the matrix and the number of lines consumed."""
        pos = 0
        if field is None:
            field = parse_header(lines[0])
            pos = 1
        try:
            rows, cols = (int(x) for x in lines[pos].split())
            data = [[int(x) for x in lines[pos + 1 + i].split()] for i in range(rows)]
        except (ValueError, IndexError) as exc:
            raise MatrixError("malformed matrix block") from exc
        for r in data:
            if len(r) != cols:
                raise MatrixError("row length does not match header")
            for v in r:
                if not 0 <= v < field.order:
                    raise MatrixError(f"entry {v} out of range for {field}")
        return cls(field, data, cols), pos + 1 + rows

    @classmethod
    def from_text(cls, text: str) -> "GfMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        return cls.from_lines(lines)[0]


def _own(field: FieldSpec, v: Felt) -> int:
    field.check(v)
    return v.value


def _dot(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = f.add(acc, f.mul(x, y))
    return acc


def _rref_rows(f: FieldSpec, work: List[List[int]], ncols: int, reduce_up: bool = True):
    pivots: List[int] = []
    r = 0
    nrows = len(work)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = f.inv(work[r][c])
        if work[r][c] != 1:
            work[r] = [f.mul(inv, x) for x in work[r]]
        pr = work[r]
        for i in range(nrows):
            if i == r or (i < r and not reduce_up):
                continue
            factor = work[i][c]
            if factor:
                work[i] = [x if not y else f.sub(x, f.mul(factor, y)) for x, y in zip(work[i], pr)]
        pivots.append(c)
        r += 1
    return work, pivots


def all_subsets(n: int, size: int) -> Iterable[Tuple[int, ...]]:
    return combinations(range(n), size)
