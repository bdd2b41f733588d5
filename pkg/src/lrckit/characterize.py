"""Split a parity-check matrix into locality rows H1 and the remainder H2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple

from .code import DEFAULT_ENUM_CAP, CodeError, LinearCode, LocalityProfile, locality_profile, symbol_locality
from .galois import parse_header
from .matrix import GfMatrix


class LocalityError(CodeError):
    """The code does not have the requested all-symbol locality."""


@dataclass(frozen=True)
class CharacterizedPcm:
    h1: GfMatrix
    h2: GfMatrix
    coverage_trace: Tuple[FrozenSet[int], ...]
    picked: Tuple[int, ...]

    @property
    def l(self) -> int:
        return self.h1.rows

    @property
    def h(self) -> GfMatrix:
        return self.h1.stack(self.h2)

    def supports(self) -> List[FrozenSet[int]]:
        return [frozenset(j for j, v in enumerate(row) if v) for row in self.h1.data]

    def to_text(self) -> str:
        out = [self.h1.field.header(), "H1", self.h1.to_text().split("\n", 1)[1].rstrip("\n")]
        out += ["H2", self.h2.to_text().split("\n", 1)[1].rstrip("\n"), "trace"]
        out += [" ".join(str(j) for j in sorted(s)) for s in self.coverage_trace]
        return "\n".join(line for line in out if line) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CharacterizedPcm":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        field = parse_header(lines[0])
        if lines[1] != "H1":
            raise ValueError("expected H1 block")
        h1, used = GfMatrix.from_lines(lines[2:], field)
        pos = 2 + used
        if lines[pos] != "H2":
            raise ValueError("expected H2 block")
        h2, used = GfMatrix.from_lines(lines[pos + 1:], field)
        pos += 1 + used
        if lines[pos] != "trace":
            raise ValueError("expected trace block")
        trace = tuple(frozenset(int(x) for x in ln.split()) for ln in lines[pos + 1:])
        picked = tuple(min(b - a) for a, b in zip((frozenset(),) + trace, trace))
        return cls(h1, h2, trace, picked)


def check_l_window(n: int, k: int, r: int, l: int) -> bool:
    """k/r <= n/(r+1) <= l <= n-k, compared exactly."""
    return Fraction(k, r) <= Fraction(n, r + 1) <= l <= n - k


def characterize(
    code: LinearCode,
    r: int,
    profile: Optional[LocalityProfile] = None,
    method: str = "auto",
    cap: int = DEFAULT_ENUM_CAP,
) -> CharacterizedPcm:
    """Greedy cover of the coordinates by minimum-weight dual codewords.

    The least uncovered coordinate is picked each round; its locality witness
    (first minimum-weight dual word covering it, by support then vector) is
    appended to H1. H1 is then completed to full rank with rows of rref(H).
    """
    if profile is None:
        profile = locality_profile(code, method, cap)
    bad = [i for i, ri in enumerate(profile.per_symbol) if ri is None or ri > r]
    if bad:
        raise LocalityError(f"coordinates {bad} do not have locality {r}")

    n = code.n
    covered: FrozenSet[int] = frozenset()
    rows, trace, picked = [], [], []
    while len(covered) < n:
        j = min(set(range(n)) - covered)
        witness = profile.witnesses[j]
        if witness.row is None:  # pragma: no cover - excluded above
            witness = symbol_locality(code, j, method, cap)
        rows.append(witness.row)
        covered = covered | {c for c, v in enumerate(witness.row) if v}
        trace.append(covered)
        picked.append(j)

    f = code.field
    h1 = GfMatrix(f, rows, n)
    # each row covers a new coordinate, so h1 has full row rank
    assert h1.rank() == h1.rows
    extra: List[Tuple[int, ...]] = []
    current = h1
    reduced, _ = code.pcm.rref()
    for row in reduced.data:
        trial = current.stack(GfMatrix(f, [row], n))
        if trial.rank() > current.rows:
            current = trial
            extra.append(row)
    h2 = GfMatrix(f, extra, n)
    assert h1.rows + h2.rows == n - code.k, "completion to full rank failed"
    return CharacterizedPcm(h1, h2, tuple(trace), tuple(picked))
