"""Single-erasure repair through locality witnesses."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence, Tuple

from .code import LinearCode, LocalityProfile, locality_profile


class RepairError(ValueError):
    pass


def encode(code: LinearCode, message: Sequence[int]) -> List[int]:
    """message @ G for the systematic generator of ``code``."""
    if len(message) != code.k:
        raise RepairError(f"message length {len(message)} != k = {code.k}")
    msg = [code.field.element(int(v)) for v in message]
    return code.generator.vector_mul(msg)


@dataclass(frozen=True)
class RepairTrace:
    erased_coordinate: int
    reads: Tuple[int, ...]
    recovered: int
    success: bool

    @property
    def read_count(self) -> int:
        return len(self.reads)


def repair_single(
    code: LinearCode,
    received: Sequence[Optional[int]],
    profile: LocalityProfile,
    original: Optional[int] = None,
) -> RepairTrace:
    """Recover the single erased symbol (marked None) from its witness parity equation.

    ``success`` compares against ``original`` when given, else checks that the
    repaired word is a codeword.
    """
    erased = [i for i, v in enumerate(received) if v is None]
    if len(erased) != 1:
        raise RepairError("multiple erasures" if erased else "no erasure")
    i = erased[0]
    witness = profile.witnesses[i]
    if witness.row is None:
        raise RepairError(f"coordinate {i} has no locality witness")
    f = code.field
    acc = 0
    for j in witness.helpers:
        acc = f.add(acc, f.mul(witness.row[j], received[j]))
    value = f.neg(f.div(acc, witness.row[i]))
    if original is not None:
        ok = value == original
    else:
        word = list(received)
        word[i] = value
        ok = code.contains(word)
    return RepairTrace(i, witness.helpers, value, ok)


@dataclass
class SimulationMetrics:
    trials: int
    seed: int
    success_rate: Optional[float]
    mean_reads: Optional[float]
    max_reads: Optional[int]
    baseline_reads: int
    n: int
    k: int

    def as_dict(self) -> dict:
        return asdict(self)


def simulate(code: LinearCode, trials: int, seed: int, profile: Optional[LocalityProfile] = None) -> SimulationMetrics:
    """Random messages with one random erasure each; baseline is k reads (MDS-style repair)."""
    if profile is None:
        profile = locality_profile(code)
    rng = random.Random(seed)
    q = code.q
    successes = reads = max_reads = 0
    for _ in range(trials):
        word = encode(code, [rng.randrange(q) for _ in range(code.k)])
        i = rng.randrange(code.n)
        received: List[Optional[int]] = list(word)
        received[i] = None
        trace = repair_single(code, received, profile, original=word[i])
        successes += trace.success
        reads += trace.read_count
        max_reads = max(max_reads, trace.read_count)
    if trials == 0:
        return SimulationMetrics(0, seed, None, None, None, code.k, code.n, code.k)
    return SimulationMetrics(trials, seed, successes / trials, reads / trials, max_reads, code.k, code.n, code.k)
