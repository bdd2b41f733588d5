"""Upper bounds on the minimum distance and dimension of LRCs."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Optional, Tuple

import numpy as np

from .galois import gf, prime_power

EXHAUSTIVE_CAP = 1 << 24
CLOSED_FORM = "closed-form"
EXHAUSTIVE = "exhaustive"


class BoundError(ValueError):
    pass


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def singleton_like(n: int, k: int, r: int) -> int:
    if r < 1 or not 1 <= k < n:
        raise BoundError(f"need r >= 1 and 1 <= k < n, got n={n} k={k} r={r}")
    return n - k - _ceil_div(k, r) + 2


def rate_bound_ok(n: int, k: int, r: int) -> bool:
    """k/n <= r/(r+1)."""
    return k * (r + 1) <= n * r


def availability_bound(n: int, k: int, r: int, s: int) -> int:
    if s < 1 or r < 1 or not 1 <= k < n:
        raise BoundError(f"bad parameters n={n} k={k} r={r} s={s}")
    return n - k - _ceil_div(s * (k - 1) + 1, s * (r - 1) + 1) + 2


# --- d_opt / k_opt estimators ---

def griesmer_max_d(n: int, k: int, q: int) -> int:
    """Largest d with sum_{i<k} ceil(d / q^i) <= n."""
    d = 0
    while sum(_ceil_div(d + 1, q**i) for i in range(k)) <= n:
        d += 1
    return d


def plotkin_max_d(n: int, k: int, q: int) -> int:
    """Average nonzero weight of a linear code: d <= n (q-1) q^(k-1) / (q^k - 1)."""
    return n * (q - 1) * q ** (k - 1) // (q**k - 1)


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise BoundError(f"need 1 <= k <= n, got n={n} k={k}")


def d_opt_upper(n: int, k: int, q: int, mode: str = CLOSED_FORM) -> int:
    """Upper estimate of the best minimum distance of a q-ary [n, k] linear code.

    "closed-form" is min(Singleton, Griesmer, Plotkin); "exhaustive" is the exact
    value over all systematic generators, for tiny parameters only.
    """
    _check_nk(n, k)
    prime_power(q)
    if mode == CLOSED_FORM:
        return min(n - k + 1, griesmer_max_d(n, k, q), plotkin_max_d(n, k, q))
    if mode == EXHAUSTIVE:
        return _d_opt_exhaustive(n, k, q)
    raise BoundError(f"unknown estimator mode {mode!r}")


@lru_cache(maxsize=None)
def _d_opt_exhaustive(n: int, k: int, q: int) -> int:
    if k == n:
        return 1
    if q ** (k * (n - k)) > EXHAUSTIVE_CAP:
        raise BoundError(f"exhaustive d_opt({n},{k}) over GF({q}) exceeds the cap")
    f = gf(q)
    # every linear code is equivalent to one with generator [I | A]
    msgs = np.array(list(product(range(q), repeat=k)), dtype=np.int64)[1:]
    ident_weight = np.count_nonzero(msgs, axis=1)
    # products c * a for message entries c and matrix entries a
    mul = np.array([[f.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    add = np.array([[f.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    best = 0
    upper = d_opt_upper(n, k, q)
    for flat in product(range(q), repeat=k * (n - k)):
        a = np.array(flat, dtype=np.int64).reshape(k, n - k)
        par = np.zeros((len(msgs), n - k), dtype=np.int64)
        for i in range(k):
            par = add[par, mul[msgs[:, i][:, None], a[i][None, :]]]
        d = int((ident_weight + np.count_nonzero(par, axis=1)).min())
        if d > best:
            best = d
            if best == upper:
                break
    return best


def k_opt_upper(n: int, d: int, q: int, mode: str = CLOSED_FORM) -> int:
    """Largest k whose estimated d_opt(n, k) still reaches d (0 if none)."""
    if n < 0 or d < 1:
        raise BoundError(f"bad parameters n={n} d={d}")
    best = 0
    for k in range(1, n + 1):
        if d_opt_upper(n, k, q, mode) >= d:
            best = k
        else:
            break
    return best


def _t_range(k: int, r: int) -> range:
    return range(1, _ceil_div(k, r))


def general_bound(n: int, k: int, r: int, q: int, mode: str = CLOSED_FORM) -> Tuple[int, int]:
    """min over 1 <= t <= ceil(k/r)-1 of d_opt(n - t(r+1), k - tr); returns (bound, t)."""
    singleton_like(n, k, r)
    if not rate_bound_ok(n, k, r):
        raise BoundError(f"no ({n},{k},{r}) LRC exists: k/n > r/(r+1)")
    ts = _t_range(k, r)
    if not ts:
        raise BoundError(f"empty t-range for r={r} >= k={k}")
    return min((d_opt_upper(n - t * (r + 1), k - t * r, q, mode), t) for t in ts)


def cm_bound_k(n: int, d: int, r: int, q: int, k_hint: int, mode: str = CLOSED_FORM) -> Tuple[int, int]:
    """min over 1 <= t <= ceil(k_hint/r)-1 of t*r + k_opt(n - t(r+1), d); returns (bound, t)."""
    ts = _t_range(k_hint, r)
    if not ts:
        raise BoundError(f"empty t-range for r={r} >= k={k_hint}")
    vals = []
    for t in ts:
        rest = n - t * (r + 1)
        vals.append((t * r + (k_opt_upper(rest, d, q, mode) if rest > 0 else 0), t))
    return min(vals)


@dataclass
class BoundReport:
    n: int
    k: int
    r: int
    q: int
    singleton_like: int
    general_bound: Optional[int]
    general_bound_t: Optional[int]
    cm_bound_k: Optional[int]
    cm_bound_t: Optional[int]
    rate_ok: bool
    availability_bound: Optional[int]
    estimators: Dict[str, str] = field(default_factory=dict)
    d: Optional[int] = None
    s: Optional[int] = None

    def as_dict(self) -> dict:
        return asdict(self)


def bound_report(
    n: int, k: int, r: int, q: int, d: Optional[int] = None, s: Optional[int] = None, mode: str = CLOSED_FORM
) -> BoundReport:
    notes = {"singleton_like": "exact formula", "rate_ok": "exact rational comparison"}
    rate_ok = rate_bound_ok(n, k, r)
    gb = gt = None
    if r >= k:
        notes["general_bound"] = "empty t-range (r >= k); the Singleton-like bound applies"
    elif not rate_ok:
        notes["general_bound"] = "undefined: parameters violate the rate bound"
    else:
        gb, gt = general_bound(n, k, r, q, mode)
        notes["general_bound"] = _provenance(mode)
    cb = ct = None
    if d is None:
        notes["cm_bound_k"] = "not evaluated (no target distance given)"
    elif r >= k:
        notes["cm_bound_k"] = "empty t-range (r >= k)"
    else:
        cb, ct = cm_bound_k(n, d, r, q, k, mode)
        notes["cm_bound_k"] = _provenance(mode)
    ab = None
    if s is not None:
        ab = availability_bound(n, k, r, s)
        notes["availability_bound"] = "unproven-in-paper"
    return BoundReport(
        n, k, r, q, singleton_like(n, k, r), gb, gt, cb, ct, rate_ok, ab, notes, d, s
    )


def _provenance(mode: str) -> str:
    if mode == CLOSED_FORM:
        return "closed-form: min(Singleton, Griesmer, Plotkin)"
    return "exhaustive: enumeration of systematic generator matrices"
