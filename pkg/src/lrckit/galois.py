"""Prime and extension field arithmetic, GF(p^m) in a polynomial basis.

Elements are handled internally as canonical integers: the base-p digits of
the integer are the polynomial coefficients, least significant digit first.
``Felt`` wraps such an integer together with its field for operator-style use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

MAX_ORDER = 1 << 20


class FieldError(ValueError):
    """Raised for invalid field parameters or mixing elements of distinct fields."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """Split q into (p, t) with q == p**t, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    t, rest = 0, q
    while rest % p == 0:
        rest //= p
        t += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, t


# --- polynomials over GF(p) as coefficient lists, lowest degree first ---

def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[List[int], List[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(quot), a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim([c % p for c in coeffs])
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(f, list(low) + [1], p):
                return False
    return True


def encode_poly(coeffs: Sequence[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def decode_poly(value: int, p: int, length: int) -> List[int]:
    out = []
    for _ in range(length):
        value, d = divmod(value, p)
        out.append(d)
    return out


def default_modulus(p: int, m: int) -> Tuple[int, ...]:
    """Monic irreducible of degree m whose integer encoding is least."""
    if m == 1:
        return (0, 1)
    for low in range(p**m):
        coeffs = decode_poly(low, p, m) + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with a fixed monic irreducible modulus."""

    p: int
    m: int
    modulus: Tuple[int, ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    @cached_property
    def _mod_int(self) -> int:
        # binary fields: modulus as a bit mask without the leading term
        return encode_poly(self.modulus[: self.m], 2) if self.p == 2 else 0

    def header(self) -> str:
        return f"q={self.p}^{self.m} mod={encode_poly(self.modulus, self.p)}"

    def __str__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __call__(self, value) -> "Felt":
        if isinstance(value, Felt):
            self.check(value)
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.m:
                raise FieldError(f"expected {self.m} coefficients, got {len(value)}")
            value = encode_poly([c % self.p for c in value], self.p)
        return Felt(self, self.element(value))

    def check(self, a: "Felt") -> None:
        if a.field != self:
            raise FieldError(f"element of {a.field} used with {self}")

    def element(self, value: int) -> int:
        if self.m == 1:
            return value % self.p
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element encoding of {self}")
        return value

    def elements(self) -> range:
        return range(self.order)

    def coeffs(self, a: int) -> List[int]:
        return decode_poly(a, self.p, self.m)

    # --- arithmetic on canonical integers ---

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        p, out, scale = self.p, 0, 1
        while a:
            out += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if self.p == 2:
            top, mask, out = 1 << self.m, self._mod_int, 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= top | mask
            return out
        key = (a, b) if a <= b else (b, a)
        table = self._cache.setdefault("mul", {})
        hit = table.get(key)
        if hit is None:
            prod = _poly_mod(_poly_mul(self.coeffs(a), self.coeffs(b), self.p), self.modulus, self.p)
            hit = table[key] = encode_poly(prod, self.p)
        return hit

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        table = self._cache.setdefault("inv", {})
        hit = table.get(a)
        if hit is None:
            hit = table[a] = self._ext_euclid_inv(a)
        return hit

    def _ext_euclid_inv(self, a: int) -> int:
        p = self.p
        r0, r1 = list(self.modulus), _trim(self.coeffs(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], p - 2, p)
        return encode_poly(_poly_mod([x * c % p for x in s0], self.modulus, p), p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    # --- subfields ---

    def check_subfield(self, base_q: int) -> int:
        """Return t with base_q == p**t and t | m, else raise."""
        p, t = prime_power(base_q)
        if p != self.p or self.m % t:
            raise FieldError(f"GF({base_q}) is not a subfield of {self}")
        return t

    def subfield(self, base_q: int) -> List[int]:
        self.check_subfield(base_q)
        key = ("subfield", base_q)
        if key not in self._cache:
            if base_q == self.p:
                self._cache[key] = list(range(self.p))
            else:
                self._cache[key] = [a for a in self.elements() if self.pow(a, base_q) == a]
        return self._cache[key]


def field_new(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldSpec:
    """Build GF(p^m); the modulus defaults to the least-encoded irreducible."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be positive")
    if p**m > MAX_ORDER:
        raise FieldError(f"GF({p}^{m}) exceeds the supported size {MAX_ORDER}")
    if modulus is None:
        modulus = default_modulus(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(_trim(list(modulus))) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if m > 1 and not is_irreducible(modulus, p):
            raise FieldError("modulus is reducible")
    return FieldSpec(p, m, tuple(modulus))


def gf(q: int) -> FieldSpec:
    """GF(q) for a prime power q, default modulus."""
    p, t = prime_power(q)
    return field_new(p, t)


def parse_header(line: str) -> FieldSpec:
    """Inverse of ``FieldSpec.header``."""
    try:
        parts = dict(tok.split("=", 1) for tok in line.split())
        p_str, m_str = parts["q"].split("^")
        p, m = int(p_str), int(m_str)
        mod = decode_poly(int(parts["mod"]), p, m + 1)
    except (KeyError, ValueError) as exc:
        raise FieldError(f"bad field header: {line!r}") from exc
    return field_new(p, m, mod)


class Felt:
    """An element of a ``FieldSpec``; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, owner: FieldSpec, value: int):
        object.__setattr__(self, "field", owner)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Felt is immutable")

    @property
    def coeffs(self) -> List[int]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if isinstance(other, Felt):
            self.field.check(other)
            return other.value
        if isinstance(other, int):
            return self.field.element(other % self.field.p) if self.field.m > 1 else other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return Felt(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return Felt(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return Felt(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._other(other)
        return Felt(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return Felt(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return Felt(self.field, self.field.pow(self.value, e))

    def inv(self) -> "Felt":
        return Felt(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, Felt):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Felt({self.value} in {self.field})"


def frobenius(a: Felt, base_q: int, i: int) -> Felt:
    """a ** (base_q ** i), the i-th power of the GF(base_q)-Frobenius map."""
    a.field.check_subfield(base_q)
    if i < 0:
        raise FieldError("Frobenius index must be nonnegative")
    v = a.value
    for _ in range(i):
        v = a.field.pow(v, base_q)
    return Felt(a.field, v)


def _common_field(elems: Sequence[Felt]) -> FieldSpec:
    owner = elems[0].field
    for e in elems[1:]:
        owner.check(e)
    return owner


def _subfield_coordinates(owner: FieldSpec, base_q: int):
    """Map an element to its coordinates over GF(base_q) in the basis 1, x, ..., x^(m/t - 1).

    Coordinates are subfield elements, returned as elements of ``owner``.
    """
    key = ("coords", base_q)
    if key in owner._cache:
        return owner._cache[key]
    from .matrix import GfMatrix

    t = owner.check_subfield(base_q)
    deg = owner.m // t
    prime = field_new(owner.p, 1)
    # GF(p)-basis of the subfield, picked greedily from its elements
    sub_basis: List[int] = []
    for s in owner.subfield(base_q):
        trial = GfMatrix(prime, [owner.coeffs(b) for b in sub_basis + [s]])
        if trial.rank() == len(sub_basis) + 1:
            sub_basis.append(s)
        if len(sub_basis) == t:
            break
    x = owner.element(owner.p) if owner.m > 1 else 1
    # columns: digits of u_s * x^i, ordered (i, s)
    cols = []
    for i in range(deg):
        xi = owner.pow(x, i)
        for s in sub_basis:
            cols.append(owner.coeffs(owner.mul(s, xi)))
    basis_mat = GfMatrix(prime, [list(r) for r in zip(*cols)])
    inverse = basis_mat.inverse()

    def coords(a: int) -> List[int]:
        d = inverse.mul_vector(owner.coeffs(a))
        out = []
        for i in range(deg):
            c = 0
            for j, s in enumerate(sub_basis):
                c = owner.add(c, owner.mul(d[i * t + j], s) if d[i * t + j] else 0)
            out.append(c)
        return out

    owner._cache[key] = coords
    return coords


def linearly_independent_over_base(elems: Sequence[Felt], base_q: int) -> bool:
    """True iff no nontrivial GF(base_q)-combination of ``elems`` vanishes.

    The empty family counts as independent.
    """
    if not elems:
        return True
    from .matrix import GfMatrix

    owner = _common_field(elems)
    coords = _subfield_coordinates(owner, base_q)
    rows = [coords(e.value) for e in elems]
    return GfMatrix(owner, rows).rank() == len(elems)


def moore_matrix(elems: Sequence[Felt], base_q: int):
    from .matrix import GfMatrix

    owner = _common_field(elems)
    owner.check_subfield(base_q)
    rows = []
    for b in elems:
        row, v = [], b.value
        for _ in range(len(elems)):
            row.append(v)
            v = owner.pow(v, base_q)
        rows.append(row)
    return GfMatrix(owner, rows)


def moore_determinant(elems: Sequence[Felt], base_q: int) -> Felt:
    """Determinant of the matrix with entries elems[i] ** (base_q ** j)."""
    if not elems:
        raise FieldError("Moore determinant of an empty family")
    return moore_matrix(elems, base_q).determinant()


def moore_product_formula(elems: Sequence[Felt], base_q: int) -> Felt:
    """Closed-form product expansion of the Moore determinant (slow; oracle use)."""
    owner = _common_field(elems)
    sub = owner.subfield(base_q)
    vals = [e.value for e in elems]
    out = vals[0]
    for j in range(1, len(vals)):
        for cs in product(sub, repeat=j):
            comb = 0
            for c, b in zip(cs, vals[:j]):
                comb = owner.add(comb, owner.mul(c, b))
            out = owner.mul(out, owner.sub(vals[j], comb))
    return Felt(owner, out)


def felts(owner: FieldSpec, values: Iterable[int]) -> List[Felt]:
    return [owner(v) for v in values]
