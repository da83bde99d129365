"""Finite fields GF(p^e) and extensions GF(q^m).

Elements are plain integers. In GF(p^e) the integer encodes the coefficient
vector in base p (constant term least significant). In an extension GF(q^m)
the integer encodes the coefficient vector over GF(q) in base q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

FieldElem = int

TABLE_LIMIT = 256


class FieldError(ValueError):
    pass


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise FieldError(f"q={q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    e = 0
    r = q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise FieldError(f"q={q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over a field F are lists of coefficients, constant term first,
# with no trailing zeros (the zero polynomial is []).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], f: Sequence[int], F: "FieldSpec") -> list[int]:
    a = list(a)
    df = len(f) - 1
    lead_inv = F.inv(f[-1])
    while len(_trim(a)) - 1 >= df:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            if fc:
                a[shift + i] = F.sub(a[shift + i], F.mul(c, fc))
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], f: Sequence[int], F: "FieldSpec") -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _pmod(out, f, F)


def _ppowmod(a: list[int], e: int, f: Sequence[int], F: "FieldSpec") -> list[int]:
    result = [1]
    base = _pmod(a, f, F)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, F)
        base = _pmulmod(base, base, f, F)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], F: "FieldSpec") -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, F)
    return a


def _is_irreducible(f: Sequence[int], F: "FieldSpec") -> bool:
    """Rabin's test for a monic polynomial f over F."""
    m = len(f) - 1
    if m <= 0:
        return False
    if m == 1:
        return True
    q = F.q
    x = [0, 1]

    def frob_power(j: int) -> list[int]:
        r = x
        for _ in range(j):
            r = _ppowmod(r, q, f, F)
        return r

    xm = frob_power(m)
    if _trim([F.sub(a, b) for a, b in _zip_pad(xm, x)]):
        return False
    for r in _prime_factors(m):
        h = frob_power(m // r)
        diff = _trim([F.sub(a, b) for a, b in _zip_pad(h, x)])
        g = _pgcd(list(f), diff, F)
        if len(g) > 1:
            return False
    return True


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def _smallest_irreducible(F: "FieldSpec", m: int) -> tuple[int, ...]:
    q = F.q
    for code in range(q**m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % q)
            c //= q
        f = coeffs + [1]
        if f[0] == 0 and m > 1:
            continue
        if _is_irreducible(f, F):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({q})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^e) with a fixed monic irreducible modulus over GF(p)."""

    p: int
    e: int
    modulus: tuple[int, ...]
    _add: tuple = field(default=None, repr=False, compare=False)
    _mul: tuple = field(default=None, repr=False, compare=False)
    _inv: tuple = field(default=None, repr=False, compare=False)
    _sub: tuple = field(default=None, repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __post_init__(self):
        q = self.q
        if self.e == 1:
            inv = [0] * q
            for a in range(1, q):
                inv[a] = pow(a, q - 2, q)
            object.__setattr__(self, "_inv", tuple(inv))
            return
        if q > TABLE_LIMIT:
            return
        add = tuple(tuple(self._slow_add(a, b) for b in range(q)) for a in range(q))
        object.__setattr__(self, "_add", add)
        mul = tuple(tuple(self._slow_mul(a, b) for b in range(q)) for a in range(q))
        object.__setattr__(self, "_mul", mul)
        zero_of = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        object.__setattr__(self, "_sub", tuple(tuple(add[a][zero_of[b]] for b in range(q)) for a in range(q)))
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        object.__setattr__(self, "_inv", tuple(inv))

    # p-adic digit helpers for e > 1
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, d: Sequence[int]) -> int:
        v = 0
        for c in reversed(d):
            v = v * self.p + c
        return v

    def _slow_add(self, a: int, b: int) -> int:
        p = self.p
        return self._undigits([(x + y) % p for x, y in zip(self._digits(a), self._digits(b))])

    def _slow_mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        f = self.modulus
        for d in range(len(prod) - 1, e - 1, -1):
            c = prod[d]
            if c:
                for i in range(e + 1):
                    prod[d - e + i] = (prod[d - e + i] - c * f[i]) % p
        return self._undigits(prod[:e])

    def add(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._slow_add(a, b)

    def neg(self, a: FieldElem) -> FieldElem:
        if self.e == 1:
            return (-a) % self.p
        if self._sub is not None:
            return self._sub[0][a]
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.e == 1:
            return (a - b) % self.p
        if self._sub is not None:
            return self._sub[a][b]
        return self.add(a, self.neg(b))

    def mul(self, a: FieldElem, b: FieldElem) -> FieldElem:
        if self.e == 1:
            return (a * b) % self.p
        if self._mul is not None:
            return self._mul[a][b]
        return self._slow_mul(a, b)

    def inv(self, a: FieldElem) -> FieldElem:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.q)
        if self._inv is not None:
            return self._inv[a]
        return self.pow(a, self.q - 2)

    def div(self, a: FieldElem, b: FieldElem) -> FieldElem:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldElem, n: int) -> FieldElem:
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"GF({self.q})"


_FIELD_CACHE: dict[int, FieldSpec] = {}


def field_new(q: int) -> FieldSpec:
    """Return GF(q) with the smallest monic irreducible modulus."""
    if q in _FIELD_CACHE:
        return _FIELD_CACHE[q]
    p, e = _factor_prime_power(q)
    prime = FieldSpec(p, 1, (0, 1))
    if e == 1:
        F = prime
    else:
        F = FieldSpec(p, e, _smallest_irreducible(prime, e))
    _FIELD_CACHE[q] = F
    return F


@dataclass(frozen=True)
class ExtFieldSpec:
    """GF(q^m) as polynomials over GF(q) modulo an irreducible of degree m."""

    base: FieldSpec
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def order(self) -> int:
        return self.base.q**self.m

    def to_vector(self, a: int) -> list[int]:
        q = self.base.q
        out = []
        for _ in range(self.m):
            out.append(a % q)
            a //= q
        return out

    def from_vector(self, v: Sequence[int]) -> int:
        q = self.base.q
        if len(v) != self.m:
            raise FieldError("vector length must equal the extension degree")
        a = 0
        for c in reversed(v):
            a = a * q + c
        return a

    def basis(self) -> list[int]:
        """Integer encodings of 1, x, ..., x^{m-1}."""
        return [self.base.q**i for i in range(self.m)]

    def add(self, a: int, b: int) -> int:
        F = self.base
        if F.q == 2:
            return a ^ b
        return self.from_vector([F.add(x, y) for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def sub(self, a: int, b: int) -> int:
        F = self.base
        if F.q == 2:
            return a ^ b
        return self.from_vector([F.sub(x, y) for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def scale(self, c: int, a: int) -> int:
        """Multiply by a base-field scalar."""
        F = self.base
        return self.from_vector([F.mul(c, x) for x in self.to_vector(a)])

    def mul(self, a: int, b: int) -> int:
        F = self.base
        pa = _trim(self.to_vector(a))
        pb = _trim(self.to_vector(b))
        r = _pmulmod(pa, pb, self.modulus, F)
        return self.from_vector(r + [0] * (self.m - len(r)))

    def pow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a: int, i: int) -> int:
        """a^(q^i)."""
        for _ in range(i % self.m if self.m else 0):
            a = self.pow(a, self.base.q)
        return a


_EXT_CACHE: dict[tuple[int, int], ExtFieldSpec] = {}


def ext_field(base: FieldSpec, m: int) -> ExtFieldSpec:
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    key = (base.q, m)
    if key not in _EXT_CACHE:
        if m == 1:
            modulus = (0, 1)
        else:
            modulus = _smallest_irreducible(base, m)
        _EXT_CACHE[key] = ExtFieldSpec(base, m, modulus)
    return _EXT_CACHE[key]
