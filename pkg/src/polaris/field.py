"""Exact arithmetic in small finite fields GF(p^k).

Elements are integer codes in [0, q).  The code of an element is the
base-p little-endian reading of its coefficient vector over the power
basis 1, x, ..., x^(k-1) modulo a fixed Conway polynomial, so code 0 is
the zero element and code 1 is the one element of every field.  Conway
polynomials pin the representation, which keeps element codes bit-exact
across runs and machines.

Multiplication, inversion and powering go through discrete-log tables
over a fixed primitive element: the class of x when k > 1 (Conway
polynomials are primitive), the smallest primitive root mod p when
k = 1.  Addition is a precomputed q x q digit-wise table.

Field objects are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldError

DEFAULT_ORDER_CAP = 81

# Conway polynomials for the extension degrees the package ships with,
# little-endian monic coefficient vectors: CONWAY[(p, k)][i] is the
# coefficient of x^i.  Degree-1 polynomials x - r (r the smallest
# primitive root mod p) are computed on the fly for any prime p.
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    # factor p - 1 by trial division; p <= 81 so this is instant
    m = p - 1
    factors = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for r in range(2, p):
        if all(pow(r, (p - 1) // f, p) != 1 for f in factors):
            return r
    raise FieldError(f"no primitive root mod {p}")  # unreachable for prime p


@dataclass(frozen=True)
class Automorphism:
    """The field automorphism x -> x^(p^m), stored as the exponent m."""

    m: int

    def compose(self, other: "Automorphism", k: int) -> "Automorphism":
        return Automorphism((self.m + other.m) % k)

    def inverse(self, k: int) -> "Automorphism":
        return Automorphism((-self.m) % k)

    def is_involution(self, k: int) -> bool:
        return (2 * self.m) % k == 0


class Field:
    """GF(p^k) with canonical integer element codes."""

    __slots__ = ("p", "k", "q", "char", "conway", "exp", "log",
                 "_add", "_neg", "_inv", "minus_one")

    def __init__(self, p: int, k: int):
        q = p**k
        self.p = p
        self.k = k
        self.q = q
        self.char = p
        if k == 1:
            r = _smallest_primitive_root(p)
            self.conway = ((p - r) % p, 1)
            alpha = r
        else:
            if (p, k) not in CONWAY:
                raise FieldError(f"no Conway polynomial embedded for GF({p}^{k})")
            self.conway = CONWAY[(p, k)]
            alpha = p  # the class of x, primitive by the Conway property

        # exp/log tables over alpha; exp is doubled so products of two
        # logs never need a modular reduction.
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        val = 1
        for i in range(q - 1):
            if log[val] != -1:
                raise FieldError(f"non-primitive generator for GF({p}^{k})")
            exp[i] = val
            exp[i + q - 1] = val
            log[val] = i
            val = self._mul_raw(val, alpha)
        if val != 1:
            raise FieldError(f"bad multiplicative order in GF({p}^{k})")
        self.exp = tuple(exp)
        self.log = tuple(log)

        add = [0] * (q * q)
        for a in range(q):
            da = self._decode(a)
            for b in range(a, q):
                db = self._decode(b)
                s = self._encode([(x + y) % p for x, y in zip(da, db)])
                add[a * q + b] = s
                add[b * q + a] = s
        self._add = tuple(add)
        self._neg = tuple(self._encode([(-x) % p for x in self._decode(a)])
                          for a in range(q))
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.exp[(q - 1) - self.log[a]]
        self._inv = tuple(inv)
        self.minus_one = self._neg[1]
        if q <= 16:
            self._self_check()

    # -- construction helpers -------------------------------------------

    def _decode(self, code: int) -> list:
        digits = []
        for _ in range(self.k):
            digits.append(code % self.p)
            code //= self.p
        return digits

    def _encode(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _mul_raw(self, a: int, b: int) -> int:
        """Schoolbook polynomial product reduced mod the Conway polynomial."""
        p, k = self.p, self.k
        da, db = self._decode(a), self._decode(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                prod[deg] = 0
                for j in range(k):
                    prod[deg - k + j] = (prod[deg - k + j] - c * self.conway[j]) % p
        return self._encode(prod[:k])

    def _self_check(self):
        q = self.q
        for a in range(q):
            assert self.add(a, 0) == a and self.mul(a, 1) == a and self.mul(a, 0) == 0
            if a:
                assert self.mul(a, self.inv(a)) == 1
            for b in range(q):
                assert self.add(a, b) == self.add(b, a)
                assert self.mul(a, b) == self.mul(b, a)
                for c in range(q):
                    assert self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                    assert self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a * self.q + b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self._add[a * self.q + self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero field element")
        if a == 0:
            return 0
        return self.exp[self.log[a] + (self.q - 1) - self.log[b]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frob(self, a: int, m: int = 1) -> int:
        """a^(p^m), the m-fold Frobenius."""
        return self.pow(a, self.p ** (m % self.k))

    def sqrt_char2(self, a: int) -> int:
        """The unique square root, valid only in characteristic 2."""
        return self.pow(a, self.q // 2) if a else 0

    # -- structure -------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def automorphism(self, m: int) -> Automorphism:
        if not 0 <= m < self.k:
            raise FieldError(f"automorphism exponent {m} out of range [0, {self.k})")
        return Automorphism(m)

    def check_code(self, code: int) -> int:
        if not isinstance(code, int) or not 0 <= code < self.q:
            raise FieldError(f"invalid element code {code!r} for GF({self.q})")
        return code

    def conway_str(self) -> str:
        terms = []
        for i in range(self.k, -1, -1):
            c = self.conway[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return " + ".join(terms)

    def __repr__(self):
        return f"GF({self.q})"


_CACHE: dict = {}


def field_make(p: int, k: int, cap: int = DEFAULT_ORDER_CAP) -> Field:
    """Construct (or fetch the cached) GF(p^k); rejects non-prime p and q > cap."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p = {p!r} is not prime")
    if not isinstance(k, int) or k < 1:
        raise FieldError(f"k = {k!r} is not a positive integer")
    if p**k > cap:
        raise FieldError(f"field order {p}^{k} = {p**k} exceeds the cap {cap}")
    key = (p, k)
    if key not in _CACHE:
        _CACHE[key] = Field(p, k)
    return _CACHE[key]


def apply_automorphism(F: Field, a: Automorphism, x: int) -> int:
    """x^(p^m) for the automorphism a: identity when a.m == 0."""
    return F.frob(F.check_code(x), a.m)
