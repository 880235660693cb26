"""Polynomials with integer coefficients mod p.

Coefficients are stored low degree first: ``coeffs[i]`` is the coefficient
of ``x**i``.  The zero polynomial has an empty coefficient tuple and degree
-1.  Any modulus ``p >= 2`` is accepted for storage, addition and
multiplication; division and irreducibility need ``p`` prime.

Over GF(2) the heavy lifting (trial division, Rabin's test) is done on
integer bitmasks, bit ``i`` holding the coefficient of ``x**i``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable


class PolynomialError(ValueError):
    """Base class for polynomial domain errors."""


class InvalidModulusError(PolynomialError):
    pass


class UnsupportedModulusError(PolynomialError):
    """Raised when an operation needs a prime modulus."""


class ModulusMismatchError(PolynomialError):
    pass


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


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


@dataclass(frozen=True)
class GfPolynomial:
    """Immutable polynomial over the integers mod ``p`` in canonical form.

    Build instances with :func:`poly_normalize` (or :meth:`from_coeffs`);
    the constructor itself rejects non-canonical input.
    """

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.p < 2:
            raise InvalidModulusError(f"modulus must be >= 2, got {self.p}")
        if any(not 0 <= c < self.p for c in self.coeffs):
            raise PolynomialError("coefficients must be reduced mod p")
        if self.coeffs and self.coeffs[-1] == 0:
            raise PolynomialError("leading stored coefficient must be nonzero")

    @classmethod
    def from_coeffs(cls, raw: Iterable[int], p: int) -> "GfPolynomial":
        return poly_normalize(raw, p)

    @classmethod
    def monomial(cls, k: int, p: int, c: int = 1) -> "GfPolynomial":
        return poly_normalize([0] * k + [c], p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __divmod__(self, other):
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __mod__(self, other):
        return poly_divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self):
        return format_polynomial(self)


def poly_normalize(raw_coeffs: Iterable[int], p: int) -> GfPolynomial:
    """Reduce every coefficient mod ``p`` and strip trailing zeros."""
    if p < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {p}")
    cs = [int(c) % p for c in raw_coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return GfPolynomial(p, tuple(cs))


def _check_same(a: GfPolynomial, b: GfPolynomial) -> int:
    if a.p != b.p:
        raise ModulusMismatchError(f"moduli differ: {a.p} vs {b.p}")
    return a.p


def _require_prime(p: int):
    if not is_prime(p):
        raise UnsupportedModulusError(f"modulus {p} is not prime; division is undefined")


def poly_add(a: GfPolynomial, b: GfPolynomial) -> GfPolynomial:
    p = _check_same(a, b)
    n = max(len(a.coeffs), len(b.coeffs))
    ac = a.coeffs + (0,) * (n - len(a.coeffs))
    bc = b.coeffs + (0,) * (n - len(b.coeffs))
    return poly_normalize((x + y for x, y in zip(ac, bc)), p)


def poly_neg(a: GfPolynomial) -> GfPolynomial:
    return poly_normalize((-c for c in a.coeffs), a.p)


def poly_sub(a: GfPolynomial, b: GfPolynomial) -> GfPolynomial:
    return poly_add(a, poly_neg(b))


def poly_mul(a: GfPolynomial, b: GfPolynomial) -> GfPolynomial:
    p = _check_same(a, b)
    if a.is_zero() or b.is_zero():
        return GfPolynomial(p)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return poly_normalize(out, p)


def poly_divmod(a: GfPolynomial, b: GfPolynomial) -> tuple[GfPolynomial, GfPolynomial]:
    """Long division ``a = b*q + r`` with ``deg r < deg b``."""
    p = _check_same(a, b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    _require_prime(p)
    inv = pow(b.leading, -1, p)
    rem = list(a.coeffs)
    db = b.degree
    quot = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if not c:
            continue
        f = c * inv % p
        quot[k - db] = f
        for i, bc in enumerate(b.coeffs):
            rem[k - db + i] -= f * bc
    return poly_normalize(quot, p), poly_normalize(rem[:db], p)


def poly_gcd(a: GfPolynomial, b: GfPolynomial) -> GfPolynomial:
    """Monic gcd (zero if both inputs are zero)."""
    p = _check_same(a, b)
    _require_prime(p)
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    if a.is_zero():
        return a
    inv = pow(a.leading, -1, p)
    return poly_normalize((c * inv for c in a.coeffs), p)


# ---------------------------------------------------------------------------
# GF(2) bitmask kernels
# ---------------------------------------------------------------------------


def to_bitmask(poly: GfPolynomial) -> int:
    if poly.p != 2:
        raise UnsupportedModulusError("bitmask form exists only for p = 2")
    v = 0
    for i, c in enumerate(poly.coeffs):
        if c:
            v |= 1 << i
    return v


def from_bitmask(v: int) -> GfPolynomial:
    return GfPolynomial(2, tuple((v >> i) & 1 for i in range(v.bit_length())))


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _gf2_mulmod(a: int, b: int, m: int) -> int:
    deg = m.bit_length() - 1
    top = 1 << deg
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= m
    return out


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_trial_division(f: int) -> bool:
    d = f.bit_length() - 1
    # monic divisors of degree k are the integers in [2^k, 2^(k+1))
    for g in range(2, 1 << (d // 2 + 1)):
        if _gf2_mod(f, g) == 0:
            return False
    return True


def _gf2_frobenius_chain(f: int, upto: int) -> list[int]:
    """``[x^(2^k) mod f for k in 0..upto]``."""
    x = _gf2_mod(0b10, f)
    chain = [x]
    for _ in range(upto):
        x = _gf2_mulmod(x, x, f)
        chain.append(x)
    return chain


def _gf2_rabin(f: int) -> bool:
    d = f.bit_length() - 1
    chain = _gf2_frobenius_chain(f, d)
    x = _gf2_mod(0b10, f)
    if chain[d] != x:
        return False
    for r in _prime_factors(d):
        if _gf2_gcd(f, chain[d // r] ^ x) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# general prime p
# ---------------------------------------------------------------------------


def _monic(poly: GfPolynomial) -> GfPolynomial:
    inv = pow(poly.leading, -1, poly.p)
    return poly_normalize((c * inv for c in poly.coeffs), poly.p)


def _powmod(base: GfPolynomial, e: int, m: GfPolynomial) -> GfPolynomial:
    result = GfPolynomial(m.p, (1,))
    base = poly_divmod(base, m)[1]
    while e:
        if e & 1:
            result = poly_divmod(poly_mul(result, base), m)[1]
        e >>= 1
        if e:
            base = poly_divmod(poly_mul(base, base), m)[1]
    return poly_divmod(result, m)[1]


def _rabin(f: GfPolynomial) -> bool:
    p, d = f.p, f.degree
    x = poly_divmod(GfPolynomial.monomial(1, p), f)[1]
    # frob[k] = x^(p^k) mod f
    frob = [x]
    for _ in range(d):
        frob.append(_powmod(frob[-1], p, f))
    if frob[d] != x:
        return False
    for r in _prime_factors(d):
        g = poly_gcd(f, poly_sub(frob[d // r], x))
        if g.degree > 0:
            return False
    return True


def _trial_division(f: GfPolynomial) -> bool:
    p, d = f.p, f.degree
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            g = GfPolynomial(p, tuple(tail) + (1,))
            if poly_divmod(f, g)[1].is_zero():
                return False
    return True


# trial division is used while the divisor count p^(d/2) stays below this
TRIAL_DIVISION_BUDGET = 1 << 16
TRIAL_DIVISION_MAX_DEGREE = 31


def is_irreducible(poly: GfPolynomial) -> bool:
    """True iff ``poly`` has no factorisation into two nonconstant factors.

    Small degrees use trial division by every monic polynomial of degree at
    most ``deg/2``.  Past degree 31 (or when ``p^(deg/2)`` exceeds the
    trial-division budget) Rabin's criterion is used: ``f`` of degree ``d``
    is irreducible iff ``x^(p^d) = x mod f`` and
    ``gcd(f, x^(p^(d/r)) - x) = 1`` for every prime ``r | d``.
    """
    _require_prime(poly.p)
    if poly.degree < 1:
        raise PolynomialError("irreducibility is undefined for constants")
    if poly.degree == 1:
        return True
    d = poly.degree
    small = d <= TRIAL_DIVISION_MAX_DEGREE and poly.p ** (d // 2) <= TRIAL_DIVISION_BUDGET
    if poly.p == 2:
        f = to_bitmask(poly)
        return _gf2_trial_division(f) if small else _gf2_rabin(f)
    f = _monic(poly)
    return _trial_division(f) if small else _rabin(f)


# ---------------------------------------------------------------------------
# taxonomy
# ---------------------------------------------------------------------------


class Rank(str, enum.Enum):
    BASIC = "basic"
    ELEMENTAL = "elemental"
    OTHER = "other"


class Reducibility(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class PolyClass:
    monic: bool
    rank: Rank
    reducibility: Reducibility

    def as_dict(self) -> dict:
        return {
            "monic": self.monic,
            "rank": self.rank.value,
            "reducibility": self.reducibility.value,
        }


def classify(poly: GfPolynomial, q_context: int) -> PolyClass:
    """Monic / basic-elemental / irreducible classification.

    Basic means degree exactly ``q_context``; elemental means degree exactly
    ``q_context - 1``.  Reducibility is reported only for prime ``p`` and
    degree >= 2.
    """
    if q_context < 1:
        raise ValueError("q_context must be >= 1")
    if poly.degree == q_context:
        rank = Rank.BASIC
    elif poly.degree == q_context - 1:
        rank = Rank.ELEMENTAL
    else:
        rank = Rank.OTHER
    if is_prime(poly.p) and poly.degree >= 2:
        red = Reducibility.IRREDUCIBLE if is_irreducible(poly) else Reducibility.REDUCIBLE
    else:
        red = Reducibility.NOT_APPLICABLE
    return PolyClass(monic=poly.leading == 1, rank=rank, reducibility=red)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_polynomial(poly: GfPolynomial) -> str:
    """Descending-power sum, e.g. ``x^7 + x^6 + ... + x^1 + 1``.

    Every nonconstant term carries an explicit exponent (``x^1`` included);
    coefficients other than 1 are written ``c*x^k``.
    """
    if poly.is_zero():
        return "0"
    terms = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeffs[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(f"x^{k}")
        else:
            terms.append(f"{c}*x^{k}")
    return " + ".join(terms)


_TERM = re.compile(r"^(?:(\d+)\s*\*?\s*)?x(?:\s*\^\s*(\d+))?$|^(\d+)$")


def _parse_sum(body: str, p: int) -> GfPolynomial:
    coeffs: dict[int, int] = {}
    body = body.strip().rstrip(".")
    if not body:
        raise PolynomialError("empty polynomial")
    for raw in body.split("+"):
        term = raw.strip().replace(" ", "")
        m = _TERM.match(term)
        if not m:
            raise PolynomialError(f"cannot parse term {raw.strip()!r}")
        if m.group(3) is not None:
            k, c = 0, int(m.group(3))
        else:
            c = int(m.group(1)) if m.group(1) else 1
            k = int(m.group(2)) if m.group(2) else 1
        coeffs[k] = coeffs.get(k, 0) + c
    top = max(coeffs)
    return poly_normalize([coeffs.get(i, 0) for i in range(top + 1)], p)


def parse_polynomial(text: str) -> GfPolynomial:
    """Parse ``p=<m>; <sum form>`` or ``p=<m>; [c0, c1, ...]``."""
    head, sep, body = text.partition(";")
    m = re.fullmatch(r"\s*p\s*=\s*(\d+)\s*", head)
    if not sep or not m:
        raise PolynomialError("expected 'p=<modulus>; <polynomial>'")
    p = int(m.group(1))
    if p < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {p}")
    body = body.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise PolynomialError("unterminated coefficient list")
        inner = body[1:-1].strip()
        try:
            cs = [int(t) for t in inner.split(",")] if inner else []
        except ValueError as exc:
            raise PolynomialError(f"bad coefficient list: {body}") from exc
        return poly_normalize(cs, p)
    return _parse_sum(body, p)


def dump_polynomial(poly: GfPolynomial) -> str:
    return f"p={poly.p}; {format_polynomial(poly)}"


def monic_polynomials(p: int, degree: int) -> Iterable[GfPolynomial]:
    """All monic polynomials of exactly ``degree`` over the integers mod p."""
    for tail in product(range(p), repeat=degree):
        yield GfPolynomial(p, tuple(tail) + (1,))


def count_monic_irreducible(p: int, degree: int) -> int:
    return sum(is_irreducible(f) for f in monic_polynomials(p, degree))
