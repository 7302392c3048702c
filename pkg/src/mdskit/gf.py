"""Arithmetic in GF(p^r) defined by an explicit irreducible polynomial.

An element with coefficient vector (c_0, ..., c_{r-1}) over GF(p) is packed
into the integer sum(c_i * p**i); for p = 2 this is plain bit packing.
Fields with at most 2**16 elements build exponent/log tables once, after
which multiplication, inversion and discrete logarithm are table lookups.
Larger fields fall back to direct polynomial arithmetic and a
baby-step/giant-step logarithm.

Element text uses the grammar ``0 | 1 | a^<k> | 0x<hex>`` where ``a`` is the
smallest primitive element of the field and the hex form (characteristic two
only) gives the packed coefficient vector.  Field text reads
``GF(<p>^<r>;<poly>)`` with the defining polynomial either as packed hex
(characteristic two) or as comma-separated coefficients, constant term first.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    ParseError,
)

_TABLE_LIMIT = 1 << 16

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant; n must be odd, composite and > 1.
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        f = lambda x: (x * x + c) % n
        x, y, d = 2, 2, 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to split {n}")


def _prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
    out: set[int] = set()
    stack = [n]
    while stack:
        m = stack.pop()
        if m < 2:
            continue
        if _is_prime(m):
            out.add(m)
            continue
        for sp in (2, 3, 5, 7, 11, 13):
            if m % sp == 0:
                out.add(sp)
                while m % sp == 0:
                    m //= sp
                stack.append(m)
                break
        else:
            d = _pollard_rho(m)
            stack.extend((d, m // d))
    return sorted(out)


# Dense polynomials over GF(p): lists of ints in [0, p), constant term first.


def _pstrip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pstrip(out)


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    r = list(a)
    df = len(f) - 1
    lead_inv = pow(f[-1], p - 2, p)
    while len(r) - 1 >= df and r:
        c = (r[-1] * lead_inv) % p
        shift = len(r) - 1 - df
        for j, fj in enumerate(f):
            r[shift + j] = (r[shift + j] - c * fj) % p
        _pstrip(r)
    return r


def _ppowmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result, b = [1], _pmod(base, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, b, p), f, p)
        b = _pmod(_pmul(b, b, p), f, p)
        e >>= 1
    return result


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    # No irreducible factor of degree <= r/2 iff gcd(x^(p^i) - x, f) = 1.
    r = len(poly) - 1
    h = [0, 1]
    for _ in range(r // 2):
        h = _ppowmod(h, p, poly, p)
        diff = list(h) + [0] * (2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(poly, _pstrip(diff), p)
        if len(g) > 1:
            return False
    return True


_ELEMENT_RE = re.compile(r"^(0|1|a\^(\d+)|0x([0-9a-fA-F]+))$")
_FIELD_RE = re.compile(r"^GF\((\d+)\^(\d+);([^)]+)\)$")


class Field:
    """A finite field GF(p^r) with packed-integer element representation."""

    def __init__(self, p: int, r: int, poly: Union[int, Sequence[int]]):
        if not _is_prime(p):
            raise NotPrime(f"characteristic {p} is not prime")
        if r < 1:
            raise ValueError(f"extension degree must be >= 1, got {r}")
        coeffs = self._normalize_poly(p, r, poly)
        if not _is_irreducible(coeffs, p):
            raise NotIrreducible(
                f"defining polynomial {coeffs} is reducible over GF({p})"
            )
        self.p = p
        self.r = r
        self.q = p**r
        self.poly = tuple(coeffs)
        # Packed copy including the leading coefficient, used for reduction.
        self._poly_packed = sum(c * p**i for i, c in enumerate(coeffs))
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._gen: int | None = None
        self._baby: dict[int, int] | None = None
        self._giant: int | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    @staticmethod
    def _normalize_poly(p: int, r: int, poly: Union[int, Sequence[int]]) -> list[int]:
        if isinstance(poly, int):
            if poly < 0:
                raise ValueError("packed polynomial must be nonnegative")
            coeffs = []
            v = poly
            while v:
                v, c = divmod(v, p)
                coeffs.append(c)
        else:
            coeffs = list(poly)
        if len(coeffs) != r + 1:
            raise ValueError(
                f"defining polynomial must have degree {r}, got degree {len(coeffs) - 1}"
            )
        if any(not (0 <= c < p) for c in coeffs):
            raise ValueError(f"polynomial coefficients must lie in [0, {p})")
        if coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        return coeffs

    # -- packed-integer kernels ------------------------------------------

    def add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p, out, mult = self.p, 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * mult
            mult *= p
        return out

    def neg_raw(self, a: int) -> int:
        if self.p == 2:
            return a
        p, out, mult = self.p, 0, 1
        while a:
            a, c = divmod(a, p)
            out += (-c % p) * mult
            mult *= p
        return out

    def sub_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add_raw(a, self.neg_raw(b))

    def _mul_nolookup(self, a: int, b: int) -> int:
        """Table-free product; the bootstrap path and the test oracle."""
        if a == 0 or b == 0:
            return 0
        p, r = self.p, self.r
        if p == 2:
            acc = 0
            while b:
                if b & 1:
                    acc ^= a
                a <<= 1
                b >>= 1
            top = acc.bit_length() - 1
            while top >= r:
                acc ^= self._poly_packed << (top - r)
                top = acc.bit_length() - 1
            return acc
        da = self._digits(a)
        db = self._digits(b)
        conv = [0] * (2 * r - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    conv[i + j] = (conv[i + j] + ca * cb) % p
        for d in range(2 * r - 2, r - 1, -1):
            c = conv[d]
            if c:
                conv[d] = 0
                for j in range(r):
                    conv[d - r + j] = (conv[d - r + j] - c * self.poly[j]) % p
        out, mult = 0, 1
        for c in conv[:r]:
            out += c * mult
            mult *= p
        return out

    def mul_raw(self, a: int, b: int) -> int:
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_nolookup(a, b)

    def inv_raw(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("zero has no multiplicative inverse")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._pow_nolookup(a, self.q - 2)

    def _pow_nolookup(self, a: int, e: int) -> int:
        acc, base = 1, a
        while e:
            if e & 1:
                acc = self._mul_nolookup(acc, base)
            base = self._mul_nolookup(base, base)
            e >>= 1
        return acc

    def pow_raw(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero has no negative powers")
            return 0
        n1 = self.q - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % n1]
        if e < 0:
            a, e = self.inv_raw(a), -e
        return self._pow_nolookup(a, e % n1 or n1)

    def dlog_raw(self, a: int) -> int:
        """Exponent k with generator^k = a; a must be nonzero."""
        if a == 0:
            raise DivisionByZero("zero has no discrete logarithm")
        if self._log is not None:
            return self._log[a]
        g = self.primitive_element().packed
        n1 = self.q - 1
        m = math.isqrt(n1) + 1
        if self._baby is None:
            baby, acc = {}, 1
            for j in range(m):
                baby.setdefault(acc, j)
                acc = self._mul_nolookup(acc, g)
            self._baby = baby
            self._giant = self.inv_raw(acc)  # g^(-m)
        gamma = a
        for i in range(m + 1):
            j = self._baby.get(gamma)
            if j is not None:
                return (i * m + j) % n1
            gamma = self._mul_nolookup(gamma, self._giant)
        raise ArithmeticError("generator failed to reach element")  # pragma: no cover

    # -- setup ------------------------------------------------------------

    def _digits(self, v: int) -> list[int]:
        if self.p == 2:
            return [(v >> i) & 1 for i in range(self.r)]
        out = []
        for _ in range(self.r):
            v, c = divmod(v, self.p)
            out.append(c)
        return out

    def _find_generator(self) -> int:
        n1 = self.q - 1
        checks = [n1 // f for f in _prime_factors(n1)]
        for v in range(1, self.q):
            if all(self._pow_nolookup(v, e) != 1 for e in checks):
                return v
        raise ArithmeticError("no generator found")  # pragma: no cover

    def _build_tables(self) -> None:
        g = self._find_generator()
        self._gen = g
        n1 = self.q - 1
        exp = [1] * n1
        for i in range(1, n1):
            exp[i] = self._mul_nolookup(exp[i - 1], g)
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    # -- element API -------------------------------------------------------

    def element(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        """Wrap a packed integer, coefficient sequence or element."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"packed value {value} outside [0, {self.q})")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) > self.r or any(not (0 <= c < self.p) for c in coeffs):
            raise ValueError("coefficient vector does not fit the field")
        return FieldElement(self, sum(c * self.p**i for i, c in enumerate(coeffs)))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(self, v)

    def primitive_element(self) -> "FieldElement":
        """The generator with the smallest packed representation."""
        if self._gen is None:
            self._gen = self._find_generator()
        return FieldElement(self, self._gen)

    # -- text --------------------------------------------------------------

    def parse_element(self, text: str) -> "FieldElement":
        m = _ELEMENT_RE.match(text.strip())
        if not m:
            raise ParseError(f"malformed element text {text!r}")
        if m.group(1) == "0":
            return self.zero
        if m.group(1) == "1":
            return self.one
        if m.group(2) is not None:
            k = int(m.group(2))
            if k > self.q - 2:
                raise ParseError(
                    f"exponent {k} out of range 0..{self.q - 2} for {self}"
                )
            return FieldElement(self, self.pow_raw(self.primitive_element().packed, k))
        if self.p != 2:
            raise ParseError("hex element text requires characteristic two")
        v = int(m.group(3), 16)
        if v >= self.q:
            raise ParseError(f"packed value 0x{v:x} out of range for {self}")
        return FieldElement(self, v)

    def format_element(self, el: "FieldElement", style: str = "power") -> str:
        if el.field != self:
            raise FieldMismatch("element belongs to a different field")
        if style == "hex":
            if self.p != 2:
                raise ValueError("hex element text requires characteristic two")
            return f"0x{el.packed:x}"
        if style != "power":
            raise ValueError(f"unknown element style {style!r}")
        if el.packed == 0:
            return "0"
        k = self.dlog_raw(el.packed)
        return "1" if k == 0 else f"a^{k}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        m = _FIELD_RE.match(text.strip())
        if not m:
            raise ParseError(f"malformed field text {text!r}")
        p, r, spec = int(m.group(1)), int(m.group(2)), m.group(3).strip()
        if spec.lower().startswith("0x"):
            if p != 2:
                raise ParseError("hex polynomial text requires characteristic two")
            try:
                poly: Union[int, list[int]] = int(spec, 16)
            except ValueError as exc:
                raise ParseError(f"malformed polynomial text {spec!r}") from exc
        else:
            try:
                poly = [int(t.strip()) for t in spec.split(",")]
            except ValueError as exc:
                raise ParseError(f"malformed polynomial text {spec!r}") from exc
        try:
            return cls(p, r, poly)
        except (NotPrime, NotIrreducible):
            raise
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def __str__(self) -> str:
        if self.p == 2:
            return f"GF(2^{self.r};0x{self._poly_packed:x})"
        return f"GF({self.p}^{self.r};{','.join(str(c) for c in self.poly)})"

    def __repr__(self) -> str:
        return str(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.r, self.poly) == (other.p, other.r, other.poly)

    def __hash__(self) -> int:
        return hash((self.p, self.r, self.poly))


class FieldElement:
    """A single field element; arithmetic stays inside the owning field."""

    def __init__(self, field: Field, packed: int):
        self.field = field
        self.packed = packed

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(
                    f"cannot combine elements of {self.field} and {other.field}"
                )
            return other.packed
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_raw(self.packed, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(self.packed, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_raw(v, self.packed))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(self.packed, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(self.packed, self.field.inv_raw(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_raw(v, self.field.inv_raw(self.packed)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_raw(self.packed))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_raw(self.packed, e))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_raw(self.packed))

    def dlog(self) -> int:
        return self.field.dlog_raw(self.packed)

    def multiplicative_order(self) -> int:
        """Order of this element in the multiplicative group."""
        if self.packed == 0:
            raise DivisionByZero("zero has no multiplicative order")
        return (self.field.q - 1) // math.gcd(self.field.q - 1, self.dlog())

    def __bool__(self) -> bool:
        return self.packed != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.packed == other.packed
        if isinstance(other, int) and other in (0, 1):
            return self.packed == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.packed))

    def __repr__(self) -> str:
        return self.field.format_element(self)
