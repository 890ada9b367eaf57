"""Exact scalar fields.

Four kinds of field are supported, each an immutable, hashable object that
doubles as its own JSON-serialisable description:

* :class:`Rationals` -- elements are :class:`fractions.Fraction`.
* :class:`FiniteField` -- ``GF(p)`` and ``GF(p^k)``; elements are :class:`FFElement`.
* :class:`RationalFunctionField` -- ``Q(t)`` or ``GF(p)(t)`` with the derivation
  ``d/dt``; elements are :class:`RatFunc`.

Only rational function fields carry a non-zero derivation.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

import flint



class Field:
    """Common interface of the scalar fields."""

    characteristic: int = 0
    order: int | None = None
    has_derivation: bool = False
    variable: str | None = None

    zero: Any
    one: Any

    def __call__(self, value: Any) -> Any:
        raise NotImplementedError

    def derive(self, x: Any) -> Any:
        return self.zero

    def random(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def elements(self) -> Iterator[Any]:
        raise ValueError(f"{self} is infinite")

    def format(self, x: Any) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Any:
        from .parsing import parse_scalar

        return parse_scalar(self, text)

    def inverse(self, x: Any) -> Any:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return self.one / x

    def to_json(self) -> dict:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None


class Rationals(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} to a rational")

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 5))

    def format(self, x: Fraction) -> str:
        return str(x)

    def to_json(self) -> dict:
        return {"kind": "rationals"}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "QQ"


QQ = Rationals()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _pmod_poly(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    # remainder of a by monic b, integer coefficients mod p
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    r = [x % p for x in r[:db]]
    while r and not r[-1]:
        r.pop()
    return tuple(r)


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2 (k <= 8)."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p != 1:
        return False
    if k > 8:
        raise ValueError("irreducibility testing is limited to degree <= 8")
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _pmod_poly(modulus, tuple(low) + (1,), p):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k, ordering coefficients from the top."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class FiniteField(Field):
    """``GF(p^k)`` with generator ``g``; ``k == 1`` is the prime field."""

    variable = "g"

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | list[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        if k == 1:
            modulus = (0, 1)
        elif modulus is None:
            modulus = least_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {k} over GF({p})")
        self.modulus = tuple(modulus)
        self.characteristic = p
        self.order = p**k
        self.zero = FFElement(self, 0 if k == 1 else (0,) * k)
        self.one = FFElement(self, 1 if k == 1 else (1,) + (0,) * (k - 1))
        if k > 1:
            # g^(k+i) reduced, for i < k-1
            self._reduce = [
                _pmod_poly((0,) * (k + i) + (1,), self.modulus, p) for i in range(k - 1)
            ]

    # raw payload arithmetic: int for k == 1, length-k tuple otherwise
    def _add(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        if self.k == 1:
            return (-a) % p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p = self.p
        if self.k == 1:
            return (a * b) % p
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:k]
        for i in range(k - 1):
            c = prod[k + i] % p
            if c:
                for j, r in enumerate(self._reduce[i]):
                    out[j] += c * r
        return tuple(x % p for x in out)

    def _inv(self, a):
        if self.k == 1:
            if a == 0:
                raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
            return pow(a, self.p - 2, self.p)
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        result = self.one.c
        base = a
        e = self.order - 2
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    def __call__(self, value: Any) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field != self:
                raise TypeError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            v = value % self.p
            return FFElement(self, v if self.k == 1 else (v,) + (0,) * (self.k - 1))
        if isinstance(value, Fraction):
            return self(value.numerator) / self(value.denominator)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (tuple, list)) and self.k > 1:
            c = [int(x) % self.p for x in value] + [0] * self.k
            return FFElement(self, tuple(c[: self.k]))
        raise TypeError(f"cannot coerce {value!r} to {self}")

    @property
    def generator(self) -> "FFElement":
        if self.k == 1:
            raise ValueError("prime field has no polynomial generator")
        return FFElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self) -> Iterator["FFElement"]:
        if self.k == 1:
            for v in range(self.p):
                yield FFElement(self, v)
        else:
            for code in range(self.order):
                yield FFElement(self, tuple((code // self.p**i) % self.p for i in range(self.k)))

    def index(self, x: "FFElement") -> int:
        if self.k == 1:
            return x.c
        return sum(c * self.p**i for i, c in enumerate(x.c))

    def random(self, rng: random.Random) -> "FFElement":
        if self.k == 1:
            return FFElement(self, rng.randrange(self.p))
        return FFElement(self, tuple(rng.randrange(self.p) for _ in range(self.k)))

    def format(self, x: "FFElement") -> str:
        if self.k == 1:
            return str(x.c)
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = x.c[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "g" if i == 1 else f"g^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) or "0"

    def to_json(self) -> dict:
        if self.k == 1:
            return {"kind": "prime", "p": self.p}
        return {"kind": "galois", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"


def GF(p: int, k: int = 1, modulus=None) -> FiniteField:
    return FiniteField(p, k, modulus)


class FFElement:
    """Element of a finite field; immutable, compared structurally."""

    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, c):
        self.field = field
        self.c = c

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                return NotImplemented
            return other.c
        if isinstance(other, int):
            return self.field(other).c
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FFElement(self.field, self.field._add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return FFElement(f, f._add(self.c, f._neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return FFElement(f, f._add(o, f._neg(self.c)))

    def __neg__(self):
        return FFElement(self.field, self.field._neg(self.c))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FFElement(self.field, self.field._mul(self.c, o))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        return FFElement(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return FFElement(f, f._mul(self.c, f._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        f = self.field
        return FFElement(f, f._mul(o, f._inv(self.c)))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.c) if self.field.k == 1 else any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, FFElement):
            return self.c == other.c and self.field == other.field
        if isinstance(other, int):
            return self.c == self.field(other).c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.c))

    def __repr__(self) -> str:
        return self.field.format(self)

    __str__ = __repr__


class RationalFunctionField(Field):
    """``base(t)`` for ``base`` = QQ or a prime field, with derivation d/dt.

    Numerator and denominator are flint polynomials (``fmpq_poly`` over QQ,
    ``nmod_poly`` over GF(p)) kept coprime with a monic denominator, so equal
    functions have equal representations.
    """

    has_derivation = True
    variable = "t"

    def __init__(self, base: Field):
        if not (isinstance(base, Rationals) or (isinstance(base, FiniteField) and base.k == 1)):
            raise ValueError("rational functions are supported over QQ or GF(p) only")
        self.base = base
        self.characteristic = base.characteristic
        if isinstance(base, Rationals):
            self._poly = lambda cs: flint.fmpq_poly([flint.fmpq(c.numerator, c.denominator) for c in cs])
            self._coeff = lambda c: Fraction(int(c.p), int(c.q))
        else:
            p = base.p
            self._poly = lambda cs: flint.nmod_poly([c.c for c in cs], p)
            self._coeff = lambda c: base(int(c))
        self._one_poly = self._poly([base.one])
        self._zero_poly = self._poly([])
        self.zero = RatFunc(self, self._zero_poly, self._one_poly)
        self.one = RatFunc(self, self._one_poly, self._one_poly)

    @property
    def t(self) -> "RatFunc":
        return RatFunc(self, self._poly([self.base.zero, self.base.one]), self._one_poly)

    def make(self, num, den=None) -> "RatFunc":
        b = self.base
        n = self._poly([b(c) for c in num])
        d = self._poly([b(c) for c in den]) if den is not None else self._one_poly
        return self._normalize(n, d)

    def _normalize(self, n, d) -> "RatFunc":
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            return self.zero
        if d.degree() > 0:
            g = n.gcd(d)
            if g.degree() > 0:
                n, d = n // g, d // g
        lead = d[d.degree()]
        if lead != 1:
            inv = 1 / lead
            n, d = n * inv, d * inv
        return RatFunc(self, n, d)

    def __call__(self, value: Any) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.field != self:
                raise TypeError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction, FFElement)):
            c = self.base(value)
            return RatFunc(self, self._poly([c]), self._one_poly)
        raise TypeError(f"cannot coerce {value!r} to {self}")

    def derive(self, x: "RatFunc") -> "RatFunc":
        n, d = x._n, x._d
        if d.degree() == 0:
            return RatFunc(self, n.derivative(), d)
        return self._normalize(n.derivative() * d - n * d.derivative(), d * d)

    def random(self, rng: random.Random) -> "RatFunc":
        b = self.base
        num = [b.random(rng) for _ in range(rng.randint(0, 3))]
        if rng.random() < 0.5:
            den = [b.random(rng) for _ in range(rng.randint(1, 2))] + [b.one]
        else:
            den = [b.one]
        return self.make(num, den)

    def coefficients(self, f) -> tuple:
        return tuple(self._coeff(c) for c in f.coeffs())

    def format(self, x: "RatFunc") -> str:
        num = _format_poly(self.base, x.num, "t")
        if x._d.degree() == 0:
            return num
        return f"({num})/({_format_poly(self.base, x.den, 't')})"

    def to_json(self) -> dict:
        return {"kind": "ratfunc", "base": self.base.to_json()}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalFunctionField) and self.base == other.base

    def __hash__(self) -> int:
        return hash(("ratfunc", self.base))

    def __repr__(self) -> str:
        return f"{self.base!r}(t)"


def _format_poly(base: Field, coeffs, var: str) -> str:
    if not coeffs:
        return "0"
    out = ""
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        s = base.format(c)
        negative = s.startswith("-")
        if negative:
            s = s[1:]
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono:
            term = mono if s == "1" else f"{s}*{mono}"
        else:
            term = s
        if out:
            out += ("-" if negative else "+") + term
        else:
            out = ("-" if negative else "") + term
    return out


class RatFunc:
    """Reduced quotient ``num/den`` with monic ``den``."""

    __slots__ = ("field", "_n", "_d")

    def __init__(self, field: RationalFunctionField, n, d):
        self.field = field
        self._n = n
        self._d = d

    @property
    def num(self) -> tuple:
        return self.field.coefficients(self._n)

    @property
    def den(self) -> tuple:
        return self.field.coefficients(self._d)

    def _other(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction, FFElement)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        F = self.field
        if self._d == o._d:
            if self._d.degree() == 0:
                return RatFunc(F, self._n + o._n, self._d)
            return F._normalize(self._n + o._n, self._d)
        return F._normalize(self._n * o._d + o._n * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self._n, self._d)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        F = self.field
        if self._n.is_zero() or o._n.is_zero():
            return F.zero
        if self._d.degree() == 0 and o._d.degree() == 0:
            return RatFunc(F, self._n * o._n, self._d)
        return F._normalize(self._n * o._n, self._d * o._d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return self.field._normalize(self._d, self._n)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return not self._n.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.field == other.field and self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction, FFElement)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return self.field.format(self)

    __str__ = __repr__


def field_from_json(obj: dict) -> Field:
    kind = obj.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return FiniteField(int(obj["p"]))
    if kind == "galois":
        return FiniteField(int(obj["p"]), int(obj["k"]), obj.get("modulus"))
    if kind == "ratfunc":
        return RationalFunctionField(field_from_json(obj["base"]))
    raise ValueError(f"unknown field kind {kind!r}")


def parse_field(text: str) -> Field:
    """Parse a short field name: ``Q``, ``GF(5)``, ``GF(3^2)``, ``Q(t)``, ``GF(5)(t)``."""
    s = text.replace(" ", "")
    if s.endswith("(t)"):
        return RationalFunctionField(parse_field(s[:-3]))
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        inner = s[3:-1]
        if "^" in inner:
            p, k = inner.split("^")
            return FiniteField(int(p), int(k))
        return FiniteField(int(inner))
    raise ValueError(f"unrecognised field {text!r}")


def derive_scalar(field: Field, x: Any) -> Any:
    """Apply the field's built-in derivation (zero unless ``field`` is ``k(t)``)."""
    return field.derive(x)
