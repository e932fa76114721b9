"""Finite fields GF(p^r) in a polynomial basis.

An element of GF(p^r) = F_p[Y]/(f) is stored as the integer encoding
``c_0 + c_1 p + ... + c_{r-1} p^{r-1}`` of its residue coefficients, so
0 and 1 encode themselves and enumeration order is encoding order.
Scalar arithmetic goes through log/exp tables built on first use; the
``*_arr`` methods apply the same operations to numpy arrays of encodings.

Also here: univariate polynomials over GF(q) and truncated power series,
which is all the algebra the curve and module code needs.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FIELD_CAP = 1 << 16


class FieldError(ValueError):
    pass


class NonPrime(FieldError):
    pass


class TooLarge(FieldError):
    pass


class SpecMismatch(FieldError):
    pass


class NotRational(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
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
class PrimePower:
    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(f"{self.p} is not prime")
        if self.r < 1:
            raise FieldError("exponent must be >= 1")
        if self.p**self.r > FIELD_CAP:
            raise TooLarge(f"{self.p}^{self.r} exceeds the field size cap {FIELD_CAP}")

    @property
    def q(self) -> int:
        return self.p**self.r

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        """Factor a prime power by trial division."""
        if q > FIELD_CAP:
            raise TooLarge(f"{q} exceeds the field size cap {FIELD_CAP}")
        if q < 2:
            raise NonPrime(f"{q} is not a prime power")
        p = prime_factors(q)
        if len(p) != 1:
            raise NonPrime(f"{q} is not a prime power")
        p = p[0]
        r, m = 0, q
        while m > 1:
            m //= p
            r += 1
        return cls(p, r)


# -- polynomials over F_p as little-endian int lists ------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _ptrim(list(a))
    df = len(f) - 1
    lead_inv = pow(f[-1], p - 2, p) if p > 2 else 1
    while len(a) - 1 >= df:
        c = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _ptrim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _ptrim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    f = _ptrim(list(f))
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    xp = [0, 1]
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, [0, 1], p), p)) != 1:
            return False
    return True


def _digits(v: int, p: int, r: int) -> tuple[int, ...]:
    out = []
    for _ in range(r):
        v, c = divmod(v, p)
        out.append(c)
    return tuple(out)


def _encode(coeffs: Iterable[int], p: int) -> int:
    v = 0
    for c in reversed(list(coeffs)):
        v = v * p + c
    return v


# -- fields -----------------------------------------------------------------


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^r) as F_p[Y]/(modulus); ``modulus`` is little-endian and monic."""

    p: int
    r: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        PrimePower(self.p, self.r)
        m = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.r + 1 or m[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {self.r}")
        if any(not 0 <= c < self.p for c in m):
            raise FieldError("modulus coefficients must lie in [0, p)")
        if not is_irreducible(m, self.p):
            raise FieldError(f"modulus {m} is reducible over F_{self.p}")

    def __repr__(self):
        return f"GF({self.p}^{self.r})"

    @property
    def q(self) -> int:
        return self.p**self.r

    @property
    def prime_power(self) -> PrimePower:
        return PrimePower(self.p, self.r)

    # -- serialization

    def serialize(self) -> str:
        return " ".join(str(x) for x in (self.p, self.r) + self.modulus)

    @classmethod
    def parse(cls, line: str) -> "FieldSpec":
        nums = [int(t) for t in line.split()]
        return cls(nums[0], nums[1], tuple(nums[2:]))

    # -- elements

    def __call__(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.spec != self:
                raise SpecMismatch(f"{v.spec} vs {self}")
            return v
        return FieldElement(self, int(v) % self.p)

    def element(self, encoding: int) -> "FieldElement":
        if not 0 <= encoding < self.q:
            raise FieldError(f"encoding {encoding} out of range for {self}")
        return FieldElement(self, encoding)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        return self.element(self.encode(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def generator(self) -> "FieldElement":
        """Residue class of Y (zero when r == 1, since the modulus is Y)."""
        return self.from_coeffs(_pmod([0, 1], self.modulus, self.p) + [0] * self.r)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def basis(self) -> list[int]:
        """Encodings of the F_p-basis 1, Y, ..., Y^(r-1)."""
        return [self.p**i for i in range(self.r)]

    def digits(self, v: int) -> tuple[int, ...]:
        return _digits(v, self.p, self.r)

    def encode(self, coeffs: Sequence[int]) -> int:
        coeffs = list(coeffs)[: self.r]
        return _encode([c % self.p for c in coeffs], self.p)

    # -- tables

    @functools.cached_property
    def _tables(self):
        q, p, r = self.q, self.p, self.r
        if q == 2:
            exp = [1, 1]
            log = [0, 0]
        else:
            mulmod = lambda a, b: self.encode(  # noqa: E731
                _pmod(_pmul(self.digits(a), self.digits(b), p), self.modulus, p) + [0] * r
            )
            factors = prime_factors(q - 1)
            g = None
            for cand in range(2, q):
                if all(self._slow_pow(cand, (q - 1) // f, mulmod) != 1 for f in factors):
                    g = cand
                    break
            exp = [1] * (2 * (q - 1))
            for i in range(1, 2 * (q - 1)):
                exp[i] = mulmod(exp[i - 1], g) if i < q - 1 else exp[i - (q - 1)]
            log = [0] * q
            for i in range(q - 1):
                log[exp[i]] = i
        digit_tab = np.array([self.digits(v) for v in range(q)], dtype=np.int64).reshape(q, r)
        neg = [self.encode([(-c) % p for c in self.digits(v)]) for v in range(q)]
        return {
            "exp": exp,
            "log": log,
            "exp_np": np.array(exp, dtype=np.int64),
            "log_np": np.array(log, dtype=np.int64),
            "digits": digit_tab,
            "place": p ** np.arange(r, dtype=np.int64),
            "neg": neg,
            "neg_np": np.array(neg, dtype=np.int64),
        }

    @staticmethod
    def _slow_pow(a, e, mulmod):
        result = 1
        while e:
            if e & 1:
                result = mulmod(result, a)
            a = mulmod(a, a)
            e >>= 1
        return result

    @functools.cached_property
    def _add_table(self):
        if self.q > 1024:
            return None
        d = self._tables["digits"]
        tab = ((d[:, None, :] + d[None, :, :]) % self.p) @ self._tables["place"]
        return tab.tolist()

    @functools.cached_property
    def reduction_matrix(self) -> np.ndarray:
        """Row s holds the coefficients of Y^s mod f, for s < 2r - 1."""
        rows = []
        for s in range(2 * self.r - 1):
            c = _pmod([0] * s + [1], self.modulus, self.p)
            rows.append(c + [0] * (self.r - len(c)))
        return np.array(rows, dtype=np.int64)

    # -- scalar arithmetic on encodings

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        tab = self._add_table
        if tab is not None:
            return tab[a][b]
        p, out, place = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def neg(self, a: int) -> int:
        return self._tables["neg"][a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._tables
        return t["exp"][t["log"][a] + t["log"][b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of 0 in {self}")
        t = self._tables
        return t["exp"][(self.q - 1 - t["log"][a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        t = self._tables
        return t["exp"][(t["log"][a] * n) % (self.q - 1)]

    # -- vectorized arithmetic on arrays of encodings

    def digits_arr(self, a) -> np.ndarray:
        return self._tables["digits"][np.asarray(a, dtype=np.int64)]

    def encode_arr(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._tables["place"]

    def add_arr(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        d = self._tables["digits"]
        return self.encode_arr(d[a] + d[b])

    def neg_arr(self, a) -> np.ndarray:
        return self._tables["neg_np"][np.asarray(a, dtype=np.int64)]

    def sub_arr(self, a, b) -> np.ndarray:
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        t = self._tables
        out = t["exp_np"][t["log_np"][a] + t["log_np"][b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def sum_arr(self, a, axis: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        axis = axis % a.ndim
        return self.encode_arr(self.digits_arr(a).sum(axis=axis))


@functools.cache
def build_field(p: int, r: int) -> FieldSpec:
    """GF(p^r) with the first irreducible modulus in encoding order.

    Candidates ``Y^r + c_{r-1} Y^{r-1} + ... + c_0`` are scanned by the
    integer ``sum(c_i p^i)``; for r = 1 this always yields Y.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if r < 1:
        raise FieldError("exponent must be >= 1")
    if p**r > FIELD_CAP:
        raise TooLarge(f"{p}^{r} exceeds the field size cap {FIELD_CAP}")
    for e in range(p**r):
        f = _digits(e, p, r) + (1,)
        if is_irreducible(f, p):
            return FieldSpec(p, r, f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_of_order(q: int) -> FieldSpec:
    pp = PrimePower.from_q(q)
    return build_field(pp.p, pp.r)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.digits(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{other.spec} vs {self.spec}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.spec.p
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(self.spec, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.spec.mul(self.value, self.spec.inv(o)))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.spec.pow(self.value, n))

    def inv(self) -> "FieldElement":
        return self._wrap(self.spec.inv(self.value))

    def frobenius(self) -> "FieldElement":
        return self ** self.spec.p

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.spec!r}({self.value})"


def enumerate_elements(spec: FieldSpec) -> list[FieldElement]:
    return spec.elements()


# -- extensions -------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    """Ring embedding GF(q) -> GF(q^m) given by its table on encodings."""

    source: FieldSpec
    target: FieldSpec
    image: tuple[int, ...]

    def __call__(self, a) -> FieldElement:
        v = a.value if isinstance(a, FieldElement) else int(a)
        return FieldElement(self.target, self.image[v])

    def map_int(self, v: int) -> int:
        return self.image[v]

    def image_set(self) -> set[int]:
        return set(self.image)


def build_extension(spec: FieldSpec, m: int) -> tuple[FieldSpec, Embedding]:
    """GF(q^m) and an embedding of ``spec`` into it.

    Moduli are picked independently for each degree, so the embedding is
    found by locating a root of ``spec.modulus`` in the larger field and
    checked on every pair of elements.
    """
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if spec.q**m > FIELD_CAP:
        raise TooLarge(f"{spec.q}^{m} exceeds the field size cap {FIELD_CAP}")
    ext = build_field(spec.p, spec.r * m)

    def horner(alpha: int) -> int:
        acc = 0
        for c in reversed(spec.modulus):
            acc = ext.add(ext.mul(acc, alpha), c)
        return acc

    alpha = next(a for a in range(ext.q) if horner(a) == 0)
    powers = [1]
    for _ in range(spec.r - 1):
        powers.append(ext.mul(powers[-1], alpha))
    image = []
    for v in range(spec.q):
        acc = 0
        for c, pw in zip(spec.digits(v), powers):
            if c:
                acc = ext.add(acc, ext.mul(c, pw))
        image.append(acc)
    emb = Embedding(spec, ext, tuple(image))

    if image[0] != 0 or image[1] != 1 or len(set(image)) != spec.q:
        raise FieldError("embedding is not injective or does not fix 0, 1")
    for a in range(spec.q):
        for b in range(spec.q):
            if image[spec.add(a, b)] != ext.add(image[a], image[b]):
                raise FieldError(f"embedding not additive at ({a}, {b})")
            if image[spec.mul(a, b)] != ext.mul(image[a], image[b]):
                raise FieldError(f"embedding not multiplicative at ({a}, {b})")
    return ext, emb


# -- univariate polynomials -------------------------------------------------


class Poly:
    """Polynomial over GF(q); coefficients are encodings, lowest degree first."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.spec = spec
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, spec, n: int, c: int = 1) -> "Poly":
        return cls(spec, [0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, Poly) and self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __repr__(self):
        return f"Poly({self.spec!r}, {list(self.coeffs)})"

    def _check(self, other: "Poly"):
        if other.spec != self.spec:
            raise SpecMismatch(f"{other.spec} vs {self.spec}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(self.spec, [self.spec.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> "Poly":
        return Poly(self.spec, [self.spec.neg(x) for x in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.spec
        if not isinstance(other, Poly):
            c = int(other)
            return Poly(F, [F.mul(c, x) for x in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        F = self.spec
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quo = [0] * max(len(rem) - dq, 0)
        while len(rem) - 1 >= dq and rem:
            c = F.mul(rem[-1], lead_inv)
            shift = len(rem) - 1 - dq
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(c, b))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(F, quo), Poly(F, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def __call__(self, x: int) -> int:
        F = self.spec
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, int(x)), c)
        return acc

    def shift(self, a: int) -> "Poly":
        """f(x + a)."""
        F = self.spec
        lin = Poly(F, [int(a), 1])
        acc = Poly(F)
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly(F, [c])
        return acc


# -- truncated power series -------------------------------------------------


class PowerSeries:
    """Power series in one variable over GF(q), truncated mod t^precision."""

    __slots__ = ("spec", "precision", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Iterable, precision: int):
        if precision < 0:
            raise ValueError("precision must be >= 0")
        c = [int(x) for x in coeffs][:precision]
        c += [0] * (precision - len(c))
        self.spec = spec
        self.precision = precision
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, spec, n: int, precision: int, c: int = 1) -> "PowerSeries":
        coeffs = [0] * precision
        if n < precision:
            coeffs[n] = c
        return cls(spec, coeffs, precision)

    @classmethod
    def constant(cls, spec, c: int, precision: int) -> "PowerSeries":
        return cls.monomial(spec, 0, precision, c)

    def __eq__(self, other):
        return (
            isinstance(other, PowerSeries)
            and self.spec == other.spec
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"PowerSeries({' + '.join(terms) or '0'} + O(t^{self.precision}))"

    def _prec(self, other: "PowerSeries") -> int:
        if other.spec != self.spec:
            raise SpecMismatch(f"{other.spec} vs {self.spec}")
        return min(self.precision, other.precision)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = self._prec(other)
        F = self.spec
        return PowerSeries(F, [F.add(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(self.spec, [self.spec.neg(a) for a in self.coeffs], self.precision)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other) -> "PowerSeries":
        F = self.spec
        if not isinstance(other, PowerSeries):
            c = int(other)
            return PowerSeries(F, [F.mul(c, a) for a in self.coeffs], self.precision)
        n = self._prec(other)
        out = [0] * n
        nz = [(j, b) for j, b in enumerate(other.coeffs[:n]) if b]
        for i, a in enumerate(self.coeffs[:n]):
            if a:
                for j, b in nz:
                    if i + j >= n:
                        break
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return PowerSeries(F, out, n)

    def __pow__(self, e: int) -> "PowerSeries":
        result = PowerSeries.constant(self.spec, 1, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius_power(self, q: int) -> "PowerSeries":
        """self**q for q a power of the characteristic: sum c_i^q t^(i q)."""
        F = self.spec
        out = [0] * self.precision
        for i, c in enumerate(self.coeffs):
            if i * q >= self.precision:
                break
            out[i * q] = F.pow(c, q)
        return PowerSeries(F, out, self.precision)

    def shift(self, n: int) -> "PowerSeries":
        """Multiply by t^n."""
        return PowerSeries(self.spec, [0] * n + list(self.coeffs), self.precision)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if none is visible."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def series_solve_artin_schreier(
    spec: FieldSpec, s0, N: int, sign: int = 1, q: int | None = None
) -> PowerSeries:
    """The series s(t) with s(0) = s0 and s^q - s = sign * t^(q+1) mod t^N.

    Iterates s <- s^q - sign * t^(q+1). Since s -> s^q multiplies the
    t-adic agreement by q, the iteration reaches a fixed point.
    ``sign=-1`` gives the chart equation v - v^q = w^(q+1).
    """
    q = spec.q if q is None else q
    if N < 1:
        raise ValueError("precision must be >= 1")
    s0 = int(s0.value if isinstance(s0, FieldElement) else s0)
    if spec.pow(s0, q) != s0:
        raise NotRational(f"constant term {s0} is not fixed by x -> x^{q}")
    rhs = PowerSeries.monomial(spec, q + 1, N, 1 if sign > 0 else spec.neg(1))
    s = PowerSeries.constant(spec, s0, N)
    for _ in range(N + 1):
        nxt = s.frobenius_power(q) - rhs
        if nxt == s:
            return s
        s = nxt
    raise AssertionError("Artin-Schreier iteration did not converge")  # unreachable
