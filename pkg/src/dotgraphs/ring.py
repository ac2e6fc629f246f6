"""Exact arithmetic in Z_n and GF(p^d).

Elements are plain hashable values in canonical form: an ``int`` in
``[0, n)`` for ``Z_n`` and a tuple of ``d`` coefficients in ``[0, p)``
(ascending degree) for ``GF(p^d)``.  Rings are immutable; the dense
operation tables used by the graph builders are computed lazily.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Union

import numpy as np

Element = Union[int, tuple]

__all__ = [
    "Element",
    "Factorization",
    "FiniteField",
    "ModularRing",
    "NoInverse",
    "RingSpec",
    "add",
    "factorize",
    "find_irreducible",
    "inverse",
    "is_irreducible",
    "is_prime",
    "make_ring",
    "mul",
    "neg",
    "parse_ring",
    "sqrt_of_minus_one",
    "totient",
    "units",
    "zero_divisors",
]


class NoInverse(ArithmeticError):
    """Raised when inverting a non-unit."""


# ---------------------------------------------------------------------------
# integers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Prime factorization ``n = prod(p**k for p, k in pairs)``."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def value(self) -> int:
        return prod(p**k for p, k in self.pairs)


def factorize(n: int) -> Factorization:
    """Trial division; fine for n up to about 10**12."""
    if n < 2:
        raise ValueError(f"factorize needs n >= 2, got {n}")
    pairs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            pairs.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return Factorization(tuple(pairs))


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n).pairs == ((n, 1),)


def totient(n: int) -> int:
    """Euler's phi from the product formula over the factorization."""
    return prod((p - 1) * p ** (k - 1) for p, k in factorize(n).pairs)


def sqrt_of_minus_one(n: int) -> list[int]:
    """All units ``a`` of Z_n with ``a*a == n - 1 (mod n)``, ascending.

    Exhaustive search; the closed-form count lives in
    :func:`dotgraphs.theorems.sqrt_minus_one_count` and is checked
    against this in the tests.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return [a for a in range(1, n) if gcd(a, n) == 1 and (a * a) % n == n - 1]


# ---------------------------------------------------------------------------
# polynomials over Z_p (coefficient tuples, ascending degree)
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic-or-not polynomial ``m``."""
    a = _trim([x % p for x in a])
    dm = len(m) - 1
    lead_inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        f = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - f * mi) % p
        _trim(a)
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a polynomial over Z_p of degree >= 1.

    Degree <= 3: no root in Z_p.  Higher degree: no monic divisor of
    degree 1..d//2 (exhaustive).
    """
    d = len(modulus) - 1
    if d < 1 or modulus[-1] % p == 0:
        raise ValueError(f"not a polynomial of degree >= 1: {modulus}")
    if d == 1:
        return True
    if d <= 3:
        return all(sum(c * pow(x, i, p) for i, c in enumerate(modulus)) % p for x in range(p))
    for e in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=e):
            if not _poly_mod(list(modulus), (*low, 1), p):
                return False
    return True


def find_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``d`` over Z_p.

    Candidates are ordered lexicographically on their low coefficients
    ``(c_0, ..., c_{d-1})``.
    """
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        cand = (*low, 1)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {d} over Z_{p}")  # impossible


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------


class _Ring:
    """Shared behaviour; subclasses define ``elements`` and the primitives."""

    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x: Element) -> int:
        """Position of ``x`` in the canonical element order."""
        return self._index[x]

    def is_unit(self, x: Element) -> bool:
        raise NotImplementedError

    def units(self) -> list:
        return [x for x in self.elements if self.is_unit(x)]

    def zero_divisors(self) -> list:
        """Non-units, 0 included (every non-unit of a finite ring kills something)."""
        return [x for x in self.elements if not self.is_unit(x)]

    @cached_property
    def add_table(self) -> np.ndarray:
        return self._table(self.add)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return self._table(self.mul)

    def _table(self, op) -> np.ndarray:
        q = self.order
        dtype = np.int16 if q < 2**15 else np.int32
        t = np.empty((q, q), dtype=dtype)
        els = self.elements
        for i, x in enumerate(els):
            for j in range(i, q):
                t[i, j] = t[j, i] = self._index[op(x, els[j])]
        return t


@dataclass(frozen=True)
class ModularRing(_Ring):
    """The ring Z_n of residues modulo ``n >= 2``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"Z_n needs n >= 2, got {self.n!r}")

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    def index(self, x: int) -> int:
        return x

    zero = 0
    one = 1

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.n

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.n

    def neg(self, x: int) -> int:
        return -x % self.n

    def is_unit(self, x: int) -> bool:
        return gcd(x, self.n) == 1

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise NoInverse(f"{x} is not a unit of Z_{self.n}")
        return pow(x, -1, self.n)

    def label(self, x: int) -> str:
        return str(x)

    def __str__(self) -> str:
        return f"Z_{self.n}"

    @property
    def token(self) -> str:
        return f"zn:{self.n}"


@dataclass(frozen=True)
class FiniteField(_Ring):
    """GF(p^d) realised as Z_p[X] / (modulus).

    ``modulus`` is a coefficient tuple of length ``d + 1`` (ascending,
    monic).  Elements are length-``d`` coefficient tuples.
    """

    p: int
    d: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field characteristic must be prime, got {self.p}")
        if self.d < 1:
            raise ValueError(f"field degree must be >= 1, got {self.d}")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_irreducible(self.p, self.d))
        m = tuple(self.modulus)
        if len(m) != self.d + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise ValueError(f"modulus {m} is not monic of degree {self.d} over Z_{self.p}")
        if not is_irreducible(m, self.p):
            raise ValueError(f"modulus {m} is reducible over Z_{self.p}")
        object.__setattr__(self, "modulus", m)

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(range(self.p), repeat=self.d))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.d

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.d - 1)

    @property
    def q(self) -> int:
        return self.p**self.d

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        prodc = [0] * (2 * self.d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prodc[i + j] += a * b
        r = _poly_mod(prodc, self.modulus, self.p)
        return tuple(r) + (0,) * (self.d - len(r))

    def is_unit(self, x) -> bool:
        return any(x)

    def inverse(self, x):
        if not any(x):
            raise NoInverse("0 has no inverse")
        # x^(q-2) by square-and-multiply
        result, base, e = self.one, x, self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def label(self, x) -> str:
        """Polynomial in the generator symbol ``v``, e.g. ``2v^2 + v + 1``."""
        if self.d == 1:
            return str(x[0])
        terms = []
        for deg in range(self.d - 1, -1, -1):
            c = x[deg]
            if not c:
                continue
            mono = "" if deg == 0 else ("v" if deg == 1 else f"v^{deg}")
            coef = str(c) if c != 1 or deg == 0 else ""
            terms.append(coef + mono)
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return f"GF({self.p}^{self.d})" if self.d > 1 else f"GF({self.p})"

    @property
    def token(self) -> str:
        return f"gf:{self.p}:{self.d}"


RingSpec = Union[ModularRing, FiniteField]


def make_ring(kind: str, *args: int) -> RingSpec:
    """``make_ring("zn", n)`` or ``make_ring("gf", p, d)``."""
    if kind == "zn":
        (n,) = args
        return ModularRing(n)
    if kind == "gf":
        p, d = args
        return FiniteField(p, d)
    raise ValueError(f"unknown ring kind {kind!r}")


def parse_ring(token: str) -> RingSpec:
    """Parse the CLI forms ``zn:<n>`` and ``gf:<p>:<d>``."""
    parts = token.strip().split(":")
    try:
        nums = [int(x) for x in parts[1:]]
    except ValueError:
        raise ValueError(f"bad ring {token!r}") from None
    if parts[0] == "zn" and len(nums) == 1:
        return ModularRing(nums[0])
    if parts[0] == "gf" and len(nums) == 2:
        return FiniteField(*nums)
    raise ValueError(f"bad ring {token!r}; expected zn:<n> or gf:<p>:<d>")


# functional spellings of the ring methods


def add(r: RingSpec, x, y):
    return r.add(x, y)


def mul(r: RingSpec, x, y):
    return r.mul(x, y)


def neg(r: RingSpec, x):
    return r.neg(x)


def inverse(r: RingSpec, x):
    return r.inverse(x)


def units(r: RingSpec) -> list:
    return r.units()


def zero_divisors(r: RingSpec) -> list:
    return r.zero_divisors()
