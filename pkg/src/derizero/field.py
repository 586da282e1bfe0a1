"""Exact coefficient fields: the rationals and prime fields GF(p).

Scalars are plain Python objects (``fractions.Fraction`` over Q, ints in
``range(p)`` over GF(p)); matrices live in numpy arrays whose dtype depends
on the field (``object`` for rationals and for primes too large for safe
int64 products, ``int64`` otherwise).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import isprime

# Largest prime for which we keep matrices in int64: a dot product of
# length up to ~2^22 with entries < 2^20 stays below 2^63.
_INT64_PRIME_LIMIT = 1 << 20


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """The rationals (``p == 0``) or the prime field GF(p), p <= 2^31."""

    p: int = 0

    def __post_init__(self):
        if self.p == 0:
            return
        if self.p > 2**31:
            raise FieldError(f"prime too large: {self.p}")
        if not isprime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "Q" if self.p == 0 else f"GF({self.p})"

    # ---- scalars ----

    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def scalar(self, value):
        """Coerce an int / Fraction / string like ``3/4`` to a field element."""
        if self.p == 0:
            return Fraction(value)
        if isinstance(value, str):
            if "/" in value:
                num, den = value.split("/")
                return self.mul(int(num) % self.p, self.inv(int(den) % self.p))
            value = int(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                return self.mul(value.numerator % self.p,
                                self.inv(value.denominator % self.p))
            value = value.numerator
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if self.p == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), self.p - 2, self.p)

    # ---- arrays ----

    @property
    def dtype(self):
        if self.p == 0 or self.p >= _INT64_PRIME_LIMIT:
            return object
        return np.int64

    def array(self, rows) -> np.ndarray:
        """Build a normalized 1D/2D array of field elements."""
        arr = np.array(
            [[self.scalar(x) for x in row] for row in rows]
            if rows and isinstance(rows[0], (list, tuple, np.ndarray))
            else [self.scalar(x) for x in rows],
            dtype=self.dtype,
        )
        return arr

    def zeros(self, *shape) -> np.ndarray:
        if self.dtype is object:
            arr = np.empty(shape, dtype=object)
            arr[...] = self.zero()
            return arr
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n) -> np.ndarray:
        arr = self.zeros(n, n)
        for i in range(n):
            arr[i, i] = self.one()
        return arr

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        if self.p == 0 or arr.dtype is np.dtype(object):
            return arr
        return arr % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.dot(a, b)
        if self.p != 0:
            if out.dtype is np.dtype(object):
                out = np.vectorize(lambda x: x % self.p, otypes=[object])(out) \
                    if out.size else out
            else:
                out = out % self.p
        return out

    def is_zero(self, arr: np.ndarray) -> bool:
        if arr.size == 0:
            return True
        return not np.any(arr != self.zero() if self.dtype is object else arr)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
