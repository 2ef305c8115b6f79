"""Small finite fields as addition and multiplication tables.

Elements of ``GF(p**k)`` are the integers ``0 .. p**k - 1`` read as base-``p``
digit vectors (digit ``i`` is the coefficient of ``x**i``) modulo a monic
irreducible polynomial of degree ``k`` found by trial division.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["FiniteField", "finite_field", "prime_power"]


def prime_power(q: int) -> tuple[int, int]:
    """``(p, k)`` with ``q = p**k``; raises when ``q`` is not a prime power."""
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic ``m`` (coefficient lists, low degree first)."""
    a = a[:]
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _irreducible(p: int, k: int) -> list[int]:
    if k == 1:
        return [0, 1]
    for tail in itertools.product(range(p), repeat=k):
        m = list(tail) + [1]
        if m[0] == 0:
            continue
        has_factor = False
        for deg in range(1, k // 2 + 1):
            for ftail in itertools.product(range(p), repeat=deg):
                f = list(ftail) + [1]
                if not any(_poly_mod(m, f, p)):
                    has_factor = True
                    break
            if has_factor:
                break
        if not has_factor:
            return m
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over GF({p})")


@dataclass(frozen=True, eq=False)
class FiniteField:
    q: int
    p: int
    k: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray

    def from_int(self, c: int) -> int:
        """Image of an integer in the prime subfield."""
        return int(c) % self.p

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    p, k = prime_power(q)
    m = _irreducible(p, k)

    def digits(x: int) -> list[int]:
        return [(x // p**i) % p for i in range(k)]

    def number(ds: list[int]) -> int:
        return sum(d * p**i for i, d in enumerate(ds))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for x in range(q):
        dx = digits(x)
        for y in range(q):
            dy = digits(y)
            add[x, y] = number([(a + b) % p for a, b in zip(dx, dy)])
            prod = [0] * (2 * k - 1)
            for i, a in enumerate(dx):
                for j, b in enumerate(dy):
                    prod[i + j] += a * b
            mul[x, y] = number(_poly_mod(prod, m, p) if k > 1 else [prod[0] % p])
    neg = np.array([int(np.nonzero(add[x] == 0)[0][0]) for x in range(q)], dtype=np.int64)
    for tab in (add, mul, neg):
        tab.setflags(write=False)
    return FiniteField(q, p, k, add, mul, neg)
