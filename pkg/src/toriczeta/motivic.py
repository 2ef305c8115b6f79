"""Exact arithmetic in the localized Grothendieck ring, restricted to polynomial
expressions in the Lefschetz class ``L``.

Three value types live here:

* :class:`LaurentPoly` -- an integer Laurent polynomial in ``L``.
* :class:`MotivicRational` -- a bivariate Laurent polynomial in ``(L, U)`` over a
  *factored* denominator ``prod (1 - L**-nu * U**N)``.  ``U`` stands for
  ``L**-d`` (or for the series variable ``T`` after :func:`substitute_T`).
* :class:`RationalFunctionD` -- a univariate rational function in ``d`` over
  ``Q``, the target of the Euler-characteristic specialization ``L -> 1``.

Denominators are never expanded unless an identity check needs it, and no
cancellation between numerator and denominator is attempted.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "LaurentPoly",
    "DenomFactor",
    "MotivicRational",
    "PolyD",
    "RationalFunctionD",
    "PoleInfo",
    "L",
    "proj_class",
    "mr_add",
    "mr_equal",
    "series_coeffs",
    "eval_L",
    "substitute_T",
    "topological_limit",
    "laurent_at_pole",
]


# ---------------------------------------------------------------------------
# Laurent polynomials in L


class LaurentPoly:
    """Integer Laurent polynomial ``sum c_e L**e``; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms: dict[int, int] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self._terms[int(e)] = int(c)

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def leading_coefficient(self) -> int:
        return self._terms[self.degree()]

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self._terms)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __call__(self, q) -> Fraction:
        return eval_L(self, q)

    # ring operations
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly({e * k: c ** (-k)})
            raise ValueError("only unit monomials can be inverted")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly({self.items()!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "L"
            else:
                mono = f"L^{e}"
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                parts.append(f"{coef}{mono}")
            else:
                sep = "*" if mono else ""
                coef = f"{c:+d}"
                parts.append(f"{coef}{sep}{mono}")
        s = " ".join(p[0] + " " + p[1:] for p in parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # serialization: [{"e": int, "c": int}, ...] sorted by exponent
    def to_json(self) -> list[dict[str, int]]:
        return [{"e": e, "c": c} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping[str, int]]) -> "LaurentPoly":
        out: dict[int, int] = {}
        for item in data:
            out[int(item["e"])] = out.get(int(item["e"]), 0) + int(item["c"])
        return cls(out)


L = LaurentPoly.monomial(1)


def proj_class(n: int) -> LaurentPoly:
    """Class of projective n-space, ``1 + L + ... + L**n``; zero for ``n < 0``."""
    return LaurentPoly({e: 1 for e in range(n + 1)})


def eval_L(p: LaurentPoly, q) -> Fraction:
    """Evaluate ``p`` at ``L = q`` exactly."""
    q = Fraction(q)
    if q == 0:
        if any(e < 0 for e in p.terms):
            raise ZeroDivisionError("negative powers of L evaluated at 0")
        return Fraction(p.terms.get(0, 0))
    return sum((c * q**e for e, c in p.terms.items()), Fraction(0))


# ---------------------------------------------------------------------------
# structured rational functions in (L, U)


@dataclass(frozen=True, order=True)
class DenomFactor:
    """The factor ``1 - L**(-nu) * U**N``."""

    N: int
    nu: int

    def __post_init__(self):
        if self.N == 0 and self.nu == 0:
            raise ValueError("the factor 1 - 1 is zero")
        if self.N < 0:
            raise ValueError("U-exponent of a denominator factor must be >= 0")

    def as_numerator(self) -> dict[tuple[int, int], int]:
        return {(0, 0): 1, (-self.nu, self.N): -1} if self.nu or self.N else {}

    def __str__(self):
        return f"(1 - L^{-self.nu}*U^{self.N})"


BiPoly = dict  # {(eL, eU): coeff}


def _bi_clean(p: Mapping[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    return {k: c for k, c in p.items() if c}


def _bi_mul(p, q):
    out: dict[tuple[int, int], int] = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, 0) + c1 * c2
    return _bi_clean(out)


def _bi_add(p, q):
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return _bi_clean(out)


def _bi_from_laurent(p: LaurentPoly, u_exp: int = 0):
    return {(e, u_exp): c for e, c in p.terms.items()}


class MotivicRational:
    """``numerator / prod(factors)`` with the denominator kept as a multiset."""

    __slots__ = ("num", "den")

    def __init__(self, num: Mapping[tuple[int, int], int] | None = None,
                 den: Iterable[DenomFactor] | Mapping[DenomFactor, int] = ()):
        num = _bi_clean({(int(a), int(b)): int(c) for (a, b), c in (num or {}).items()})
        if any(b < 0 for (_, b) in num):
            raise ValueError("U-exponents of the numerator must be nonnegative")
        self.num: dict[tuple[int, int], int] = num
        if isinstance(den, Mapping):
            counter = Counter({f: m for f, m in den.items() if m > 0})
        else:
            counter = Counter(den)
        self.den: Counter = counter

    # constructors
    @classmethod
    def from_laurent(cls, p: LaurentPoly | int, u_exp: int = 0,
                     den: Iterable[DenomFactor] = ()) -> "MotivicRational":
        if isinstance(p, int):
            p = LaurentPoly.const(p)
        return cls(_bi_from_laurent(p, u_exp), den)

    @classmethod
    def zero(cls) -> "MotivicRational":
        return cls({}, ())

    @classmethod
    def one(cls) -> "MotivicRational":
        return cls({(0, 0): 1}, ())

    @classmethod
    def geometric(cls, N: int, nu: int) -> "MotivicRational":
        """``L**-nu U**N / (1 - L**-nu U**N)``, the ubiquitous building block."""
        return cls({(-nu, N): 1}, [DenomFactor(N, nu)])

    def factors(self) -> list[DenomFactor]:
        return sorted(self.den.elements())

    def is_zero(self) -> bool:
        return not self.num

    def u_valuation(self) -> int:
        """Smallest U-exponent in the numerator (the series can only start there)."""
        if not self.num:
            raise ValueError("valuation of zero")
        return min(b for (_, b) in self.num)

    def numerator_in(self, u_exp: int) -> LaurentPoly:
        return LaurentPoly({a: c for (a, b), c in self.num.items() if b == u_exp})

    def expanded_denominator(self) -> dict[tuple[int, int], int]:
        out = {(0, 0): 1}
        for f in self.den.elements():
            out = _bi_mul(out, f.as_numerator())
        return out

    def _regroup(self, den: Counter) -> dict[tuple[int, int], int]:
        """Numerator after rewriting ``self`` over the larger denominator ``den``."""
        extra = den - self.den
        out = self.num
        for f in extra.elements():
            out = _bi_mul(out, f.as_numerator())
        return out

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = MotivicRational.from_laurent(other)
        if not isinstance(other, MotivicRational):
            return NotImplemented
        if not other.num:
            return MotivicRational(self.num, self.den)
        if not self.num:
            return MotivicRational(other.num, other.den)
        den = self.den | other.den
        return MotivicRational(_bi_add(self._regroup(den), other._regroup(den)), den)

    __radd__ = __add__

    def __neg__(self):
        return MotivicRational({k: -c for k, c in self.num.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MotivicRational({k: c * other for k, c in self.num.items()}, self.den)
        if isinstance(other, LaurentPoly):
            return MotivicRational(_bi_mul(self.num, _bi_from_laurent(other)), self.den)
        if not isinstance(other, MotivicRational):
            return NotImplemented
        return MotivicRational(_bi_mul(self.num, other.num), self.den + other.den)

    __rmul__ = __mul__

    def times_monomial(self, eL: int, eU: int = 0) -> "MotivicRational":
        return MotivicRational({(a + eL, b + eU): c for (a, b), c in self.num.items()}, self.den)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = MotivicRational.from_laurent(other)
        if not isinstance(other, MotivicRational):
            return NotImplemented
        return mr_equal(self, other)

    __hash__ = None  # equality is semantic, not structural

    def __repr__(self):
        num = sorted(self.num.items())
        return f"MotivicRational(num={num!r}, den={self.factors()!r})"

    def __str__(self):
        if not self.num:
            return "0"
        terms = []
        for (a, b), c in sorted(self.num.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            terms.append(f"{c:+d}*L^{a}*U^{b}")
        num = " ".join(terms)
        if not self.den:
            return num
        return f"({num}) / " + "".join(str(f) for f in self.factors())

    # serialization: {"num": [[eL, eU, c], ...], "den": [[N, nu], ...]}
    def to_json(self) -> dict:
        return {
            "num": [[a, b, c] for (a, b), c in sorted(self.num.items(), key=lambda kv: (kv[0][1], kv[0][0]))],
            "den": [[f.N, f.nu] for f in self.factors()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MotivicRational":
        num: dict[tuple[int, int], int] = {}
        for a, b, c in data["num"]:
            num[(int(a), int(b))] = num.get((int(a), int(b)), 0) + int(c)
        return cls(num, [DenomFactor(int(N), int(nu)) for N, nu in data["den"]])


def mr_add(x: MotivicRational, y: MotivicRational) -> MotivicRational:
    return x + y


def mr_equal(x: MotivicRational, y: MotivicRational) -> bool:
    """Cross-multiplied identity, after cancelling the shared part of the denominators."""
    common = x.den & y.den
    xr = MotivicRational(x.num, x.den - common)
    yr = MotivicRational(y.num, y.den - common)
    lhs = _bi_mul(xr.num, yr.expanded_denominator())
    rhs = _bi_mul(yr.num, xr.expanded_denominator())
    return lhs == rhs


def series_coeffs(x: MotivicRational, order: int) -> list[LaurentPoly]:
    """Coefficients of ``U**0 .. U**order`` of the power-series expansion of ``x``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    for f in x.den:
        if f.N == 0:
            raise ValueError(f"denominator factor {f} is not invertible as a power series in U")
    coeffs: list[dict[int, int]] = [dict() for _ in range(order + 1)]
    for (a, b), c in x.num.items():
        if b <= order:
            coeffs[b][a] = coeffs[b].get(a, 0) + c
    for f in x.den.elements():
        # multiply by 1/(1 - L^-nu U^N):  new[k] = old[k] + L^-nu new[k-N]
        for k in range(f.N, order + 1):
            src = coeffs[k - f.N]
            dst = coeffs[k]
            for e, c in src.items():
                dst[e - f.nu] = dst.get(e - f.nu, 0) + c
    return [LaurentPoly(c) for c in coeffs]


def substitute_T(x: MotivicRational, shift: int) -> MotivicRational:
    """Replace ``U`` by ``L**shift * T``; the result is read in ``(L, T)``."""
    num = {(a + shift * b, b): c for (a, b), c in x.num.items()}
    den = Counter()
    for f, m in x.den.items():
        den[DenomFactor(f.N, f.nu - f.N * shift)] += m
    return MotivicRational(num, den)


# ---------------------------------------------------------------------------
# polynomials and rational functions in d over Q


class PolyD:
    """Dense univariate polynomial over ``Q``; ``coeffs[i]`` multiplies ``d**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def linear(cls, a, b) -> "PolyD":
        """``a*d + b``."""
        return cls([b, a])

    @classmethod
    def const(cls, c) -> "PolyD":
        return cls([c])

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = other if isinstance(other, PolyD) else PolyD.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyD([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolyD([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-(other if isinstance(other, PolyD) else PolyD.const(other)))

    def __mul__(self, other):
        if not isinstance(other, PolyD):
            other = PolyD.const(other)
        if not self.coeffs or not other.coeffs:
            return PolyD()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyD(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PolyD.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "PolyD") -> tuple["PolyD", "PolyD"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[i + len(other.coeffs) - 1] / lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return PolyD(quot), PolyD(rem)

    def monic(self) -> "PolyD":
        return PolyD([c / self.lead() for c in self.coeffs])

    def taylor_shift(self, x0) -> "PolyD":
        """The polynomial ``e -> self(e + x0)``."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += x0 * cs[j + 1]
        return PolyD(cs)

    def __eq__(self, other):
        if not isinstance(other, PolyD):
            other = PolyD.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyD({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("d" if i == 1 else f"d^{i}")
            if mono and abs(c) == 1:
                parts.append(("-" if c < 0 else "+") + mono)
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}{'*' if mono else ''}{mono}")
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s


def poly_gcd(a: PolyD, b: PolyD) -> PolyD:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


class RationalFunctionD:
    """Reduced quotient of polynomials in ``d``; the denominator is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyD, den: PolyD | None = None):
        den = PolyD.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = PolyD(), PolyD.const(1)
            return
        g = poly_gcd(num, den)
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
        lead = den.lead()
        self.num = PolyD([c / lead for c in num.coeffs])
        self.den = den.monic()

    @classmethod
    def const(cls, c) -> "RationalFunctionD":
        return cls(PolyD.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, RationalFunctionD):
            other = RationalFunctionD.const(other)
        if self.den == other.den:
            return RationalFunctionD(self.num + other.num, self.den)
        return RationalFunctionD(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionD(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunctionD):
            other = RationalFunctionD.const(other)
        return RationalFunctionD(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __call__(self, x) -> Fraction:
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionD):
            other = RationalFunctionD.const(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunctionD({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.den == PolyD.const(1):
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self) -> dict:
        return {
            "num": [str(c) for c in self.num.coeffs],
            "den": [str(c) for c in self.den.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFunctionD":
        return cls(PolyD([Fraction(c) for c in data["num"]]), PolyD([Fraction(c) for c in data["den"]]))


# ---------------------------------------------------------------------------
# L -> 1 specialization


def _exp_series_poly(a: int, b: int, order: int) -> list[PolyD]:
    """Coefficients of ``exp(eps*(a - b*d))`` up to ``eps**order``."""
    lin = PolyD.linear(-b, a)
    out = [PolyD.const(1)]
    power = PolyD.const(1)
    for k in range(1, order + 1):
        power = power * lin
        out.append(power * Fraction(1, math.factorial(k)))
    return out


def _bernoulli_plus(n: int) -> list[Fraction]:
    """Bernoulli numbers with ``B_1 = +1/2`` (coefficients of ``x/(1 - e^-x)``)."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    if n >= 1:
        B[1] = Fraction(1, 2)
    return B


def _series_mul(a: list[PolyD], b: list[PolyD], order: int) -> list[PolyD]:
    out = [PolyD() for _ in range(order + 1)]
    for i, x in enumerate(a[: order + 1]):
        if x.is_zero():
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] = out[i + j] + x * b[j]
    return out


def topological_limit(x: MotivicRational) -> RationalFunctionD:
    """Limit of ``x`` as ``L -> 1`` with ``U = L**-d``, as a rational function of ``d``.

    Substitutes ``L = exp(eps)``.  Each factor becomes
    ``1 - exp(-eps*w) = eps*w * (1 - eps*w/2 + ...)`` with ``w = N*d + nu``, so
    ``x = eps**-k / prod(w) * S(eps)`` where ``S`` has polynomial coefficients;
    the limit is the ``eps**k`` coefficient of ``S`` over ``prod(w)``.
    """
    factors = x.factors()
    k = len(factors)
    order = k + 1
    S = [PolyD() for _ in range(order + 1)]
    for (a, b), c in x.num.items():
        for i, p in enumerate(_exp_series_poly(a, b, order)):
            S[i] = S[i] + p * c
    bern = _bernoulli_plus(order)
    prod_w = PolyD.const(1)
    for f in factors:
        w = PolyD.linear(f.N, f.nu)
        if w.is_zero():
            raise ValueError(f"factor {f} vanishes identically")
        prod_w = prod_w * w
        # eps*w / (1 - exp(-eps*w)) = sum B+_j (eps*w)^j / j!
        inv = [(w ** j) * (bern[j] / math.factorial(j)) for j in range(order + 1)]
        S = _series_mul(S, inv, order)
    for j in range(k):
        if not S[j].is_zero():
            raise ArithmeticError(
                f"coefficient of eps^{j - k} does not vanish; the expression has no finite L->1 limit")
    if len(S) <= k:
        return RationalFunctionD(PolyD())
    return RationalFunctionD(S[k], prod_w)


@dataclass(frozen=True)
class PoleInfo:
    order: int
    leading: Fraction
    residue: Fraction


def _root_multiplicity(p: PolyD, x0: Fraction) -> tuple[int, PolyD]:
    """Multiplicity of ``x0`` as a root of ``p`` and the cofactor, in the shifted variable."""
    shifted = p.taylor_shift(x0)
    m = 0
    cs = list(shifted.coeffs)
    while cs and cs[0] == 0:
        cs.pop(0)
        m += 1
    return m, PolyD(cs)


def laurent_at_pole(f: RationalFunctionD, d0) -> PoleInfo:
    """Pole order, leading Laurent coefficient and residue of ``f`` at ``d = d0``.

    For a regular point the order is 0, ``leading`` is the value ``f(d0)`` and the
    residue is 0.
    """
    d0 = Fraction(d0)
    if f.is_zero():
        return PoleInfo(0, Fraction(0), Fraction(0))
    mden, den1 = _root_multiplicity(f.den, d0)
    mnum, num1 = _root_multiplicity(f.num, d0)
    order = mden - mnum
    if order <= 0:
        value = Fraction(0) if order < 0 else num1.coeffs[0] / den1.coeffs[0]
        return PoleInfo(0, value, Fraction(0))
    # power series of num1/den1 in e = d - d0, up to e^(order-1)
    series: list[Fraction] = []
    for i in range(order):
        acc = num1.coeffs[i] if i < len(num1.coeffs) else Fraction(0)
        for j in range(1, i + 1):
            if j < len(den1.coeffs):
                acc -= den1.coeffs[j] * series[i - j]
        series.append(acc / den1.coeffs[0])
    return PoleInfo(order, series[0], series[order - 1])


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys)."""
    return json.dumps(obj, sort_keys=True, indent=2)
