"""Local motivic Igusa zeta function of a toric surface singularity and its
Igusa Poincare series.

All terms are built in the variables ``L`` and ``U = L**-d``; a factor
``1 - L**(-N*d - nu)`` is the :class:`DenomFactor` ``(N, nu)``.  The zeta
function is assembled as

    Z = L**-(t+2) * (Z1 + Z2 + sum_k Z^(k) + b * Z3)

where each ``Z^(k)`` is by default the exact local integral at the A_d point
(:func:`term_ad_point`); the blow-up chain form (:func:`term_Zk`) is kept as
``ad_form="transcribed"``.

and ``Q(T) = R(L**(t+2) * T)`` with ``R(U) = (1 - L**(t+2) * Z(U)) / (1 - U)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .lattice import ResolutionData, SurfaceSingularity, resolution_fan
from .motivic import (
    DenomFactor,
    LaurentPoly,
    MotivicRational,
    L,
    proj_class,
    series_coeffs,
    substitute_T,
)

__all__ = [
    "NumericalDatum",
    "ZetaFunction",
    "numerical_data",
    "term_Z1",
    "term_Z2",
    "term_Zk",
    "term_Zk_simplified",
    "term_Tk",
    "term_Z3",
    "term_ad_point",
    "assemble_zeta",
    "igusa_series",
    "igusa_coefficients",
    "zeta_for",
]

ONE = LaurentPoly.const(1)


def _frac(coef: LaurentPoly, N: int, nu: int, den: list[tuple[int, int]]) -> MotivicRational:
    """``coef * L**-nu * U**N / prod(1 - L**-nu_i U**N_i)``."""
    num = {(e - nu, N): c for e, c in coef.terms.items()}
    return MotivicRational(num, [DenomFactor(a, b) for a, b in den])


@dataclass(frozen=True)
class NumericalDatum:
    label: tuple  # ("minus1",), ("zero",) or ("pair", i, j)
    N: int
    nu: int

    @property
    def factor(self) -> DenomFactor:
        return DenomFactor(self.N, self.nu)

    @property
    def candidate_pole(self):
        from fractions import Fraction
        return Fraction(-self.nu, self.N)


AdForm = Literal["exact", "transcribed"]


def numerical_data(res: ResolutionData, ad_form: AdForm = "exact") -> list[NumericalDatum]:
    """Numerical data whose denominators can appear in the assembled Z.

    ``"exact"`` gives one datum ``(d+3, (d+2)t+2)`` per A_d point; the
    ``"transcribed"`` form lists the whole blow-up chain ``(i, j)``.
    """
    t = res.t
    out = [NumericalDatum(("minus1",), 1, t), NumericalDatum(("zero",), 2, t + 2)]
    if res.b:
        out.append(NumericalDatum(("crossing",), 3, 2 * t + 2))
    for i, d in enumerate(res.d_list, start=1):
        if ad_form == "exact":
            out.append(NumericalDatum(("point", i), d + 3, (d + 2) * t + 2))
            continue
        jmax = -(-(d + 1) // 2)
        for j in range(1, jmax + 1):
            if d % 2 == 0 and j == jmax:
                out.append(NumericalDatum(("pair", i, j), d + 3, (d // 2 + 2) * (t + 1)))
            else:
                out.append(NumericalDatum(("pair", i, j), 2 * (j + 1), (j + 1) * (t + 1) + 1))
    return out


def term_Z1(t: int, a: int) -> MotivicRational:
    """Arcs centred on the first exceptional divisor away from everything else."""
    _check(t, a)
    cls = proj_class(t + 1) - a * proj_class(1) + (a - 1)
    return _frac(cls * (L - 1), 2, t + 2, [(2, t + 2)])


def term_Z2(t: int, a: int) -> MotivicRational:
    """Arcs centred on the smooth part of the first exceptional curve of the surface."""
    _check(t, a)
    cls = a * proj_class(1) - 2 * (a - 1)
    return _frac(cls * (L**t - 1) * (L - 1), 3, 2 * t + 2, [(2, t + 2), (1, t)])


def _check(t: int, a: int | None = None) -> None:
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if a is not None and a < 1:
        raise ValueError(f"a must be >= 1, got {a}")


def _Nj(j: int) -> int:
    return 2 * j


def _nuj(j: int, t: int) -> int:
    return j * (t + 1) + 1


def term_Tk(t: int, d_k: int) -> MotivicRational:
    """Final-blow-up contribution of an A_{d_k} point; its shape depends on parity."""
    _check(t)
    if d_k < 1:
        raise ValueError(f"d_k must be >= 1, got {d_k}")
    P1, Pt, Pt1 = proj_class(1), proj_class(t), proj_class(t + 1)
    if d_k % 2:
        N, nu = d_k + 3, ((d_k + 1) // 2 + 1) * (t + 1) + 1
        return (
            _frac(Pt1 - Pt - P1 + 2, N, nu, [(N, nu)])
            + _frac((P1 - 2) * (L**t - 1), N + 1, nu + t, [(N, nu), (1, t)])
        )
    h = d_k // 2
    N1, nu1 = d_k + 2, (h + 1) * (t + 1) + 1
    N2, nu2 = d_k + 3, (h + 2) * (t + 1)
    Ptm1 = proj_class(t - 1)
    return (
        _frac(Pt1 - Pt - 2 * P1 + 3, N1, nu1, [(N1, nu1)])
        + _frac((2 * P1 - 4) * (L**t - 1), d_k + 3, (h + 1) * (t + 1) + t + 1, [(N1, nu1), (1, t)])
        + _frac(Pt - Ptm1, N2, nu2, [(N2, nu2)])
        + _frac((Ptm1 - 1) * (L - 1), 2 * d_k + 5, (d_k + 3) * (t + 1) + 1, [(N1, nu1), (N2, nu2)])
        + _frac((L - 1) * (L**t - 1), 2 * d_k + 6, (d_k + 4) * (t + 1) + 2, [(1, t), (N1, nu1), (N2, nu2)])
    )


def _zk_body(t: int, d_k: int) -> MotivicRational:
    """The braced part of Z^(k) without T^(k): the j-sum plus the two fixed terms."""
    top = -(-d_k // 2)
    body = MotivicRational.zero()
    for j in range(2, top + 1):
        Nj, nuj, Nj1, nuj1 = _Nj(j), _nuj(j, t), _Nj(j + 1), _nuj(j + 1, t)
        body = body + _frac(L ** (t + 1) - 2 * L + 1, Nj, nuj, [(Nj, nuj), (Nj1, nuj1)])
        body = body + _frac(2 * (L - 1) * (L**t - 1), Nj + 1, nuj + t, [(1, t), (Nj, nuj), (Nj1, nuj1)])
    body = body + _frac((proj_class(t) - 2) * (L - 1), 6, 3 * t + 5, [(2, t + 2), (4, 2 * t + 3)])
    body = body + _frac(2 * (L - 1) * (L**t - 1), 7, 4 * t + 5, [(1, t), (2, t + 2), (4, 2 * t + 3)])
    return body


def term_Zk(t: int, d_k: int) -> MotivicRational:
    """Contribution of the A_{d_k} point left after the first blow-up (``d_k = c_k - 3``)."""
    _check(t)
    if d_k < 1:
        raise ValueError(f"d_k must be >= 1, got {d_k}")
    return (_zk_body(t, d_k) + term_Tk(t, d_k)) * (L - 1)


def term_Zk_simplified(t: int, d_k: int) -> MotivicRational:
    """The condensed form of ``Z^(k) - (L - 1) T^(k)``, kept as an independent transcription."""
    _check(t)
    top = -(-d_k // 2)
    # numerator factor (L^-d-t + L^-d+1 - 2 L^-d + L^(t+1) - 2L + 1)
    first = MotivicRational({(-t, 1): 1, (1, 1): 1, (0, 1): -2, (t + 1, 0): 1, (1, 0): -2, (0, 0): 1})
    # the exponent -(top+2)(2d+t+1) - 2 and the sum of -j(2d+t+1) - 1
    second = {(-(top + 2) * (t + 1) - 2, 2 * (top + 2)): 1}
    for j in range(2, top + 1):
        key = (-j * (t + 1) - 1, 2 * j)
        second[key] = second.get(key, 0) + 1
    den = [DenomFactor(1, t), DenomFactor(2, t + 2), DenomFactor(2 * (top + 1), (top + 1) * (t + 1) + 1)]
    return first * MotivicRational(second, den) * (L - 1)


def term_Z3(t: int) -> MotivicRational:
    """Correction at a point where two first-generation curves of the surface meet."""
    _check(t)
    Pt, Ptm1 = proj_class(t), proj_class(t - 1)
    return (
        _frac((Pt - Ptm1) * (L - 1), 3, 2 * t + 2, [(3, 2 * t + 2)])
        + _frac((Ptm1 - 1) * (L - 1) ** 2, 5, 3 * t + 4, [(3, 2 * t + 2), (2, t + 2)])
        + _frac((L - 1) ** 2 * (L**t - 1), 6, 4 * t + 4, [(1, t), (3, 2 * t + 2), (2, t + 2)])
    )


def term_ad_point(t: int, d: int) -> MotivicRational:
    """Exact contribution of arcs through an A_d point of the strict transform.

    Locally the strict transform is ``{uv = x**(d+1), w_1 = ... = w_(t-1) = 0}``
    inside the first exceptional divisor ``{x = 0}``, the pulled-back ideal is
    ``x**2 * J`` and the Jacobian is ``x**(t+1)``.  Summing over ``i = ord x``
    with ``z = L**-t U`` and ``a = L**-(t+2) U**2`` gives

        (L-1) * [a U / (1-a)
                 - L (1-U)(1 - L**-(t+1) U) a (z + ... + z**d + a z**(d+1))
                   / ((1-z)(1-a)(1 - a z**(d+1)))]

    ``d = 0`` is a transversal crossing of two curves and reproduces
    :func:`term_Z3`.
    """
    _check(t)
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    first = MotivicRational({(-t - 2, 3): 1}, [DenomFactor(2, t + 2)])
    inner = {(-t * j, j): 1 for j in range(1, d + 1)}
    inner[(-t - 2 - t * (d + 1), d + 3)] = 1
    pre = MotivicRational({(0, 0): 1, (0, 1): -1}) * MotivicRational({(0, 0): 1, (-t - 1, 1): -1})
    second = pre * MotivicRational(
        {(e + 1 - t - 2, n + 2): c for (e, n), c in inner.items()},
        [DenomFactor(1, t), DenomFactor(2, t + 2), DenomFactor(d + 3, (d + 2) * t + 2)],
    )
    return (first - second) * (L - 1)


@dataclass
class ZetaFunction:
    value: MotivicRational
    data: list[NumericalDatum]
    res: ResolutionData
    terms: dict = field(default_factory=dict)

    @property
    def t(self) -> int:
        return self.res.t

    def to_json(self, n: int | None = None) -> dict:
        terms = {
            "Z1": self.terms["Z1"].to_json(),
            "Z2": self.terms["Z2"].to_json(),
            "Zk": [z.to_json() for z in self.terms["Zk"]],
            "Z3": self.terms["Z3"].to_json(),
        }
        Q = igusa_series(self)
        out = {"t": self.t, "terms": terms, "Z": self.value.to_json(), "Q": Q.to_json()}
        if n is not None:
            out["coeffs"] = [c.to_json() for c in igusa_coefficients(Q, n)]
        return out


def assemble_zeta(res: ResolutionData, ad_form: AdForm = "exact") -> ZetaFunction:
    if ad_form not in ("exact", "transcribed"):
        raise ValueError(f"unknown ad_form {ad_form!r}")
    t, a, b = res.t, res.a, res.b
    point = term_ad_point if ad_form == "exact" else term_Zk
    z1 = term_Z1(t, a)
    z2 = term_Z2(t, a)
    zks = [point(t, d) for d in res.d_list]
    z3 = term_Z3(t)
    total = z1 + z2
    for zk in zks:
        total = total + zk
    if b:
        total = total + z3 * b
    value = total.times_monomial(-(t + 2))
    data = numerical_data(res, ad_form)
    stray = set(value.den) - {dat.factor for dat in data}
    if stray:
        raise ArithmeticError(f"denominator factors {sorted(stray)} match no numerical datum")
    return ZetaFunction(value, data, res, {"Z1": z1, "Z2": z2, "Zk": zks, "Z3": z3})


def zeta_for(p: int, q: int, ad_form: AdForm = "exact") -> ZetaFunction:
    return assemble_zeta(resolution_fan(SurfaceSingularity(p, q)), ad_form)


def igusa_series(zf: ZetaFunction) -> MotivicRational:
    """``Q(T)`` as a rational function in ``(L, T)`` (``T`` stored in the U-slot)."""
    e = zf.t + 2
    R = (MotivicRational.one() - zf.value.times_monomial(e)) * MotivicRational({(0, 0): 1}, [DenomFactor(1, 0)])
    return substitute_T(R, e)


def igusa_coefficients(Q: MotivicRational, n: int) -> list[LaurentPoly]:
    """``[L_0], ..., [L_n]``; each must be an honest polynomial in ``L``."""
    coeffs = series_coeffs(Q, n)
    for k, c in enumerate(coeffs):
        if not c.is_polynomial():
            raise ArithmeticError(f"coefficient of T^{k} has negative powers of L: {c}")
    return coeffs
