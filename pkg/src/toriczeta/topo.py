"""Topological zeta function, its poles, and recovery of the continued fraction
data ``t``, ``b`` and ``{c_j}`` from a zeta function.

Nothing here reads the singularity a zeta function came from: recovery works
from ``Z`` (and the series ``Q`` derived from it) alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import ResolutionData
from .motivic import (
    MotivicRational,
    mr_equal,
    PolyD,
    RationalFunctionD,
    laurent_at_pole,
    series_coeffs,
    topological_limit,
)
from .zeta import (
    ZetaFunction,
    igusa_series,
    term_Z1,
    term_Z2,
    term_Z3,
    term_Zk,
    term_ad_point,
)

__all__ = [
    "PoleReport",
    "RecoveredInvariants",
    "RecoveryError",
    "topological_zeta",
    "topological_zeta_termwise",
    "candidate_poles",
    "candidate_poles_for",
    "pole_reports",
    "recover_t",
    "recover_b",
    "residue_law",
    "stated_residue_law",
    "recover_c_multiset",
    "forward_topological_zeta",
    "forward_zeta",
    "point_pole",
    "c_multiset_from",
]


class RecoveryError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PoleReport:
    pole: Fraction
    order: int
    residue_or_leading: Fraction
    residue: Fraction
    provenance: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"d": str(self.pole), "order": self.order, "residue": str(self.residue),
                "leading": str(self.residue_or_leading), "provenance": list(self.provenance)}


@dataclass
class RecoveredInvariants:
    t: int
    b: int
    d_multiset: list[int]
    c_multiset: list[int]
    matches: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return len(self.matches) > 1

    def to_json(self) -> dict:
        out = {"t": self.t, "b": self.b, "d": sorted(self.d_multiset), "c": sorted(self.c_multiset)}
        if self.ambiguous:
            out["alternatives"] = [{"b": b, "d": list(ds)} for b, ds in self.matches]
        return out


def _value(z: ZetaFunction | MotivicRational) -> MotivicRational:
    return z.value if isinstance(z, ZetaFunction) else z


def topological_zeta(zf: ZetaFunction | MotivicRational) -> RationalFunctionD:
    """The ``L -> 1`` limit of ``Z``."""
    return topological_limit(_value(zf))


def topological_zeta_termwise(zf: ZetaFunction) -> RationalFunctionD:
    """Same limit taken term by term; the Euler characteristic is additive."""
    t, b = zf.t, zf.res.b
    parts = [zf.terms["Z1"], zf.terms["Z2"], *zf.terms["Zk"]]
    if b:
        parts.append(zf.terms["Z3"] * b)
    total = RationalFunctionD.const(0)
    for part in parts:
        total = total + topological_limit(part.times_monomial(-(t + 2)))
    return total


def point_pole(t: int, d: int) -> Fraction:
    """Pole contributed by an A_d point (``d = 0``: a crossing of two curves)."""
    return Fraction(-((d + 2) * t + 2), d + 3)


def candidate_poles_for(t: int, d_list, ad_form: str = "exact") -> list[tuple[Fraction, str]]:
    out = [(Fraction(-t), "(1,t)"), (Fraction(-(2 * t + 2), 3), "(3,2t+2)"),
           (Fraction(-(t + 2), 2), "(2,t+2)")]
    for i, d in enumerate(d_list, start=1):
        if ad_form == "exact":
            out.append((point_pole(t, d), f"({d + 3},{(d + 2) * t + 2}) k={i}"))
            continue
        jmax = -(-(d + 1) // 2)
        for j in range(1, jmax + 1):
            if d % 2 == 0 and j == jmax:
                out.append((Fraction(-(d // 2 + 2) * (t + 1), d + 3), f"({d + 3},{(d // 2 + 2) * (t + 1)}) k={i}"))
            else:
                N, nu = 2 * (j + 1), (j + 1) * (t + 1) + 1
                out.append((Fraction(-nu, N), f"({N},{nu}) k={i} j={j}"))
    return out


def candidate_poles(res: ResolutionData, ad_form: str = "exact") -> list[Fraction]:
    """All candidate poles, ascending, without repetitions."""
    return sorted({p for p, _ in candidate_poles_for(res.t, res.d_list, ad_form)})


def pole_reports(Ztop: RationalFunctionD, candidates=None) -> list[PoleReport]:
    """Every pole of ``Ztop`` with order and residue.

    With ``candidates`` (pairs ``(pole, label)``), a pole outside the list raises.
    """
    roots = _rational_roots(Ztop.den)
    labels: dict[Fraction, list[str]] = {}
    if candidates is not None:
        for p, lab in candidates:
            labels.setdefault(p, []).append(lab)
        stray = [r for r in roots if r not in labels]
        if stray:
            raise RecoveryError(f"poles {stray} are not candidate poles")
    out = []
    for r in sorted(roots):
        info = laurent_at_pole(Ztop, r)
        if info.order > 0:
            out.append(PoleReport(r, info.order, info.leading, info.residue, tuple(labels.get(r, ()))))
    return out


def _rational_roots(p) -> list[Fraction]:
    """Rational roots of a polynomial whose roots are all rational (checked)."""
    roots: list[Fraction] = []
    rest = p
    cand = _root_candidates(rest)
    while rest.degree > 0:
        hit = None
        for c in cand:
            if rest(c) == 0:
                hit = c
                break
        if hit is None:
            raise RecoveryError(f"denominator {p} has irrational or complex roots")
        rest, rem = rest.divmod(PolyD.linear(1, -hit))
        assert rem.is_zero()
        if hit not in roots:
            roots.append(hit)
    return roots


def _root_candidates(p) -> list[Fraction]:
    """Rational root test candidates ``a/b`` after clearing denominators."""
    import math

    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    lo = next(i for i, c in enumerate(ints) if c)
    a0, an = abs(ints[lo]), abs(ints[-1])

    def divisors(n):
        return [k for k in range(1, n + 1) if n % k == 0]

    out = {Fraction(0)} if lo else set()
    for a in divisors(a0):
        for b in divisors(an):
            out.add(Fraction(a, b))
            out.add(Fraction(-a, b))
    return sorted(out, key=lambda x: (abs(x), x))


def recover_t(Q: MotivicRational, Ztop: RationalFunctionD) -> int:
    """``t`` from the ``T`` coefficient of ``Q`` (``L**(t+2)``), checked against the
    poles of ``Ztop``.

    For ``t = 1`` the smallest pole is not an integer.  For ``t >= 2`` no pole
    lies below ``-t``, and an integral smallest pole must be ``-t`` itself (the
    pole at ``-t`` may cancel).
    """
    c1 = series_coeffs(Q, 1)[1]
    if len(c1.terms) != 1 or c1.leading_coefficient() != 1:
        raise RecoveryError(f"coefficient of T is {c1}, not a power of L")
    t = c1.degree() - 2
    poles = pole_reports(Ztop)
    if not poles:
        raise RecoveryError("topological zeta function has no poles")
    smallest = poles[0].pole
    if t == 1:
        ok = smallest.denominator != 1
    else:
        ok = smallest >= -t and (smallest.denominator != 1 or smallest == -t)
    if not ok:
        raise RecoveryError(f"t = {t} from the series is inconsistent with the smallest pole {smallest}")
    return t


def residue_law(t: int, b: int) -> Fraction:
    """Residue of ``Ztop`` at ``-(2t+2)/3`` for ``t`` not 1 or 2.

    Only the ``b * Z3`` block has the factor ``3d + 2t + 2``; its three terms
    specialize to ``1/w``, ``(t-1)/(w (2d+t+2))`` and ``t/((d+t) w (2d+t+2))``
    with ``w = 3d + 2t + 2``, which sum to residue ``-2b(t+1)^2 / (3(t-2)^2)``.
    """
    if t in (1, 2):
        raise ValueError("the pole -(2t+2)/3 collides with other candidates for t <= 2")
    return Fraction(-2 * b * (t + 1) ** 2, 3 * (t - 2) ** 2)


def stated_residue_law(t: int, b: int) -> Fraction:
    """The closed form ``-b(2t^2 - 5t + 11) / (3(t-2)^2)``; kept for comparison only."""
    if t in (1, 2):
        raise ValueError("undefined for t <= 2")
    return Fraction(-b * (2 * t * t - 5 * t + 11), 3 * (t - 2) ** 2)


def recover_b(Ztop: RationalFunctionD, t: int, Q: MotivicRational | None = None) -> int:
    """``b`` from the residue at ``-(2t+2)/3`` when ``t`` is not 1 or 2.

    For ``t`` in ``{1, 2}`` the value comes from the exact fit of point
    contributions instead.
    """
    if t not in (1, 2):
        res = laurent_at_pole(Ztop, Fraction(-(2 * t + 2), 3)).residue
        b = res / residue_law(t, 1)
        if b.denominator != 1 or b < 0:
            raise RecoveryError(f"residue {res} gives non-integral b = {b}")
        return int(b)
    bs = {b for b, _ in _fit_points(Ztop, t)}
    if len(bs) != 1:
        raise RecoveryError(f"topological zeta function fits b in {sorted(bs)}")
    return bs.pop()


def forward_zeta(t: int, b: int, d_multiset) -> MotivicRational:
    """Motivic ``Z`` assembled from ``(t, b, {d_k})`` with ``a = 1 + r + b``."""
    d_multiset = list(d_multiset)
    a = 1 + len(d_multiset) + b
    total = term_Z1(t, a) + term_Z2(t, a)
    for d in d_multiset:
        total = total + term_ad_point(t, d)
    if b:
        total = total + term_Z3(t) * b
    return total.times_monomial(-(t + 2))


def forward_topological_zeta(t: int, b: int, d_multiset) -> RationalFunctionD:
    return topological_limit(forward_zeta(t, b, d_multiset))


def c_multiset_from(t: int, b: int, d_multiset) -> list[int]:
    r = len(d_multiset)
    twos = t - b - r
    if twos < 0:
        raise RecoveryError(f"t={t} leaves no room for b={b} threes and r={r} runs")
    return sorted([2] * twos + [3] * b + [d + 3 for d in d_multiset])


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Gauss-Jordan over the rationals: ``(solution or None, pivot columns)``."""
    m = len(rows[0])
    A = [r[:] + [y] for r, y in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = 1 / A[row][col]
        A[row] = [x * inv for x in A[row]]
        for i in range(len(A)):
            if i != row and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
    if any(all(x == 0 for x in r[:-1]) and r[-1] != 0 for r in A):
        return None, pivots
    sol = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        sol[col] = A[i][-1]
    return sol, pivots


def _solve_columns(target: RationalFunctionD, cols: list[RationalFunctionD]) -> list[Fraction]:
    """Unique exact ``x`` with ``target = sum x_i cols_i``, checked as functions."""
    pts = [Fraction(k) for k in range(1, 3 * len(cols) + 8)]
    sol, pivots = _solve_exact([[c(x) for c in cols] for x in pts], [target(x) for x in pts])
    if sol is None or len(pivots) < len(cols):
        raise RecoveryError("no unique combination of strata reproduces the topological zeta function")
    check = RationalFunctionD.const(0)
    for x, c in zip(sol, cols):
        check = check + c * x
    if check != target:
        raise RecoveryError("linear fit does not reproduce the topological zeta function")
    return sol


def _as_count(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise RecoveryError(f"{what} = {x} is not a nonnegative integer")
    return int(x)


def _point_column(t: int, d: int) -> RationalFunctionD:
    """Change in ``Ztop`` from one more point of type ``d`` (``d = 0``: a crossing)."""
    base = forward_topological_zeta(t, 0, [])
    if d == 0:
        return forward_topological_zeta(t, 1, []) - base
    return forward_topological_zeta(t, 0, [d]) - base


def _point_types_from_poles(Ztop: RationalFunctionD, t: int) -> list[int]:
    """The ``d`` whose point pole ``-t + (t-2)/(d+3)`` is a pole of ``Ztop``."""
    out = []
    for rep in pole_reports(Ztop):
        x = rep.pole + t  # (t-2)/(d+3)
        if x == 0:
            continue
        dd = Fraction(t - 2) / x - 3
        if dd.denominator == 1 and dd >= 0:
            out.append(int(dd))
    return sorted(out)


def _reciprocal_multisets(k: int, S: Fraction, lo: int = 0):
    """Nondecreasing ``d_1 <= ... <= d_k`` (all ``>= lo``) with ``sum 1/(d+3) = S``."""
    if k == 0:
        if S == 0:
            yield ()
        return
    if S <= 0:
        return
    if k == 1:
        d = 1 / S - 3
        if d.denominator == 1 and d >= lo:
            yield (int(d),)
        return
    # the first (largest) reciprocal is at least S/k
    d = lo
    while Fraction(k, d + 3) >= S:
        if Fraction(1, d + 3) <= S:
            for rest in _reciprocal_multisets(k - 1, S - Fraction(1, d + 3), d):
                yield (d, *rest)
        d += 1


def _fit_points(Ztop: RationalFunctionD, t: int) -> list[tuple[int, tuple[int, ...]]]:
    """All ``(b, {d_k})`` whose forward ``Ztop`` equals the given one."""
    base = forward_topological_zeta(t, 0, [])
    target = Ztop - base
    if t != 2:
        types = _point_types_from_poles(Ztop, t)
        if not types:
            if target != RationalFunctionD.const(0):
                raise RecoveryError("no point poles, yet Ztop differs from the point-free one")
            return [(0, ())]
        counts = [_as_count(x, f"multiplicity of d={d}")
                  for d, x in zip(types, _solve_columns(target, [_point_column(t, d) for d in types]))]
        pts = [d for d, m in zip(types, counts) for _ in range(m)]
        found = [(pts.count(0), tuple(d for d in pts if d))]
    else:
        # every point sits at -2 and Ztop only sees V = sum (1/2 - 1/(d+3))
        # a crossing point (d = 0) has 1/2 - 1/3 = 1/6
        (V,) = _solve_columns(target, [_point_column(t, 0) * 6])
        found = [(pts.count(0), tuple(d for d in pts if d))
                 for k in range(0, t + 1)
                 for pts in _reciprocal_multisets(k, Fraction(k, 2) - V)]
    out = []
    for b, ds in found:
        if b + len(ds) <= t and forward_topological_zeta(t, b, ds) == Ztop:
            out.append((b, ds))
    if not out:
        raise RecoveryError("no configuration of points reproduces the topological zeta function")
    return out


def recover_c_multiset(z: ZetaFunction | MotivicRational, Q: MotivicRational | None = None) -> RecoveredInvariants:
    """``t``, ``b``, ``{d_k}`` and ``{c_j}`` from a zeta function and its Poincare series.

    ``z`` is a :class:`ZetaFunction` (its series is derived) or the bare ``Z``
    together with ``Q``.  Configurations that ``Ztop`` cannot tell apart are
    separated by comparing motivic zeta functions.
    """
    if isinstance(z, ZetaFunction):
        Q = igusa_series(z) if Q is None else Q
    elif Q is None:
        raise TypeError("a bare zeta function needs its Poincare series Q")
    Z = _value(z)
    Ztop = topological_limit(Z)
    t = recover_t(Q, Ztop)
    matches = _fit_points(Ztop, t)
    if t not in (1, 2):
        b_res = recover_b(Ztop, t)
        matches = [m for m in matches if m[0] == b_res]
    if len(matches) > 1:
        matches = [m for m in matches if mr_equal(forward_zeta(t, *m), Z)]
    if not matches:
        raise RecoveryError("the topological fit and the motivic zeta function disagree")
    b, ds = matches[0]
    return RecoveredInvariants(t, b, sorted(ds), c_multiset_from(t, b, ds), matches)
