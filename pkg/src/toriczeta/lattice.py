"""Hirzebruch-Jung continued fractions and the lattice data of a cyclic quotient
surface singularity.

The singularity is the affine toric surface of the cone spanned by ``(1, 0)`` and
``(p, q)`` with ``0 < p < q`` coprime.  Its minimal resolution is read off the
expansion of ``q/(q-p)``; its embedding equations come from the expansion of
``q/p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "SurfaceSingularity",
    "HJSequence",
    "ResolutionData",
    "ThetaData",
    "Binomial",
    "hj_expand",
    "hj_value",
    "dual_sequence",
    "resolution_fan",
    "derived_invariants",
    "embedding_ideal",
    "toric_ideal",
    "theta_vertices",
    "segment_lattice_points",
    "det2",
    "coprime_pairs",
]

Vec2 = tuple[int, int]


@dataclass(frozen=True)
class SurfaceSingularity:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if not 0 < self.p < self.q:
            raise ValueError(f"need 0 < p < q, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"gcd(p, q) = {math.gcd(self.p, self.q)} != 1")


@dataclass(frozen=True)
class HJSequence:
    entries: tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise ValueError("a Hirzebruch-Jung sequence is nonempty")
        if any(e < 2 for e in entries):
            raise ValueError(f"entries must be >= 2, got {list(entries)}")
        object.__setattr__(self, "entries", entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __repr__(self):
        return f"HJSequence({list(self.entries)})"


def hj_expand(numerator: int, denominator: int) -> HJSequence:
    """Expand ``numerator/denominator = e1 - 1/(e2 - 1/(... - 1/em))`` with all ``ei >= 2``."""
    if denominator < 1 or numerator <= denominator:
        raise ValueError(f"need numerator > denominator >= 1, got {numerator}/{denominator}")
    if math.gcd(numerator, denominator) != 1:
        raise ValueError(f"{numerator} and {denominator} are not coprime")
    out = []
    num, den = numerator, denominator
    while den:
        e = -(-num // den)
        out.append(e)
        num, den = den, e * den - num
    return HJSequence(out)


def hj_value(seq: HJSequence | Sequence[int]) -> Fraction:
    entries = seq.entries if isinstance(seq, HJSequence) else tuple(seq)
    val = Fraction(entries[-1])
    for e in reversed(entries[:-1]):
        val = e - 1 / val
    return val


def dual_sequence(b_seq: HJSequence | Sequence[int]) -> HJSequence:
    """Expansion of ``q/p`` from the expansion of ``q/(q-p)`` (and vice versa).

    Runs of 2's and entries different from 2 are traded against each other:
    a run of ``j`` 2's becomes the single entry ``j + 3``, minus one for each end
    of the sequence the run touches; an entry ``b != 2`` becomes ``b - 3`` 2's,
    plus one for each end it sits at; two neighbouring entries both different
    from 2 are separated by a 3 (an empty run).
    """
    b = list(HJSequence(b_seq if not isinstance(b_seq, HJSequence) else b_seq.entries))
    s = len(b)
    out: list[int] = []
    i = 0
    while i < s:
        if b[i] == 2:
            j = i
            while j < s and b[j] == 2:
                j += 1
            run = j - i
            out.append(run + 3 - (i == 0) - (j == s))
            i = j
        else:
            out.extend([2] * (b[i] - 3 + (i == 0) + (i == s - 1)))
            if i + 1 < s and b[i + 1] != 2:
                out.append(3)
            i += 1
    return HJSequence(out)


def det2(u: Vec2, v: Vec2) -> int:
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class ResolutionData:
    sing: SurfaceSingularity
    b_seq: HJSequence
    c_seq: HJSequence
    fan_vectors: tuple[Vec2, ...]
    a: int
    r: int
    b: int
    d_list: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def s(self) -> int:
        return len(self.b_seq)

    @property
    def t(self) -> int:
        return len(self.c_seq)

    def invariants(self) -> dict:
        return {"s": self.s, "t": self.t, "a": self.a, "r": self.r, "b": self.b,
                "d_list": list(self.d_list)}


def derived_invariants(res: ResolutionData | HJSequence) -> tuple[int, int, int, tuple[int, ...]]:
    """``(a, r, b, d_list)`` from the b-sequence.

    ``a`` counts the vectors inserted by blowing up the singular point: the two
    outer ones plus every interior ``b_i != 2``; a single-entry sequence inserts
    only one.  ``d_list`` holds the lengths of the maximal runs of 2's among
    ``b_2 .. b_{s-1}``, left to right, and ``b = a - r - 1`` counts adjacent
    inserted pairs.
    """
    b_seq = res.b_seq if isinstance(res, ResolutionData) else res
    entries = list(b_seq)
    s = len(entries)
    interior = entries[1:-1]
    a = 1 if s == 1 else 2 + sum(1 for x in interior if x != 2)
    runs = []
    run = 0
    for x in interior:
        if x == 2:
            run += 1
        elif run:
            runs.append(run)
            run = 0
    if run:
        runs.append(run)
    r = len(runs)
    b = a - r - 1
    if b < 0:
        raise ArithmeticError(f"negative adjacent-pair count for {entries}")
    return a, r, b, tuple(runs)


def resolution_fan(sing: SurfaceSingularity | tuple[int, int]) -> ResolutionData:
    if not isinstance(sing, SurfaceSingularity):
        sing = SurfaceSingularity(*sing)
    p, q = sing.p, sing.q
    b_seq = hj_expand(q, q - p)
    c_seq = hj_expand(q, p)
    vs: list[Vec2] = [(1, 0), (1, 1)]
    for bj in list(b_seq):
        v, w = vs[-1], vs[-2]
        vs.append((bj * v[0] - w[0], bj * v[1] - w[1]))
    if vs[-1] != (p, q):
        raise ArithmeticError(f"fan recurrence ended at {vs[-1]}, expected {(p, q)}")
    a, r, b, d_list = derived_invariants(b_seq)
    notes = []
    if len(b_seq) <= 2:
        notes.append(f"s={len(b_seq)}: the inserted-vector count a={a} uses the short-sequence rule")
    return ResolutionData(sing, b_seq, c_seq, tuple(vs), a, r, b, d_list, tuple(notes))


@dataclass(frozen=True)
class Binomial:
    """``x[lhs[0]] * x[lhs[1]] = x[rhs_var] ** rhs_exp``."""

    lhs: tuple[int, int]
    rhs_var: int
    rhs_exp: int

    def terms(self) -> list[tuple[int, dict[int, int]]]:
        """The polynomial ``lhs - rhs`` as ``[(coefficient, {var: exponent})]``."""
        i, k = self.lhs
        left = {i: 1, k: 1} if i != k else {i: 2}
        return [(1, left), (-1, {self.rhs_var: self.rhs_exp})]

    def __str__(self):
        return f"x{self.lhs[0]}*x{self.lhs[1]} = x{self.rhs_var}^{self.rhs_exp}"


def embedding_ideal(c_seq: HJSequence | Sequence[int]) -> list[Binomial]:
    """Equations ``x_{i-1} x_{i+1} = x_i^{c_i}`` over ``x_0 .. x_{t+1}``."""
    c = list(c_seq)
    return [Binomial((i - 1, i + 1), i, ci) for i, ci in enumerate(c, start=1)]


def toric_ideal(c_seq: HJSequence | Sequence[int]) -> list[list[tuple[int, dict[int, int]]]]:
    """A generating set of the ideal of the surface in ``A^(t+2)``.

    For ``0 <= i`` and ``j >= i + 2`` the relation is
    ``x_i x_j = x_{i+1}**(c_{i+1} - 1) * prod(x_k**(c_k - 2), i+1 < k < j-1)
    * x_{j-1}**(c_{j-1} - 1)`` (for
    ``j = i + 2`` this is ``x_i x_{i+2} = x_{i+1}**c_{i+1}``).  For ``t >= 2`` the
    consecutive relations alone also vanish on coordinate planes such as
    ``x_1 = ... = x_t = 0``.  Each relation is checked against the semigroup
    generators ``u_{k+1} = c_k u_k - u_{k-1}``.
    """
    c = list(c_seq)
    t = len(c)
    u: list[Vec2] = [(1, 0), (0, 1)]
    for ck in c:
        u.append((ck * u[-1][0] - u[-2][0], ck * u[-1][1] - u[-2][1]))
    eqs = []
    for i in range(t):
        for j in range(i + 2, t + 2):
            rhs: dict[int, int] = {}
            if j == i + 2:
                rhs[i + 1] = c[i]
            else:
                rhs[i + 1] = c[i] - 1
                rhs[j - 1] = c[j - 2] - 1
                for k in range(i + 2, j - 1):
                    if c[k - 1] > 2:
                        rhs[k] = c[k - 1] - 2
            lhs_w = (u[i][0] + u[j][0], u[i][1] + u[j][1])
            rhs_w = (sum(e * u[k][0] for k, e in rhs.items()), sum(e * u[k][1] for k, e in rhs.items()))
            if lhs_w != rhs_w:
                raise ArithmeticError(f"relation for x{i}*x{j} does not balance")
            eqs.append([(1, {i: 1, j: 1}), (-1, rhs)])
    return eqs


def _inner(m: Vec2, v: Vec2) -> int:
    return m[0] * v[0] + m[1] * v[1]


def segment_lattice_points(u: Vec2, v: Vec2) -> int:
    """Number of lattice points on the closed segment ``[u, v]``."""
    return math.gcd(v[0] - u[0], v[1] - u[1]) + 1


@dataclass(frozen=True)
class ThetaData:
    theta_indices: tuple[int, ...]
    theta_vertices: tuple[Vec2, ...]
    dual_vertices: tuple[Vec2, ...]


def theta_vertices(sing: SurfaceSingularity | ResolutionData | tuple[int, int]) -> ThetaData:
    """Vertices of the compact boundary of the primal Newton polygon and the dual vertices.

    The primal vertices are ``v_0``, ``v_{s+1}`` and the ``v_i`` with ``b_i != 2``.
    Dual vertex ``alpha`` (``1 <= alpha <= l``) pairs to 1 with the two primal
    vertices bounding edge ``alpha``; the ends are ``(0, 1)`` and ``(q, -p)``.
    """
    res = sing if isinstance(sing, ResolutionData) else resolution_fan(sing)
    vs = res.fan_vectors
    s = res.s
    idx = [0] + [i for i in range(1, s + 1) if res.b_seq[i - 1] != 2] + [s + 1]
    verts = tuple(vs[i] for i in idx)
    dual: list[Vec2] = [(0, 1)]
    for lo in idx[:-1]:
        # v_lo, v_{lo+1} is a lattice basis lying on the edge; m is its dual sum
        v, w = vs[lo], vs[lo + 1]
        det = det2(v, w)
        m = ((w[1] - v[1]) * det, (v[0] - w[0]) * det)
        dual.append(m)
    dual.append((res.sing.q, -res.sing.p))
    for alpha in range(1, len(idx)):
        m = dual[alpha]
        if _inner(m, vs[idx[alpha - 1]]) != 1 or _inner(m, vs[idx[alpha]]) != 1:
            raise ArithmeticError(f"dual vertex {m} does not support edge {alpha}")
    return ThetaData(tuple(idx), verts, tuple(dual))


def coprime_pairs(q_max: int, q_min: int = 2):
    """All ``(p, q)`` with ``0 < p < q``, ``gcd(p, q) = 1`` and ``q_min <= q <= q_max``."""
    for q in range(q_min, q_max + 1):
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                yield p, q
