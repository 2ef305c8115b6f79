"""Arcs on affine toric varieties: semigroup generators, the basis condition on
order vectors, jet classes stratified by pairing profiles, and the threefold
whose geometric and arithmetic jet counts differ.

A cone is given by the ray generators of its dual ``σ̌`` in ``M = Z^dim``; an
arc meeting the torus is an order vector ``ν`` in the interior of ``σ`` (all
pairings with ``σ̌`` positive) together with unit power series ``u(m)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .motivic import L, LaurentPoly

__all__ = [
    "ConeND",
    "ArcDecomposition",
    "StarResult",
    "COUNTEREXAMPLE_CONE",
    "COUNTEREXAMPLE_NU",
    "hilbert_basis",
    "check_star",
    "star_scan",
    "interior_vectors",
    "jet_from_arc",
    "pairing_profiles",
    "local_jet_class",
    "global_jet_class",
    "counterexample_class",
    "square_product_count",
]

Vec = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _det(rows: Sequence[Sequence]) :
    """Determinant by fraction-free elimination (exact for ints and Fractions)."""
    A = [list(map(Fraction, r)) for r in rows]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def _solve(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """``x`` with ``sum_i x_i rows[i] = rhs`` for independent ``rows``."""
    n = len(rows)
    # columns of the system are the given rows
    A = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        A[c] = [x / A[c][c] for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def _primitive(v: Sequence[int]) -> Vec:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    if g == 0:
        raise ValueError("zero vector")
    return tuple(x // g for x in v)


def _rank(rows: list[list[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    A = [list(map(Fraction, r)) for r in rows]
    rank, ncol = 0, len(A[0])
    for c in range(ncol):
        piv = next((r for r in range(rank, len(A)) if A[r][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][c] != 0:
                f = A[r][c] / A[rank][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class ConeND:
    """Simplicial pointed cone ``σ̌`` in ``M``, by primitive ray generators."""

    dual_generators: tuple[Vec, ...]

    def __init__(self, dual_generators: Sequence[Sequence[int]]):
        gens = tuple(tuple(int(x) for x in g) for g in dual_generators)
        if not gens:
            raise ValueError("a cone needs generators")
        dim = len(gens[0])
        if dim not in (2, 3) or any(len(g) != dim for g in gens):
            raise ValueError("generators must all have length 2 or all length 3")
        if len(gens) != dim:
            raise ValueError(f"a simplicial full-dimensional cone in dimension {dim} has {dim} rays")
        if any(_primitive(g) != g for g in gens):
            raise ValueError(f"generators {gens} are not primitive")
        if _det(gens) == 0:
            raise ValueError("generators are linearly dependent")
        object.__setattr__(self, "dual_generators", gens)

    @classmethod
    def from_surface(cls, p: int, q: int) -> ConeND:
        """``σ̌`` for ``σ = cone((1,0), (p,q))``."""
        from .lattice import SurfaceSingularity

        SurfaceSingularity(p, q)
        return cls([(0, 1), (q, -p)])

    @property
    def dim(self) -> int:
        return len(self.dual_generators)

    @property
    def index(self) -> int:
        return abs(int(_det(self.dual_generators)))

    def is_smooth(self) -> bool:
        return self.index == 1

    def primal_rays(self) -> list[Vec]:
        """Primitive rays of ``σ`` in ``N``; ray ``i`` pairs to zero with all
        dual generators but the ``i``-th."""
        gens = self.dual_generators
        out = []
        for i in range(self.dim):
            others = [g for j, g in enumerate(gens) if j != i]
            if self.dim == 2:
                (a, b), = others
                v = (-b, a)
            else:
                (a1, a2, a3), (b1, b2, b3) = others
                v = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
            v = _primitive(v)
            if _dot(gens[i], v) < 0:
                v = tuple(-x for x in v)
            out.append(v)
        return out

    def is_interior(self, nu: Sequence[int]) -> bool:
        return all(_dot(g, nu) > 0 for g in self.dual_generators)

    def to_json(self) -> dict:
        return {"dual_generators": [list(g) for g in self.dual_generators]}


def hilbert_basis(cone: ConeND) -> list[Vec]:
    """Minimal generators of ``σ̌ ∩ M``, sorted.

    Candidates are the generators and the lattice points of the half-open
    fundamental parallelepiped; a candidate is dropped when subtracting another
    candidate leaves a nonzero element of the cone.
    """
    gens = cone.dual_generators
    d = cone.dim
    lo = [sum(min(0, g[i]) for g in gens) for i in range(d)]
    hi = [sum(max(0, g[i]) for g in gens) for i in range(d)]
    cands = set(gens)
    for m in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if any(m):
            lam = _solve(gens, m)
            if all(0 <= x < 1 for x in lam):
                cands.add(m)

    def in_cone(v):
        return all(x >= 0 for x in _solve(gens, v))

    out = []
    for m in cands:
        reducible = any(
            h != m and any(a != b for a, b in zip(h, m)) and in_cone(tuple(a - b for a, b in zip(m, h)))
            for h in cands
        )
        if not reducible:
            out.append(m)
    return sorted(out)


def _unimodular(vs: Sequence[Vec]) -> bool:
    return abs(_det(vs)) == 1


@dataclass
class StarResult:
    """Outcome of the basis condition at one order vector."""

    nu: Vec
    satisfied: bool
    basis: tuple[Vec, ...] | None
    pairings: dict[Vec, int]
    minimizers: tuple[Vec, ...]

    def to_json(self) -> dict:
        return {
            "nu": list(self.nu),
            "satisfied": self.satisfied,
            "basis": None if self.basis is None else [list(b) for b in self.basis],
            "minimizers": [list(m) for m in self.minimizers],
            "pairings": [[list(k), v] for k, v in sorted(self.pairings.items())],
        }


def _basis_ok(B: Sequence[Vec], G: Sequence[Vec], pair: dict[Vec, int]) -> bool:
    for mu in G:
        if mu in B:
            continue
        coords = _solve(B, mu)
        for i, bi in enumerate(B):
            # exempt when mu lies on the coordinate hyperplane of bi
            if coords[i] != 0 and pair[mu] < pair[bi]:
                return False
    return True


def check_star(cone: ConeND, nu: Sequence[int], generators: Sequence[Vec] | None = None) -> StarResult:
    """Search the lattice bases inside the Hilbert basis for one satisfying the
    pairing inequalities at ``nu``."""
    nu = tuple(int(x) for x in nu)
    if len(nu) != cone.dim or not cone.is_interior(nu):
        raise ValueError(f"{nu} is not an interior lattice vector of the cone")
    G = list(generators) if generators is not None else hilbert_basis(cone)
    pair = {g: _dot(g, nu) for g in G}
    low = min(pair.values())
    minimizers = tuple(g for g in G if pair[g] == low)
    order = sorted(G, key=lambda g: (pair[g], g))
    combos = sorted(itertools.combinations(order, cone.dim), key=lambda B: sorted(pair[b] for b in B)[::-1])
    for B in combos:
        if _unimodular(B) and _basis_ok(B, G, pair):
            return StarResult(nu, True, tuple(B), pair, minimizers)
    return StarResult(nu, False, None, pair, minimizers)


def interior_vectors(cone: ConeND, bound: int) -> Iterator[Vec]:
    """Interior ``ν`` whose pairings with the dual generators all lie in ``1..bound``."""
    gens = cone.dual_generators
    rays = cone.primal_rays()
    # ν = sum_i p_i r_i / <g_i, r_i> must be integral
    scale = [_dot(g, r) for g, r in zip(gens, rays)]
    for ps in itertools.product(range(1, bound + 1), repeat=cone.dim):
        nu = [sum(Fraction(p, s) * r[k] for p, s, r in zip(ps, scale, rays)) for k in range(cone.dim)]
        if all(x.denominator == 1 for x in nu):
            yield tuple(int(x) for x in nu)


def star_scan(cone: ConeND, bound: int) -> list[Vec]:
    """Order vectors (pairings with the dual generators in ``1..bound``) at which
    no basis of generators satisfies the condition."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    G = hilbert_basis(cone)
    if cone.is_smooth():
        return []
    return [nu for nu in interior_vectors(cone, bound) if not check_star(cone, nu, G).satisfied]


def _series_mul(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _series_inv(a: Sequence, n: int) -> list:
    inv0 = 1 / a[0] if not isinstance(a[0], int) else Fraction(1, a[0])
    out = [inv0] + [0] * (n - 1)
    for k in range(1, n):
        s = sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * inv0
    return out


def _series_pow(a: Sequence, e: int, n: int) -> list:
    base = list(a[:n]) + [0] * max(0, n - len(a))
    if e < 0:
        base, e = _series_inv(base, n), -e
    out = [1] + [0] * (n - 1)
    for _ in range(e):
        out = _series_mul(out, base, n)
    return out


@dataclass
class ArcDecomposition:
    """An arc through the torus as order vector plus truncated angular components.

    ``u`` maps semigroup elements to coefficient lists ``[u_0, u_1, ...]`` with
    ``u_0 != 0``; values of the remaining generators follow multiplicatively.
    """

    cone: ConeND
    nu: Vec
    u: dict[Vec, tuple] = field(default_factory=dict)

    def __post_init__(self):
        self.nu = tuple(int(x) for x in self.nu)
        if not self.cone.is_interior(self.nu):
            raise ValueError(f"order vector {self.nu} is not interior")
        self.u = {tuple(k): tuple(v) for k, v in self.u.items()}
        for k, v in self.u.items():
            if not v or v[0] == 0:
                raise ValueError(f"u{k} must have nonzero constant term")
        self._check_relations()

    def pairing(self, m: Sequence[int]) -> int:
        return _dot(m, self.nu)

    def _basis(self) -> tuple[Vec, ...]:
        keys = sorted(self.u)
        for B in itertools.combinations(keys, self.cone.dim):
            if _unimodular(B):
                return B
        raise ValueError("angular data must include a lattice basis")

    def angular(self, m: Sequence[int], length: int) -> list:
        """First ``length`` coefficients of ``u(m)``."""
        m = tuple(m)
        if m in self.u and len(self.u[m]) >= length:
            return list(self.u[m][:length])
        B = self._basis()
        coords = _solve(B, m)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{m} is not in the lattice spanned by the data")
        for b in B:
            if len(self.u[b]) < length:
                raise ValueError(f"u{b} is stored to {len(self.u[b])} terms, {length} needed")
        out = [1] + [0] * (length - 1)
        for b, c in zip(B, coords):
            out = _series_mul(out, _series_pow(self.u[b], int(c), length), length)
        return out

    def _check_relations(self):
        if len(self.u) <= self.cone.dim:
            return
        B = self._basis()
        for m, v in self.u.items():
            if m in B:
                continue
            n = min([len(v)] + [len(self.u[b]) for b in B])
            derived = self.angular_from_basis(m, B, n)
            if any(x != y for x, y in zip(derived, v[:n])):
                raise ValueError(f"u{m} is inconsistent with the basis values")

    def angular_from_basis(self, m, B, length):
        coords = _solve(B, m)
        out = [1] + [0] * (length - 1)
        for b, c in zip(B, coords):
            out = _series_mul(out, _series_pow(self.u[b], int(c), length), length)
        return out


def jet_from_arc(decomp: ArcDecomposition, n: int, generators: Sequence[Vec] | None = None) -> dict[Vec, list]:
    """Coefficients of ``t^0 .. t^n`` of ``t^<m,ν> u(m)`` for each generator ``m``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    G = list(generators) if generators is not None else hilbert_basis(decomp.cone)
    out = {}
    for m in G:
        k = decomp.pairing(m)
        coeffs = [0] * (n + 1)
        if k <= n:
            for j, c in enumerate(decomp.angular(m, n + 1 - k)):
                coeffs[k + j] = c
        out[m] = coeffs
    return out


def _profile_basis(G: Sequence[Vec]) -> tuple[Vec, ...]:
    for B in itertools.combinations(G, len(G[0])):
        if _unimodular(B):
            return B
    raise ArithmeticError("no lattice basis among the semigroup generators")


def pairing_profiles(cone: ConeND, cap: int, box: int = 12, check_box: int | None = 16) -> set[tuple[int, ...]]:
    """Distinct capped pairing vectors ``min(<m, ν>, cap)`` over the Hilbert basis
    for interior ``ν`` in the pairing box; stable under enlarging the box.

    Lowering one pairing by the index keeps ``ν`` integral and every capped
    value once it exceeds ``cap * index``, so the box is raised to at
    least ``(cap + 1) * index``.
    """
    G = hilbert_basis(cone)
    need = (cap + 1) * cone.index
    if box < need:
        box = need
        check_box = None if check_box is None else need + 4

    def scan(b):
        return {tuple(min(_dot(g, nu), cap) for g in G) for nu in interior_vectors(cone, b)}

    out = scan(box)
    if check_box is not None and scan(check_box) != out:
        raise ArithmeticError(f"profiles not stable between boxes {box} and {check_box}")
    return out


def _stratum_class(profile: Sequence[int], G: Sequence[Vec], B: Sequence[Vec], n: int) -> LaurentPoly:
    """Class of the ``n``-jets of arcs with one capped pairing profile.

    Basis coordinates with pairing ``p <= n`` contribute a unit and ``n - p``
    free coefficients.  Coefficient ``j`` of ``u(μ)`` for ``μ`` outside the
    basis is a free coordinate to the extent the still-unknown coefficients
    ``j`` of basis elements move it: the rank of the exponent matrix on those
    rows and columns.
    """
    pair = dict(zip(G, profile))
    cls = LaurentPoly.const(1)
    for b in B:
        if pair[b] <= n:
            cls = cls * (L - 1) * L ** (n - pair[b])
    others = [m for m in G if m not in B]
    expo = {m: [int(c) for c in _solve(B, m)] for m in others}
    for j in range(n + 1):
        rows = [m for m in others if pair[m] <= n - j]
        cols = [i for i, b in enumerate(B) if pair[b] > n - j]
        rk = _rank([[expo[m][i] for i in cols] for m in rows]) if rows and cols else 0
        if rk:
            cls = cls * ((L - 1) ** rk if j == 0 else L**rk)
    return cls


def local_jet_class(cone: ConeND, n: int = 2, box: int = 12, check_box: int | None = 16) -> LaurentPoly:
    """Class of the ``n``-jets of arcs centred at the fixed point, summed over
    pairing profiles capped at ``n + 1``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    G = hilbert_basis(cone)
    B = _profile_basis(G)
    total = LaurentPoly.const(0)
    for prof in sorted(pairing_profiles(cone, n + 1, box, check_box)):
        if min(prof) < 1:
            raise AssertionError(f"interior order vector with a zero pairing: {prof}")
        total = total + _stratum_class(prof, G, B, n)
    return total


def _face_cone(cone: ConeND, face: Sequence[int]) -> ConeND | None:
    """Dual cone of the face spanned by primal rays ``face``, in the saturated
    sublattice ``N ∩ span``; ``None`` for a ray (smooth, one-dimensional)."""
    rays = [cone.primal_rays()[i] for i in face]
    if len(rays) == 1:
        return None
    if len(rays) == cone.dim:
        return cone
    # a plane in N = Z^3: basis of the kernel of its primitive normal
    r1, r2 = rays
    normal = _primitive((r1[1] * r2[2] - r1[2] * r2[1], r1[2] * r2[0] - r1[0] * r2[2], r1[0] * r2[1] - r1[1] * r2[0]))
    basis = _kernel_basis(normal)
    coords = [tuple(int(c) for c in _solve_in(basis, r)) for r in rays]
    (a1, a2), (b1, b2) = coords
    g1, g2 = _primitive((-b2, b1)), _primitive((-a2, a1))
    if _dot(g1, coords[0]) < 0:
        g1 = tuple(-x for x in g1)
    if _dot(g2, coords[1]) < 0:
        g2 = tuple(-x for x in g2)
    return ConeND([g1, g2])


def _kernel_basis(m: Vec) -> list[Vec]:
    """Lattice basis of ``{v in Z^3 : <m, v> = 0}`` for primitive ``m``."""
    # unimodular completion by column operations
    cols = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    row = list(m)
    while sum(1 for x in row if x) > 1:
        i = min((k for k in range(3) if row[k]), key=lambda k: abs(row[k]))
        for k in range(3):
            if k != i and row[k]:
                f = row[k] // row[i]
                row[k] -= f * row[i]
                cols[k] = [a - f * b for a, b in zip(cols[k], cols[i])]
    return [tuple(cols[k]) for k in range(3) if row[k] == 0]


def _solve_in(basis: Sequence[Vec], v: Vec) -> list[Fraction]:
    """Coordinates of ``v`` in a basis of a rank-2 sublattice of ``Z^3``."""
    b1, b2 = basis
    for i, j in ((0, 1), (0, 2), (1, 2)):
        det = b1[i] * b2[j] - b1[j] * b2[i]
        if det:
            x = Fraction(v[i] * b2[j] - v[j] * b2[i], det)
            y = Fraction(b1[i] * v[j] - b1[j] * v[i], det)
            if any(x * p + y * q != r for p, q, r in zip(b1, b2, v)):
                raise ValueError(f"{v} is not in the span")
            return [x, y]
    raise ValueError("degenerate basis")


def global_jet_class(cone: ConeND, n: int = 2) -> LaurentPoly:
    """Class of the ``n``-jets of all arcs: over each torus orbit ``O_τ`` the
    local class at its distinguished point times the jets of the complementary
    torus, ``sum_τ (L-1)^(d - dim τ) L^(n (d - dim τ)) local_τ``."""
    d = cone.dim
    total = LaurentPoly.const(0)
    for k in range(d + 1):
        orbit = (L - 1) ** (d - k) * L ** (n * (d - k))
        for face in itertools.combinations(range(d), k):
            if k == 0:
                local = LaurentPoly.const(1)
            elif k == 1:
                local = L**n  # arcs of A^1 centred at 0
            else:
                local = local_jet_class(_face_cone(cone, face), n)
            total = total + orbit * local
    return total


COUNTEREXAMPLE_CONE = ConeND([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
COUNTEREXAMPLE_NU = (2, 2, -1)


def counterexample_class(n: int = 2) -> LaurentPoly:
    """Class of the 2-jets of arcs on the threefold ``x1 x2 x4 = x3^2``."""
    return global_jet_class(COUNTEREXAMPLE_CONE, n)


def square_product_count(q: int) -> int:
    """``#{(a, b, c) in (F_q^*)^3 : abc is a square}``, by enumeration."""
    from .oracle.fields import finite_field

    if q % 2 == 0:
        raise ValueError(f"q must be odd, got {q}")
    F = finite_field(q)
    mul = F.mul
    units = range(1, q)
    squares = {int(mul[x, x]) for x in units}
    count = 0
    for a in units:
        for b in units:
            ab = int(mul[a, b])
            count += sum(1 for c in units if int(mul[ab, c]) in squares)
    return count
