"""Jet enumeration kernels.

Both kernels walk the coefficient levels ``t**0 .. t**m`` of all variables at
once.  After level ``k`` is fixed, the coefficient of ``t**j`` in a monomial is
known for every ``j`` below ``(k + 1) + sum(ord) - max(ord)``, the orders taken
over its factors; equations are checked exactly on that determined range.

* ``numba``: depth-first search with the per-branch bound above, run over
  slices of the first level (threads release the GIL).
* ``numpy``: breadth-first level sweep with the static bound ``k + delta - 1``
  (``delta`` the least monomial degree, at the origin), vectorised over rows.

``TORICZETA_KERNELS=numpy`` forces the fallback; it is also used when numba is
missing.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

__all__ = ["HAVE_NUMBA", "FlatSystem", "active_backend", "search_numba", "search_numpy"]

MODE_COUNT = 0
MODE_IMAGE = 1


def active_backend() -> str:
    choice = os.environ.get("TORICZETA_KERNELS", "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"TORICZETA_KERNELS must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


@dataclass(frozen=True)
class FlatSystem:
    """Polynomial system flattened to arrays: term ``i`` of equation
    ``term_eq[i]`` is ``term_coef[i] * prod(x[fac_var[fac_ptr[i]:fac_ptr[i+1]]])``."""

    num_vars: int
    num_eqs: int
    term_eq: np.ndarray
    term_coef: np.ndarray
    fac_ptr: np.ndarray
    fac_var: np.ndarray

    @property
    def min_degree(self) -> int:
        degs = np.diff(self.fac_ptr)
        degs = degs[degs > 0]
        return int(degs.min()) if degs.size else 0


def _search_py(nv, q, first, n, m, mode, lo, hi, add, mul, term_eq, term_coef, fac_ptr, fac_var, n_eq):
    qn = 1
    for _ in range(nv):
        qn *= q
    n_terms = term_eq.shape[0]
    coeff = np.zeros((nv, m + 1), dtype=np.int64)
    idx = np.zeros(m + 2, dtype=np.int64)
    chk = np.full(m + 2, -1, dtype=np.int64)  # chk[level + 1]: last checked power after level
    ordv = np.zeros(nv, dtype=np.int64)
    prod = np.zeros(m + 1, dtype=np.int64)
    tmp = np.zeros(m + 1, dtype=np.int64)
    eqsum = np.zeros((n_eq, m + 1), dtype=np.int64)
    count = 0

    level = first
    idx[level] = lo
    while True:
        limit = hi if level == first else qn
        if idx[level] >= limit:
            if level == first:
                break
            level -= 1
            idx[level] += 1
            continue
        code = idx[level]
        for v in range(nv):
            coeff[v, level] = code % q
            code //= q
        # orders of the known parts
        for v in range(nv):
            o = level + 1
            for j in range(level + 1):
                if coeff[v, j] != 0:
                    o = j
                    break
            ordv[v] = o
        D = m + 1
        for i in range(n_terms):
            a, b = fac_ptr[i], fac_ptr[i + 1]
            if a == b:
                continue
            s = 0
            mx = 0
            for f in range(a, b):
                o = ordv[fac_var[f]]
                s += o
                if o > mx:
                    mx = o
            u = level + 1 + s - mx
            if u < D:
                D = u
        top = D - 1
        if top > m:
            top = m
        lo_j = chk[level] + 1
        ok = True
        if top >= lo_j:
            for e in range(n_eq):
                for j in range(top + 1):
                    eqsum[e, j] = 0
            for i in range(n_terms):
                for j in range(top + 1):
                    prod[j] = 0
                prod[0] = 1
                for f in range(fac_ptr[i], fac_ptr[i + 1]):
                    v = fac_var[f]
                    for j in range(top + 1):
                        acc = 0
                        jm = j if j < level else level
                        for r in range(jm + 1):
                            acc = add[acc, mul[coeff[v, r], prod[j - r]]]
                        tmp[j] = acc
                    for j in range(top + 1):
                        prod[j] = tmp[j]
                c = term_coef[i]
                e = term_eq[i]
                for j in range(lo_j, top + 1):
                    eqsum[e, j] = add[eqsum[e, j], mul[c, prod[j]]]
            for e in range(n_eq):
                for j in range(lo_j, top + 1):
                    if eqsum[e, j] != 0:
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            idx[level] += 1
            continue
        chk[level + 1] = top
        if top >= m:
            if mode == MODE_COUNT:
                w = 1
                for _ in range(m - level):
                    w *= qn
                count += w
            elif level >= n:
                count += 1
                level = n
            else:
                w = 1
                for _ in range(n - level):
                    w *= qn
                count += w
            idx[level] += 1
            continue
        level += 1
        idx[level] = 0
        chk[level] = top
    return count


if HAVE_NUMBA:
    _search_jit = njit(cache=True, nogil=True)(_search_py)
else:  # pragma: no cover
    _search_jit = _search_py


def search_numba(system: FlatSystem, field, first: int, n: int, m: int, mode: int, lo: int, hi: int) -> int:
    fn = _search_jit if HAVE_NUMBA else _search_py
    return int(
        fn(system.num_vars, field.q, first, n, m, mode, lo, hi, field.add, field.mul,
           system.term_eq, system.term_coef, system.fac_ptr, system.fac_var, system.num_eqs)
    )


def _series_coeff(x: np.ndarray, prod: np.ndarray, j: int, add, mul) -> np.ndarray:
    """Coefficient ``j`` of ``x * prod`` for every row (both shaped ``(R, m+1)``)."""
    acc = np.zeros(x.shape[0], dtype=np.int64)
    for r in range(j + 1):
        acc = add[acc, mul[x[:, r], prod[:, j - r]]]
    return acc


def search_numpy(system: FlatSystem, field, first: int, n: int, m: int, mode: int,
                 max_rows: int = 20_000_000) -> int:
    nv, q = system.num_vars, field.q
    add, mul = field.add, field.mul
    qn = q**nv
    digits = np.array([[(c // q**v) % q for v in range(nv)] for c in range(qn)], dtype=np.int8)
    delta = system.min_degree if first == 1 else 1
    rows = np.zeros((1, nv, m + 1), dtype=np.int8)
    checked = -1
    for k in range(first, m + 1):
        if rows.shape[0] * qn > max_rows:
            raise MemoryError(f"level {k} would hold {rows.shape[0] * qn} partial jets")
        rows = np.repeat(rows, qn, axis=0)
        rows[:, :, k] = np.tile(digits, (rows.shape[0] // qn, 1))
        top = m if delta == 0 else min(m, k + delta - 1)
        if top > checked:
            keep = np.ones(rows.shape[0], dtype=bool)
            x = rows.astype(np.int64)
            x[:, :, k + 1:] = 0
            sums = np.zeros((system.num_eqs, rows.shape[0], top + 1), dtype=np.int64)
            for i in range(system.term_eq.shape[0]):
                prod = np.zeros((rows.shape[0], top + 1), dtype=np.int64)
                prod[:, 0] = 1
                for f in range(system.fac_ptr[i], system.fac_ptr[i + 1]):
                    xv = x[:, system.fac_var[f], : top + 1]
                    prod = np.stack([_series_coeff(xv, prod, j, add, mul) for j in range(top + 1)], axis=1)
                c = system.term_coef[i]
                e = system.term_eq[i]
                sums[e] = add[sums[e], mul[c, prod]]
            for e in range(system.num_eqs):
                keep &= ~np.any(sums[e][:, checked + 1: top + 1] != 0, axis=1)
            rows = rows[keep]
            checked = top
        if rows.shape[0] == 0:
            return 0
        if checked >= m:
            if mode == MODE_COUNT:
                return rows.shape[0] * qn ** (m - k)
            if k >= n:
                return int(np.unique(rows[:, :, : n + 1].reshape(rows.shape[0], -1), axis=0).shape[0])
            uniq = np.unique(rows[:, :, : k + 1].reshape(rows.shape[0], -1), axis=0).shape[0]
            return int(uniq) * qn ** (n - k)
    raise AssertionError("unreachable: the last level determines every coefficient")
