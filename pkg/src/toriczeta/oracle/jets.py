"""Brute-force point counts of jet schemes over small finite fields."""

from __future__ import annotations

import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..lattice import SurfaceSingularity, resolution_fan, toric_ideal
from ..motivic import eval_L
from .fields import finite_field
from .kernels import MODE_COUNT, MODE_IMAGE, FlatSystem, active_backend, search_numba, search_numpy

__all__ = [
    "MAX_SPACE",
    "SearchSpaceTooLarge",
    "JetCountTask",
    "count_jets",
    "count_image_jets",
    "stabilized_image_count",
    "compare_with_series",
    "SeriesCheck",
    "next_prime",
]

MAX_SPACE = 10**9

Term = tuple[int, dict[int, int]]


class SearchSpaceTooLarge(ValueError):
    pass


def _normalize(eq) -> list[Term]:
    if hasattr(eq, "terms") and callable(eq.terms):
        eq = eq.terms()
    out = []
    for coef, mono in eq:
        out.append((int(coef), {int(v): int(e) for v, e in dict(mono).items() if e}))
    return out


@dataclass(frozen=True)
class JetCountTask:
    """Count ``n``-jets of ``V(equations)`` in ``num_vars`` variables over ``GF(q)``.

    An equation is a list of ``(coefficient, {variable: exponent})`` terms or
    any object with a ``terms()`` method returning one.
    """

    equations: tuple
    num_vars: int
    n: int
    q: int
    at_origin: bool = True
    max_space: int = MAX_SPACE

    def __init__(self, equations: Iterable, num_vars: int, n: int, q: int,
                 at_origin: bool = True, max_space: int = MAX_SPACE):
        object.__setattr__(self, "equations", tuple(_group(equations)))
        object.__setattr__(self, "num_vars", int(num_vars))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "at_origin", bool(at_origin))
        object.__setattr__(self, "max_space", int(max_space))
        if self.n < 0:
            raise ValueError(f"truncation order must be >= 0, got {n}")
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for eq in self.equations:
            for _, mono in eq:
                for v in mono:
                    if not 0 <= v < self.num_vars:
                        raise ValueError(f"variable index {v} outside 0..{self.num_vars - 1}")
        finite_field(self.q)

    def levels(self, top: int | None = None) -> int:
        top = self.n if top is None else top
        return top + (0 if self.at_origin else 1)

    def space(self, top: int | None = None) -> int:
        return self.q ** (self.num_vars * self.levels(top))

    def flat(self) -> FlatSystem:
        F = finite_field(self.q)
        term_eq, term_coef, ptr, fac = [], [], [0], []
        for e, eq in enumerate(self.equations):
            for coef, mono in eq:
                c = F.from_int(coef)
                if c == 0:
                    continue
                term_eq.append(e)
                term_coef.append(c)
                for v, k in sorted(mono.items()):
                    fac.extend([v] * k)
                ptr.append(len(fac))
        return FlatSystem(
            self.num_vars,
            len(self.equations),
            np.array(term_eq, dtype=np.int64),
            np.array(term_coef, dtype=np.int64),
            np.array(ptr, dtype=np.int64),
            np.array(fac, dtype=np.int64),
        )


def _group(equations) -> list[list[Term]]:
    return [_normalize(eq) for eq in equations]


def _run(task: JetCountTask, n: int, m: int, mode: int, workers: int | None) -> int:
    system = task.flat()
    F = finite_field(task.q)
    first = 1 if task.at_origin else 0
    if m < first:
        # only the zero jet; it satisfies the system iff every constant term vanishes
        consts = np.zeros(system.num_eqs, dtype=np.int64)
        for i in range(system.term_eq.shape[0]):
            if system.fac_ptr[i] == system.fac_ptr[i + 1]:
                e = system.term_eq[i]
                consts[e] = F.add[consts[e], system.term_coef[i]]
        return int(not consts.any())
    qn = task.q**task.num_vars
    if active_backend() == "numpy":
        return search_numpy(system, F, first, n, m, mode)
    workers = workers or int(os.environ.get("TORICZETA_WORKERS", "1"))
    if workers <= 1:
        return search_numba(system, F, first, n, m, mode, 0, qn)
    bounds = np.linspace(0, qn, min(qn, 4 * workers) + 1).astype(np.int64)
    slices = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(lambda ab: search_numba(system, F, first, n, m, mode, ab[0], ab[1]), slices)
        return sum(parts)


def count_jets(task: JetCountTask, workers: int | None = None) -> int:
    """Number of ``n``-jets over ``GF(q)`` satisfying the equations modulo ``t**(n+1)``."""
    if task.space() > task.max_space:
        raise SearchSpaceTooLarge(
            f"search space {task.q}^{task.num_vars * task.levels()} exceeds {task.max_space}")
    return _run(task, task.n, task.n, MODE_COUNT, workers)


def count_image_jets(equations, n: int, m: int, q: int, num_vars: int | None = None, *,
                     at_origin: bool = True, max_space: int = MAX_SPACE,
                     workers: int | None = None) -> int:
    """Number of ``n``-jets that are truncations of ``m``-jets of the variety."""
    if m < n:
        raise ValueError(f"need m >= n, got n={n}, m={m}")
    if num_vars is None:
        num_vars = 1 + max((v for eq in _group(equations) for _, mono in eq for v in mono), default=0)
    task = JetCountTask(equations, num_vars, m, q, at_origin, max_space)
    if task.space() > max_space:
        raise SearchSpaceTooLarge(
            f"search space {q}^{num_vars * task.levels()} exceeds {max_space}")
    if m == n:
        return _run(task, n, n, MODE_COUNT, workers)
    return _run(task, n, m, MODE_IMAGE, workers)


def stabilized_image_count(equations, n: int, q: int, num_vars: int | None = None, *,
                           m_max: int = 12, patience: int = 1, max_space: int = MAX_SPACE,
                           m_start: int | None = None, progress: bool = False,
                           workers: int | None = None) -> tuple[int, int, list[tuple[int, int]]]:
    """Raise ``m`` until ``patience`` consecutive image counts agree.

    Returns ``(count, witness_m, history)``; ``witness_m`` is the first ``m``
    of the final constant run.  Raises when ``m_max`` is reached first.
    """
    history: list[tuple[int, int]] = []
    m = n if m_start is None else m_start
    while m <= m_max:
        c = count_image_jets(equations, n, m, q, num_vars, max_space=max_space, workers=workers)
        if history and c > history[-1][1]:
            raise ArithmeticError(f"image count grew from {history[-1][1]} to {c} at m={m}")
        history.append((m, c))
        if progress:
            print(f"image n={n} m={m} q={q}: {c}", file=sys.stderr)
        tail = history[-(patience + 1):]
        if len(tail) == patience + 1 and len({x for _, x in tail}) == 1:
            return c, tail[0][0], history
        m += 1
    raise ArithmeticError(f"image count did not stabilize by m={m_max}: {history}")


def next_prime(q: int) -> int:
    k = q + 1
    while any(k % d == 0 for d in range(2, int(k**0.5) + 1)):
        k += 1
    return k


@dataclass
class SeriesCheck:
    p: int
    q_sing: int
    field_q: int
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["status"] == "PASS" for r in self.rows)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q_sing, "field": self.field_q, "passed": self.passed,
                "rows": self.rows}


def singularity_task(p: int, q_sing: int, n: int, field_q: int, **kw) -> JetCountTask:
    res = resolution_fan(SurfaceSingularity(p, q_sing))
    return JetCountTask(toric_ideal(res.c_seq), res.t + 2, n, field_q, True, **kw)


def compare_with_series(p: int, q_sing: int, n_max: int, field_q: int, *,
                        retry_next_prime: bool = True, max_space: int = MAX_SPACE,
                        progress: bool = False, ad_form: str = "exact") -> SeriesCheck:
    """Compare ``eval_L(Q_n, field_q)`` with brute-force jet counts for ``n <= n_max``.

    A mismatch is re-tested at the next prime; it is reported as ``FAIL`` only
    when it persists there and as ``INCONCLUSIVE`` otherwise.
    """
    from ..zeta import igusa_coefficients, igusa_series, zeta_for

    coeffs = igusa_coefficients(igusa_series(zeta_for(p, q_sing, ad_form)), n_max)
    report = SeriesCheck(p, q_sing, field_q)
    for n, poly in enumerate(coeffs):
        row = {"n": n, "predicted": int(eval_L(poly, field_q))}
        try:
            row["counted"] = count_jets(singularity_task(p, q_sing, n, field_q, max_space=max_space))
        except SearchSpaceTooLarge as exc:
            row.update(status="SKIPPED", reason=str(exc))
            report.rows.append(row)
            continue
        if row["counted"] == row["predicted"]:
            row["status"] = "PASS"
        else:
            row["status"] = "FAIL"
            if retry_next_prime:
                alt = next_prime(field_q)
                try:
                    again = count_jets(singularity_task(p, q_sing, n, alt, max_space=max_space))
                    ok = again == int(eval_L(poly, alt))
                    row["retry"] = {"field": alt, "counted": again, "predicted": int(eval_L(poly, alt))}
                    if ok:
                        row["status"] = "INCONCLUSIVE"
                except SearchSpaceTooLarge:
                    row["retry"] = {"field": alt, "status": "SKIPPED"}
        if progress:
            print(f"({p},{q_sing}) n={n} q={field_q}: {row['status']}", file=sys.stderr)
        report.rows.append(row)
    return report
