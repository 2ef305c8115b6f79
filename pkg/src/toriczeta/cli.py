"""Command-line reports: ``analyze``, ``verify``, ``counterexample``, ``recover``.

Exit codes: 0 success, 1 invalid input, 2 a check failed, 3 the oracle task is
too large.  JSON goes to standard output with sorted keys; progress goes to
standard error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .lattice import SurfaceSingularity, resolution_fan
from .motivic import dumps, eval_L
from .zeta import assemble_zeta, igusa_coefficients, igusa_series

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_TOO_LARGE = 0, 1, 2, 3
MAX_JETS = 12
MAX_FIELD = 9
ANALYZE_ORACLE_SPACE = 10**6


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _singularity(p: int, q: int):
    try:
        return resolution_fan(SurfaceSingularity(p, q))
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid singularity ({p}, {q}): {exc}") from exc


def _recovery_section(zf, res) -> dict:
    from .topo import RecoveryError, recover_c_multiset

    forward = {"t": res.t, "b": res.b, "d": sorted(res.d_list), "c": sorted(res.c_seq)}
    try:
        rec = recover_c_multiset(zf).to_json()
    except RecoveryError as exc:
        return {"forward": forward, "error": str(exc), "roundtrip_ok": False}
    ok = all(rec[k] == forward[k] for k in forward)
    return {"forward": forward, "recovered": rec, "roundtrip_ok": ok}


def _poles_section(zf) -> tuple[dict, list[dict]]:
    from .topo import candidate_poles_for, pole_reports, topological_zeta

    Ztop = topological_zeta(zf)
    reps = pole_reports(Ztop, candidate_poles_for(zf.t, zf.res.d_list))
    return Ztop.to_json(), [r.to_json() for r in reps]


def analyze_report(p: int, q: int, jets: int) -> dict:
    if not 0 <= jets <= MAX_JETS:
        raise CliError(f"--jets must be in 0..{MAX_JETS}, got {jets}")
    res = _singularity(p, q)
    zf = assemble_zeta(res)
    Q = igusa_series(zf)
    coeffs = igusa_coefficients(Q, jets)
    ztop, poles = _poles_section(zf)
    from .oracle import compare_with_series

    verdict = compare_with_series(p, q, min(jets, 2), 3, max_space=ANALYZE_ORACLE_SPACE)
    return {
        "input": {"p": p, "q": q},
        "continued_fractions": {"resolution": list(res.b_seq), "embedding": list(res.c_seq)},
        "fan": [list(v) for v in res.fan_vectors],
        "invariants": res.invariants(),
        "Z": zf.value.to_json(),
        "Q": Q.to_json(),
        "coefficients": [c.to_json() for c in coeffs],
        "Z_top": ztop,
        "poles": poles,
        "recovery": _recovery_section(zf, res),
        "verification": verdict.to_json(),
    }


def _verify_size(p: int, q: int, field: int, order: int) -> None:
    from .oracle import MAX_SPACE, singularity_task

    task = singularity_task(p, q, order, field)
    if task.space() > MAX_SPACE:
        raise CliError(
            f"order {order} over GF({field}) needs {field}^{task.num_vars * task.levels()}"
            f" = {task.space():.3e} jets, above the limit {MAX_SPACE:.0e}", EXIT_TOO_LARGE)


def verify_report(p: int, q: int, field: int, order: int) -> tuple[dict, int]:
    from .oracle import compare_with_series, prime_power

    _singularity(p, q)
    try:
        prime_power(field)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if field > MAX_FIELD:
        raise CliError(f"--field must be at most {MAX_FIELD}, got {field}")
    if order < 0:
        raise CliError("--order must be >= 0")
    _verify_size(p, q, field, order)
    check = compare_with_series(p, q, order, field, progress=True)
    return check.to_json(), EXIT_OK if check.passed else EXIT_FAILED


def counterexample_report(check: str) -> tuple[dict, int]:
    from . import arcs

    if check == "class":
        got = arcs.counterexample_class()
        from .motivic import L

        want = L**9 - L**6 + 3 * L**5 - 6 * L**4 + 10 * L**3 - 9 * L**2 + 3 * L
        ok = got == want
        return {"check": "class", "class": got.to_json(), "expected": want.to_json(),
                "local": arcs.local_jet_class(arcs.COUNTEREXAMPLE_CONE).to_json(), "pass": ok}, \
            EXIT_OK if ok else EXIT_FAILED
    if check == "chi":
        rows = []
        for fq in (3, 5, 7):
            n = arcs.square_product_count(fq)
            rows.append({"q": fq, "count": n, "expected": str(Fraction((fq - 1) ** 3, 2)),
                         "pass": n == Fraction((fq - 1) ** 3, 2)})
        ok = all(r["pass"] for r in rows)
        return {"check": "chi", "rows": rows, "pass": ok}, EXIT_OK if ok else EXIT_FAILED
    if check == "star":
        cone = arcs.COUNTEREXAMPLE_CONE
        viol = arcs.star_scan(cone, 5)
        detail = arcs.check_star(cone, arcs.COUNTEREXAMPLE_NU).to_json()
        ok = tuple(arcs.COUNTEREXAMPLE_NU) in viol and not detail["satisfied"]
        return {"check": "star", "cone": cone.to_json(), "violations": [list(v) for v in viol],
                "nu": list(arcs.COUNTEREXAMPLE_NU), "detail": detail, "pass": ok}, \
            EXIT_OK if ok else EXIT_FAILED
    raise CliError(f"unknown check {check!r}")


def recover_report(p: int, q: int) -> dict:
    res = _singularity(p, q)
    zf = assemble_zeta(res)
    _, poles = _poles_section(zf)
    return {"input": {"p": p, "q": q}, "poles": poles, "recovery": _recovery_section(zf, res)}


def _poly_text(js: list[dict]) -> str:
    from .motivic import LaurentPoly

    return str(LaurentPoly.from_json(js))


def _text_analyze(rep: dict) -> str:
    inv = rep["invariants"]
    lines = [
        f"singularity ({rep['input']['p']},{rep['input']['q']})",
        f"  resolution sequence {rep['continued_fractions']['resolution']}",
        f"  embedding sequence  {rep['continued_fractions']['embedding']}",
        "  invariants " + " ".join(f"{k}={inv[k]}" for k in ("s", "t", "a", "r", "b")) + f" d={inv['d_list']}",
        "  series coefficients:",
    ]
    for n, c in enumerate(rep["coefficients"]):
        lines.append(f"    T^{n}: {_poly_text(c)}")
    lines.append("  poles of the topological zeta function:")
    for pole in rep["poles"]:
        lines.append(f"    d={pole['d']} order={pole['order']} residue={pole['residue']} {pole['provenance']}")
    lines.extend(_text_recovery(rep["recovery"]))
    v = rep["verification"]
    lines.append(f"  finite field check over GF({v['field']}):")
    for row in v["rows"]:
        lines.append(f"    n={row['n']}: {row['status']} predicted={row['predicted']} counted={row.get('counted', '-')}")
    return "\n".join(lines)


def _text_recovery(rec: dict) -> list[str]:
    if "error" in rec:
        return [f"  recovery failed: {rec['error']}"]
    r = rec["recovered"]
    return [f"  recovered t={r['t']} b={r['b']} d={r['d']} c={r['c']}  roundtrip_ok={rec['roundtrip_ok']}"]


def _text_generic(rep: dict) -> str:
    if "rows" in rep and "field" in rep:
        head = f"({rep['p']},{rep['q']}) over GF({rep['field']}): {'all PASS' if rep['passed'] else 'NOT all PASS'}"
        body = [f"  n={r['n']}: {r['status']} predicted={r['predicted']} counted={r.get('counted', '-')}"
                for r in rep["rows"]]
        return "\n".join([head, *body])
    if rep.get("check") == "class":
        return f"class {_poly_text(rep['class'])}: {'PASS' if rep['pass'] else 'FAIL'}"
    if rep.get("check") == "chi":
        return "\n".join(f"q={r['q']}: {r['count']} (expected {r['expected']}) {'PASS' if r['pass'] else 'FAIL'}"
                         for r in rep["rows"])
    if rep.get("check") == "star":
        d = rep["detail"]
        return "\n".join([
            f"violating nu={tuple(rep['nu'])}: minimizers {[tuple(m) for m in d['minimizers']]} span no lattice basis",
            f"{len(rep['violations'])} violations with pairings up to 5: {[tuple(v) for v in rep['violations']]}",
        ])
    lines = [f"singularity ({rep['input']['p']},{rep['input']['q']})"]
    lines.extend(_text_recovery(rep["recovery"]))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toriczeta", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, pq=True):
        if pq:
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    a = sub.add_parser("analyze", help="full report for one singularity")
    common(a)
    a.add_argument("--jets", type=int, default=6)
    v = sub.add_parser("verify", help="compare series coefficients with jet counts")
    common(v)
    v.add_argument("--field", type=int, default=3)
    v.add_argument("--order", type=int, default=2)
    c = sub.add_parser("counterexample", help="checks on the threefold x1 x2 x4 = x3^2")
    common(c, pq=False)
    c.add_argument("--check", choices=("class", "chi", "star"), required=True)
    r = sub.add_parser("recover", help="recover the continued fraction data from the zeta function")
    common(r)
    return ap


def run(args) -> tuple[dict, int]:
    if args.command == "analyze":
        return analyze_report(args.p, args.q, args.jets), EXIT_OK
    if args.command == "verify":
        return verify_report(args.p, args.q, args.field, args.order)
    if args.command == "counterexample":
        return counterexample_report(args.check)
    rep = recover_report(args.p, args.q)
    return rep, EXIT_OK if rep["recovery"]["roundtrip_ok"] else EXIT_FAILED


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        rep, code = run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if args.format == "json":
        print(dumps(rep))
    elif args.command == "analyze":
        print(_text_analyze(rep))
    else:
        print(_text_generic(rep))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
