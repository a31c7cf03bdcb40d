"""Command-line interface.

Subcommands:

    count       exact orbit counts for one shape and bound
    predict     closed-form main-term coefficients / two-term values
    compare     empirical counts against predictions over an X sweep
    densities   closed-form vs empirically enumerated local densities
    classgroup  determinant-one classes of a discriminant
    pell        fundamental solution of u^2 - D w^2 = 4
    oracle      pure-cubic field counts vs the cubefree-integer oracle
    sweep       CSV of (sqrt(X), empirical, predicted) for plotting

Exit codes: 0 success, 1 invalid input, 2 range/budget exceeded.  Output is
deterministic apart from the `seconds` column.  Integer counts are emitted
as decimal strings in JSON to survive 53-bit consumers.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import asymptotics as asy
from .counting import (
    CountReport,
    count_orbits,
    default_threads,
    dedekind_field_count,
    pure_field_counts,
)
from .errors import FactorBudgetError, InputError, RangeError
from .forms import QuadForm, is_square_int
from .maximality import EXACT_SIEVE, SieveConfig, local_density, local_density_empirical
from .pell import pell_fundamental
from .reduction import class_group, normalize_shape

CSV_COLUMNS = [
    "experiment", "D", "r", "s", "t", "X", "stage",
    "empirical", "predicted", "second_term", "ratio", "tol", "seconds",
]


def _parse_shape(text: str) -> QuadForm:
    try:
        r, s, t = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise InputError(f"shape must be r,s,t integers: {text!r}") from exc
    return QuadForm(r, s, t)


def _parse_x(text: str) -> int:
    x = int(float(text))
    if x < 1:
        raise InputError("X must be >= 1")
    return x


def _parse_x_list(text: str) -> list[int]:
    return [_parse_x(v) for v in text.split(",")]


def _sieve(args) -> SieveConfig:
    if args.sieve == "exact":
        return EXACT_SIEVE
    return SieveConfig("truncated", args.sieve_bound)


class _Emitter:
    def __init__(self, fmt: str, out_path: str | None):
        self.fmt = fmt
        self.rows: list[dict] = []
        self.out_path = out_path

    def add(self, **row):
        self.rows.append(row)

    def flush(self):
        if self.fmt == "csv":
            lines = [",".join(CSV_COLUMNS)]
            for row in self.rows:
                lines.append(",".join(_csv_cell(row.get(c)) for c in CSV_COLUMNS))
            body = "\n".join(lines) + "\n"
        else:
            body = json.dumps([_json_row(r) for r in self.rows], indent=2, sort_keys=True) + "\n"
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_row(row: dict) -> dict:
    out = {}
    for k, v in row.items():
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            out[k] = str(v)
        else:
            out[k] = v
    return out


def _report_rows(exp: str, rep: CountReport, predicted=None, second=None, tol=None):
    emp = rep.n3_oriented
    ratio = emp / predicted if predicted else None
    r, s, t = rep.shape
    return dict(
        experiment=exp, D=rep.disc, r=r, s=s, t=t, X=rep.X, stage=rep.filter,
        empirical=emp, predicted=predicted, second_term=second, ratio=ratio,
        tol=tol, seconds=round(rep.seconds, 6),
    )


def _predicted_for(rep: CountReport, prime_bound: int):
    """(main_value, second_term) matched to the report's filter stage."""
    q = QuadForm(*rep.normalized)
    sx = math.sqrt(rep.X)
    if rep.kind == "square":
        if rep.filter == "maximal":
            m1, m9, _tot = asy.pure_field_prediction(rep.X, prime_bound)
            per_class = m1 if rep.disc == 1 else m9
            return 2 * per_class, None  # oriented = 2 x fields per class
        total, _lead, second = asy.square_disc_order_prediction(rep.disc, rep.X)
        return total, second
    if rep.filter == "maximal":
        return asy.field_coefficient(rep.disc, prime_bound).value * sx, None
    return asy.order_coefficient(rep.disc) * sx, None


def cmd_count(args) -> int:
    shape = _parse_shape(args.shape)
    sink = open(args.audit_out, "w", encoding="utf-8", newline="\n") if args.audit_out else None
    rep = count_orbits(
        shape, _parse_x(args.X), args.filter, engine=args.engine, sieve=_sieve(args),
        audit=args.audit or args.audit_out is not None,
        audit_sink=sink, threads=args.threads,
    )
    if sink:
        sink.close()
    if args.format == "json":
        body = json.dumps(rep.to_json_dict(), indent=2, sort_keys=True) + "\n"
        if args.out:
            open(args.out, "w", encoding="utf-8", newline="\n").write(body)
        else:
            sys.stdout.write(body)
    else:
        em = _Emitter("csv", args.out)
        em.add(**_report_rows("count", rep))
        em.flush()
    if rep.audit and rep.audit_failures:
        print(f"AUDIT FAILURES: {rep.audit_failures}", file=sys.stderr)
        return 1
    return 0


def cmd_compare(args) -> int:
    shape = _parse_shape(args.shape)
    em = _Emitter(args.format, args.out)
    for X in _parse_x_list(args.X):
        rep = count_orbits(shape, X, args.filter, engine=args.engine,
                           sieve=_sieve(args), threads=args.threads)
        pred, second = _predicted_for(rep, args.prime_bound)
        em.add(**_report_rows("compare", rep, pred, second, args.tol))
    em.flush()
    return 0


def cmd_sweep(args) -> int:
    shape = _parse_shape(args.shape)
    lo, hi = _parse_x(args.X_start), _parse_x(args.X_end)
    n = max(2, args.points)
    xs = sorted({int(round(lo * (hi / lo) ** (i / (n - 1)))) for i in range(n)})
    em = _Emitter(args.format, args.out)
    for X in xs:
        rep = count_orbits(shape, X, args.filter, engine=args.engine,
                           sieve=_sieve(args), threads=args.threads)
        pred, second = _predicted_for(rep, args.prime_bound)
        row = _report_rows("sweep", rep, pred, second, None)
        row["empirical"] = rep.n3_oriented
        em.add(**row)
    em.flush()
    return 0


def cmd_predict(args) -> int:
    em = _Emitter(args.format, args.out)
    if args.pure:
        X = _parse_x(args.X) if args.X else 10**10
        m1, m9, tot = asy.pure_field_prediction(X, args.prime_bound)
        for stage, val in (("shape1", m1), ("shape9-per-class", m9), ("total", tot)):
            em.add(experiment="predict:pure-fields", D=1 if stage == "shape1" else 9,
                   r=None, s=None, t=None, X=X, stage=stage,
                   empirical=None, predicted=val, second_term=None, ratio=None,
                   tol=None, seconds=0.0)
        em.flush()
        return 0
    if args.square_disc is not None:
        X = _parse_x(args.X) if args.X else 10**10
        total, lead, second = asy.square_disc_order_prediction(args.square_disc, X)
        em.add(experiment="predict:square-rings", D=args.square_disc, r=None, s=None,
               t=None, X=X, stage="none", empirical=None, predicted=total,
               second_term=second, ratio=None, tol=None, seconds=0.0)
        em.flush()
        return 0
    if args.resolvent is not None:
        cv = asy.resolvent_coefficient(args.resolvent, args.prime_bound)
        em.add(experiment="predict:resolvent", D=args.resolvent, r=None, s=None, t=None,
               X=None, stage="fields", empirical=None, predicted=cv.value,
               second_term=None, ratio=None, tol=cv.halfwidth(), seconds=0.0)
        em.flush()
        return 0
    if args.disc is None and args.shape is None:
        raise InputError("predict needs --shape, --disc, --resolvent, --square-disc or --pure")
    if args.shape is not None:
        q = _parse_shape(args.shape)
        if is_square_int(q.disc) and q.disc > 0:
            raise InputError("square-discriminant shapes: use --square-disc or --pure")
        pc = asy.prediction_for(q, args.prime_bound)
    else:
        q = class_group(args.disc).reps[0]
        pc = asy.prediction_for(q, args.prime_bound)
    orders_c = pc.order_coeff
    fields_c = pc.field_coeff
    em.add(experiment="predict:orders", D=pc.D, r=q.r, s=q.s, t=q.t, X=None,
           stage="oriented-coefficient", empirical=None, predicted=orders_c,
           second_term=None, ratio=None, tol=None, seconds=0.0)
    em.add(experiment="predict:fields", D=pc.D, r=q.r, s=q.s, t=q.t, X=None,
           stage="oriented-coefficient", empirical=None, predicted=fields_c.value,
           second_term=None, ratio=None, tol=fields_c.halfwidth(), seconds=0.0)
    em.add(experiment="predict:fields-unoriented", D=pc.D, r=q.r, s=q.s, t=q.t, X=None,
           stage="per-field", empirical=None, predicted=fields_c.value / 2**pc.gamma,
           second_term=None, ratio=None, tol=fields_c.halfwidth() / 2**pc.gamma, seconds=0.0)
    em.flush()
    return 0


def cmd_densities(args) -> int:
    shape = _parse_shape(args.shape)
    norm, _ = normalize_shape(shape)
    primes = [int(p) for p in args.primes.split(",")]
    em = _Emitter(args.format, args.out)
    for p in primes:
        table = local_density(norm.disc, p)
        emp = local_density_empirical(norm, p)
        em.add(experiment="densities", D=norm.disc, r=norm.r, s=norm.s, t=norm.t,
               X=None, stage=f"p={p}", empirical=str(emp), predicted=str(table),
               second_term=None, ratio=None if table == 0 else float(emp / table),
               tol=0, seconds=0.0)
        if emp != table:
            em.flush()
            print(f"DENSITY MISMATCH at p={p}", file=sys.stderr)
            return 1
    em.flush()
    return 0


def cmd_classgroup(args) -> int:
    cg = class_group(args.disc)
    em = _Emitter(args.format, args.out)
    for rep in cg.reps:
        em.add(experiment="classgroup", D=cg.D, r=rep.r, s=rep.s, t=rep.t, X=None,
               stage=f"h={cg.h}", empirical=None, predicted=None, second_term=None,
               ratio=None, tol=None, seconds=0.0)
    em.flush()
    return 0


def cmd_pell(args) -> int:
    pd = pell_fundamental(args.disc)
    em = _Emitter(args.format, args.out)
    em.add(experiment="pell", D=pd.D, r=pd.u0, s=pd.w0, t=None, X=None,
           stage="u0,w0", empirical=None,
           predicted=(pd.u0 + pd.w0 * math.sqrt(pd.D)) / 2,
           second_term=None, ratio=None, tol=None, seconds=0.0)
    em.flush()
    return 0


def cmd_oracle(args) -> int:
    X = _parse_x(args.X)
    pf = pure_field_counts(X)
    t1, t2 = dedekind_field_count(X)
    em = _Emitter(args.format, args.out)
    rows = [
        ("shape-disc-1", pf.shape1, t1),
        ("shape-disc-9", pf.shape9_total, t2),
        ("total", pf.total, t1 + t2),
    ]
    ok = True
    for stage, emp, orc in rows:
        ok &= emp == orc
        em.add(experiment="oracle", D=None, r=None, s=None, t=None, X=X, stage=stage,
               empirical=emp, predicted=orc, second_term=None,
               ratio=None if orc == 0 else emp / orc, tol=0, seconds=0.0)
    em.flush()
    if not ok:
        print("ORACLE MISMATCH", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shapecount",
                                 description="Exact counts of cubic orders and fields by lattice shape.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, with_shape=True):
        if with_shape:
            p.add_argument("--shape", required=True, help="r,s,t")
            p.add_argument("--filter", default="none", choices=("none", "irreducible", "maximal"))
            p.add_argument("--engine", default="fast", choices=("fast", "naive"))
            p.add_argument("--sieve", default="exact", choices=("exact", "truncated"))
            p.add_argument("--sieve-bound", type=int, default=100)
            p.add_argument("--threads", type=int, default=None,
                           help="default from SHAPECOUNT_THREADS (else 1)")
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed echoed into randomized invariant suites")
        p.add_argument("--prime-bound", type=int, default=asy.DEFAULT_PRIME_BOUND)

    p = sub.add_parser("count", help="exact orbit count for one shape")
    common(p)
    p.add_argument("--X", required=True)
    p.add_argument("--audit", action="store_true", help="re-verify every counted point")
    p.add_argument("--audit-out", default=None, help="write per-point TSV records here")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("compare", help="empirical vs predicted over an X list")
    common(p)
    p.add_argument("--X", required=True, help="comma-separated bounds")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("sweep", help="geometric X grid, plot-ready output")
    common(p)
    p.add_argument("--X-start", required=True)
    p.add_argument("--X-end", required=True)
    p.add_argument("--points", type=int, default=9)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("predict", help="closed-form coefficients")
    common(p, with_shape=False)
    p.add_argument("--shape", default=None, help="r,s,t")
    p.add_argument("--disc", type=int, default=None)
    p.add_argument("--resolvent", type=int, default=None,
                   help="fundamental discriminant of the quadratic resolvent")
    p.add_argument("--square-disc", type=int, default=None)
    p.add_argument("--pure", action="store_true", help="pure cubic field predictions")
    p.add_argument("--X", default=None)
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("densities", help="closed-form vs enumerated local densities")
    common(p)
    p.add_argument("--primes", default="2,3,5,7,13")
    p.set_defaults(fn=cmd_densities)

    p = sub.add_parser("classgroup", help="determinant-one class representatives")
    common(p, with_shape=False)
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(fn=cmd_classgroup)

    p = sub.add_parser("pell", help="fundamental solution of u^2 - D w^2 = 4")
    common(p, with_shape=False)
    p.add_argument("--disc", type=int, required=True)
    p.set_defaults(fn=cmd_pell)

    p = sub.add_parser("oracle", help="pure-cubic counts vs the cubefree oracle")
    common(p, with_shape=False)
    p.add_argument("--X", required=True)
    p.set_defaults(fn=cmd_oracle)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RangeError, FactorBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
