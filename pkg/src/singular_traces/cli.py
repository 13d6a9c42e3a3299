"""Command-line interface.

Exit codes: 0 success, 1 verification failure or mismatch, 2 usage or
precondition error, 3 internal consistency violation.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import ceil
from pathlib import Path

from .arith import GENUS_ZERO_PRIMES, is_discriminant, is_square_mod
from .errors import ConsistencyError, Inconsistent, OutOfWindow, TraceError
from .forms import trace_table_level1
from .hecke import auto_qprec, verify_level1, verify_star
from .oracle import HAUPTMODUL_PRIMES, PrecisionContext, trace_oracle_level1, trace_oracle_star
from .phi import construct_phi_p, load_phi, save_phi, singular_audit, trace_star
from .quadforms import level_bijection_holds, valid_discriminants

CACHE_ENV = "SINGULAR_TRACES_CACHE"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    qprec: int = None
    bits: int = 256
    fmt: str = "plain"
    cache_dir: Path = None
    jobs: int = 1

    @classmethod
    def from_args(cls, args):
        cache = None
        if not args.no_cache:
            raw = args.cache_dir or os.environ.get(CACHE_ENV)
            cache = Path(raw) if raw else None
        return cls(args.qprec, args.bits, args.format, cache, max(1, args.jobs))


# -- phi with advisory cache ------------------------------------------------------

def _cache_path(cfg, p):
    return cfg.cache_dir / f"phi-p{p}.json"


def obtain_phi(cfg, p, qmax):
    """Load ``phi_p`` from the cache if it is wide enough, else build (and store) it."""
    if p not in GENUS_ZERO_PRIMES:
        raise UsageError(f"p = {p} is not one of the genus-zero primes {GENUS_ZERO_PRIMES}")
    qmax = max(qmax, ceil(p / 4) + 2)
    if cfg.cache_dir is not None:
        path = _cache_path(cfg, p)
        if path.exists():
            try:
                phi = load_phi(path)
            except (ConsistencyError, ValueError, KeyError) as exc:
                print(f"warning: ignoring cache {path}: {exc}", file=sys.stderr)
            else:
                if phi.expansion.qtrunc >= qmax:
                    return phi
    phi = construct_phi_p(p, qmax)
    if cfg.cache_dir is not None:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
        save_phi(phi, _cache_path(cfg, p))
    return phi


def _level(value):
    if value == "1":
        return None
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"level must be 1 or a prime, got {value!r}") from None


def _check_p(p):
    if p not in GENUS_ZERO_PRIMES:
        raise UsageError(f"p = {p} is not one of the genus-zero primes {GENUS_ZERO_PRIMES}")


def _check_valid(p, d):
    if d <= 0:
        raise UsageError("d must be positive")
    if p is None:
        if not is_discriminant(d):
            raise UsageError(f"-{d} is not a discriminant: need d = 0 or 3 mod 4")
    elif not is_square_mod(-d, 4 * p):
        raise UsageError(f"-{d} is not congruent to a square modulo 4p = {4 * p}")


# -- output helpers ---------------------------------------------------------------

def _emit_rows(cfg, header, rows, doc, out):
    if cfg.fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        for row in rows:
            out.write("\t".join(str(x) for x in row) + "\n")


# -- commands ---------------------------------------------------------------------

def cmd_trace(cfg, args, out):
    p = _level(args.level)
    d = args.d
    if p is not None:
        _check_p(p)
    _check_valid(p, d)
    if p is None:
        value = trace_table_level1(d + 1)[d]
    else:
        qprec = cfg.qprec or ceil((d + p * p) / (4 * p)) + 4
        value = trace_star(obtain_phi(cfg, p, qprec), d)
    doc = {"level": "1" if p is None else str(p), "d": d, "trace": str(value)}
    if cfg.fmt == "json":
        out.write(json.dumps(doc) + "\n")
    elif cfg.fmt == "csv":
        out.write(f"level,d,trace\n{doc['level']},{d},{value}\n")
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_table(cfg, args, out):
    p, dmax = args.p, args.dmax
    _check_p(p)
    qprec = cfg.qprec or auto_qprec(p, 1, dmax)
    phi = obtain_phi(cfg, p, qprec)
    rows = [(d, trace_star(phi, d)) for d in valid_discriminants(p, dmax)]
    doc = {"p": p, "dmax": dmax, "entries": [{"d": d, "trace": str(t)} for d, t in rows]}
    _emit_rows(cfg, ("d", "trace"), rows, doc, out)
    return EXIT_OK


def cmd_verify(cfg, args, out):
    l, dmax = args.l, args.dmax
    if l % 2 == 0:
        raise UsageError("l must be an odd prime")
    if args.kind in ("level1", "ao"):
        report = verify_level1(l, dmax)
    else:
        if args.p is None:
            raise UsageError("verify levelp needs --p")
        _check_p(args.p)
        if l == args.p:
            raise UsageError(f"l must differ from p = {args.p}")
        qprec = cfg.qprec or auto_qprec(args.p, l, dmax)
        report = verify_star(args.p, l, dmax, obtain_phi(cfg, args.p, qprec))
    if cfg.fmt == "json":
        out.write(report.to_json() + "\n")
    elif cfg.fmt == "csv":
        out.write(report.to_csv())
    else:
        for e in report.entries:
            note = "  (p^2 | d)" if e.flagged else ""
            out.write(f"{e.d}\t{e.trace}\t{e.residue}\t{e.verdict}{note}\n")
        out.write(report.summary() + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_phi(cfg, args, out):
    p = args.p
    _check_p(p)
    qmax = args.qmax or cfg.qprec or 20
    phi = construct_phi_p(p, qmax)
    if args.out:
        path = Path(args.out)
    elif cfg.cache_dir is not None:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
        path = _cache_path(cfg, p)
    else:
        path = Path(f"phi-p{p}.json")
    save_phi(phi, path)
    audit = singular_audit(phi)
    audit["path"] = str(path)
    audit["qmax"] = qmax
    if cfg.fmt == "json":
        out.write(json.dumps(audit) + "\n")
    else:
        out.write(f"wrote {path}\n")
        out.write(f"p = {p}: {audit['negative_classes']} negative-D conditions imposed "
                  f"({audit['conditions']} in total with (0,0))\n")
        out.write(f"B(-1) = {audit['B(-1)']}, B(0) = {audit['B(0)']}, "
                  f"singular part {'ok' if audit['ok'] else 'WRONG'}\n")
    return EXIT_OK if audit["ok"] else EXIT_CONSISTENCY


def _oracle_job(job):
    p, d, bits = job
    ctx = PrecisionContext(bits=bits)
    if p is None:
        return trace_oracle_level1(d, ctx)
    return trace_oracle_star(p, d, ctx)


def cmd_compare(cfg, args, out):
    dmax = args.dmax
    if args.p is not None:
        p = args.p
        if p not in HAUPTMODUL_PRIMES:
            raise UsageError(f"no Hauptmodul oracle for p = {p}; supported: {HAUPTMODUL_PRIMES}")
        ds = [d for d in valid_discriminants(p, dmax) if level_bijection_holds(p, d)]
        phi = obtain_phi(cfg, p, cfg.qprec or auto_qprec(p, 1, dmax))
        series = [trace_star(phi, d) for d in ds]
    else:
        if args.level not in (None, "1"):
            raise UsageError("compare takes --level 1 or --p P")
        p = None
        ds = [d for d in range(1, dmax + 1) if is_discriminant(d)]
        table = trace_table_level1(dmax + 1)
        series = [table[d] for d in ds]
    jobs = [(p, d, cfg.bits) for d in ds]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            oracle = list(pool.map(_oracle_job, jobs))
    else:
        oracle = [_oracle_job(j) for j in jobs]
    rows = [(d, s, o, s == o) for d, s, o in zip(ds, series, oracle)]
    mismatches = sum(1 for r in rows if not r[3])
    doc = {"level": "1" if p is None else "p", "p": p, "dmax": dmax, "bits": cfg.bits,
           "entries": [{"d": d, "series": str(s), "oracle": str(o), "equal": eq}
                       for d, s, o, eq in rows],
           "mismatches": mismatches}
    if cfg.fmt == "plain":
        for d, s, o, eq in rows:
            out.write(f"{d}\t{s}\t{o}\t{'equal' if eq else 'MISMATCH'}\n")
        out.write(f"{len(rows)} compared, {mismatches} mismatches\n")
    else:
        _emit_rows(cfg, ("d", "series", "oracle", "equal"),
                   [(d, s, o, str(eq).lower()) for d, s, o, eq in rows], doc, out)
    return EXIT_OK if mismatches == 0 else EXIT_FAIL


# -- parser -----------------------------------------------------------------------

def _common(suppress):
    # subcommand copies default to SUPPRESS so flags placed before the
    # subcommand are not overwritten
    def dflt(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default=dflt("plain"))
    common.add_argument("--qprec", type=int, default=dflt(None),
                        help="q-precision of the Jacobi expansion (default: derived)")
    common.add_argument("--bits", type=int, default=dflt(256), help="oracle working precision")
    common.add_argument("--cache-dir", default=dflt(None),
                        help=f"expansion cache directory (default: ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true", default=dflt(False),
                        help="always rebuild phi_p")
    common.add_argument("--jobs", type=int, default=dflt(1), help="worker processes for oracle sweeps")
    return common


def build_parser():
    top, common = _common(False), _common(True)

    parser = argparse.ArgumentParser(
        prog="singular-traces", parents=[top],
        description="Traces of singular moduli, their congruences and an independent oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trace", parents=[common], help="print t(d) or t^(p)(d)")
    t.add_argument("--level", required=True, help="1 or a genus-zero prime p")
    t.add_argument("--d", type=int, required=True)
    t.set_defaults(func=cmd_trace)

    tb = sub.add_parser("table", parents=[common], help="all valid (d, t^(p)(d)) with d <= dmax")
    tb.add_argument("--p", type=int, required=True)
    tb.add_argument("--dmax", type=int, required=True)
    tb.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="congruence sweeps")
    v.add_argument("kind", choices=("level1", "levelp", "ao"),
                   help="level1 (alias ao) checks t(l^2 d); levelp checks t^(p)(l^2 d)")
    v.add_argument("--p", type=int, default=None)
    v.add_argument("--l", type=int, required=True)
    v.add_argument("--dmax", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    ph = sub.add_parser("phi", parents=[common], help="build phi_p and write the expansion cache")
    ph.add_argument("--p", type=int, required=True)
    ph.add_argument("--qmax", type=int, default=None)
    ph.add_argument("--out", default=None, help="output file (default: cache directory)")
    ph.set_defaults(func=cmd_phi)

    c = sub.add_parser("compare", parents=[common], help="series traces against the oracle")
    c.add_argument("--level", default=None, help="1 for level one")
    c.add_argument("--p", type=int, default=None)
    c.add_argument("--dmax", type=int, required=True)
    c.set_defaults(func=cmd_compare)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig.from_args(args)
    try:
        return args.func(cfg, args, out)
    except (UsageError, ValueError, OutOfWindow) as exc:
        # UnsupportedDiscriminant and UnsupportedLevel are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConsistencyError, Inconsistent) as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except TraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


def run(argv=None):
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
