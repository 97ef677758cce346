"""Command-line front end: ``leasttotient {table,witness,charsum,census,audit}``.

Exit statuses: 0 success, 1 argument error, 2 unresolved / identity
failure, 3 resource cap exceeded.

Config file (``--config``) is INI-style with a single ``[leasttotient]``
section; recognized keys::

    sieve_limit_cap = 1000000000
    slack = 4
    rel_tol = 1e-9
    int_residual = 1e-6
    workers = 1
    cache_dir = /tmp/phi-cache
    output_format = csv
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from datetime import datetime, timezone

from . import __version__
from .arith import PrimeInterval, is_prime, primes_in
from .audit import proof_audit
from .charlab import (
    INT_RESIDUAL,
    REL_TOL,
    SCHEMA_VERSION,
    all_character_sums,
    build_basis,
    census,
    huxley_ratio,
    moment,
    profile_record,
    shifted_primes,
)
from .errors import ArgumentError, ResourceError
from .witness import DEFAULT_SLACK, find_witness, least_totient_table

EXIT_OK, EXIT_ARGUMENT, EXIT_UNRESOLVED, EXIT_RESOURCE = 0, 1, 2, 3
TABLE_COLUMNS = ("q", "a", "n", "phi_n", "kind", "limit")


@dataclass
class RunConfig:
    sieve_limit_cap: int = 10**9
    slack: int = DEFAULT_SLACK
    rel_tol: float = REL_TOL
    int_residual: float = INT_RESIDUAL
    workers: int = 1
    cache_dir: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.sieve_limit_cap < 1 or self.slack < 1:
            raise ArgumentError("caps must be positive")
        if self.rel_tol <= 0 or self.int_residual <= 0:
            raise ArgumentError("tolerances must be positive")
        if self.workers < 1:
            raise ArgumentError("workers must be >= 1")
        if self.output_format not in ("csv", "json", "jsonl"):
            raise ArgumentError(f"unknown output format {self.output_format!r}")


def load_config(path) -> RunConfig:
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ArgumentError(f"cannot read config file {path}")
    known = {f.name: f for f in fields(RunConfig)}
    values = {}
    for section in parser.sections():
        if section != "leasttotient":
            raise ArgumentError(f"unknown config section [{section}]")
        for key, raw in parser[section].items():
            if key not in known:
                raise ArgumentError(f"unknown config key {key!r}")
            kind = known[key].type
            try:
                if "int" in kind:
                    values[key] = int(float(raw)) if "e" in raw.lower() else int(raw)
                elif "float" in kind:
                    values[key] = float(raw)
                else:
                    values[key] = raw
            except ValueError as exc:
                raise ArgumentError(f"bad value for {key}: {raw!r}") from exc
    return RunConfig(**values)


def parse_interval(text: str) -> PrimeInterval:
    """``lo:hi`` -> primes in (lo, hi]; ``p,p,...`` -> those primes."""
    text = text.strip()
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            return primes_in(lo, hi)
        ps = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError as exc:
        raise ArgumentError(f"bad interval {text!r}") from exc
    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise ArgumentError(f"not prime: {bad}")
    lo, hi = (ps[0] - 1, ps[-1]) if ps else (0, 0)
    return PrimeInterval(lo, hi, tuple(ps))


def parse_interval_list(text: str) -> list[PrimeInterval]:
    return [parse_interval(t) for t in text.split(";") if t.strip()]


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _stamp(args):
    if args.reproducible:
        return {}
    return {
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "host": platform.node(),
        "version": __version__,
    }


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _table_job(job):
    q, limit, cache_dir = job
    return least_totient_table(q, limit, cache_dir=cache_dir)


def cmd_table(args, cfg: RunConfig) -> int:
    for q in args.q:
        if not is_prime(q):
            raise ArgumentError(f"q={q} is not prime")
        if q == 2:
            print("warning: q=2 has a single nontrivial class; table only", file=sys.stderr)
    jobs = []
    for q in args.q:
        limit = args.limit or cfg.slack * q * q
        if limit > cfg.sieve_limit_cap:
            raise ResourceError(f"limit {limit} exceeds sieve cap {cfg.sieve_limit_cap}")
        jobs.append((q, limit, cfg.cache_dir))
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            tables = list(pool.map(_table_job, jobs))
    else:
        tables = [_table_job(j) for j in jobs]

    fmt = args.format or cfg.output_format
    stamp = _stamp(args)
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# schema_version: {SCHEMA_VERSION}\n")
        for k, v in stamp.items():
            buf.write(f"# {k}: {v}\n")
        writer = csv.DictWriter(buf, TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for t in tables:
            writer.writerows(t.rows())
        for t in tables:
            buf.write(
                f"# summary q={t.q} max_n={t.max_n} exponent={_fmt_exp(t.exponent)}"
                f" unresolved={len(t.unresolved)}\n"
            )
        text = buf.getvalue()
    elif fmt == "json":
        text = _dumps(
            {
                "schema_version": SCHEMA_VERSION,
                **stamp,
                "tables": [
                    {"q": t.q, "limit": t.limit, "entries": list(t.rows()), "summary": _summary(t)}
                    for t in tables
                ],
            }
        )
    else:
        lines = []
        for t in tables:
            for row in t.rows():
                lines.append(json.dumps({"schema_version": SCHEMA_VERSION, "record": "entry", **row}))
            lines.append(
                json.dumps({"schema_version": SCHEMA_VERSION, "record": "summary", **_summary(t), **stamp})
            )
        text = "\n".join(lines) + "\n"
    _emit(args, text)

    missing = [(t.q, a) for t in tables for a in t.unresolved]
    if missing:
        print(f"unresolved classes (q, a): {missing[:20]} ({len(missing)} total)", file=sys.stderr)
        return EXIT_UNRESOLVED
    return EXIT_OK


def _fmt_exp(x):
    return "nan" if x is None else f"{x:.6f}"


def _summary(t):
    return {
        "q": t.q,
        "limit": t.limit,
        "max_n": t.max_n,
        "exponent": None if t.exponent is None else round(t.exponent, 6),
        "unresolved": t.unresolved,
    }


def cmd_witness(args, cfg: RunConfig) -> int:
    q, a = args.q, args.a
    if not is_prime(q):
        raise ArgumentError(f"q={q} is not prime")
    intervals = parse_interval_list(args.intervals) if args.intervals else None
    w = find_witness(q, a, args.strategy, intervals=intervals, limit=args.limit, mode=args.mode)
    rec = {"schema_version": SCHEMA_VERSION, "q": q, "a": a % q, "strategy": args.strategy, **_stamp(args)}
    if w is None:
        rec["resolved"] = False
        _emit(args, _dumps(rec))
        return EXIT_UNRESOLVED
    rec.update(resolved=True, verified=w.verify(), witness=w.to_dict())
    _emit(args, _dumps(rec))
    return EXIT_OK


def _profile_for(args):
    basis = build_basis(args.q)
    if math.gcd(args.shift, args.q) != 1:
        raise ArgumentError(f"shift {args.shift} is not coprime to q={args.q}")
    interval = parse_interval(args.interval)
    vec, skipped = shifted_primes(args.q, interval, args.shift)
    return basis, interval, all_character_sums(basis, vec), skipped


def _empirical_exponent(profile, L):
    mags = profile.magnitudes[1:]
    if L <= 1 or not len(mags) or mags.max() <= 0:
        return None
    return math.log(float(mags.max())) / math.log(L)


def cmd_charsum(args, cfg: RunConfig) -> int:
    basis, interval, prof, skipped = _profile_for(args)
    mags = prof.magnitudes
    rec = {
        "schema_version": SCHEMA_VERSION,
        "q": args.q,
        "interval": [interval.lo, interval.hi],
        "shift": args.shift,
        "prime_count": len(interval),
        "skipped": skipped,
        "principal": prof.sums[0].real,
        "max_nonprincipal": float(mags[1:].max()) if len(mags) > 1 else 0.0,
        "empirical_exponent": _empirical_exponent(prof, interval.hi),
        **_stamp(args),
    }
    if args.all_chars:
        rec["magnitudes"] = [float(x) for x in mags]
    _emit(args, _dumps(rec))
    return EXIT_OK


def cmd_census(args, cfg: RunConfig) -> int:
    basis, interval, prof, skipped = _profile_for(args)
    cen = census(prof, cfg.rel_tol)
    moments = {order: moment(prof, order) for order in (_int_list(args.moments) if args.moments else [])}
    N = args.N if args.N is not None else float(interval.hi - interval.lo)
    hux = [huxley_ratio(prof, V, N, args.ell).to_dict() for V in _float_list(args.huxley or "")]
    rec = profile_record(
        prof,
        cen,
        moments,
        shift=args.shift,
        skipped=skipped,
        at_least=[{"V": v, "R": r} for v, r in cen.at_least],
        zero_count=cen.zero_count,
        N=N,
        huxley=hux,
        **_stamp(args),
    )
    _emit(args, _dumps(rec))
    return EXIT_OK


def cmd_audit(args, cfg: RunConfig) -> int:
    if math.gcd(args.a, args.q) != 1:
        raise ArgumentError(f"a={args.a} must be coprime to q={args.q}")
    report = proof_audit(
        args.q, parse_interval(args.interval), parse_interval(args.I1), args.a, m=args.m, h=args.h
    )
    _emit(args, _dumps({**report.to_dict(), **_stamp(args)}))
    return EXIT_OK if report.exact_ok else EXIT_UNRESOLVED


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGUMENT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with a [leasttotient] section")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--reproducible", action="store_true", help="omit timestamps and host info")

    p = _Parser(prog="leasttotient", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", parents=[common], help="N(q, a) for every class a")
    t.add_argument("q", type=int, nargs="+")
    t.add_argument("--limit", type=int)
    t.add_argument("--format", choices=("csv", "json", "jsonl"))
    t.set_defaults(func=cmd_table)

    w = sub.add_parser("witness", parents=[common], help="one n with phi(n) = a (mod q)")
    w.add_argument("q", type=int)
    w.add_argument("a", type=int)
    w.add_argument("--strategy", choices=("trivial", "product", "exact"), default="trivial")
    w.add_argument("--intervals", help="';'-separated: 'lo:hi' or 'p,p,...'")
    w.add_argument("--mode", choices=("meet-in-middle", "exhaustive"), default="meet-in-middle")
    w.add_argument("--limit", type=int)
    w.set_defaults(func=cmd_witness)

    for name, func, helptext in (
        ("charsum", cmd_charsum, "shifted-prime sums for all characters"),
        ("census", cmd_census, "dyadic large-value census"),
    ):
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("q", type=int)
        c.add_argument("--interval", required=True, help="lo:hi, primes in (lo, hi]")
        c.add_argument("--shift", type=int, default=-1)
        c.set_defaults(func=func)
        if name == "charsum":
            c.add_argument("--all-chars", action="store_true")
        else:
            c.add_argument("--moments", help="even orders, e.g. 2,4,6")
            c.add_argument("--huxley", help="comma-separated V values")
            c.add_argument("--N", type=float, help="window length (default hi - lo)")
            c.add_argument("--ell", type=int, default=1)

    a = sub.add_parser("audit", parents=[common], help="audit the level-set inequalities")
    a.add_argument("q", type=int)
    a.add_argument("a", type=int)
    a.add_argument("--m", type=int, default=3)
    a.add_argument("--h", type=int)
    a.add_argument("--interval", "--intervals", dest="interval", required=True)
    a.add_argument("--I1", dest="I1", required=True)
    a.set_defaults(func=cmd_audit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        return args.func(args, cfg)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGUMENT
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
