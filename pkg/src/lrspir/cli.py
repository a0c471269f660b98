"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (or a failed audit), 2 on a
usage error.  Audits print one ``CHECK <name> PASS|FAIL [witness]`` line per
check.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path

from . import linalg
from .codes import lrs_generator
from .errors import FormatError, IndexOutOfRange, LrsPirError
from .galois import ExtField, PrimeField
from .mrlrc import MrLrc, audit_mr, build_construction1, local_distance_ok, parse_mrlrc_descriptor, repair
from .pir import PirScheme, audit_privacy_exact, derive_params, rate
from .products import code_product_span, cw_product, inner_product, star
from .skew import random_skew, skew_mul, total_eval
from .storesim import (
    _from_rows,
    format_database,
    format_files,
    format_transcript,
    init_database,
    parse_database,
    parse_files,
    random_files,
    run_retrieval,
)

SEED_ENV = "LRSPIR_SEED"
INT_KEYS = ("q", "r", "delta", "g", "k", "t", "m", "seed")
STR_KEYS = ("modulus", "basis", "gamma", "local")


def load_config(path) -> dict:
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"{path}:{lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key in INT_KEYS:
            cfg[key] = int(val)
        elif key in STR_KEYS:
            cfg[key] = val
        else:
            raise FormatError(f"{path}:{lineno}: unknown key {key!r}")
    return cfg


def resolve_config(args) -> dict:
    cfg = {}
    if os.environ.get(SEED_ENV):
        cfg["seed"] = int(os.environ[SEED_ENV])
    if getattr(args, "config", None):
        cfg.update(load_config(args.config))
    for key in INT_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    cfg.setdefault("seed", 0)
    cfg.setdefault("delta", 1)
    cfg.setdefault("m", 1)
    return cfg


def _need(cfg, *keys):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise _Usage(f"missing parameter(s): {', '.join('--' + k for k in missing)}")


class _Usage(Exception):
    pass


def build_from_config(cfg) -> MrLrc:
    _need(cfg, "q", "r", "g", "k")
    q, r = cfg["q"], cfg["r"]
    kw = {}
    if "modulus" in cfg:
        kw["modulus"] = [int(c) for c in cfg["modulus"].split(",")]
    if "gamma" in cfg or "basis" in cfg:
        K = ExtField(PrimeField(q), r, kw.get("modulus"))
        if "gamma" in cfg:
            kw["gamma"] = K.parse(cfg["gamma"])
        if "basis" in cfg:
            kw["basis_elems"] = [K.parse(s) for s in cfg["basis"].split(";")]
    if "local" in cfg:
        kw["local_generator"] = [[int(x) for x in row.split(",")] for row in cfg["local"].split(";")]
    return build_construction1(q, r, cfg["delta"], cfg["g"], cfg["k"], **kw)


def _params_line(C: MrLrc, cfg) -> str:
    if "t" not in cfg:
        return f"# params g={C.g} r={C.r} q={C.field.q} k={C.k} delta={C.delta} n={C.n} N={C.N}"
    p = derive_params(C.g, C.r, C.field.q, C.k, cfg["t"], cfg["m"])
    return f"# params {p.describe()} delta={C.delta}"


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _check(name, ok, witness=""):
    line = f"CHECK {name} {'PASS' if ok else 'FAIL'}"
    if witness:
        line += f" {witness}"
    print(line)
    return ok


# --- subcommands -------------------------------------------------------------

def cmd_build(args):
    cfg = resolve_config(args)
    C = build_from_config(cfg)
    _emit(_params_line(C, cfg) + "\n" + C.descriptor(), args.out)
    return 0


def _database_from_config(cfg, files_path=None):
    C = build_from_config(cfg)
    _need(cfg, "t")
    p = derive_params(C.g, C.r, C.field.q, C.k, cfg["t"], cfg["m"])
    if files_path:
        files = parse_files(C.field, Path(files_path).read_text())
    else:
        files = random_files(C, p.m, p.b, random.Random(cfg["seed"]))
    return init_database(C, files, cfg["t"]), files


def cmd_encode(args):
    cfg = resolve_config(args)
    db, _ = _database_from_config(cfg, args.files)
    _emit(_params_line(db.mrlrc, {**cfg, "m": db.m}) + "\n" + format_database(db), args.out)
    return 0


def cmd_repair(args):
    db = parse_database(Path(args.db).read_text())
    C = db.mrlrc
    erased = sorted({int(x) for x in args.erase.split(",") if x.strip()})
    if any(not 0 <= e < C.n for e in erased):
        raise IndexOutOfRange(f"erasure positions must lie in 0..{C.n - 1}")
    rows = []
    for row in db.server_rows():
        damaged = [0 if p in erased else x for p, x in enumerate(row)]
        rows.append(repair(C, damaged, erased))
    fixed = _from_rows(C, db.m, db.b, db.t, rows)
    _emit(format_database(fixed), args.out)
    return 0


def cmd_retrieve(args):
    cfg = resolve_config(args)
    if args.db:
        db = parse_database(Path(args.db).read_text())
        if args.t is not None:
            db = _from_rows(db.mrlrc, db.m, db.b, args.t, db.server_rows())
    else:
        db, _ = _database_from_config(cfg, args.files)
    if not 1 <= args.file <= db.m:
        raise IndexOutOfRange(f"--file {args.file} outside 1..{db.m}")
    f, tr = run_retrieval(db, args.file - 1, cfg["seed"])
    K = db.mrlrc.field
    if args.transcript:
        Path(args.transcript).write_text(format_transcript(tr, K))
    _emit(linalg.format_matrix(K, f), args.out)
    print(f"# params {tr.params.describe()} downloaded={tr.downloaded} rate={tr.measured_rate}",
          file=sys.stderr)
    return 0


def cmd_rate(args):
    cfg = resolve_config(args)
    _need(cfg, "g", "r", "q", "k", "t")
    p = derive_params(cfg["g"], cfg["r"], cfg["q"], cfg["k"], cfg["t"], cfg["m"])
    print(f"# params {p.describe()}")
    print(rate(p))
    print(f"terms N={p.N} k={p.k} r={p.r} t={p.t} c={p.c} b={p.b} s={p.s}")
    print(f"formula (N-k-rt+1)/N = ({p.N}-{p.k}-{p.r * p.t}+1)/{p.N} = bk/(Ns) = {p.b * p.k}/{p.N * p.s}")
    return 0


def audit_mr_checks(C: MrLrc) -> bool:
    ok = True
    res = audit_mr(C)
    wit = "" if res else f"delta={list(res.witness_delta)} subset={list(res.witness_subset)}"
    ok &= _check("mr", res.passed, wit)
    ok &= _check("local_distance", local_distance_ok(C))
    sys_cols = linalg.columns(C.G_glob, C.systematic_positions)
    ok &= _check("systematic_restriction", sys_cols == C.outer.generator)
    return ok


def audit_privacy_checks(C: MrLrc, t, m) -> bool:
    scheme = PirScheme(C.outer, t, m)
    res = audit_privacy_exact(scheme.params, scheme.mask_code)
    ok = True
    for T, passed in res.per_set.items():
        ok &= _check(f"privacy T={','.join(str(j) for j in T)}", passed)
    return ok


def audit_products_checks(C: MrLrc, seed, trials=100) -> bool:
    K, N = C.field, C.N
    g, basis, gamma = C.g, C.outer.basis, C.outer.gamma
    ok = True
    codes = {k: lrs_generator(K, g, k, gamma, basis) for k in range(N + 1)}
    for k1 in range(1, N + 1):
        for k2 in range(0, N + 1):
            span = code_product_span(codes[k1], codes[k2])
            target = codes[min(k1 + k2 - 1, N)].generator if k2 else []
            same = linalg.row_space_equal(K, span, target)
            ok &= _check(f"product_dim k1={k1} k2={k2}", same)
    rng = random.Random(seed)
    a = codes[N].a
    bad = 0
    for _ in range(trials):
        F = random_skew(K, rng.randrange(N + 1), rng)
        G = random_skew(K, rng.randrange(N + 1), rng)
        lhs = total_eval(skew_mul(F, G), a, basis)
        if lhs != cw_product(basis, total_eval(F, a, basis), total_eval(G, a, basis)):
            bad += 1
    ok &= _check("evaluation_morphism", bad == 0, f"failures={bad}/{trials}" if bad else "")
    return ok


def audit_reductions_checks(q, seed, trials=100) -> bool:
    rng = random.Random(seed)
    ok = True
    K1 = ExtField(PrimeField(q), 1)
    b1 = K1.polynomial_basis()
    g = max(1, q - 1)
    bad = 0
    for _ in range(trials):
        x = [K1.random(rng) for _ in range(g)]
        y = [K1.random(rng) for _ in range(g)]
        if cw_product(b1, x, y) != [K1.mul(u, v) for u, v in zip(x, y)]:
            bad += 1
        dot = 0
        for u, v in zip(x, y):
            dot = K1.add(dot, K1.mul(u, v))
        if inner_product(b1, x, y) != [dot]:
            bad += 1
    ok &= _check("r1_products", bad == 0, f"failures={bad}" if bad else "")
    K2 = ExtField(PrimeField(q), 2)
    b2 = K2.polynomial_basis()
    bad = 0
    for _ in range(trials):
        x = [K2.random(rng) for _ in range(2)]
        y = [K2.random(rng) for _ in range(2)]
        if not (cw_product(b2, x, y) == star(b2, x, y) == inner_product(b2, x, y)):
            bad += 1
    ok &= _check("g1_products", bad == 0, f"failures={bad}" if bad else "")
    return ok


def cmd_audit(args):
    cfg = resolve_config(args)
    if args.what == "reductions":
        _need(cfg, "q")
        ok = audit_reductions_checks(cfg["q"], cfg["seed"])
        return 0 if ok else 1
    C = build_from_config(cfg)
    print(_params_line(C, cfg))
    if args.what == "mr":
        ok = audit_mr_checks(C)
    elif args.what == "privacy":
        _need(cfg, "t")
        ok = audit_privacy_checks(C, cfg["t"], cfg["m"])
    else:
        ok = audit_products_checks(C, cfg["seed"])
    return 0 if ok else 1


def _add_params(p):
    p.add_argument("--config", help="key=value configuration file")
    for key in INT_KEYS:
        p.add_argument(f"--{key}", type=int, default=None)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrspir", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit the MR-LRC descriptor")
    _add_params(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("encode", help="encode files into a database dump")
    _add_params(p)
    p.add_argument("--files", help="file set text; random files from the seed if omitted")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("repair", help="repair erased node positions in every stored row")
    p.add_argument("--db", required=True)
    p.add_argument("--erase", required=True, help="comma-separated 0-based positions in [0, n)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("retrieve", help="privately retrieve one file")
    _add_params(p)
    p.add_argument("--db")
    p.add_argument("--files")
    p.add_argument("--file", type=int, required=True, help="1-based file index")
    p.add_argument("--transcript")
    p.add_argument("--out")
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("audit", help="run exhaustive checks")
    p.add_argument("what", choices=["mr", "privacy", "products", "reductions"])
    _add_params(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("rate", help="exact download rate")
    _add_params(p)
    p.set_defaults(func=cmd_rate)
    return parser


def dispatch(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"lrspir: error: {exc}", file=sys.stderr)
        return 2
    except LrsPirError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
