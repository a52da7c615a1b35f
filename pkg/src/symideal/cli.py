"""``symideal`` command line: verification suite and polynomial utilities."""

from __future__ import annotations

import argparse
import os
import sys

from . import cuboid
from .catalog import catalog
from .groebner import cached_buchberger, elimination_ideal, reduce
from .report import FAIL, merge
from .ring import ParseError, Ring, RingMismatch, format_poly, parse, read_poly_file, symmetrize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_TARGETS = ("all",) + tuple(cuboid.VERIFICATIONS)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_cache_dir():
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return os.path.join(base, "symideal")


def resolve_cache_dir(flag):
    if flag:
        return flag
    return os.environ.get("SYMIDEAL_CACHE") or default_cache_dir()


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--cache", metavar="DIR", help="Gröbner basis cache (default: $SYMIDEAL_CACHE or ~/.cache/symideal)")
    common.add_argument("--no-cache", action="store_true", help="keep bases in memory only")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--format", choices=("text", "records"), default="text")

    ring_opts = _Parser(add_help=False)
    ring_opts.add_argument("--ring", choices=("auto", "xd", "e", "joint"), default="auto",
                           help="ring for polynomial input (auto: first of xd, e, joint that parses)")
    ring_opts.add_argument("--vars", metavar="V1,V2,...",
                           help="custom ring, variables listed from highest to lowest lex priority")

    p = _Parser(prog="symideal", description=__doc__)
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run verification procedures")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--draws", type=int, default=100, help="completeness probe draws (sym)")
    v.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gb", parents=[common, ring_opts], help="reduced lex Gröbner basis of a polynomial file")
    g.add_argument("file")

    e = sub.add_parser("eliminate", parents=[common, ring_opts], help="drop the K greatest variables")
    e.add_argument("k", type=int)
    e.add_argument("file")

    r = sub.add_parser("reduce", parents=[common, ring_opts], help="normal form of EXPR modulo the ideal of FILE")
    r.add_argument("expr")
    r.add_argument("file")

    for verb, text in (("phi", "E-form to xd-form"), ("eform", "xd-form to E-form"), ("sym", "S3 average")):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument("expr")

    sub.add_parser("catalog", parents=[common], help="print the polynomial catalog")
    return p


# -- input -------------------------------------------------------------------


def _candidate_rings(args):
    if getattr(args, "vars", None):
        names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
        try:
            return [Ring(names)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    cat = catalog()
    rings = {"xd": cat.xd_ring, "e": cat.e_ring, "joint": cat.joint_ring}
    if args.ring == "auto":
        return list(rings.values())
    return [rings[args.ring]]


def _read_lines(path):
    if not os.path.exists(path):
        raise UsageError(f"file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_polys(args, path, extra=()):
    """Parse the file (and extra expressions) in the first candidate ring that accepts all of them."""
    _read_lines(path)
    last = None
    for ring in _candidate_rings(args):
        try:
            polys = read_poly_file(path, ring)
            more = [parse(x, ring) for x in extra]
        except ParseError as exc:
            last = exc
            continue
        if not polys:
            raise UsageError(f"{path}: no polynomials")
        return polys, more
    raise last


def _gb(polys, args):
    cache = None if args.no_cache else resolve_cache_dir(args.cache)
    return cached_buchberger(polys, cache_dir=cache, track=False)


# -- verbs -------------------------------------------------------------------


def _verify(args):
    if args.draws < 0:
        raise UsageError("--draws must be non-negative")
    names = list(cuboid.VERIFICATIONS) if args.target == "all" else [args.target]
    reports = []
    for name in names:
        fn = cuboid.VERIFICATIONS[name]
        reports.append(fn(probe_draws=args.draws, seed=args.seed) if name == "sym" else fn())
    if args.format == "records":
        text = "\n".join(r.to_records() for r in reports)
    else:
        blocks = [r.to_text() for r in reports]
        if len(reports) > 1:
            total = merge("all", reports)
            blocks.append(f"== overall: {total.status} ({len(total.claims)} claims)")
        text = "\n\n".join(blocks)
    code = EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_OK
    return text, code


def _polys_text(polys):
    return "\n".join(format_poly(p) for p in polys)


def _gb_verb(args):
    polys, _ = _load_polys(args, args.file)
    return _polys_text(_gb(polys, args).elements), EXIT_OK


def _eliminate(args):
    polys, _ = _load_polys(args, args.file)
    n = polys[0].ring.nvars
    if not 0 <= args.k <= n:
        raise UsageError(f"K must lie in 0..{n}")
    return _polys_text(elimination_ideal(polys, args.k, gb=_gb(polys, args))), EXIT_OK


def _reduce(args):
    polys, (p,) = _load_polys(args, args.file, extra=[args.expr])
    rem, _ = reduce(p, _gb(polys, args).elements)
    return format_poly(rem), EXIT_OK


def _phi(args):
    return format_poly(cuboid.phi(parse(args.expr, catalog().e_ring))), EXIT_OK


def _eform(args):
    try:
        out = cuboid.e_form(parse(args.expr, catalog().xd_ring))
    except cuboid.NotMultisymmetric as exc:
        raise UsageError(str(exc)) from exc
    return format_poly(out), EXIT_OK


def _sym(args):
    return format_poly(symmetrize(parse(args.expr, catalog().xd_ring))), EXIT_OK


def _catalog(args):
    cat = catalog()
    lines = []
    sep = "\t" if args.format == "records" else ": "
    for i, p in sorted(cat.p.items()):
        lines.append(f"p{i}{sep}{format_poly(p)}")
    for i, p in sorted(cat.c.items()):
        lines.append(f"c{i}{sep}{format_poly(p)}")
    for (i, j), p in sorted(cat.e.items()):
        lines.append(f"e[{i},{j}]{sep}{format_poly(p)}")
    for ((i, j), k), p in sorted(cat.f.items()):
        lines.append(f"f[{i},{j}][{k}]{sep}{format_poly(p)}")
    for i, p in sorted(cat.q.items()):
        lines.append(f"q{i}{sep}{format_poly(p)}")
    for i, p in sorted(cat.r.items()):
        lines.append(f"r{i}{sep}{format_poly(p)}")
    for i, p in sorted(cat.ptilde.items()):
        lines.append(f"ptilde{i}{sep}{format_poly(p)}")
    for k, p in cat.eform_prev.items():
        lines.append(f"eform[{k}]{sep}{format_poly(p)}")
    return "\n".join(lines), EXIT_OK


VERBS = {
    "verify": _verify,
    "gb": _gb_verb,
    "eliminate": _eliminate,
    "reduce": _reduce,
    "phi": _phi,
    "eform": _eform,
    "sym": _sym,
    "catalog": _catalog,
}


def run(argv=None, stdout=None, stderr=None):
    """Execute one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.out:
            parent = os.path.dirname(os.path.abspath(args.out))
            if not os.path.isdir(parent):
                raise UsageError(f"output directory does not exist: {parent}")
        cuboid.set_cache_dir(None if args.no_cache else resolve_cache_dir(args.cache))
        text, code = VERBS[args.verb](args)
    except UsageError as exc:
        print(f"symideal: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"symideal: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except RingMismatch as exc:
        print(f"symideal: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        stdout.write(text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
