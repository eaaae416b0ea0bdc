"""``palaut-lab`` command-line entry point.

Data goes to stdout and diagnostics to stderr.  Exit status is 0 on success,
1 when a checking subcommand reaches a negative verdict, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import dehn, fgauto, freeword as fw, nielsen, wpfamily
from .fgauto import Convention

HEADER = "# palaut-lab v1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def _convention(text: str) -> Convention:
    try:
        return Convention(text.upper())
    except ValueError:
        raise argparse.ArgumentTypeError("convention must be RL or LR") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _names(args):
    return tuple(args.gens.split()) if args.gens else None


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _wp_spec(args) -> wpfamily.WpSpec:
    p = fw.P if args.symbolic else args.p
    if p is None:
        raise ValueError("give --p <int> or --symbolic")
    return wpfamily.WpSpec(args.i, args.j, args.k, p, max(args.i, args.j, args.k, 3))


def _budget(args) -> dehn.SearchBudget:
    return dehn.SearchBudget(args.max_len, args.max_states, args.max_area)


def _load_presentation(path: str) -> dehn.Presentation:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        pres = dehn.load_presentation(_read(path))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return pres


# --- subcommands -----------------------------------------------------------

def cmd_reduce(args, out):
    w = fw.parse_word(args.word, names=_names(args))
    print(fw.format_word(w, _names(args)), file=out)
    return 0


def cmd_palindrome(args, out):
    w = fw.parse_word(args.word, names=_names(args))
    ok = fw.is_palindrome(w)
    print("yes" if ok else "no", file=out)
    return 0 if ok else 1


def cmd_apply(args, out):
    gw = fgauto.parse_genword(args.genword, args.n)
    w = fw.parse_word(args.word, rank=gw.rank)
    f = fgauto.compose_word(gw, args.convention)
    print(fw.format_word(fgauto.apply(f, w)), file=out)
    return 0


def cmd_relations(args, out):
    print(HEADER, file=out)
    print(f"# n={args.n} convention={args.convention.value}", file=out)
    for family, idx, lhs, rhs in fgauto.epa_relations(args.n):
        holds = fgauto.check_relation(lhs, rhs, args.convention)
        names = "ijkl"[:len(idx)]
        where = " ".join(f"{c}={v}" for c, v in zip(names, idx))
        print(f"{family} {where} | {fgauto.format_genword(lhs)} = {fgauto.format_genword(rhs)}"
              f" | holds={'yes' if holds else 'no'}", file=out)
    return 0


def cmd_wp_verify(args, out):
    report = wpfamily.verify_wp(_wp_spec(args), args.convention)
    out.write(report.to_csv() if args.format == "csv" else report.to_text())
    return 0 if report.verdict == "trivial" else 1


def cmd_wp_audit(args, out):
    report = wpfamily.replay_paper_steps(_wp_spec(args), args.target, args.convention)
    out.write(report.to_csv() if args.format == "csv" else report.to_text())
    return 0


def cmd_wp_expand(args, out):
    spec = wpfamily.WpSpec(args.i, args.j, args.k, args.p, max(args.i, args.j, args.k, 3))
    ts = wpfamily.expand_transvections(wpfamily.build_wp(spec))
    print(HEADER, file=out)
    for s, e in ts.factors:
        print(f"{s}^{e}" if e != 1 else str(s), file=out)
    print(f"count={len(ts)}", file=out)
    return 0


def cmd_rose_path(args, out):
    gw = fgauto.parse_genword(args.genword, args.n)
    ts = wpfamily.expand_transvections(gw, args.p)
    path = wpfamily.rose_path(ts, args.convention)
    print(HEADER, file=out)
    print(f"0 | start | {path.roses[0]}", file=out)
    for t, (edge, rose) in enumerate(zip(path.edges, path.roses[1:]), start=1):
        print(f"{t} | {edge} | {rose}", file=out)
    print(f"length={len(path)} closed={'yes' if path.closed else 'no'}", file=out)
    return 0


def cmd_area(args, out):
    pres = _load_presentation(args.presentation)
    w = pres.word(args.word)
    res = dehn.area(pres, w, _budget(args), method=args.method)
    print(HEADER, file=out)
    print(f"# status {res.status}", file=out)
    print(f"# area {res.area if res.found else '-'}", file=out)
    print(f"# states {res.states}", file=out)
    if res.found:
        out.write(dehn.dump_certificate(pres, res.certificate).split("\n", 1)[1])
    return 0 if res.found else 1


def cmd_certify(args, out):
    pres = _load_presentation(args.presentation)
    w = pres.word(args.word)
    cert = dehn.load_certificate(_read(args.cert), pres)
    ok = dehn.check_certificate(pres, w, cert)
    print(f"{'valid' if ok else 'invalid'} factors={len(cert)}", file=out)
    return 0 if ok else 1


def cmd_dehn_profile(args, out):
    pres = _load_presentation(args.presentation)
    rows = dehn.dehn_profile(pres, args.max_n, _budget(args), threads=args.threads)
    out.write(dehn.profile_to_csv(rows))
    return 0


def cmd_epa_presentation(args, out):
    pres = fgauto.epa_presentation(args.n)
    print(f"# elementary palindromic presentation n={args.n}", file=out)
    out.write(dehn.dump_presentation(pres))
    return 0


def cmd_nielsen(args, out):
    g = nielsen.load_cayley(_read(args.cayley))
    ng = nielsen.nielsen_graph(g, args.k, cap=args.cap, threads=args.threads)
    print(HEADER, file=out)
    print(str(nielsen.graph_stats(ng)), file=out)
    if args.dot:
        dot = nielsen.to_dot(ng)
        if args.dot == "-":
            out.write(dot)
        else:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
    return 0


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="palaut-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=_positive, default=1,
                        help="worker processes for profile and graph enumeration")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    def convention(p, default="RL"):
        p.add_argument("--convention", type=_convention, default=Convention(default))

    def wp_indices(p):
        p.add_argument("--i", type=int, default=1)
        p.add_argument("--j", type=int, default=2)
        p.add_argument("--k", type=int, default=3)

    def wp_p(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--p", type=int)
        g.add_argument("--symbolic", action="store_true")
        p.add_argument("--format", choices=("text", "csv"), default="text")

    def budget(p):
        p.add_argument("--max-len", type=_positive, default=None)
        p.add_argument("--max-states", type=_positive, default=10**7)
        p.add_argument("--max-area", type=_positive, default=64)

    p = add("reduce", cmd_reduce, "freely reduce a word")
    p.add_argument("word")
    p.add_argument("--gens", help="space-separated generator names (default a1 a2 ...)")
    p = add("palindrome", cmd_palindrome, "test whether a word equals its reversal")
    p.add_argument("word")
    p.add_argument("--gens")

    p = add("apply", cmd_apply, "apply a generator word to a free-group word")
    p.add_argument("--genword", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--n", type=_positive, default=None, help="rank (default: largest index used)")
    convention(p)

    p = add("relations", cmd_relations, "check every relation instance at rank n")
    p.add_argument("--n", type=int, required=True)
    convention(p)

    p = add("wp-verify", cmd_wp_verify, "compose W_p and report its images")
    wp_indices(p)
    wp_p(p)
    convention(p)

    p = add("wp-audit", cmd_wp_audit, "replay each displayed derivation line")
    p.add_argument("--target", choices=("ai", "aj", "ak"), required=True)
    wp_indices(p)
    wp_p(p)
    convention(p)

    p = add("wp-expand", cmd_wp_expand, "expand W_p into elementary transvections")
    p.add_argument("--p", type=int, required=True)
    wp_indices(p)

    p = add("rose-path", cmd_rose_path, "rose path of a transvection expansion")
    p.add_argument("--genword", required=True)
    p.add_argument("--n", type=_positive, default=None)
    p.add_argument("--p", type=int, default=None, help="value for symbolic exponents")
    convention(p)

    p = add("area", cmd_area, "exact van Kampen area with certificate")
    p.add_argument("--presentation", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--method", choices=("fill", "bfs"), default="fill")
    budget(p)

    p = add("certify", cmd_certify, "check an area certificate")
    p.add_argument("--presentation", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--cert", required=True)

    p = add("dehn-profile", cmd_dehn_profile, "Dehn function values up to --max-n")
    p.add_argument("--presentation", required=True)
    p.add_argument("--max-n", type=int, required=True)
    budget(p)

    p = add("epa-presentation", cmd_epa_presentation, "emit the presentation file for rank n")
    p.add_argument("--n", type=int, required=True)

    p = add("nielsen", cmd_nielsen, "Nielsen graph statistics of a finite group")
    p.add_argument("--cayley", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dot", help="write DOT to this path ('-' for stdout)")
    p.add_argument("--cap", type=_positive, default=nielsen.DEFAULT_CAP)
    return parser


_INPUT_ERRORS = (ValueError, ArithmeticError, IndexError, OSError)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _INPUT_ERRORS as exc:
        print(f"palaut-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
