"""Command-line front end.

Exit status 0 on success, 1 on a domain error (a diagnostic names the
error class), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import debruijn, fol, formats, holsk, proofcheck, rewrite, sexp, skolem, stt, stt_syntax
from .errors import LogicError, ParseError

NAIVE_WARNING = (
    "warning: naive skolemization introduces a constant that can be abstracted over; "
    "the result is not a conservative extension unless the axiom of choice holds"
)


class _Usage(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror}") from None


def _fuel() -> int:
    raw = os.environ.get("HOLSK_FUEL")
    if raw is None:
        return rewrite.DEFAULT_FUEL
    try:
        n = int(raw)
    except ValueError:
        raise _Usage(f"HOLSK_FUEL must be an integer, got {raw!r}") from None
    if n <= 0:
        raise _Usage("HOLSK_FUEL must be positive")
    return n


def _render(x, fmt: str) -> str:
    if fmt == "math":
        return sexp.math(x)
    return sexp.show(x)


def _suffix(path: str) -> str:
    return Path(path).suffix.lower()


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args, out) -> None:
    src = _read(args.file)
    if _suffix(args.file) == ".stt":
        f = stt_syntax.parse_stt_file(src)
        ty = stt.typecheck_stt(f.ctx, f.term)
        print(stt.show_type(ty), file=out)
        return
    thy = formats.load_theory(src).theory
    proofcheck.check_theory(thy)
    n_gen = len(holsk.theory_axioms(thy)) - len(thy.axioms)
    print(f"ok: {len(thy.axioms)} axiom(s), {n_gen} generated", file=out)


def cmd_translate(args, out) -> None:
    f = stt_syntax.parse_stt_file(_read(args.file))
    ty = stt.typecheck_stt(f.ctx, f.term)
    if ty == stt.O:
        x = holsk.translate_prop(f.term, f.ctx)
    else:
        x = holsk.translate_stt(f.term, f.ctx)
    print(_render(x, args.format), file=out)


def cmd_normalize(args, out) -> None:
    tf = formats.load_term_file(_read(args.file))
    fuel = _fuel()
    if args.trace:
        nf, steps = rewrite.normalize_traced(None, tf.body, fuel=fuel)
        for _, before, after in steps:
            print(f"{sexp.math(before)} → {sexp.math(after)}", file=out)
        if not steps:
            print(sexp.math(nf), file=out)
        return
    nf = rewrite.normalize(None, tf.body, fuel=fuel, strategy=args.strategy)
    print(_render(nf, args.format), file=out)


def cmd_skolemize(args, out) -> None:
    thy = formats.load_theory(_read(args.file)).theory
    name = args.axiom or _first_existential(thy)
    mode = skolem.SkolemizationMode(args.mode)
    if mode is skolem.SkolemizationMode.NAIVE:
        print(NAIVE_WARNING, file=sys.stderr)
    res = skolem.skolemize_axiom(thy, name, mode)
    for intro in res.introduced:
        s = intro.symbol
        shown = fol.show_rank(s.rank) if s.rank.args or mode is skolem.SkolemizationMode.MILLER \
            else stt.show_type(s.rank.result)
        print(f"{s.name}: {shown}", file=sys.stderr)
    text = formats.show_theory(res.theory)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def _first_existential(thy: fol.Theory) -> str:
    for name, p in thy.axioms:
        q = p
        while isinstance(q, fol.Forall):
            q = q.body
        if isinstance(q, fol.Exists):
            return name
    raise _Usage("no axiom of the form forall* exists; name one with --axiom")


def cmd_debruijn(args, out) -> None:
    f = stt_syntax.parse_stt_file(_read(args.file))
    stt.typecheck_stt(f.ctx, f.term)
    t, ctx = debruijn.to_debruijn(f.term, f.ctx)
    print(debruijn.show_db(t, annotate=args.annotate), file=out)
    if len(ctx):
        print(f"context {ctx}", file=out)


def cmd_typecheck_db(args, out) -> None:
    t, ctx = debruijn.parse_db(_read(args.file))
    print(stt.show_type(debruijn.typecheck_db(t, ctx)), file=out)


def cmd_prove_check(args, out) -> None:
    try:
        thy = formats.load_theory(_read(args.theory)).theory
    except (LogicError, ParseError) as e:
        e.path = args.theory
        raise
    proof = formats.load_proof(_read(args.proof), thy)
    proofcheck.check_proof(thy, proof)
    print(f"ok: proof {proof.name} checks ({len(proof.steps)} steps)", file=out)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sttfol", description="Simple type theory as first-order logic")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check", cmd_check, "typecheck a .stt file or check a .thy theory")
    sp.add_argument("file")
    sp = add("translate", cmd_translate, "translate a .stt term to HOL-SK")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("sexp", "math"), default="sexp")
    sp = add("normalize", cmd_normalize, "normalize a .trm term or formula")
    sp.add_argument("file")
    sp.add_argument("--trace", action="store_true", help="print each rewrite step")
    sp.add_argument("--strategy", choices=("outermost", "innermost"), default="outermost")
    sp.add_argument("--format", choices=("sexp", "math"), default="sexp")
    sp = add("skolemize", cmd_skolemize, "skolemize one axiom of a theory")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=("miller", "naive"), default="miller")
    sp.add_argument("--axiom")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=("sexp",), default="sexp")
    sp = add("debruijn", cmd_debruijn, "print a .stt term with de Bruijn indices")
    sp.add_argument("file")
    sp.add_argument("--annotate", action="store_true", help="print binder types")
    sp = add("typecheck-db", cmd_typecheck_db, "typecheck a .db term in its context")
    sp.add_argument("file")
    sp = add("prove-check", cmd_prove_check, "check a proof against a theory")
    sp.add_argument("theory")
    sp.add_argument("proof")
    return p


def _where(path: str | None, e) -> str:
    path = getattr(e, "path", path)
    span = getattr(e, "span", None)
    if span is None and path:
        # no finer position is known: point at the whole input
        try:
            lines = Path(path).read_text(encoding="utf-8").rstrip("\n").split("\n")
            span = sexp.Span(1, 1, len(lines), len(lines[-1]) + 1)
        except OSError:
            pass
    if span is None:
        return ""
    return f" at {path}:{span}" if path else f" at {span}"


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    path = getattr(args, "proof", None) or getattr(args, "file", None) or getattr(args, "theory", None)
    try:
        args.fn(args, out)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(f"error[ParseError]: {e}{_where(path, e)}", file=sys.stderr)
        return 2
    except LogicError as e:
        print(f"error[{e.code}]: {e}{_where(path, e)}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
