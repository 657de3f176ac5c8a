"""Command-line front end.

Exit codes: the ``check`` family returns 0 when a certificate is found,
1 when inconclusive; ``verify theorem-c`` returns 0 iff the identity holds;
every usage, data, or refusal error returns 2 with a one-line reason.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import obstructions as obs
from .char_ring import RingContext, apply_steenrod, format_poly
from .presentation import AlgebraPresentation, load_presentation, validate
from .steenrod import adem_normalize, format_element, gsz_candidates, parse_element, parse_word, serre_generators
from .thom import LHS_TERMS, mso3_mod3_degree_dims, verify_codim11_identity

EXIT_CERTIFICATE = 0
EXIT_INCONCLUSIVE = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    def __init__(self, porcelain: bool, out=None):
        self.porcelain = porcelain
        self.out = out or sys.stdout

    def kv(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "true" if value else "false"
        self.out.write(f"{key}={value}\n")

    def line(self, text: str = "") -> None:
        self.out.write(text + "\n")


def _porcelain_key(label: str) -> str:
    return label.replace(" ", "_").replace(".", "")


# --- subcommands --------------------------------------------------------------


def cmd_adem(args, out: Output) -> int:
    e = parse_element(" ".join(args.element))
    nf = adem_normalize(e)
    if out.porcelain:
        out.kv("input", format_element(e))
        out.kv("normal_form", format_element(nf))
    else:
        out.line(format_element(nf))
    return 0


def cmd_sq(args, out: Output) -> int:
    ctx = RingContext(args.k, oriented=args.oriented, degree_cap=args.cap)
    p = ctx.parse(" ".join(args.poly))
    e = parse_element(args.seq)
    r = apply_steenrod(e, p)
    text = format_poly(r, factor=ctx.k if args.oriented else None)
    if out.porcelain:
        out.kv("ring", str(ctx))
        out.kv("operation", format_element(e))
        out.kv("input", format_poly(p))
        out.kv("result", text)
    else:
        out.line(text)
    return 0


def _print_words(words, k: int, out: Output, tag: str) -> None:
    if out.porcelain:
        out.kv("k", k)
        out.kv("count", len(words))
        for w in words:
            out.kv(tag, f"{w}:{w.degree}:{w.excess}")
    else:
        for w in words:
            out.line(f"{str(w):<24} degree {w.degree:>3}  excess {w.excess}")
        out.line(f"{len(words)} sequence(s)")


def cmd_serre(args, out: Output) -> int:
    _print_words(serre_generators(args.k, args.dmax), args.k, out, "generator")
    return 0


def cmd_gsz(args, out: Output) -> int:
    _print_words(gsz_candidates(args.k, args.dmax), args.k, out, "candidate")
    return 0


def cmd_verify(args, out: Output) -> int:
    rep = verify_codim11_identity(omit=args.omit or ())
    if args.quiet:
        out.kv("equal", rep.equal)
    elif out.porcelain:
        out.kv("equal", rep.equal)
        out.kv("lhs", rep.lhs_text)
        out.kv("rhs", rep.rhs_text)
        out.kv("difference", rep.difference_text)
        for entry in rep.transcript:
            out.kv(f"term.{_porcelain_key(entry.label)}", entry.text)
    else:
        out.line("classes in H~*(MSO_11; F2) = (w11) in H*(BSO_11; F2):")
        for name, text in rep.classes.items():
            out.line(f"  {name:<10} = {text}")
        out.line()
        for entry in rep.transcript:
            out.line(f"{entry.label:<14} = {entry.operation}({entry.argument_text}) = {entry.text}")
        out.line()
        out.line(f"LHS = {rep.lhs_text}")
        out.line(f"RHS = {rep.rhs_text}")
        if not rep.equal:
            out.line(f"LHS + RHS = {rep.difference_text}")
        out.kv("equal", rep.equal)
    return 0 if rep.equal else 1


def cmd_mso3(args, out: Output) -> int:
    rows = mso3_mod3_degree_dims(args.dmax)
    for d, n in rows:
        if out.porcelain:
            out.kv(f"dim.{d}", n)
        else:
            out.line(f"H~^{d}(MSO_3; Z/3): dimension {n}")
    return 0


def _load(args) -> AlgebraPresentation:
    return load_presentation(args.input)


def cmd_validate(args, out: Output) -> int:
    a = _load(args)
    rep = validate(a)
    if out.porcelain:
        out.kv("valid", rep.ok)
        out.kv("checked", rep.checked)
        out.kv("dims", ",".join(f"{d}:{n}" for d, n in a.dims.items()))
        for f in rep.failures:
            out.kv(f"failure.{f.kind}", f.message)
    else:
        out.line(f"{a.name or args.input}: prime {a.prime}, dimension {a.dim}")
        out.line("dims " + ", ".join(f"H^{d}={n}" for d, n in a.dims.items()))
        for note in rep.notes:
            out.line(f"  note: {note}")
        for f in rep.failures:
            out.line(f"  FAIL [{f.kind}] {f.message}")
        out.line(f"{rep.checked} checks, {len(rep.failures)} failure(s)")
        out.kv("valid", rep.ok)
    return 0 if rep.ok else 1


def _report(verdict: obs.Verdict, check: str, out: Output) -> int:
    if out.porcelain:
        out.kv("check", check)
        out.kv("verdict", verdict.outcome)
        for k in sorted(verdict.witness):
            out.kv(f"witness.{k}", verdict.witness[k])
        if verdict.missing:
            out.kv("missing", verdict.missing)
    else:
        for step in verdict.trail:
            out.line(f"  {step}")
        out.line(f"verdict: {verdict.outcome}")
    return EXIT_CERTIFICATE if verdict.is_certificate else EXIT_INCONCLUSIVE


def cmd_check(args, out: Output) -> int:
    a = _load(args)
    x = a.parse_class(args.klass)
    if args.which == "embed-c":
        v = obs.check_theorem_c(a, x, cap=args.cap or obs.DEFAULT_CAP, name=args.klass.strip())
    elif args.which == "embed-bhk3":
        v = obs.check_bhk_codim3(a, x)
    elif args.which == "immerse-gsz":
        if not args.seq:
            raise UsageError("check immerse-gsz: --seq is required")
        v = obs.check_gsz_immersion(a, x, parse_word(args.seq))
    else:
        v = obs.check_prop_kq(a, x, name=args.klass.strip())
    return _report(v, args.which, out)


def cmd_whitney(args, out: Output) -> int:
    a = _load(args)
    fx = a.parse_class(args.fx)
    wk = a.parse_class(args.wknu, degree=fx.degree)
    m2 = obs.whitney_m2_mod2(a, fx, wk)
    seq_result = None
    if args.seq:
        seq_result = a.apply_word(parse_word(args.seq).indices, m2)
    if out.porcelain:
        out.kv("m2", a.format_class(m2))
        out.kv("m2_nonzero", not m2.is_zero())
        if seq_result is not None:
            out.kv(f"{args.seq}_m2", a.format_class(seq_result))
    else:
        for note in obs.whitney_notes(fx.degree):
            out.line(f"  {note}")
        out.line(f"rho_2 m_2(f) = {a.format_class(m2)}")
        if seq_result is not None:
            out.line(f"{args.seq}(rho_2 m_2(f)) = {a.format_class(seq_result)}")
            if not seq_result.is_zero():
                out.line("  nonzero, hence m_2(f) != 0")
    return 0


# --- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqobstruct", description=__doc__.splitlines()[0])
    parser.add_argument("--porcelain", action="store_true",
                        help="machine-readable key=value output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    p = add("adem", cmd_adem, "normalise a Steenrod element into the admissible basis")
    p.add_argument("element", nargs="+", help="e.g. Sq1.Sq10 or 'Sq2.Sq2 + Sq4'")

    p = add("sq", cmd_sq, "apply a Steenrod element to a Stiefel-Whitney polynomial")
    p.add_argument("--seq", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--cap", type=int, default=None, help="degree cap (default 2k+2)")
    p.add_argument("poly", nargs="+")

    for name, fn, help_ in (("serre", cmd_serre, "admissible sequences of excess < k"),
                            ("gsz-candidates", cmd_gsz, "sequences J with (Sq^J iota_k)^2 not integral")):
        p = add(name, fn, help_)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--dmax", type=int, required=True)

    p = add("verify", cmd_verify, "verify a built-in identity")
    p.add_argument("identity", choices=["theorem-c"])
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--omit", action="append", choices=[t[0] for t in LHS_TERMS],
                   help="drop a left-hand term (debugging)")

    p = add("mso3-dims", cmd_mso3, "dimensions of H~*(MSO_3; Z/3)")
    p.add_argument("--dmax", type=int, required=True)

    p = add("validate", cmd_validate, "check a presentation against the axioms")
    p.add_argument("--input", required=True)

    p = add("check", cmd_check, "run an obstruction check")
    p.add_argument("which", choices=["embed-c", "embed-bhk3", "immerse-gsz", "immerse-kq"])
    p.add_argument("--input", required=True)
    p.add_argument("--class", dest="klass", required=True)
    p.add_argument("--seq")
    p.add_argument("--cap", type=int, default=None)

    p = add("whitney", cmd_whitney, "mod 2 double-point class from Whitney's formula")
    p.add_argument("--input", required=True)
    p.add_argument("--fx", required=True)
    p.add_argument("--wknu", required=True)
    p.add_argument("--seq")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        if getattr(args, "fn", None) is None:
            raise UsageError("missing subcommand")
        return args.fn(args, Output(args.porcelain, stdout))
    except UsageError as e:
        stderr.write(parser.format_usage())
        stderr.write(f"error: {e}\n")
        return EXIT_ERROR
    except SystemExit as e:  # --help
        return 0 if e.code in (0, None) else EXIT_ERROR
    except (ValueError, LookupError, OSError, RuntimeError, ArithmeticError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        stderr.write(f"error: {msg}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
