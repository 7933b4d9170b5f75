"""Command-line front end.

Exit codes: 0 success / member / positive, 1 not-member / not-positive /
failures, 2 unknown, 3 usage error.  ``script`` exits with the largest code
of its commands.
"""

from __future__ import annotations

import argparse
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .dsl import parse_value
from .genfun import (REAL_LINE, GenFunRep, IntervalDomain, embed_const, gf_ball_member,
                     integrate, lpdo_apply, seminorm)
from .genfun import lead_exp as gf_lead_exp
from .nets import FULL, SIMPLIFIED, ModelMismatchError, NetS, fmt_rational, jm_embed
from .order import (Comparison, Membership, Verdict, absolute, fmt_valuation, order_compare,
                    proot, q_positivity, scalar_ball_member, BallSpec, sharp_dist, sharp_norm,
                    valuation)
from .sampled import (OSCILLATING_SCHEDULE, Iota, OracleConfig, SampledNet, estimate_valuation,
                      oscillating_net, falsify_order, oracle_ball_member, verify_witness)
from .topology import (AXIOMS, BASES, CORE_AXIOMS, axiom_check, canonical_axiom,
                       canonical_basis, converges, dnp, vnp)

__all__ = ["main", "run", "build_parser"]

OK, NEGATIVE, UNKNOWN, USAGE = 0, 1, 2, 3

_MEMBERSHIP_CODE = {Membership.MEMBER: OK, Membership.NOT_MEMBER: NEGATIVE,
                    Membership.UNKNOWN: UNKNOWN}
_VERDICT_CODE = {Verdict.POSITIVE: OK, Verdict.NOT_POSITIVE: NEGATIVE, Verdict.UNKNOWN: UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Output:
    code: int
    header: tuple
    rows: list = field(default_factory=list)


# -- argument helpers --------------------------------------------------------

def _bound(text: str):
    t = text.strip()
    if t in ("inf", "+inf", "-inf", "oo", "-oo"):
        return None
    return Fraction(t)


def _domain(args) -> IntervalDomain:
    if not args.domain:
        return REAL_LINE
    lo, hi = args.domain
    lo_t, hi_t = lo.strip(), hi.strip()
    if lo_t in ("inf", "+inf", "oo") or hi_t in ("-inf", "-oo"):
        raise UsageError("domain must be given as LO HI with LO < HI")
    return IntervalDomain(_bound(lo), _bound(hi))


def _config(args) -> OracleConfig:
    return OracleConfig(J=args.grid_depth, window=args.tail_window)


def _value(text: str, args):
    return parse_value(text, _domain(args))


def _exact(text: str, args):
    v = _value(text, args)
    if isinstance(v, (SampledNet, GenFunRep)):
        raise UsageError(f"expected an exact scalar net, got {text!r}")
    return v


def _genfun(text: str, args, model: str | None = None) -> GenFunRep:
    v = _value(text, args)
    if isinstance(v, SampledNet):
        raise UsageError("sampled generalized functions are not supported")
    if isinstance(v, GenFunRep):
        if model == FULL and v.model == SIMPLIFIED:
            raise ModelMismatchError("simplified function where a full one is required")
        return v
    if model == FULL and isinstance(v, NetS):
        v = jm_embed(v)
    return embed_const(v, _domain(args))


def _nat(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return n


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _sampled(*values) -> list:
    return [SampledNet.from_exact(v) for v in values]


def _schedule(args, default=None):
    if getattr(args, "iota", None):
        return [Iota.parse(s) for s in args.iota]
    return default


def _b_probe(args):
    return [Fraction(b) for b in args.b] if getattr(args, "b", None) else None


# -- commands --------------------------------------------------------------

def cmd_valuation(args):
    v = _value(args.x, args)
    if isinstance(v, SampledNet):
        est = estimate_valuation(v, _config(args))
        sure = est.infinite or est.half_width <= args.tolerance
        return Output(OK if sure else UNKNOWN, ("estimate", "half_width"),
                      [(str(est).split(" +- ")[0], f"{est.half_width:.2e}")])
    if isinstance(v, GenFunRep):
        return Output(OK, ("valuation",), [(fmt_valuation(gf_lead_exp(v, 0)),)])
    return Output(OK, ("valuation",), [(fmt_valuation(valuation(v)),)])


def _exp_form(v) -> str:
    return "0" if v == float("inf") else f"exp({fmt_rational(-v)})"


def cmd_norm(args):
    x = _exact(args.x, args)
    return Output(OK, ("norm", "float"), [(_exp_form(valuation(x)), repr(sharp_norm(x)))])


def cmd_dist(args):
    x, y = _exact(args.x, args), _exact(args.y, args)
    return Output(OK, ("dist", "float"), [(_exp_form(valuation(x - y)), repr(sharp_dist(x, y)))])


def _falsify_rows(net, directions, args, schedule):
    rows, hits = [], 0
    for d in directions:
        res = falsify_order(net, d, _b_probe(args), schedule, _config(args))
        if res.falsified:
            hits += 1
            ok = verify_witness(net, res.witness)
            rows.append((d, "falsified", str(res.witness), "verified" if ok else "unverified"))
        else:
            rows.append((d, "not-falsified", f"checked={res.checked}", "-"))
    return rows, hits


def cmd_compare(args):
    x, y = _value(args.x, args), _value(args.y, args)
    if isinstance(x, GenFunRep) or isinstance(y, GenFunRep):
        raise UsageError("compare takes scalar nets")
    if isinstance(x, SampledNet) or isinstance(y, SampledNet):
        sx, sy = _sampled(x, y)
        rows, hits = _falsify_rows(sx - sy, ("leq0", "geq0"), args, _schedule(args))
        verdict = Comparison.INCOMPARABLE if hits == 2 else Comparison.UNKNOWN
        return Output(OK if hits == 2 else UNKNOWN, ("result",), [(str(verdict),)] + rows)
    c = order_compare(x, y)
    return Output(UNKNOWN if c is Comparison.UNKNOWN else OK, ("result",), [(str(c),)])


def cmd_abs(args):
    return Output(OK, ("abs",), [(str(absolute(_exact(args.x, args))),)])


def cmd_root(args):
    r = proot(_exact(args.x, args), args.p)
    return Output(OK, ("root",), [(str(r.label if isinstance(r, SampledNet) else r),)])


def cmd_positive(args):
    x = _value(args.x, args)
    if isinstance(x, GenFunRep):
        raise UsageError("positive takes a scalar net")
    if isinstance(x, SampledNet):
        rows, hits = _falsify_rows(x, ("geq0",), args, _schedule(args))
        v = Verdict.NOT_POSITIVE if hits else Verdict.UNKNOWN
        return Output(_VERDICT_CODE[v], ("result",), [(str(v),)] + rows)
    v = q_positivity(x)
    return Output(_VERDICT_CODE[v], ("result",), [(str(v),)])


def cmd_member(args):
    x = _value(args.x, args)
    if isinstance(x, SampledNet):
        res = oracle_ball_member(x, args.r, _b_probe(args), _schedule(args), _config(args))
        if res.falsified:
            return Output(NEGATIVE, ("result", "witness"), [(str(Membership.NOT_MEMBER), str(res.witness))])
        return Output(UNKNOWN, ("result", "checked"), [("consistent", str(res.checked))])
    if isinstance(x, GenFunRep):
        v = gf_ball_member(x, args.beta, args.l, args.r)
        lo, hi = x.domain.exhaustion_set(args.l)
        return Output(_MEMBERSHIP_CODE[v], ("result", "K"),
                      [(str(v), f"[{fmt_rational(lo)}, {fmt_rational(hi)}]")])
    v = scalar_ball_member(x, BallSpec(args.r, x.model))
    return Output(_MEMBERSHIP_CODE[v], ("result",), [(str(v),)])


def cmd_seminorm(args):
    d = seminorm(_genfun(args.f, args), args.beta, args.l)
    lo, hi = d.K
    return Output(OK, ("descriptor", "K"), [(str(d), f"[{fmt_rational(lo)}, {fmt_rational(hi)}]")])


def cmd_integrate(args):
    f = _genfun(args.f, args)
    return Output(OK, ("integral",), [(str(integrate(f, (args.m1, args.m2))),)])


def cmd_derive(args):
    return Output(OK, ("derivative",), [(str(_genfun(args.f, args).derive(args.beta)),)])


def cmd_lpdo(args):
    f = _genfun(args.f, args)
    coeffs = [(_genfun(c, args, f.model), k) for k, c in enumerate(args.coeffs)]
    return Output(OK, ("result",), [(str(lpdo_apply(coeffs, f)),)])


def cmd_vnp(args):
    return Output(OK, ("vnp",), [(fmt_valuation(vnp(_genfun(args.f, args), args.n, args.p)),)])


def cmd_dnp(args):
    f = _genfun(args.f, args)
    g = _genfun(args.g, args, f.model)
    return Output(OK, ("dnp",), [(repr(dnp(f, g, args.n, args.p)),)])


def cmd_axiom_suite(args):
    bases = [canonical_basis(b) for b in args.basis] if args.basis else list(BASES)
    axioms = [canonical_axiom(a) for a in args.axiom] if args.axiom else list(CORE_AXIOMS)
    rows, failures, unknowns = [], 0, 0
    notes = []
    for b in bases:
        for a in axioms:
            rep = axiom_check(b, a, args.samples, args.seed)
            rows.append(tuple(rep.line().split(" ")))
            failures += len(rep.failures)
            unknowns += len(rep.unknowns)
            notes += [("failure", str(f)) for f in rep.failures]
            notes += [("unknown", str(u)) for u in rep.unknowns]
    if args.format == "text":
        rows += notes + [(f"{failures} failures", f"{unknowns} unknowns")]
    return Output(NEGATIVE if failures else OK,
                  ("axiom", "basis", "samples", "failures", "unknowns", "seed"), rows)


def cmd_converge(args):
    if "{n}" not in args.template:
        raise UsageError("template must contain {n}")
    scalar = args.mode == "scalar-sharp"

    def seq(n):
        text = args.template.replace("{n}", str(n))
        return _exact(text, args) if scalar else _genfun(text, args)

    limit = _exact(args.limit, args) if scalar else _genfun(args.limit, args)
    cert = converges(seq, limit, args.mode, args.L)
    rows = [tuple(str(c) if not isinstance(c, (Fraction, float)) else fmt_valuation(c)
                  for c in row) for row in cert.table]
    head = "converges" if cert.converged else "no-convergence"
    return Output(OK if cert.converged else NEGATIVE, ("n", "valuation"), [(head,)] + rows)


def cmd_falsify(args):
    if args.preset:
        if args.x:
            raise UsageError("give either an expression or --preset")
        net, default = oscillating_net(), list(OSCILLATING_SCHEDULE)
    elif args.x:
        net, default = SampledNet.from_exact(_value(args.x, args)), None
    else:
        raise UsageError("falsify needs an expression or --preset")
    directions = ("geq0", "leq0") if args.direction == "both" else (args.direction,)
    rows, hits = _falsify_rows(net, directions, args, _schedule(args, default))
    return Output(NEGATIVE if hits else OK, ("direction", "result", "witness", "check"), rows)


def cmd_script(args):
    raise AssertionError("handled in run()")


# -- parser ----------------------------------------------------------------

_COMMON = (
    ("--grid-depth", dict(type=int, default=200, metavar="J", help="deepest grid index (eps = 2^-J)")),
    ("--tail-window", dict(type=int, default=64, metavar="W", help="points in the tail window")),
    ("--tolerance", dict(type=float, default=1e-3, help="half-width accepted for estimates")),
    ("--seed", dict(default="0", help="seed for randomized suites")),
    ("--samples", dict(type=int, default=200, help="samples per randomized check")),
    ("--format", dict(choices=("text", "tsv"), default="text")),
    ("--domain", dict(nargs=2, default=None, metavar=("LO", "HI"),
                      help="open interval; use inf for unbounded ends")),
)


def _common(defaults: bool) -> argparse.ArgumentParser:
    # subcommands suppress defaults so options given before the command survive
    p = _Parser(add_help=False)
    g = p.add_argument_group("common options")
    for flag, kw in _COMMON:
        kw = dict(kw)
        if not defaults:
            kw["default"] = argparse.SUPPRESS
        g.add_argument(flag, **kw)
    return p


def _common_argv(args) -> list[str]:
    out = []
    for flag, _ in _COMMON:
        v = getattr(args, flag[2:].replace("-", "_"))
        if v is None:
            continue
        out += [flag] + ([str(x) for x in v] if isinstance(v, list) else [str(v)])
    return out


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    parser = _Parser(prog="colombeau", description="Exact arithmetic and topology checks "
                     "for generalized numbers and functions.", parents=[_common(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, *args):
        p = sub.add_parser(name, help=help_, parents=[common])
        for a in args:
            p.add_argument(a[0], **a[1])
        p.set_defaults(fn=fn)
        return p

    X = ("x", {"help": "net expression"})
    F = ("f", {"help": "function expression"})
    add("valuation", cmd_valuation, "valuation (estimated for sampled nets)", X)
    add("norm", cmd_norm, "sharp norm exp(-v(x))", X)
    add("dist", cmd_dist, "sharp distance", X, ("y", {}))
    p = add("compare", cmd_compare, "order comparison: leq, geq, eq, incomparable, unknown", X, ("y", {}))
    p.add_argument("--iota", action="append")
    p.add_argument("--b", action="append")
    add("abs", cmd_abs, "absolute value", X)
    add("root", cmd_root, "q-positive p-th root", X, ("p", {"type": int}))
    p = add("positive", cmd_positive, "q-positivity", X)
    p.add_argument("--iota", action="append")
    p.add_argument("--b", action="append")
    p = add("member", cmd_member, "ball membership", X, ("r", {"type": _rat}),
            ("beta", {"type": _nat, "nargs": "?", "default": 0}),
            ("l", {"type": _nat, "nargs": "?", "default": 0}))
    p.add_argument("--iota", action="append")
    p.add_argument("--b", action="append")
    add("seminorm", cmd_seminorm, "seminorm leading data", F,
        ("beta", {"type": _nat}), ("l", {"type": _nat}))
    add("integrate", cmd_integrate, "integral over [m1, m2]", F,
        ("m1", {"type": _rat}), ("m2", {"type": _rat}))
    add("derive", cmd_derive, "derivative of order beta", F, ("beta", {"type": _nat}))
    add("lpdo", cmd_lpdo, "apply sum_k c_k d^k", F, ("coeffs", {"nargs": "+", "help": "c_0 c_1 ..."}))
    add("vnp", cmd_vnp, "pseudometric valuation v_np", F, ("n", {"type": _nat}), ("p", {"type": _nat}))
    add("dnp", cmd_dnp, "pseudometric d_np", F, ("g", {}), ("n", {"type": _nat}), ("p", {"type": _nat}))
    p = add("axiom-suite", cmd_axiom_suite, "randomized filter-basis axiom checks")
    p.add_argument("--basis", action="append", help=f"one of {', '.join(BASES)} (repeatable)")
    p.add_argument("--axiom", action="append", help=f"one of {', '.join(AXIOMS)} (repeatable)")
    p = add("converge", cmd_converge, "convergence certificate for a sequence template",
            ("template", {"help": "expression with {n}"}), ("limit", {}))
    p.add_argument("--mode", choices=("scalar-sharp", "d_np-family"), default="scalar-sharp")
    p.add_argument("--L", type=int, default=20)
    p = add("falsify", cmd_falsify, "search for order violations on the grid",
            ("x", {"nargs": "?"}))
    p.add_argument("--preset", choices=("oscillating",))
    p.add_argument("--direction", choices=("geq0", "leq0", "both"), default="both")
    p.add_argument("--iota", action="append", help="e.g. 3/2*pi^-1 (repeatable)")
    p.add_argument("--b", action="append", help="probe exponent (repeatable)")
    add("script", cmd_script, "replay a command file", ("file", {}))
    return parser


def _protect(argv):
    # leading '-' on expressions such as "-e^(1)" or "-1/2" must not look like options
    return [" " + a if a.startswith("-") and not a.startswith("--") and len(a) > 1 else a
            for a in argv]


def _emit(res: Output, fmt: str, out):
    if fmt == "tsv":
        print("\t".join(res.header), file=out)
        for row in res.rows:
            print("\t".join(row), file=out)
    else:
        for row in res.rows:
            print(" ".join(row), file=out)


def run(argv, out=None, err=None, _depth: int = 0) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(_protect(list(argv)))
        if args.command == "script":
            return _run_script(args.file, out, _depth, _common_argv(args))
        res = args.fn(args)
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else OK
    except (UsageError, ModelMismatchError, ValueError, ZeroDivisionError, KeyError) as e:
        print(f"error: {e}", file=err)
        return USAGE
    _emit(res, args.format, out)
    return res.code


def _run_script(path: str, out, depth: int, base: list[str]) -> int:
    """Run each line as a command; the script's common options act as defaults."""
    if depth:
        print("error: scripts cannot call scripts", file=out)
        return USAGE
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        print(f"error: {e}", file=out)
        return USAGE
    worst = OK
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        print(f"> {line}", file=out)
        try:
            argv = shlex.split(line)
        except ValueError as e:
            print(f"error: {e}", file=out)
            code = USAGE
        else:
            code = run(base + argv, out, out, depth + 1)
        worst = max(worst, code)
    return worst


def main(argv=None) -> int:
    sys.exit(run(sys.argv[1:] if argv is None else argv))
