"""Black-box nets on the dyadic grid ``eps_j = 2**-j`` and the numeric oracle.

A ``SampledNet`` wraps an evaluator ``fn(ctx, eps, iota) -> mpf``.  The oracle
built on top of it only ever *refutes* (order, ball membership) or
*estimates* (valuation, nullity); it never certifies.

Working precision grows with the grid depth: at ``eps = 2**-j`` a net of
``depth`` ``d`` is evaluated with ``PREC + 16 + d*j`` bits, so a difference
of relative size ``eps**d`` is still resolved.  Sums whose result is below
the rounding level of their operands are flushed to zero, which is what
makes pointwise identities such as ``root(x)**p - x`` come out exactly null.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .nets import PREC, NetF, NetS, context, evaluate_mpf, fmt_rational, to_fraction

__all__ = [
    "Falsification",
    "Iota",
    "OracleConfig",
    "SampledNet",
    "ValuationEstimate",
    "Witness",
    "estimate_valuation",
    "falsify_order",
    "null_estimate",
    "oracle_ball_member",
    "verify_witness",
    "OSCILLATING_SCHEDULE",
    "oscillating_net",
]


@dataclass(frozen=True)
class Iota:
    """An exact diameter value ``q * pi**k``."""

    q: Fraction = Fraction(1)
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "q", to_fraction(self.q))
        if self.q <= 0:
            raise ValueError("iota must be positive")

    def mpf(self, ctx):
        v = ctx.mpf(self.q.numerator) / self.q.denominator
        return v * ctx.pi ** self.pi_power if self.pi_power else v

    def __str__(self):
        base = fmt_rational(self.q)
        return f"{base}*pi^{self.pi_power}" if self.pi_power else base

    @classmethod
    def parse(cls, text: str) -> "Iota":
        """Read ``"3/2"`` or ``"3/2*pi^-1"``."""
        head, _, tail = text.replace(" ", "").partition("*pi^")
        return cls(Fraction(head), int(tail) if tail else 0)


# odd multiples: iota_k = (2k+1)/(2 pi), k = 1..3
OSCILLATING_SCHEDULE = tuple(Iota(Fraction(2 * k + 1, 2), -1) for k in (1, 2, 3))


@dataclass(frozen=True)
class OracleConfig:
    j0: int = 4
    J: int = 200
    window: int = 64
    B: Fraction = Fraction(50)
    b_list: tuple = (Fraction(2), Fraction(3), Fraction(5), Fraction(10))

    def __post_init__(self):
        if not 0 < self.j0 <= self.J:
            raise ValueError("grid needs 0 < j0 <= J")
        if self.window < 2:
            raise ValueError("tail window needs at least two points")
        object.__setattr__(self, "B", to_fraction(self.B))
        object.__setattr__(self, "b_list", tuple(to_fraction(b) for b in self.b_list))

    @property
    def tail(self) -> range:
        return range(max(self.j0, self.J - self.window + 1), self.J + 1)

    @property
    def last_quarter(self) -> int:
        t = self.tail
        return t.stop - max(1, len(t) // 4)

    @classmethod
    def from_mapping(cls, cfg: dict) -> "OracleConfig":
        """Build from the dotted keys ``grid.j0``, ``grid.J``, ``tail.window``, ``probe.B``, ``probe.b_list``."""
        keys = {"grid.j0": "j0", "grid.J": "J", "tail.window": "window",
                "probe.B": "B", "probe.b_list": "b_list"}
        unknown = set(cfg) - set(keys)
        if unknown:
            raise KeyError(f"unknown oracle config keys: {sorted(unknown)}")
        return cls(**{keys[k]: v for k, v in cfg.items()})


DEFAULT = OracleConfig()

Evaluator = Callable[..., object]


def _flush(ctx, total, *parts):
    # a result below the operands' rounding level is cancellation noise
    scale = max(abs(p) for p in parts)
    if scale and abs(total) <= ctx.ldexp(scale, 24 - ctx.prec):
        return ctx.zero
    return total


class SampledNet:
    """A net known only through its values.

    ``fn(ctx, eps, iota)`` receives mpf values in ``ctx``; ``iota`` is
    ``None`` for simplified nets.  ``lead`` optionally records exact leading
    data ``(coeff, exp)`` supplied by the producer.
    """

    __slots__ = ("fn", "full", "depth", "lead", "label")

    def __init__(self, fn: Evaluator, *, full: bool = False, depth: int = 1,
                 lead: tuple | None = None, label: str = "sampled"):
        self.fn = fn
        self.full = full
        self.depth = max(1, int(depth))
        self.lead = lead
        self.label = label

    def __repr__(self):
        return f"SampledNet({self.label!r})"

    @classmethod
    def from_exact(cls, x) -> "SampledNet":
        if isinstance(x, SampledNet):
            return x
        if isinstance(x, (int, Fraction)):
            x = NetS.const(x)
        full = isinstance(x, NetF)
        exps = [t[1] for t in x.terms]
        depth = math.ceil(max(exps) - min(exps)) + 1 if exps else 1
        lead = (x.terms[0][0], x.terms[0][1]) if x.terms and not full else None

        def fn(ctx, eps, iota):
            return evaluate_mpf(x, eps, iota, ctx)

        return cls(fn, full=full, depth=depth, lead=lead, label=str(x))

    @classmethod
    def constant(cls, c) -> "SampledNet":
        c = to_fraction(c)
        return cls(lambda ctx, eps, iota: ctx.mpf(c.numerator) / c.denominator, label=str(c))

    # -- evaluation -----------------------------------------------------
    def prec(self, j: int, extra: int = 0) -> int:
        return PREC + 16 + (self.depth + extra) * max(j, 0)

    def at(self, j: int, iota: Iota | None = None, extra: int = 0, scale: int = 1):
        """``(ctx, value)`` at ``eps = 2**-j``; ``scale`` multiplies the precision."""
        ctx = context(scale * self.prec(j, extra))
        eps = ctx.ldexp(1, -j)
        return ctx, self.fn(ctx, eps, self._iota(iota, ctx))

    def value(self, eps, iota: Iota | None = None, prec: int | None = None):
        ctx = context(prec or PREC)
        e = ctx.mpf(eps.numerator) / eps.denominator if isinstance(eps, Fraction) else ctx.mpf(eps)
        return self.fn(ctx, e, self._iota(iota, ctx))

    def _iota(self, iota, ctx):
        if not self.full:
            return None
        return (iota or Iota()).mpf(ctx)

    # -- arithmetic -----------------------------------------------------
    def _binary(self, other, op, label):
        other = SampledNet.from_exact(other)
        a, b = self, other

        def fn(ctx, eps, iota):
            u, v = a.fn(ctx, eps, iota), b.fn(ctx, eps, iota)
            if op == "+":
                return _flush(ctx, u + v, u, v)
            if op == "-":
                return _flush(ctx, u - v, u, v)
            return u * v

        depth = max(a.depth, b.depth)
        return SampledNet(fn, full=a.full or b.full, depth=depth,
                          label=f"({a.label}) {label} ({b.label})")

    def __add__(self, other):
        return self._binary(other, "+", "+")

    def __radd__(self, other):
        return SampledNet.from_exact(other)._binary(self, "+", "+")

    def __sub__(self, other):
        return self._binary(other, "-", "-")

    def __rsub__(self, other):
        return SampledNet.from_exact(other)._binary(self, "-", "-")

    def __mul__(self, other):
        return self._binary(other, "*", "*")

    def __rmul__(self, other):
        return SampledNet.from_exact(other)._binary(self, "*", "*")

    def __neg__(self):
        base = self
        return SampledNet(lambda ctx, e, i: -base.fn(ctx, e, i), full=self.full,
                          depth=self.depth, label=f"-({self.label})")

    def __abs__(self):
        base = self
        return SampledNet(lambda ctx, e, i: abs(base.fn(ctx, e, i)), full=self.full,
                          depth=self.depth, label=f"|{self.label}|")

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("sampled nets support non-negative integer powers")
        base = self
        return SampledNet(lambda ctx, e, i: base.fn(ctx, e, i) ** n, full=self.full,
                          depth=self.depth, label=f"({self.label})^{n}")


# -- estimates --------------------------------------------------------------

@dataclass(frozen=True)
class ValuationEstimate:
    slope: float
    half_width: float
    window: tuple[int, int]
    infinite: bool

    @property
    def verdict(self) -> str:
        return "plausibly-infinite" if self.infinite else f"finite({self.slope:.6f})"

    def __str__(self):
        if self.infinite:
            return "inf"
        return f"{self.slope:.6f} +- {self.half_width:.2e}"


def _log2_abs(ctx, v) -> float:
    # log2|v| as float; exact enough for regression and tail tests
    m, e = ctx.frexp(v)
    return math.log2(abs(float(m))) + e


def _below(ctx, v, j: int, B: Fraction) -> bool:
    # |v| <= 2**(-j*B)
    if v == 0:
        return True
    return _log2_abs(ctx, v) <= -j * float(B)


def null_estimate(net: SampledNet, B=None, config: OracleConfig = DEFAULT,
                  iota: Iota | None = None) -> bool:
    """True iff ``|net(eps_j)| <= eps_j**B`` on the whole tail window."""
    B = config.B if B is None else to_fraction(B)
    if B <= 0:
        raise ValueError("probe exponent must be positive")
    for j in config.tail:
        ctx, v = net.at(j, iota)
        if not _below(ctx, v, j, B):
            return False
    return True


def estimate_valuation(net, config: OracleConfig = DEFAULT,
                       iota: Iota | None = None) -> ValuationEstimate:
    """Least-squares slope of ``log|v|`` against ``log eps`` on the tail window."""
    net = SampledNet.from_exact(net)
    tail = config.tail
    xs, ys = [], []
    tiny = True
    for j in tail:
        ctx, v = net.at(j, iota)
        if not _below(ctx, v, j, config.B):
            tiny = False
        if v != 0:
            xs.append(-float(j))
            ys.append(_log2_abs(ctx, v))
    window = (tail.start, tail.stop - 1)
    if tiny or len(xs) < 2:
        return ValuationEstimate(math.inf, 0.0, window, True)
    slope, intercept = statistics.linear_regression(xs, ys)
    resid = [y - (slope * x + intercept) for x, y in zip(xs, ys)]
    mx = statistics.fmean(xs)
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    s2 = math.fsum(r * r for r in resid) / max(len(xs) - 2, 1)
    half = 3.0 * math.sqrt(s2 / sxx) if sxx else math.inf
    return ValuationEstimate(slope, half, window, False)


# -- refutation -------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A grid point where an inequality fails; ``eps = 2**-j`` exactly."""

    j: int
    b: Fraction
    iota: Iota | None
    value: float
    kind: str
    r: Fraction | None = None

    def __str__(self):
        s = f"eps=2^-{self.j} b={fmt_rational(self.b)}"
        if self.iota is not None:
            s += f" iota={self.iota}"
        return s + f" value~{self.value:.6e}"


@dataclass(frozen=True)
class Falsification:
    falsified: bool
    witness: Witness | None = None
    checked: int = 0

    def __bool__(self):
        return self.falsified

    def __str__(self):
        return f"falsified {self.witness}" if self.falsified else "not-falsified"


def _pow2(ctx, j, q):
    # (2**-j)**q
    return ctx.power(2, -j * (ctx.mpf(q.numerator) / q.denominator))


def _violates(ctx, v, j, b, kind, iota, r=None):
    eb = _pow2(ctx, j, b)
    if kind == "geq0":
        return v < -eb
    if kind == "leq0":
        return v > eb
    bound = _pow2(ctx, j, r)
    if iota is not None:
        bound *= ctx.power(iota, ctx.mpf(r.numerator) / r.denominator)
    # a relative margin keeps rounding at the boundary from refuting
    return abs(v) > (bound + eb) * (1 + ctx.ldexp(1, 16 - ctx.prec))


def _search(net, kind, b_probe, schedule, config, r=None, extra=0):
    b_probe = [to_fraction(b) for b in b_probe]
    if not b_probe:
        raise ValueError("b_probe must be nonempty")
    schedule = list(schedule) if schedule else [None]
    if net.full and schedule == [None]:
        schedule = [Iota()]
    best, checked = None, 0
    cut = config.last_quarter
    for iota in schedule:
        for b in b_probe:
            for j in reversed(config.tail):
                if j < cut:
                    break
                checked += 1
                ctx, v = net.at(j, iota, extra)
                io = iota.mpf(ctx) if (iota is not None and net.full) else None
                if _violates(ctx, v, j, b, kind, io, r):
                    w = Witness(j, b, iota if net.full else None, float(v), kind, r)
                    if best is None or w.j > best.j:
                        best = w
                    break
    return Falsification(best is not None, best, checked)


def falsify_order(net, direction: str = "geq0", b_probe: Sequence = None,
                  iota_schedule: Iterable[Iota] | None = None,
                  config: OracleConfig = DEFAULT) -> Falsification:
    """Search for ``value < -eps**b`` (``geq0``) or ``value > eps**b`` (``leq0``).

    Only violations persisting into the last quarter of the tail window
    count; the deepest one is returned as witness.
    """
    if direction not in ("geq0", "leq0"):
        raise ValueError("direction is 'geq0' or 'leq0'")
    net = SampledNet.from_exact(net)
    b_probe = config.b_list if b_probe is None else b_probe
    extra = math.ceil(max(to_fraction(b) for b in b_probe)) if b_probe else 0
    return _search(net, direction, b_probe, iota_schedule, config, extra=extra)


def oracle_ball_member(net, r, b_probe: Sequence = None,
                       iota_schedule: Iterable[Iota] | None = None,
                       config: OracleConfig = DEFAULT) -> Falsification:
    """Refute ``|value| <= eps**r (*iota**r) + eps**b``; ``falsified`` means Refuted."""
    net = SampledNet.from_exact(net)
    r = to_fraction(r)
    b_probe = config.b_list if b_probe is None else b_probe
    extra = math.ceil(max(abs(to_fraction(b)) for b in b_probe) + abs(r)) + 1
    return _search(net, "ball", b_probe, iota_schedule, config, r=r, extra=extra)


def verify_witness(net, w: Witness, scale: int = 4) -> bool:
    """Re-evaluate at ``scale`` times the precision and re-check the inequality."""
    net = SampledNet.from_exact(net)
    extra = math.ceil(abs(w.b) + (abs(w.r) if w.r is not None else 0)) + 1
    ctx, v = net.at(w.j, w.iota, extra, scale=scale)
    io = w.iota.mpf(ctx) if (w.iota is not None and net.full) else None
    return bool(_violates(ctx, v, w.j, w.b, w.kind, io, w.r))


def oscillating_net() -> SampledNet:
    """``eps*iota*sin(1/(eps*iota))``: neither q-positive nor q-negative."""

    def fn(ctx, eps, iota):
        t = eps * iota
        return t * ctx.sin(1 / t)

    return SampledNet(fn, full=True, depth=2, label="e^(1)*i^(1)*sin(e^(-1)*i^(-1))")
