"""Exact representatives of generalized numbers.

Two models are supported:

* ``NetS`` -- simplified model, a finite sum ``sum c * eps**q``.
* ``NetF`` -- full model, a finite sum ``sum c * eps**a * iota**b`` where
  ``iota`` stands for the support diameter of the base mollifier.  Evaluated
  along the dilates ``phi_eps`` of a mollifier with diameter ``iota``.

Both are immutable and kept in canonical form: equal exponent keys merged,
zero coefficients dropped, terms sorted by exponent key.  Two raw term lists
denote the same generalized number iff they normalize identically.

>>> x = NetS([(3, Fraction(1, 2)), (-2, 3)])
>>> str(x)
'3*e^(1/2) + -2*e^(3)'
>>> str(x * x)
'9*e^(1) + -12*e^(7/2) + 4*e^(6)'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Iterable, Union

from mpmath.ctx_mp import MPContext

__all__ = [
    "PREC",
    "ModelMismatchError",
    "NetS",
    "NetF",
    "NetValue",
    "alpha",
    "context",
    "evaluate",
    "fmt_rational",
    "jm_embed",
    "net_arith",
    "normalize",
    "to_fraction",
]

#: Working precision (bits) of every numeric evaluation.
PREC = 128

SIMPLIFIED = "simplified"
FULL = "full"


class ModelMismatchError(TypeError):
    """Operands belong to different models (simplified vs full)."""


@lru_cache(maxsize=None)
def context(prec: int = PREC) -> MPContext:
    """Private mpmath context at ``prec`` bits; never touches ``mpmath.mp``."""
    ctx = MPContext()
    ctx.prec = prec
    return ctx


def to_fraction(v) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction.

    Floats are rejected: exponents and thresholds must stay exact.
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"expected an exact rational, got {type(v).__name__}: {v!r}")


def _coeff(v):
    # coefficients may be inexact 128-bit reals (flagged by ``is_exact``)
    ctx = context()
    if isinstance(v, ctx.mpf):
        return v
    return to_fraction(v)


def fmt_rational(q: Fraction) -> str:
    """``p/q`` text with the denominator omitted when it is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return fmt_rational(c)
    return context().nstr(c, 40)


def _is_zero(c) -> bool:
    return c == 0


def _add_coeffs(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a + b
    return _to_mpf(a) + _to_mpf(b)


def _mul_coeffs(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    return _to_mpf(a) * _to_mpf(b)


def _to_mpf(c, ctx: MPContext | None = None):
    ctx = ctx or context()
    if isinstance(c, Fraction):
        return ctx.mpf(c.numerator) / c.denominator
    return ctx.mpf(c)


class _ExactNet:
    """Shared machinery; subclasses fix the exponent-key arity."""

    __slots__ = ("terms",)
    model: str = ""
    arity: int = 0

    def __init__(self, terms: Iterable[tuple] = ()):
        merged: dict[tuple, object] = {}
        for raw in terms:
            if len(raw) != self.arity + 1:
                raise ValueError(
                    f"{type(self).__name__} terms have {self.arity + 1} entries, got {raw!r}"
                )
            c = _coeff(raw[0])
            key = tuple(to_fraction(e) for e in raw[1:])
            merged[key] = _add_coeffs(merged[key], c) if key in merged else c
        canon = tuple(
            (c,) + key for key, c in sorted(merged.items()) if not _is_zero(c)
        )
        object.__setattr__(self, "terms", canon)

    @classmethod
    def _canonical(cls, terms: tuple):
        obj = object.__new__(cls)
        object.__setattr__(obj, "terms", terms)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- structure -----------------------------------------------------
    @classmethod
    def zero(cls):
        return cls._canonical(())

    @classmethod
    def one(cls):
        return cls([(1,) + (0,) * cls.arity])

    @classmethod
    def const(cls, c):
        return cls([(c,) + (0,) * cls.arity])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(t[0], Fraction) for t in self.terms)

    @property
    def lead(self) -> tuple | None:
        """Leading term (least exponent key) or ``None`` for the zero net."""
        return self.terms[0] if self.terms else None

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    # -- ring operations ----------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self).const(other)
        if not isinstance(other, _ExactNet):
            return NotImplemented
        if type(other) is not type(self):
            raise ModelMismatchError(
                f"cannot combine {self.model} net with {other.model} net"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return type(self)(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._canonical(tuple((-t[0],) + t[1:] for t in self.terms))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        raw = []
        for s in self.terms:
            for o in other.terms:
                raw.append(
                    (_mul_coeffs(s[0], o[0]),)
                    + tuple(a + b for a, b in zip(s[1:], o[1:]))
                )
        return type(self)(raw)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers of nets are exact")
        out = type(self).one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = type(self).const(other)
        if not isinstance(other, _ExactNet):
            return NotImplemented
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((self.model, self.terms))

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class NetS(_ExactNet):
    """Simplified-model net ``sum c * eps**q``; terms are ``(c, q)``."""

    __slots__ = ()
    model = SIMPLIFIED
    arity = 1

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{_fmt_coeff(c)}*e^({fmt_rational(q)})" for c, q in self.terms)


class NetF(_ExactNet):
    """Full-model net ``sum c * eps**a * iota**b``; terms are ``(c, a, b)``."""

    __slots__ = ()
    model = FULL
    arity = 2

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{_fmt_coeff(c)}*e^({fmt_rational(a)})*i^({fmt_rational(b)})"
            for c, a, b in self.terms
        )

    def groups(self) -> list[tuple[Fraction, tuple[tuple, ...]]]:
        """Terms grouped by eps exponent: ``[(a, ((c, b), ...)), ...]`` ascending."""
        out: list[tuple[Fraction, list]] = []
        for c, a, b in self.terms:
            if out and out[-1][0] == a:
                out[-1][1].append((c, b))
            else:
                out.append((a, [(c, b)]))
        return [(a, tuple(g)) for a, g in out]


ExactNet = Union[NetS, NetF]


def normalize(raw_terms: Iterable[tuple], model: str | None = None) -> ExactNet:
    """Canonical net from raw ``(c, q)`` or ``(c, a, b)`` tuples.

    The model is inferred from tuple length; an empty list gives the zero
    net of ``model`` (simplified when not given).
    """
    raw = list(raw_terms)
    if model is None:
        if not raw:
            model = SIMPLIFIED
        else:
            lengths = {len(t) for t in raw}
            if len(lengths) != 1 or lengths.pop() not in (2, 3):
                raise ValueError("raw terms must all be (c, q) or all (c, a, b)")
            model = SIMPLIFIED if len(raw[0]) == 2 else FULL
    cls = NetS if model == SIMPLIFIED else NetF
    return cls(raw)


def net_arith(op: str, x: ExactNet, y: ExactNet | None = None) -> ExactNet:
    """Dispatch ``add``, ``sub``, ``neg`` or ``mul``; result is canonical."""
    if op == "neg":
        return -x
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown net operation {op!r}")


def alpha(r, model: str = SIMPLIFIED) -> ExactNet:
    """The positive unit of valuation ``r``.

    Simplified: ``eps**r``.  Full: along ``phi_eps`` with diameter ``iota``
    the representative ``i(phi)**r`` takes the value ``eps**r * iota**r``.
    """
    r = to_fraction(r)
    if model == SIMPLIFIED:
        return NetS([(1, r)])
    if model == FULL:
        return NetF([(1, r, r)])
    raise ValueError(f"unknown model {model!r}")


def jm_embed(x: NetS) -> NetF:
    """Simplified scalars into the full model via ``eps -> min(1, i(phi))``.

    Along ``phi_eps`` this is ``x(min(1, eps*iota))``, which equals
    ``x(eps*iota)`` once ``eps < 1/iota``; eventually-equal nets coincide.
    """
    if not isinstance(x, NetS):
        raise ModelMismatchError("jm_embed expects a simplified net")
    return NetF._canonical(tuple((c, q, q) for c, q in x.terms))


@dataclass(frozen=True)
class NetValue:
    """A net value kept alongside its logarithm.

    ``value`` is the nearest float and may under/overflow (``overflow`` is
    set then); ``log_abs`` and ``sign`` stay accurate for any magnitude.
    ``raw`` is the 128-bit value itself.
    """

    sign: int
    log_abs: float
    value: float
    overflow: bool = False
    raw: object = None

    @classmethod
    def from_mpf(cls, v, ctx: MPContext | None = None) -> "NetValue":
        ctx = ctx or context()
        if v == 0:
            return cls(0, float("-inf"), 0.0, False, v)
        sign = 1 if v > 0 else -1
        log_abs = float(ctx.log(abs(v)))
        f = float(v)
        overflow = f in (0.0, float("inf"), float("-inf"))
        return cls(sign, log_abs, f, overflow, v)

    @classmethod
    def of(cls, v) -> "NetValue":
        """Wrap a positive exact/float/mpf evaluation point."""
        if isinstance(v, NetValue):
            return v
        ctx = context()
        if isinstance(v, Fraction) or isinstance(v, int):
            v = _to_mpf(Fraction(v), ctx)
        return cls.from_mpf(ctx.mpf(v), ctx)

    def mpf(self, ctx: MPContext | None = None):
        ctx = ctx or context()
        if self.raw is not None:
            return ctx.mpf(self.raw)
        if self.sign == 0:
            return ctx.zero
        return self.sign * ctx.exp(ctx.mpf(self.log_abs))


def evaluate(x: ExactNet, eps, iota=None, ctx: MPContext | None = None) -> NetValue:
    """Value of ``x`` at ``eps`` (and ``iota`` for full nets), as a NetValue.

    Powers are formed as ``exp(q*log(eps) + b*log(iota))`` so tiny grids such
    as ``eps = 2**-200`` neither underflow nor lose relative accuracy.
    """
    ctx = ctx or context()
    return NetValue.from_mpf(evaluate_mpf(x, eps, iota, ctx), ctx)


def evaluate_mpf(x: ExactNet, eps, iota=None, ctx: MPContext | None = None):
    ctx = ctx or context()
    e = NetValue.of(eps).mpf(ctx) if isinstance(eps, NetValue) else _point(eps, ctx)
    if e <= 0:
        raise ValueError("eps must be positive")
    log_e = ctx.log(e)
    if isinstance(x, NetF):
        if iota is None:
            raise ValueError("full-model nets need an iota value")
        i = iota.mpf(ctx) if isinstance(iota, NetValue) else _point(iota, ctx)
        if i <= 0:
            raise ValueError("iota must be positive")
        log_i = ctx.log(i)
        parts = [
            _to_mpf(c, ctx) * ctx.exp(_to_mpf(a, ctx) * log_e + _to_mpf(b, ctx) * log_i)
            for c, a, b in x.terms
        ]
    else:
        parts = [_to_mpf(c, ctx) * ctx.exp(_to_mpf(q, ctx) * log_e) for c, q in x.terms]
    # fixed summation order keeps results reproducible
    return ctx.fsum(parts) if parts else ctx.zero


def _point(v, ctx: MPContext):
    if isinstance(v, Fraction) or (isinstance(v, int) and not isinstance(v, bool)):
        return _to_mpf(Fraction(v), ctx)
    if isinstance(v, str):
        return _to_mpf(Fraction(v), ctx)
    return ctx.mpf(v)
