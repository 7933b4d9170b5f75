"""Expression language for nets and generalized functions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := rational | 'e' '^' '(' srat ')' | 'i' '^' '(' srat ')'
            | 'x' ['^' nat] | func '(' expr ')' | '(' expr ')' | '-' factor
    func   := 'sin' | 'cos' | 'exp' | 'log'
    rational := int ['/' nat]          srat := ['-'] rational

``e`` is the net parameter, ``i`` the mollifier diameter and ``x`` the space
variable.  Function-free input compiles to exact objects; anything with a
function call compiles to a :class:`~colombeau.sampled.SampledNet`.

>>> str(parse_value("3*e^(1/2) - 2*e^(3)"))
'3*e^(1/2) + -2*e^(3)'
>>> str(parse_value("(x + 1)*(x - 1)*e^(2)"))
'(-1 + 1*x^2)*e^(2)'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .genfun import REAL_LINE, GenFunRep, IntervalDomain
from .nets import FULL, SIMPLIFIED, NetF, NetS, fmt_rational
from .polys import QPoly
from .sampled import SampledNet

__all__ = ["DSLError", "parse", "compile_node", "parse_value", "FUNCS"]

FUNCS = ("sin", "cos", "exp", "log")


class DSLError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.column = line, col


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction

    def __str__(self):
        return fmt_rational(self.value)


@dataclass(frozen=True)
class EPow:
    exp: Fraction

    def __str__(self):
        return f"e^({fmt_rational(self.exp)})"


@dataclass(frozen=True)
class IPow:
    exp: Fraction

    def __str__(self):
        return f"i^({fmt_rational(self.exp)})"


@dataclass(frozen=True)
class XPow:
    k: int

    def __str__(self):
        return "x" if self.k == 1 else f"x^{self.k}"


@dataclass(frozen=True)
class Call:
    name: str
    arg: object

    def __str__(self):
        return f"{self.name}({self.arg})"


@dataclass(frozen=True)
class Neg:
    arg: object

    def __str__(self):
        inner = str(self.arg)
        return f"-({inner})" if isinstance(self.arg, BinOp) else f"-{inner}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def __str__(self):
        l, r = str(self.left), str(self.right)
        if self.op == "*":
            if isinstance(self.left, BinOp) and self.left.op != "*":
                l = f"({l})"
            if isinstance(self.right, BinOp):
                r = f"({r})"
        elif isinstance(self.right, BinOp) and self.right.op != "*":
            r = f"({r})"
        return f"{l} {self.op} {r}"


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        num, ident, sym = m.groups()
        start = m.start(1) if num else m.start(2) if ident else m.start(3)
        if num:
            out.append(("num", num, start))
        elif ident:
            out.append(("id", ident, start))
        else:
            out.append(("sym", sym, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise DSLError(msg, self.text, tok[2])

    def expect(self, sym):
        t = self.take()
        if t[1] != sym or t[0] == "num":
            self.fail(f"expected {sym!r}, found {t[1] or 'end of input'!r}", t)
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "sym" and self.peek()[1] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def rational(self):
        t = self.take()
        if t[0] != "num":
            self.fail(f"expected a number, found {t[1] or 'end of input'!r}", t)
        value = Fraction(int(t[1]))
        if self.peek()[1] == "/" and self.peek()[0] == "sym":
            self.take()
            d = self.take()
            if d[0] != "num":
                self.fail("expected a denominator", d)
            if int(d[1]) == 0:
                self.fail("zero denominator", d)
            value /= int(d[1])
        return value

    def signed_exponent(self):
        self.expect("^")
        self.expect("(")
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "sym":
            sign = -1 if self.take()[1] == "-" else 1
        value = sign * self.rational()
        self.expect(")")
        return value

    def factor(self):
        t = self.peek()
        if t[0] == "num":
            return Num(self.rational())
        if t[0] == "sym" and t[1] == "-":
            self.take()
            return Neg(self.factor())
        if t[0] == "sym" and t[1] == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t[0] == "id":
            self.take()
            name = t[1]
            if name == "e":
                return EPow(self.signed_exponent())
            if name == "i":
                return IPow(self.signed_exponent())
            if name == "x":
                if self.peek()[1] == "^" and self.peek()[0] == "sym":
                    self.take()
                    k = self.take()
                    if k[0] != "num":
                        self.fail("x takes a natural exponent", k)
                    return XPow(int(k[1]))
                return XPow(1)
            if name in FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            self.fail(f"unknown identifier {name!r}", t)
        self.fail(f"unexpected {t[1] or 'end of input'!r}", t)


def parse(text: str):
    """Parse ``text`` into an AST; raises :class:`DSLError` with line/column."""
    return _Parser(text).parse()


# -- compilation ------------------------------------------------------------

def _has(node, kind) -> bool:
    if isinstance(node, kind):
        return True
    if isinstance(node, BinOp):
        return _has(node.left, kind) or _has(node.right, kind)
    if isinstance(node, (Neg, Call)):
        return _has(node.arg, kind)
    return False


def _monomials(node) -> dict:
    # {(x power, eps exp, iota exp): coefficient}
    if isinstance(node, Num):
        return {(0, Fraction(0), Fraction(0)): node.value}
    if isinstance(node, EPow):
        return {(0, node.exp, Fraction(0)): Fraction(1)}
    if isinstance(node, IPow):
        return {(0, Fraction(0), node.exp): Fraction(1)}
    if isinstance(node, XPow):
        return {(node.k, Fraction(0), Fraction(0)): Fraction(1)}
    if isinstance(node, Neg):
        return {k: -c for k, c in _monomials(node.arg).items()}
    a, b = _monomials(node.left), _monomials(node.right)
    out: dict = {}
    if node.op in "+-":
        s = 1 if node.op == "+" else -1
        for k, c in a.items():
            out[k] = out.get(k, 0) + c
        for k, c in b.items():
            out[k] = out.get(k, 0) + s * c
    else:
        for (k1, e1, i1), c1 in a.items():
            for (k2, e2, i2), c2 in b.items():
                key = (k1 + k2, e1 + e2, i1 + i2)
                out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c != 0}


def _sampler(node):
    if isinstance(node, Num):
        v = node.value
        return lambda ctx, e, i: ctx.mpf(v.numerator) / v.denominator
    if isinstance(node, EPow):
        q = node.exp
        return lambda ctx, e, i: ctx.power(e, ctx.mpf(q.numerator) / q.denominator)
    if isinstance(node, IPow):
        q = node.exp
        return lambda ctx, e, i: ctx.power(i, ctx.mpf(q.numerator) / q.denominator)
    if isinstance(node, Neg):
        f = _sampler(node.arg)
        return lambda ctx, e, i: -f(ctx, e, i)
    if isinstance(node, Call):
        f = _sampler(node.arg)
        name = node.name

        def call(ctx, e, i):
            v = f(ctx, e, i)
            if name == "log" and v <= 0:
                raise ValueError("log of a nonpositive value")
            return getattr(ctx, name)(v)

        return call
    if isinstance(node, BinOp):
        f, g = _sampler(node.left), _sampler(node.right)
        return {
            "+": lambda ctx, e, i: f(ctx, e, i) + g(ctx, e, i),
            "-": lambda ctx, e, i: f(ctx, e, i) - g(ctx, e, i),
            "*": lambda ctx, e, i: f(ctx, e, i) * g(ctx, e, i),
        }[node.op]
    raise DSLError(f"cannot sample {node}")


def compile_node(node, domain: IntervalDomain = REAL_LINE):
    """AST to ``NetS``/``NetF``/``GenFunRep`` (exact) or ``SampledNet``."""
    full = _has(node, IPow)
    if _has(node, Call):
        if _has(node, XPow):
            raise DSLError("'x' cannot appear in expressions with functions; "
                           "sampled generalized functions are not supported")
        return SampledNet(_sampler(node), full=full, depth=8, label=str(node))
    mono = _monomials(node)
    if _has(node, XPow):
        model = FULL if full else SIMPLIFIED
        polys: dict = {}
        for (k, e, i), c in mono.items():
            key = (e, i) if full else (e,)
            polys[key] = polys.get(key, QPoly()) + QPoly.monomial(c, k)
        return GenFunRep([(p,) + key for key, p in polys.items()], model, domain)
    if full:
        return NetF((c, e, i) for (_, e, i), c in mono.items())
    return NetS((c, e) for (_, e, _), c in mono.items())


def parse_value(text: str, domain: IntervalDomain = REAL_LINE):
    return compile_node(parse(text), domain)
