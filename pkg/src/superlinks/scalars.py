"""
Exact scalars: rational functions in color parameters and truncated Laurent
series in the deformation parameter ``h``.

A :class:`RatFunc` is a reduced fraction of multivariate polynomials over QQ
whose denominator has leading coefficient 1, so equality is syntactic. A
:class:`TruncatedSeries` stores the coefficients of ``h^k`` for
``min_degree <= k < trunc_order``; everything of degree ``>= trunc_order`` is
discarded by every operation.

Polynomial arithmetic is delegated to python-flint's ``fmpq_mpoly``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

__all__ = [
    "RatFunc",
    "TruncatedSeries",
    "ScalarError",
    "TruncationError",
    "DEFAULT_TRUNC_ORDER",
    "exp_h",
    "series_mul",
    "series_inv",
    "coefficient",
    "parse_ratfunc",
    "parse_series",
]

DEFAULT_TRUNC_ORDER = 8

Number = Union[int, Fraction]


class ScalarError(ArithmeticError):
    """Invalid scalar operation (division by zero, mismatched truncation)."""


class TruncationError(ScalarError):
    """A coefficient at or beyond the truncation order was requested."""


@lru_cache(maxsize=None)
def _ctx(names: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(names, "lex")


def _union(c1, c2):
    if c1 is c2:
        return c1
    names = tuple(sorted(set(c1.names()) | set(c2.names())))
    return _ctx(names)


def _fmpq(x: Number) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpq):
        return x
    return flint.fmpq(int(x))


class RatFunc:
    """Element of QQ(a1, ..., ak) in canonical reduced form."""

    __slots__ = ("num", "den", "_den_one")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        ctx = num.context()
        if den is None:
            den = ctx.constant(1)
        elif den.context() is not ctx:
            ctx = _union(ctx, den.context())
            num = num.project_to_context(ctx)
            den = den.project_to_context(ctx)
        if not _reduced:
            if den.is_zero():
                raise ScalarError("division by zero in rational function")
            if num.is_zero():
                den = ctx.constant(1)
            elif not den.is_constant():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den
        self._den_one = den.is_one()

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, value: Number) -> "RatFunc":
        ctx = _ctx(())
        return cls(ctx.constant(_fmpq(value)), ctx.constant(1), _reduced=True)

    @classmethod
    def param(cls, name: str) -> "RatFunc":
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or name == "h":
            raise ValueError(f"invalid color parameter name {name!r}")
        ctx = _ctx((name,))
        return cls(ctx.gens()[0], ctx.constant(1), _reduced=True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # -- structure ---------------------------------------------------------
    @property
    def context(self):
        return self.num.context()

    @property
    def params(self) -> tuple[str, ...]:
        """Names of parameters that actually occur."""
        ctx = self.context
        names = ctx.names()
        used = set()
        for p in (self.num, self.den):
            degs = p.degrees()
            used.update(n for n, d in zip(names, degs) if d > 0)
        return tuple(n for n in names if n in used)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self._den_one and self.num.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        terms = list(self.num.terms())
        if not terms:
            return Fraction(0)
        c = flint.fmpq(terms[0][1]) / flint.fmpq(list(self.den.terms())[0][1])
        return Fraction(int(c.p), int(c.q))

    def _lift(self, other: "RatFunc"):
        ctx = _union(self.context, other.context)
        if ctx is self.context:
            a = self
        else:
            a = RatFunc(self.num.project_to_context(ctx),
                        self.den.project_to_context(ctx), _reduced=True)
        if ctx is other.context:
            b = other
        else:
            b = RatFunc(other.num.project_to_context(ctx),
                        other.den.project_to_context(ctx), _reduced=True)
        return a, b

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        a, b = self._lift(other)
        if a._den_one and b._den_one:
            return RatFunc(a.num + b.num, a.den, _reduced=True)
        if a.den == b.den:
            return RatFunc(a.num + b.num, a.den)
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return RatFunc(self.context.constant(0), _reduced=False)
                q = _fmpq(other)
                return RatFunc(self.num * q, self.den, _reduced=True)
            return NotImplemented
        a, b = self._lift(other)
        if a._den_one and b._den_one:
            return RatFunc(a.num * b.num, a.den, _reduced=True)
        return RatFunc(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ScalarError("division by zero in rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarError("division by zero in rational function")
            return RatFunc(self.num / _fmpq(other), self.den, _reduced=True)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        a, b = self._lift(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash(str(self))

    # -- evaluation --------------------------------------------------------
    def subs(self, values: Mapping[str, Number]) -> "RatFunc":
        """Substitute rational numbers for parameters."""
        names = self.context.names()
        vals = {k: _fmpq(v) for k, v in values.items() if k in names}
        if not vals:
            return self
        num = self.num.subs(vals)
        den = self.den.subs(vals)
        if den.is_zero():
            raise ScalarError(f"denominator vanishes at {dict(values)}")
        return RatFunc(num, den)

    # -- text --------------------------------------------------------------
    def __str__(self):
        if self._den_one:
            return f"({_poly_str(self.num)})"
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RatFunc{self}"


def _poly_str(p) -> str:
    if p.is_zero():
        return "0"
    names = p.context().names()
    out = []
    for monom, c in p.terms():
        c = flint.fmpq(c)
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e
        )
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


ZERO = RatFunc.const(0)
ONE = RatFunc.const(1)


class TruncatedSeries:
    """Laurent series ``sum_{k >= min_degree} c_k h^k`` modulo ``h^trunc_order``."""

    __slots__ = ("min_degree", "coeffs", "trunc_order")

    def __init__(self, coeffs: Iterable, min_degree: int = 0,
                 trunc_order: int = DEFAULT_TRUNC_ORDER):
        cs = [RatFunc.coerce(c) for c in coeffs]
        cs = cs[: max(0, trunc_order - min_degree)]
        start = 0
        while start < len(cs) and cs[start].is_zero():
            start += 1
        end = len(cs)
        while end > start and cs[end - 1].is_zero():
            end -= 1
        if start == end:
            self.min_degree = trunc_order
            self.coeffs = ()
        else:
            self.min_degree = min_degree + start
            self.coeffs = tuple(cs[start:end])
        self.trunc_order = trunc_order

    @classmethod
    def _raw(cls, coeffs: list, min_degree: int, trunc_order: int):
        # coeffs already RatFunc and within range; normalise zeros at ends only
        obj = cls.__new__(cls)
        start = 0
        n = len(coeffs)
        while start < n and coeffs[start].is_zero():
            start += 1
        end = n
        while end > start and coeffs[end - 1].is_zero():
            end -= 1
        if start == end:
            obj.min_degree = trunc_order
            obj.coeffs = ()
        else:
            obj.min_degree = min_degree + start
            obj.coeffs = tuple(coeffs[start:end])
        obj.trunc_order = trunc_order
        return obj

    @classmethod
    def const(cls, value, trunc_order: int = DEFAULT_TRUNC_ORDER) -> "TruncatedSeries":
        return cls([RatFunc.coerce(value)], 0, trunc_order)

    @classmethod
    def zero(cls, trunc_order: int = DEFAULT_TRUNC_ORDER) -> "TruncatedSeries":
        return cls([], 0, trunc_order)

    @classmethod
    def one(cls, trunc_order: int = DEFAULT_TRUNC_ORDER) -> "TruncatedSeries":
        return cls([ONE], 0, trunc_order)

    @classmethod
    def monomial(cls, c, k: int, trunc_order: int = DEFAULT_TRUNC_ORDER):
        return cls([RatFunc.coerce(c)], k, trunc_order)

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> RatFunc:
        return coefficient(self, k)

    def _get(self, k: int) -> RatFunc:
        i = k - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return ZERO

    def _check(self, other: "TruncatedSeries"):
        if self.trunc_order != other.trunc_order:
            raise ScalarError(
                f"mismatched truncation orders {self.trunc_order} and {other.trunc_order}"
            )

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (RatFunc, int, Fraction)):
            return TruncatedSeries.const(other, self.trunc_order)
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.min_degree + len(self.coeffs), other.min_degree + len(other.coeffs))
        out = [self._get(k) + other._get(k) for k in range(lo, hi)]
        return TruncatedSeries._raw(out, lo, self.trunc_order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-c for c in self.coeffs], self.min_degree, self.trunc_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            if isinstance(other, (int, Fraction)) and other == 1:
                return self
            c = RatFunc.coerce(other)
            return TruncatedSeries._raw([x * c for x in self.coeffs],
                                        self.min_degree, self.trunc_order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            c = RatFunc.coerce(other).inv()
            return self * c
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_mul(self, series_inv(other))

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        result = TruncatedSeries.one(self.trunc_order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``h^k``."""
        return TruncatedSeries(list(self.coeffs), self.min_degree + k, self.trunc_order)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, int, Fraction)):
            other = TruncatedSeries.const(other, self.trunc_order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.trunc_order != other.trunc_order:
            return False
        return self.min_degree == other.min_degree and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        ) and len(self.coeffs) == len(other.coeffs)

    def __hash__(self):
        return hash(str(self))

    def subs(self, values: Mapping[str, Number]) -> "TruncatedSeries":
        return TruncatedSeries([c.subs(values) for c in self.coeffs],
                               self.min_degree, self.trunc_order)

    def with_order(self, trunc_order: int) -> "TruncatedSeries":
        """Re-truncate to a lower order (raising the order would invent terms)."""
        if trunc_order > self.trunc_order:
            raise ScalarError("cannot raise the truncation order of a series")
        return TruncatedSeries(list(self.coeffs), self.min_degree, trunc_order)

    # -- text --------------------------------------------------------------
    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            k = self.min_degree + i
            terms.append(f"{c} * h^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(h^{self.trunc_order})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


def series_mul(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the shared order."""
    x._check(y)
    n = x.trunc_order
    if not x.coeffs or not y.coeffs:
        return TruncatedSeries.zero(n)
    lo = x.min_degree + y.min_degree
    size = n - lo
    if size <= 0:
        return TruncatedSeries.zero(n)
    out = [None] * size
    xc, yc = x.coeffs, y.coeffs
    for i, a in enumerate(xc):
        if i >= size:
            break
        for j in range(min(len(yc), size - i)):
            t = a * yc[j]
            k = i + j
            out[k] = t if out[k] is None else out[k] + t
    out = [ZERO if c is None else c for c in out]
    return TruncatedSeries._raw(out, lo, n)


def series_inv(x: TruncatedSeries) -> TruncatedSeries:
    """Inverse of the (exact) truncated Laurent polynomial ``x``, modulo ``h^N``.

    With ``x = h^m u`` and ``u(0) != 0`` the result is ``h^-m u^-1`` where
    ``u^-1`` is expanded far enough that every retained coefficient is exact.
    """
    if not x.coeffs:
        raise ScalarError("series_inv of the zero series")
    n = x.trunc_order
    m = x.min_degree
    length = n + m  # number of coefficients of u^-1 needed: degrees -m .. n-1
    if length <= 0:
        return TruncatedSeries.zero(n)
    u = x.coeffs
    u0inv = u[0].inv()
    inv = [u0inv]
    for k in range(1, length):
        acc = None
        for j in range(1, min(k, len(u) - 1) + 1):
            t = u[j] * inv[k - j]
            acc = t if acc is None else acc + t
        inv.append(ZERO if acc is None else -(acc * u0inv))
    return TruncatedSeries._raw(inv, -m, n)


def exp_h(c, trunc_order: int = DEFAULT_TRUNC_ORDER) -> TruncatedSeries:
    """``exp(c h) = sum_k c^k h^k / k!`` truncated at ``h^trunc_order``."""
    c = RatFunc.coerce(c)
    out = [ONE]
    term = ONE
    for k in range(1, trunc_order):
        term = term * c / k
        out.append(term)
    return TruncatedSeries._raw(out, 0, trunc_order)


def coefficient(x: TruncatedSeries, m: int) -> RatFunc:
    """Coefficient of ``h^m``."""
    if m >= x.trunc_order:
        raise TruncationError(
            f"coefficient of h^{m} requested but series is truncated at h^{x.trunc_order}"
        )
    return x._get(m)


# ---------------------------------------------------------------------------
# Text parsing. The grammar covers the printed forms plus the expression
# language used by plugin files:
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := ('-'|'+') factor | atom ('^' int)?
#   atom   := number | name | '(' expr ')' | name '(' expr ')'

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        out.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, functions: Mapping | None = None,
                 allow_h: bool = False, trunc_order: int = DEFAULT_TRUNC_ORDER,
                 bindings: Mapping | None = None):
        self.toks = _tokenize(text)
        self.bindings = dict(bindings or {})
        self.i = 0
        self.text = text
        self.functions = dict(functions or {})
        self.allow_h = allow_h
        self.trunc_order = trunc_order

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"parse error in {self.text!r}: expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ValueError(f"parse error in {self.text!r}: trailing {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = _mul(value, rhs)
            else:
                if isinstance(rhs, TruncatedSeries):
                    value = value * series_inv(rhs)
                else:
                    value = value / rhs
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            e = int(self.take())
            base = base ** (-e if neg else e)
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return RatFunc.const(int(tok))
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if re.fullmatch(r"[A-Za-z_]\w*", tok):
            if self.peek() == "(" and tok in self.functions:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return self.functions[tok](arg)
            if tok == "h":
                if not self.allow_h:
                    raise ValueError(f"'h' not allowed in a rational function: {self.text!r}")
                return TruncatedSeries.monomial(ONE, 1, self.trunc_order)
            if tok == "O":
                raise ValueError("unexpected O(...) term")
            if tok in self.bindings:
                return self.bindings[tok]
            return RatFunc.param(tok)
        raise ValueError(f"parse error in {self.text!r}: unexpected {tok!r}")


def _mul(a, b):
    if isinstance(a, TruncatedSeries) or isinstance(b, TruncatedSeries):
        if isinstance(a, TruncatedSeries):
            return a * b
        return b * a
    return a * b


def parse_ratfunc(text: str, bindings: Mapping | None = None) -> RatFunc:
    """Parse a rational expression in color parameters (the printed form re-parses).

    ``bindings`` maps names to RatFunc values substituted while parsing.
    """
    value = _Parser(text, bindings=bindings).parse()
    if not isinstance(value, RatFunc):
        raise ValueError(f"not a rational function: {text!r}")
    return value


_O_TERM = re.compile(r"\+\s*O\(\s*h\s*\^\s*(-?\d+)\s*\)\s*$")


def parse_series(text: str, trunc_order: int | None = None,
                 bindings: Mapping | None = None) -> TruncatedSeries:
    """Parse printed series text ``c * h^k + ... + O(h^N)``.

    Without an explicit ``O(h^N)`` term ``trunc_order`` (or the default) is used.
    Also accepts ``exp_h(...)`` sub-expressions.
    """
    m = _O_TERM.search(text)
    if m:
        n = int(m.group(1))
        if trunc_order is not None and trunc_order != n:
            raise ScalarError(f"series text truncated at {n}, expected {trunc_order}")
        body = text[: m.start()]
    else:
        n = trunc_order if trunc_order is not None else DEFAULT_TRUNC_ORDER
        body = text
    p = _Parser(body, functions={"exp_h": lambda c: exp_h(_as_ratfunc(c), n)},
                allow_h=True, trunc_order=n, bindings=bindings)
    value = p.parse()
    if isinstance(value, RatFunc):
        value = TruncatedSeries.const(value, n)
    return value


def _as_ratfunc(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    raise ValueError("exp_h expects an h-free argument")
