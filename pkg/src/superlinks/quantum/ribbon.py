"""
Pluggable ribbon data and the quantum functor F.

A :class:`RibbonDatum` provides, for module labels ``a, b``, the R-matrix on
``V(a) (x) V(b)`` (before the super flip), its inverse, a diagonal pivot, the
twist scalar and the (unshifted) modified dimension. All entries are
:class:`~superlinks.scalars.TruncatedSeries`.

Ribbon plugin files::

    ribbon gl11
    algebra gl11
    params a b                 # placeholders for the two colors in R
    module_parity 0 1
    odd_root_shift 1
    normalization 1
    R                          # "i j -> k l : entry", unlisted entries are 0
      0 0 -> 0 0 : exp_h(2*a*b)
      ...
    end
    Rinv
      ...
    end
    pivot                      # "i : entry", diagonal, uses the first param
      0 : exp_h(a)
    end
    twist : exp_h(...)
    modified_dim : 1/(exp_h(a) - exp_h(-a))
    typical a != 0

Entries are expressions over rationals, the params, ``h`` and ``exp_h(...)``.
They are expanded with a few guard orders and then truncated, so quotients
with a pole in ``h`` keep every retained coefficient exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from importlib import resources

from ..engine import LocalMap, basis_states, compose
from ..functor import TangleFunctor
from ..scalars import (
    DEFAULT_TRUNC_ORDER,
    RatFunc,
    TruncatedSeries,
    exp_h,
    parse_ratfunc,
    parse_series,
    series_inv,
)

__all__ = [
    "RibbonDatum",
    "FileRibbonDatum",
    "Sl2RibbonDatum",
    "RibbonError",
    "load_ribbon",
    "bundled_ribbon",
    "QuantumFunctor",
    "super_flip",
]

GUARD = 4


class RibbonError(ValueError):
    """Invalid ribbon plugin data or an atypical label where a typical one is required."""


def super_flip(m: LocalMap, par_a: tuple, par_b: tuple) -> LocalMap:
    """tau o m, where tau(v (x) w) = (-1)^{|v||w|} w (x) v."""
    out = LocalMap(m.n_in, 2)
    for s, row in m.table.items():
        for (k, l), c in row:
            out.add(s, (l, k), -c if par_a[k] and par_b[l] else c)
    return out


def flip_first(par_a: tuple, par_b: tuple, one) -> LocalMap:
    m = LocalMap(2, 2)
    for i in range(len(par_a)):
        for j in range(len(par_b)):
            m.add((i, j), (j, i), -one if par_a[i] and par_b[j] else one)
    return m


class RibbonDatum:
    """Abstract ribbon datum; see the module docstring."""

    algebra_id: str = ""
    odd_root_shift: int = 0
    normalization: Fraction = Fraction(1)

    def __init__(self, trunc_order: int = DEFAULT_TRUNC_ORDER):
        self.trunc_order = trunc_order
        self._cache: dict = {}

    # -- to implement ------------------------------------------------------
    def label(self, raw):
        raise NotImplementedError

    def dim(self, a) -> int:
        raise NotImplementedError

    def parity(self, a) -> tuple:
        raise NotImplementedError

    def R(self, a, b) -> LocalMap:
        raise NotImplementedError

    def R_inv(self, a, b) -> LocalMap:
        raise NotImplementedError

    def pivot(self, a) -> list:
        raise NotImplementedError

    def twist(self, a) -> TruncatedSeries:
        raise NotImplementedError

    def raw_modified_dim(self, a) -> TruncatedSeries:
        raise NotImplementedError

    def is_typical(self, a) -> bool:
        raise NotImplementedError

    # -- derived -------------------------------------------------------------
    @property
    def one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.trunc_order)

    @property
    def zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.trunc_order)

    def pivot_inv(self, a) -> list:
        key = ("ginv", a)
        if key not in self._cache:
            self._cache[key] = [series_inv(g) for g in self.pivot(a)]
        return self._cache[key]

    def modified_dim(self, a) -> TruncatedSeries:
        """d(a) multiplied by h^{odd_root_shift} and the normalization constant."""
        a = self.label(a)
        if not self.is_typical(a):
            raise RibbonError(f"modified dimension requested for atypical label {a}")
        d = self.raw_modified_dim(a).shift(self.odd_root_shift) * self.normalization
        return d

    def with_normalization(self, c) -> "RibbonDatum":
        import copy

        other = copy.copy(self)
        other.normalization = Fraction(c) * self.normalization
        other._orders = {}
        return other

    def functor(self, colors: dict, double_points: bool = False) -> "QuantumFunctor":
        return QuantumFunctor(self, colors, double_points)

    def with_order(self, trunc_order: int) -> "RibbonDatum":
        raise NotImplementedError

    def at_order(self, trunc_order: int) -> "RibbonDatum":
        """Memoized copy at another truncation order."""
        if trunc_order == self.trunc_order:
            return self
        memo = self.__dict__.setdefault("_orders", {})
        if trunc_order not in memo:
            memo[trunc_order] = self.with_order(trunc_order)
        return memo[trunc_order]


class FileRibbonDatum(RibbonDatum):
    """Ribbon datum read from a plugin file; entries are parsed per label pair."""

    def __init__(self, text: str, trunc_order: int = DEFAULT_TRUNC_ORDER):
        super().__init__(trunc_order)
        self.text = text
        spec = _parse_ribbon_text(text)
        self.name = spec["ribbon"]
        self.algebra_id = spec.get("algebra", self.name)
        self.params = spec["params"]
        self._parity = spec["module_parity"]
        self.odd_root_shift = int(spec.get("odd_root_shift", 0))
        self.normalization = Fraction(spec.get("normalization", "1"))
        self.blocks = spec["blocks"]
        self.scalars = spec["scalars"]
        self.typical_expr = spec.get("typical")

    def with_order(self, trunc_order: int) -> "FileRibbonDatum":
        other = FileRibbonDatum(self.text, trunc_order)
        other.normalization = self.normalization
        return other

    def label(self, raw):
        if isinstance(raw, RatFunc):
            return raw
        if isinstance(raw, (int, Fraction)):
            return RatFunc.const(raw)
        if isinstance(raw, str):
            return parse_ratfunc(raw)
        raise RibbonError(f"bad color label {raw!r} for {self.name}")

    def dim(self, a) -> int:
        return len(self._parity)

    def parity(self, a) -> tuple:
        return self._parity

    def _entry(self, text: str, bindings: dict) -> TruncatedSeries:
        n = self.trunc_order
        value = parse_series(text, n + GUARD, bindings=bindings)
        return value.with_order(n)

    def _bind(self, *labels) -> dict:
        return {p: self.label(x) for p, x in zip(self.params, labels)}

    def _block(self, name: str, a, b) -> LocalMap:
        key = (name, a, b)
        if key not in self._cache:
            bindings = self._bind(a, b)
            m = LocalMap(2, 2)
            for src, dst, expr in self.blocks[name]:
                val = self._entry(expr, bindings)
                if not val.is_zero():
                    m.add(src, dst, val)
            self._cache[key] = m
        return self._cache[key]

    def R(self, a, b) -> LocalMap:
        return self._block("R", a, b)

    def R_inv(self, a, b) -> LocalMap:
        return self._block("Rinv", a, b)

    def pivot(self, a) -> list:
        key = ("pivot", a)
        if key not in self._cache:
            bindings = self._bind(a)
            g = [None] * self.dim(a)
            for (i,), _, expr in self.blocks["pivot"]:
                g[i] = self._entry(expr, bindings)
            if any(x is None for x in g):
                raise RibbonError("pivot block must list every basis index")
            self._cache[key] = g
        return self._cache[key]

    def twist(self, a) -> TruncatedSeries:
        return self._entry(self.scalars["twist"], self._bind(a))

    def raw_modified_dim(self, a) -> TruncatedSeries:
        return self._entry(self.scalars["modified_dim"], self._bind(a))

    def is_typical(self, a) -> bool:
        if self.typical_expr is None:
            return True
        m = re.fullmatch(r"(.+?)\s*!=\s*0", self.typical_expr)
        if not m:
            raise RibbonError(f"unsupported typicality condition {self.typical_expr!r}")
        return not parse_ratfunc(m.group(1), bindings=self._bind(a)).is_zero()


def _parse_ribbon_text(text: str) -> dict:
    spec: dict = {"blocks": {}, "scalars": {}}
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((n, line))
    it = iter(lines)
    for n, line in it:
        if line in ("R", "Rinv", "pivot"):
            rows = []
            for m, body in it:
                if body == "end":
                    break
                rows.append(_parse_block_row(line, body, m))
            else:
                raise RibbonError(f"line {n}: block {line} not closed by 'end'")
            spec["blocks"][line] = rows
            continue
        if ":" in line and line.split()[0] in ("twist", "modified_dim"):
            key, expr = line.split(":", 1)
            spec["scalars"][key.strip()] = expr.strip()
            continue
        words = line.split()
        key = words[0]
        if key in ("ribbon", "algebra", "odd_root_shift", "normalization"):
            spec[key] = words[1]
        elif key == "params":
            spec["params"] = tuple(words[1:])
        elif key == "module_parity":
            spec["module_parity"] = tuple(int(w) for w in words[1:])
        elif key == "typical":
            spec["typical"] = line[len("typical"):].strip()
        else:
            raise RibbonError(f"line {n}: unknown keyword {key!r}")
    for req in ("ribbon", "params", "module_parity"):
        if req not in spec:
            raise RibbonError(f"ribbon plugin lacks '{req}'")
    for req in ("R", "Rinv", "pivot"):
        if req not in spec["blocks"]:
            raise RibbonError(f"ribbon plugin lacks the {req} block")
    for req in ("twist", "modified_dim"):
        if req not in spec["scalars"]:
            raise RibbonError(f"ribbon plugin lacks '{req}'")
    return spec


def _parse_block_row(block: str, body: str, n: int):
    if ":" not in body:
        raise RibbonError(f"line {n}: expected 'indices : expression'")
    lhs, expr = body.split(":", 1)
    try:
        if block == "pivot":
            return (int(lhs),), None, expr.strip()
        src, dst = lhs.split("->")
        return tuple(int(w) for w in src.split()), tuple(int(w) for w in dst.split()), expr.strip()
    except ValueError:
        raise RibbonError(f"line {n}: bad index list {lhs.strip()!r}") from None


class Sl2RibbonDatum(RibbonDatum):
    """U_h(sl2) on the irreducibles V_n, generated in closed form.

    With ``q = e^{h/2}`` and ``K = q^H``:
    ``R = q^{H (x) H / 2} sum_k q^{k(k-1)/2} (q - q^-1)^k / [k]! E^k (x) F^k``,
    pivot ``K``, so the twist and quantum dimension are the usual ones.
    The modified dimension is the quantum dimension (every module is typical).
    """

    algebra_id = "sl2"
    odd_root_shift = 0

    def label(self, raw) -> int:
        if isinstance(raw, RatFunc):
            raw = raw.to_fraction()
        try:
            n = int(raw)
        except (TypeError, ValueError):
            raise RibbonError(f"sl2 label must be a non-negative integer, got {raw!r}") from None
        if n != Fraction(raw) or n < 0:
            raise RibbonError(f"sl2 label must be a non-negative integer, got {raw!r}")
        return n

    def dim(self, n) -> int:
        return n + 1

    def parity(self, n) -> tuple:
        return (0,) * (n + 1)

    def with_order(self, trunc_order: int) -> "Sl2RibbonDatum":
        other = Sl2RibbonDatum(trunc_order)
        other.normalization = self.normalization
        return other

    def _q(self, x) -> TruncatedSeries:
        """q^x = e^{x h / 2}."""
        return exp_h(Fraction(x) / 2, self.trunc_order)

    def _qint(self, k: int) -> TruncatedSeries:
        """[k] = q^{k-1} + q^{k-3} + ... + q^{1-k}, exactly."""
        out = self.zero
        for i in range(k):
            out = out + self._q(k - 1 - 2 * i)
        return out

    def _E_pow(self, n: int, k: int, j: int):
        """E^k v_j = c v_{j-k}; returns c (E v_j = [n-j+1] v_{j-1})."""
        c = self.one
        for t in range(k):
            c = c * self._qint(n - (j - t) + 1)
        return c

    def _F_pow(self, m: int, k: int, j: int):
        """F^k w_j = c w_{j+k}; F w_j = [j+1] w_{j+1}."""
        c = self.one
        for t in range(k):
            c = c * self._qint(j + t + 1)
        return c

    def R(self, n, m) -> LocalMap:
        key = ("R", n, m)
        if key in self._cache:
            return self._cache[key]
        R = LocalMap(2, 2)
        fact = self.one
        coeffs = [self.one]
        for k in range(1, min(n, m) + 1):
            fact = fact * self._qint(k)
            ck = self._q(Fraction(k * (k - 1), 2)) * (self._q(1) - self._q(-1)) ** k * series_inv(fact)
            coeffs.append(ck)
        for i in range(n + 1):
            for j in range(m + 1):
                for k in range(0, min(i, m - j) + 1):
                    c = coeffs[k]
                    if k:
                        c = c * self._E_pow(n, k, i) * self._F_pow(m, k, j)
                    i2, j2 = i - k, j + k
                    c = c * self._q(Fraction((n - 2 * i2) * (m - 2 * j2), 2))
                    R.add((i, j), (i2, j2), c)
        self._cache[key] = R
        return R

    def R_inv(self, n, m) -> LocalMap:
        key = ("Rinv", n, m)
        if key not in self._cache:
            self._cache[key] = invert_map(self.R(n, m), [n + 1, m + 1], self.one, self.zero)
        return self._cache[key]

    def pivot(self, n) -> list:
        return [self._q(n - 2 * j) for j in range(n + 1)]

    def twist(self, n) -> TruncatedSeries:
        # theta = q^{n(n+2)/2} on V_n
        return self._q(Fraction(n * (n + 2), 2))

    def raw_modified_dim(self, n) -> TruncatedSeries:
        return self._qint(n + 1)

    def is_typical(self, n) -> bool:
        return True


def invert_map(m: LocalMap, dims, one, zero) -> LocalMap:
    """Inverse of an invertible square map whose constant term is invertible
    (Gauss-Jordan with unit pivots over truncated series)."""
    states = basis_states(dims)
    idx = {s: k for k, s in enumerate(states)}
    n = len(states)
    A = [[zero] * n + [one if i == j else zero for j in range(n)] for i in range(n)]
    # A[row=dst][col=src]
    for s, row in m.table.items():
        for d, c in row:
            A[idx[d]][idx[s]] = A[idx[d]][idx[s]] + c
    for col in range(n):
        piv = next((r for r in range(col, n)
                    if not A[r][col].is_zero() and A[r][col].min_degree == 0), None)
        if piv is None:
            raise RibbonError("matrix is not invertible over the series ring")
        A[col], A[piv] = A[piv], A[col]
        inv = series_inv(A[col][col])
        A[col] = [x * inv if not x.is_zero() else x for x in A[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [x - f * y if not y.is_zero() else x for x, y in zip(A[r], A[col])]
    out = LocalMap(m.n_in, m.n_out)
    for j, s in enumerate(states):
        for i, d in enumerate(states):
            c = A[i][n + j]
            if not c.is_zero():
                out.add(s, d, c)
    return out


_BUNDLED = {"gl11": "gl11.ribbon"}


def load_ribbon(text: str, trunc_order: int = DEFAULT_TRUNC_ORDER) -> FileRibbonDatum:
    return FileRibbonDatum(text, trunc_order)


def bundled_ribbon(name: str, trunc_order: int = DEFAULT_TRUNC_ORDER) -> RibbonDatum:
    if name == "sl2":
        return Sl2RibbonDatum(trunc_order)
    if name not in _BUNDLED:
        raise RibbonError(f"unknown ribbon datum {name!r}; bundled: gl11, sl2")
    text = resources.files("superlinks.data").joinpath(_BUNDLED[name]).read_text()
    return FileRibbonDatum(text, trunc_order)


class QuantumFunctor(TangleFunctor):
    """The ribbon functor F for one coloring.

    With ``double_points`` set, a double point evaluates to X+ minus X-, which
    by multilinearity is the signed sum over its two resolutions.
    """

    def __init__(self, datum: RibbonDatum, colors: dict, double_points: bool = False):
        super().__init__({c: datum.label(a) for c, a in colors.items()})
        self.datum = datum
        self.double_points = double_points
        self.one = datum.one
        self.zero = datum.zero

    def dim(self, a) -> int:
        return self.datum.dim(a)

    def parity(self, a) -> tuple:
        return self.datum.parity(a)

    def pivot(self, a) -> list:
        return self.datum.pivot(a)

    def pivot_inv(self, a) -> list:
        return self.datum.pivot_inv(a)

    def braid_down(self, a, b, sign: int) -> LocalMap:
        d = self.datum
        if sign > 0:
            return super_flip(d.R(a, b), d.parity(a), d.parity(b))
        if sign < 0:
            # c_{V_b,V_a}^{-1} = R_{ba}^{-1} o tau
            tau = flip_first(d.parity(a), d.parity(b), self.one)
            return compose(tau, d.R_inv(b, a), self.zero)
        if self.double_points:
            pos = self.braid_down(a, b, 1)
            neg = self.braid_down(a, b, -1)
            out = LocalMap(2, 2)
            for s, row in pos.table.items():
                for dst, c in row:
                    out.add(s, dst, c)
            for s, row in neg.table.items():
                for dst, c in row:
                    out.add(s, dst, -c)
            return out.nonzero()
        raise ValueError("double points must be resolved before evaluating F")
