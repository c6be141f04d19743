"""
Functor from sliced tangle words to linear maps, shared by the quantum
evaluator (R-matrices over truncated series) and the classical chord
evaluator (super flips and Casimir insertions over rational functions).

A subclass supplies the module dimensions and parities, the pivot, and the
map for a crossing of two downward strands. Every other orientation is built
by turning with the duality maps, which is how the ribbon structure enters:

* ``ev``  : V* (x) V -> 1,      v^i (x) v_j |-> delta_ij
* ``coev``: 1 -> V (x) V*,      1 |-> sum_i v_i (x) v^i
* ``ev'`` : V (x) V* -> 1,      v_i (x) v^j |-> delta_ij (-1)^|i| g_i
* ``coev'``: 1 -> V* (x) V,     1 |-> sum_i (-1)^|i| g_i^{-1} v^i (x) v_i

with ``g`` the (diagonal) pivot.
"""

from __future__ import annotations

from fractions import Fraction

from .engine import LocalMap, apply, operator
from .tangles.sliced import SlicedTangle, TangleError

__all__ = ["TangleFunctor", "ColoringError", "NonScalarError"]


class ColoringError(ValueError):
    """A component of the diagram has no color."""


class TangleFunctor:
    """Base class; subclasses implement the abstract hooks below."""

    #: scalar unit and zero of the coefficient ring
    one = 1
    zero = 0

    def __init__(self, colors: dict):
        self.colors = dict(colors)
        self._cache: dict = {}

    # -- hooks -------------------------------------------------------------
    def dim(self, a) -> int:
        raise NotImplementedError

    def parity(self, a) -> tuple:
        raise NotImplementedError

    def pivot(self, a) -> list:
        """Diagonal pivot entries g_i."""
        raise NotImplementedError

    def pivot_inv(self, a) -> list:
        raise NotImplementedError

    def braid_down(self, a, b, sign: int) -> LocalMap:
        """Crossing of two downward strands colored a (top-left), b (top-right)."""
        raise NotImplementedError

    # -- colors ------------------------------------------------------------
    def color(self, comp):
        try:
            return self.colors[comp]
        except KeyError:
            raise ColoringError(f"component {comp} has no color") from None

    def strand_dims(self, obj) -> list:
        return [self.dim(self.color(c)) for _, c in obj]

    # -- duality -------------------------------------------------------------
    def _memo(self, key, build):
        m = self._cache.get(key)
        if m is None:
            m = build()
            self._cache[key] = m
        return m

    def coev(self, a) -> LocalMap:
        def build():
            m = LocalMap(0, 2)
            for i in range(self.dim(a)):
                m.add((), (i, i), self.one)
            return m
        return self._memo(("coev", a), build)

    def coev_p(self, a) -> LocalMap:
        def build():
            m = LocalMap(0, 2)
            par = self.parity(a)
            ginv = self.pivot_inv(a)
            for i in range(self.dim(a)):
                m.add((), (i, i), -ginv[i] if par[i] else ginv[i])
            return m
        return self._memo(("coev'", a), build)

    def ev(self, a) -> LocalMap:
        def build():
            m = LocalMap(2, 0)
            for i in range(self.dim(a)):
                m.add((i, i), (), self.one)
            return m
        return self._memo(("ev", a), build)

    def ev_p(self, a) -> LocalMap:
        def build():
            m = LocalMap(2, 0)
            par = self.parity(a)
            g = self.pivot(a)
            for i in range(self.dim(a)):
                m.add((i, i), (), -g[i] if par[i] else g[i])
            return m
        return self._memo(("ev'", a), build)

    def cup(self, eps: int, a) -> LocalMap:
        return self.coev(a) if eps > 0 else self.coev_p(a)

    def cap(self, eps: int, a) -> LocalMap:
        """Closing map for the pair whose left strand has orientation eps."""
        return self.ev_p(a) if eps > 0 else self.ev(a)

    # -- crossings -----------------------------------------------------------
    def crossing(self, e1: int, e2: int, a, b, sign: int) -> LocalMap:
        """Crossing with top-left strand (e1, a) and top-right strand (e2, b)."""
        key = ("X", e1, e2, a, b, sign)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if e1 > 0 and e2 > 0:
            m = self.braid_down(a, b, sign)
        elif e1 < 0 and e2 > 0:
            inner = self.crossing(1, 1, b, a, sign)
            steps = [(self.coev(a), 2), (inner, 1), (self.ev(a), 0)]
            m = operator(steps, [self.dim(a), self.dim(b)], self.one, out_width=2)
        elif e1 > 0 and e2 < 0:
            inner = self.crossing(1, 1, b, a, sign)
            steps = [(self.coev_p(b), 0), (inner, 1), (self.ev_p(b), 2)]
            m = operator(steps, [self.dim(a), self.dim(b)], self.one, out_width=2)
        else:
            inner = self.crossing(-1, 1, b, a, sign)
            steps = [(self.coev(a), 2), (inner, 1), (self.ev(a), 0)]
            m = operator(steps, [self.dim(a), self.dim(b)], self.one, out_width=2)
        self._cache[key] = m
        return m

    # -- evaluation ------------------------------------------------------------
    def steps(self, t: SlicedTangle) -> list:
        levels = t.levels()
        out = []
        for k, s in enumerate(t.slices):
            obj = levels[k]
            if s.kind == "X":
                (e1, c1), (e2, c2) = obj[s.pos], obj[s.pos + 1]
                out.append((self.crossing(e1, e2, self.color(c1), self.color(c2), s.sign), s.pos))
            elif s.kind == "Cup":
                out.append((self.cup(s.eps, self.color(s.comp)), s.pos))
            else:
                e, c = obj[s.pos]
                out.append((self.cap(e, self.color(c)), s.pos))
        return out

    def evaluate(self, t: SlicedTangle) -> LocalMap:
        """Matrix of the tangle, from basis states of its top to its bottom."""
        steps = self.steps(t)
        return operator(steps, self.strand_dims(t.top), self.one, out_width=len(t.bottom))

    def apply_to(self, t: SlicedTangle, state: tuple) -> dict:
        vec = {tuple(state): self.one}
        for op, pos in self.steps(t):
            vec = apply(vec, op, pos)
            if not vec:
                break
        return vec

    def scalar(self, t: SlicedTangle):
        """Value of a closed word."""
        if not t.is_closed():
            raise TangleError("scalar() expects a closed word")
        vec = self.apply_to(t, ())
        return vec.get((), self.zero)

    def endomorphism_scalar(self, t: SlicedTangle, what: str = "endomorphism"):
        """x with F(t) = x * Id for a (1,1)-tangle; raises if not scalar."""
        if not t.is_one_one():
            raise TangleError(f"{what} expects a (1,1)-tangle with a downward strand")
        a = self.color(t.top[0][1])
        x = None
        for i in range(self.dim(a)):
            vec = self.apply_to(t, (i,))
            for (j,), c in vec.items():
                if j != i and not _zero(c):
                    raise NonScalarError(f"{what}: off-diagonal entry ({i},{j}) is nonzero")
            c = vec.get((i,), self.zero)
            if x is None:
                x = c
            elif not _zero(c - x):
                raise NonScalarError(f"{what}: diagonal entries differ ({x} vs {c})")
        return x


class NonScalarError(ValueError):
    """The endomorphism of the open strand is not a multiple of the identity."""


def _zero(c) -> bool:
    return c == 0 if isinstance(c, (int, Fraction)) else c.is_zero()
