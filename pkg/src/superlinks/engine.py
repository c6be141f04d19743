"""
Sparse tensor-contraction engine shared by the quantum and classical evaluators.

A state is a tuple of basis indices, one per strand of the current slice
object; a vector is a dict ``state -> scalar``. Every elementary piece is an
even linear map on a few adjacent tensor factors (a :class:`LocalMap`), so
horizontal juxtaposition with identities carries no Koszul sign and applying a
piece is a purely local substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

State = tuple
Vector = dict


@dataclass
class LocalMap:
    """Linear map from ``n_in`` to ``n_out`` adjacent tensor factors.

    ``table[in_state]`` lists ``(out_state, coefficient)`` pairs; absent input
    states map to zero.
    """

    n_in: int
    n_out: int
    table: dict = field(default_factory=dict)

    def add(self, src: State, dst: State, coeff) -> None:
        self.table.setdefault(tuple(src), []).append((tuple(dst), coeff))

    def entry(self, src: State, dst: State, zero=0):
        total = zero
        for d, c in self.table.get(tuple(src), ()):
            if d == tuple(dst):
                total = total + c
        return total

    def nonzero(self) -> "LocalMap":
        out = LocalMap(self.n_in, self.n_out)
        for s, row in self.table.items():
            merged: dict = {}
            for d, c in row:
                merged[d] = merged[d] + c if d in merged else c
            for d, c in merged.items():
                if not _is_zero(c):
                    out.add(s, d, c)
        return out


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return c.is_zero()


def apply(vec: Vector, op: LocalMap, pos: int) -> Vector:
    """Apply ``op`` to factors ``pos .. pos+n_in-1`` of every state."""
    k = op.n_in
    table = op.table
    out: dict = {}
    for state, c in vec.items():
        row = table.get(state[pos:pos + k])
        if not row:
            continue
        head = state[:pos]
        tail = state[pos + k:]
        for o, w in row:
            ns = head + o + tail
            if isinstance(w, int):
                if w == 1:
                    t = c
                elif w == -1:
                    t = -c
                else:
                    t = c * w
            else:
                t = w * c if isinstance(c, int) else c * w
            prev = out.get(ns)
            out[ns] = t if prev is None else prev + t
    return {s: c for s, c in out.items() if not _is_zero(c)}


def run(vec: Vector, steps: Iterable[tuple[LocalMap, int]]) -> Vector:
    for op, pos in steps:
        vec = apply(vec, op, pos)
        if not vec:
            return vec
    return vec


def basis_states(dims: Sequence[int]) -> list[State]:
    states: list[State] = [()]
    for d in dims:
        states = [s + (i,) for s in states for i in range(d)]
    return states


def operator(steps: Sequence[tuple[LocalMap, int]], in_dims: Sequence[int],
             one, out_width: int | None = None) -> LocalMap:
    """Collect the composite of ``steps`` as a LocalMap on ``len(in_dims)`` factors."""
    n_in = len(in_dims)
    result = None
    for s in basis_states(in_dims):
        vec = run({s: one}, steps)
        if result is None:
            width = out_width
            if width is None:
                width = len(next(iter(vec))) if vec else 0
            result = LocalMap(n_in, width)
        for d, c in sorted(vec.items()):
            result.add(s, d, c)
    if result is None:
        result = LocalMap(n_in, out_width or 0)
    return result


def compose(first: LocalMap, second: LocalMap, zero) -> LocalMap:
    """``second o first`` for maps on the same number of factors."""
    out = LocalMap(first.n_in, second.n_out)
    for s, row in first.table.items():
        acc: dict = {}
        for mid, c in row:
            for d, w in second.table.get(mid, ()):
                t = c * w
                acc[d] = acc[d] + t if d in acc else t
        for d, c in sorted(acc.items()):
            if not _is_zero(c):
                out.add(s, d, c)
    return out


def tensor(a: LocalMap, b: LocalMap) -> LocalMap:
    """``a (x) b`` for even maps (no Koszul signs)."""
    out = LocalMap(a.n_in + b.n_in, a.n_out + b.n_out)
    for sa, ra in a.table.items():
        for sb, rb in b.table.items():
            for da, ca in ra:
                for db, cb in rb:
                    out.add(sa + sb, da + db, ca * cb)
    return out


def maps_equal(a: LocalMap, b: LocalMap, in_states: Iterable[State]) -> bool:
    for s in in_states:
        ra = _merged(a.table.get(s, ()))
        rb = _merged(b.table.get(s, ()))
        keys = set(ra) | set(rb)
        for k in keys:
            x = ra.get(k)
            y = rb.get(k)
            if x is None:
                if not _is_zero(y):
                    return False
            elif y is None:
                if not _is_zero(x):
                    return False
            elif not _is_zero(x - y):
                return False
    return True


def _merged(row):
    acc: dict = {}
    for d, c in row:
        acc[d] = acc[d] + c if d in acc else c
    return acc


def first_difference(a: LocalMap, b: LocalMap, in_states: Iterable[State]):
    """First ``(src, dst, lhs, rhs)`` where two maps differ, or None."""
    for s in in_states:
        ra = _merged(a.table.get(s, ()))
        rb = _merged(b.table.get(s, ()))
        for k in sorted(set(ra) | set(rb)):
            x = ra.get(k, 0)
            y = rb.get(k, 0)
            diff = x - y if not (isinstance(x, int) and isinstance(y, int)) else x - y
            if not _is_zero(diff):
                return s, k, x, y
    return None


MapFactory = Callable[..., LocalMap]
