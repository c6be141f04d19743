"""
Singular diagrams: resolution of double points and realization of chord
diagrams by singular braid closures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .pd import PDLink
from .sliced import SlicedTangle, TangleError, cap, cross, cup, curl_slices

__all__ = ["FormalTangleSum", "resolve_singularities", "make_singular_representative",
           "even_framed"]


@dataclass(frozen=True)
class FormalTangleSum:
    """Signed sum of diagrams sharing one boundary."""

    terms: tuple  # ((coefficient, diagram), ...)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def resolve_singularities(t) -> FormalTangleSum:
    """Every double point becomes (+1) * positive crossing + (-1) * negative crossing.

    Accepts a :class:`SlicedTangle` or a :class:`PDLink`; returns 2^m terms in
    lexicographic order of the sign choices (+ before -).
    """
    if isinstance(t, PDLink):
        sing = [k for k, x in enumerate(t.crossings) if x.singular]
        terms = []
        for signs in itertools.product((1, -1), repeat=len(sing)):
            coeff = 1
            for s in signs:
                coeff *= s
            terms.append((coeff, t.resolved(dict(zip(sing, signs)))))
        return FormalTangleSum(tuple(terms))
    sing = t.double_points
    terms = []
    for signs in itertools.product((1, -1), repeat=len(sing)):
        slices = list(t.slices)
        coeff = 1
        for k, s in zip(sing, signs):
            slices[k] = cross(slices[k].pos, s)
            coeff *= s
        terms.append((coeff, SlicedTangle(t.top, slices, name=t.name)))
    return FormalTangleSum(tuple(terms))


def even_framed(t) -> bool:
    return all(f % 2 == 0 for f in t.framings().values())


# variant -> sign of the k-th auxiliary crossing; variant 3 is variant 0 with a
# trefoil tied into the first component
_VARIANTS = {
    0: lambda k: 1,
    1: lambda k: -1,
    2: lambda k: 1 if k % 2 == 0 else -1,
    3: lambda k: 1,
}


def make_singular_representative(d, variant: int = 0) -> SlicedTangle:
    """A singular diagram realizing the chord diagram ``d``, with framing 0.

    Every component becomes a bundle of downward passes in a braid, one pass
    per chord end, closed up on the right so that pass k of a component
    continues into pass k+1. Chords are taken in order; the two passes of a
    chord are brought together by ordinary crossings and joined by a double
    point. Afterwards the passes are permuted into closing position and curls
    restore framing 0. ``variant`` selects the signs of the ordinary crossings
    (0: all positive, 1: all negative, 2: alternating); variant 3 is variant 0
    with a trefoil tied into the first component. These are different singular
    links with the same underlying diagram; 3 differs from 0 even when the
    diagram needs no ordinary crossings at all.

    Interval components of a tangle skeleton stay open: they enter at the top
    and leave at the bottom in skeleton order.
    """
    if variant not in _VARIANTS:
        raise ValueError(f"variant must be one of {sorted(_VARIANTS)}")
    sign_of = _VARIANTS[variant]
    skel = d.skeleton
    # passes in top order: (component, point index along the component)
    passes = []
    first_pass = {}
    for (c, _), w in zip(skel.components, d.words):
        first_pass[c] = len(passes)
        for k in range(max(len(w), 1)):
            passes.append((c, k))
    n = len(passes)
    n_open = len(skel.intervals)
    where = list(range(n))  # where[p] = position of pass p
    at = list(range(n))  # at[pos] = pass at that position
    word = []
    counter = [0]

    def swap(pos, sign=None):
        if sign is None:
            sign = sign_of(counter[0])
            counter[0] += 1
        word.append((pos, sign))
        a, b = at[pos], at[pos + 1]
        at[pos], at[pos + 1] = b, a
        where[a], where[b] = pos + 1, pos

    index = {(c, k): first_pass[c] + k for c, k in passes}
    ends: dict = {}
    for (c, _), w in zip(skel.components, d.words):
        for k, x in enumerate(w):
            ends.setdefault(x, []).append(index[(c, k)])
    # chords in the order of their first end along the passes
    for x in sorted(ends, key=lambda x: min(ends[x])):
        p, q = ends[x]
        lo, hi = sorted((where[p], where[q]))
        for pos in range(hi - 1, lo, -1):
            swap(pos)
        swap(lo, 0)
    # closing permutation: pass p must end where its successor starts
    target = [None] * n
    for (c, kind), w in zip(skel.components, d.words):
        m = max(len(w), 1)
        for k in range(m):
            p = first_pass[c] + k
            nxt = first_pass[c] + (k + 1) % m
            target[p] = nxt if kind == "circle" or k + 1 < m else first_pass[c]
    # bubble sort passes into their target bottom positions
    for i in range(n):
        j = where[next(p for p in range(n) if target[p] == i)]
        for pos in range(j - 1, i - 1, -1):
            swap(pos)
    comps = [c for c, _ in passes]
    top = tuple((1, comps[p]) for p in range(n_open))
    slices = [cup(i, 1, comps[i]) for i in range(n_open, n)]
    slices += [cross(pos, s) for pos, s in word]
    slices += [cap(n - 1 - k) for k in range(n - n_open)]
    if variant == 3:
        slices = _tie_trefoil(top, slices, comps[0])
    t = SlicedTangle(top, slices, name=f"rep[{d}]#{variant}")
    return _zero_framing(t)


def _tie_trefoil(top: tuple, slices: list, comp: int) -> list:
    """Insert a long right-handed trefoil on the first downward strand of ``comp``:
    a cup beside it, three crossings of the two downward strands, and a cap."""
    levels = SlicedTangle(top, slices).levels()
    lvl, pos = next((k, p) for k, obj in enumerate(levels) for p, (e, c) in enumerate(obj)
                    if c == comp and e == 1)
    knot = [cup(pos + 1, 1, comp)] + [cross(pos, 1)] * 3 + [cap(pos + 1)]
    return slices[:lvl] + knot + slices[lvl:]


def _zero_framing(t: SlicedTangle) -> SlicedTangle:
    slices = list(t.slices)
    for comp in sorted(t.components):
        cur = SlicedTangle(t.top, slices)
        need = -cur.writhe(comp)
        if not need:
            continue
        levels = cur.levels()
        lvl, pos = next((k, p) for k, obj in enumerate(levels) for p, (_, c) in enumerate(obj)
                        if c == comp)
        extra = []
        for _ in range(abs(need)):
            extra += curl_slices(pos, levels[lvl], 1 if need > 0 else -1)
        slices[lvl:lvl] = extra
    out = SlicedTangle(t.top, slices, name=t.name)
    if any(out.writhe(c) for c in out.components):
        raise TangleError("internal: framing correction failed")
    return out
