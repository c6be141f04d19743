"""
Links as closures of (singular) braids.

A braid word is a sequence of letters ``(i, s)`` acting on positions
``i, i+1`` (0-based) of ``n`` downward strands; ``s`` is +1 or -1 for a
crossing of that sign, or 0 for a double point. The closure returns the
strands upward on the right. Components are numbered 1, 2, ... by the
smallest top position they pass through.
"""

from __future__ import annotations

from .pd import PDComponent, PDCrossing, PDLink
from .sliced import SlicedTangle, cap, cross, cup

__all__ = ["braid_components", "braid_closure_pd", "braid_closure_sliced", "parse_braid"]


def parse_braid(text: str) -> list[tuple]:
    """``"1 1 -2 s1"`` -> [(0,1), (0,1), (1,-1), (0,0)] (1-based generators)."""
    out = []
    for tok in text.split():
        if tok.startswith("s"):
            out.append((int(tok[1:]) - 1, 0))
        else:
            g = int(tok)
            out.append((abs(g) - 1, 1 if g > 0 else -1))
    return out


def _permutation(n: int, word) -> list[int]:
    """perm[i] = bottom position of the strand starting at top position i."""
    pos = list(range(n))  # pos[p] = starting index of strand currently at p
    for i, _ in word:
        pos[i], pos[i + 1] = pos[i + 1], pos[i]
    perm = [0] * n
    for p, start in enumerate(pos):
        perm[start] = p
    return perm


def braid_components(n: int, word) -> list[int]:
    """Component label of each top position."""
    perm = _permutation(n, word)
    label = [0] * n
    nxt = 1
    for i in range(n):
        if label[i]:
            continue
        j = i
        while not label[j]:
            label[j] = nxt
            j = perm[j]
        nxt += 1
    return label


def braid_closure_sliced(n: int, word, name: str = "") -> SlicedTangle:
    comps = braid_components(n, word)
    slices = [cup(i, 1, comps[i]) for i in range(n)]
    slices += [cross(i, s) for i, s in word]
    slices += [cap(n - 1 - k) for k in range(n)]
    return SlicedTangle((), slices, name=name)


def braid_closure_pd(n: int, word, framings: dict | None = None, name: str = "") -> PDLink:
    """PD code of the closure; framings default to the blackboard framing."""
    counter = [0]

    def fresh():
        counter[0] += 1
        return counter[0]

    top = [fresh() for _ in range(n)]
    cur = list(top)
    raw = []  # (tl_in, bl_out, br_out, tr_in, sign)
    for i, s in word:
        tl, tr = cur[i], cur[i + 1]
        bl, br = fresh(), fresh()
        raw.append((tl, bl, br, tr, s))
        cur[i], cur[i + 1] = bl, br
    # identify bottom edges with the top edges they close up to
    alias = {}
    for p in range(n):
        if cur[p] != top[p]:
            alias[cur[p]] = top[p]

    def A(e):
        while e in alias:
            e = alias[e]
        return e

    crossings = []
    for tl, bl, br, tr, s in raw:
        tl, bl, br, tr = A(tl), A(bl), A(br), A(tr)
        if s > 0:
            crossings.append(PDCrossing((tl, bl, br, tr), 1))
        elif s < 0:
            crossings.append(PDCrossing((tr, tl, bl, br), -1))
        else:
            crossings.append(PDCrossing((tl, bl, br, tr), 1, singular=True))
    # relabel edges 1..E in order of first appearance along components
    comps = braid_components(n, word)
    succ = {}
    for x in crossings:
        for slot in range(4):
            if x.slot_in(slot):
                succ[x.edges[slot]] = x.edges[(slot + 2) % 4]
    components = []
    relabel = {}
    for c in sorted(set(comps)):
        start = A(top[comps.index(c)])
        if start not in succ:
            components.append((c, []))
            continue
        seq = [start]
        e = succ[start]
        while e != start:
            seq.append(e)
            e = succ[e]
        for e in seq:
            relabel.setdefault(e, len(relabel) + 1)
        components.append((c, seq))
    crossings = [PDCrossing(tuple(relabel[e] for e in x.edges), x.sign, x.singular) for x in crossings]
    link = PDLink([], crossings, {}, name)
    pcs = [PDComponent(c, 0, tuple(relabel[e] for e in seq)) for c, seq in components]
    link.components = pcs
    fr = {c.index: link.writhe(c.index) for c in pcs}
    if framings:
        fr.update(framings)
    link.components = [PDComponent(c.index, fr[c.index], c.edges) for c in pcs]
    link.validate()
    return link
