"""
Test corpora: move-related pairs of sliced words, framing pairs, and a small
catalogue of links given as braid closures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .braids import braid_closure_pd, parse_braid
from .pd import PDLink
from .sliced import SlicedTangle, cap, cross, crossing_sign, cup, curl_slices

__all__ = [
    "MovePair",
    "move_equivalence_corpus",
    "double_unknot_framing_corpus",
    "LINKS",
    "link",
    "closed_corpus",
    "cut_corpus",
]


@dataclass(frozen=True)
class MovePair:
    id: str
    move: str  # R2, R3, slide, curl, snake
    lhs: SlicedTangle
    rhs: SlicedTangle


def _pad(top: tuple, word: list, left: int, right: int, extra_comp: int) -> tuple:
    """Add idle strands of component ``extra_comp`` around a local move."""
    idle_l = tuple((1 if k % 2 == 0 else -1, extra_comp) for k in range(left))
    idle_r = tuple((1 if k % 2 == 0 else -1, extra_comp) for k in range(right))
    return idle_l + top + idle_r, [s.shifted(left) for s in word]


def move_equivalence_corpus(seed: int = 0) -> list[MovePair]:
    """Pairs of words related by one framed move (R2, R3, cup/cap slides,
    left/right curl exchange, curl cancellation, snake). Strands of the local
    picture belong to components 1, 2, 3; seeded idle strands of component 4
    are added around some of the moves."""
    rng = random.Random(seed)
    pairs: list[MovePair] = []

    def add(pid, move, top, w1, w2):
        left = rng.choice((0, 0, 1))
        right = rng.choice((0, 0, 1))
        t1, v1 = _pad(top, w1, left, right, 4)
        t2, v2 = _pad(top, w2, left, right, 4)
        pairs.append(MovePair(pid, move, SlicedTangle(t1, v1), SlicedTangle(t2, v2)))

    orients = list(itertools.product((1, -1), repeat=2))
    # R2
    for e1, e2 in orients:
        for s in (1, -1):
            add(f"R2/{e1:+d}{e2:+d}/{s:+d}", "R2", ((e1, 1), (e2, 2)), [cross(0, s), cross(0, -s)], [])
    # R3: strands ranked by height; higher passes over
    for es in itertools.product((1, -1), repeat=3):
        for heights in itertools.permutations(range(3)):
            top = tuple((e, c + 1) for c, e in enumerate(es))

            def word(positions):
                obj = list(range(3))
                out = []
                for p in positions:
                    l, r = obj[p], obj[p + 1]
                    over = "left" if heights[l] > heights[r] else "right"
                    out.append(cross(p, crossing_sign(es[l], es[r], over)))
                    obj[p], obj[p + 1] = r, l
                return out

            hs = "".join(map(str, heights))
            tag = "".join("+" if e > 0 else "-" for e in es)
            add(f"R3/{tag}/{hs}", "R3", top, word([0, 1, 0]), word([1, 0, 1]))
    # slides of a strand through a cup or a cap (over and under)
    for e, f in orients:
        for over in ("strand", "pair"):
            top = ((e, 1),)
            # strand at 0 passes to the right of a new pair (f, -f) of component 2
            w = [cup(1, f, 2)]
            obj = [(e, 1), (f, 2), (-f, 2)]
            s1 = crossing_sign(e, f, "left" if over == "strand" else "right")
            w.append(cross(0, s1))
            s2 = crossing_sign(e, -f, "left" if over == "strand" else "right")
            w.append(cross(1, s2))
            add(f"slide/cup/{e:+d}{f:+d}/{over}", "slide", top, w, [cup(0, f, 2)])
            # strand at 2 passes to the left of a closing pair
            top = ((f, 2), (-f, 2), (e, 1))
            s1 = crossing_sign(-f, e, "right" if over == "strand" else "left")
            s2 = crossing_sign(f, e, "right" if over == "strand" else "left")
            add(f"slide/cap/{e:+d}{f:+d}/{over}", "slide", top,
                [cross(1, s1), cross(0, s2), cap(1)], [cap(0)])
    # framing: right curl = left curl; opposite curls cancel
    for e in (1, -1):
        obj = ((e, 1),)
        for s in (1, -1):
            add(f"curl/side/{e:+d}/{s:+d}", "curl", obj,
                curl_slices(0, obj, s, "right"), curl_slices(0, obj, s, "left"))
        add(f"curl/cancel/{e:+d}", "curl", obj,
            curl_slices(0, obj, 1, "right") + curl_slices(0, obj, -1, "left"), [])
        add(f"snake/{e:+d}", "snake", obj, [cup(1, -e, 1), cap(0)], [cup(0, e, 1), cap(1)])
    return pairs


def double_unknot_framing_corpus() -> list[tuple]:
    """(id, unknot with framing f, unknot with framing f+2) for f in -2, 0, 2.

    The two differ by two positive curls, so F differs by theta^2.
    """
    out = []
    for f in (-2, 0, 2):
        out.append((f"framing/{f}->{f + 2}", _framed_unknot(f), _framed_unknot(f + 2)))
    return out


def _framed_unknot(f: int) -> SlicedTangle:
    word = [cup(0, 1, 1)]
    obj = ((1, 1), (-1, 1))
    for _ in range(abs(f)):
        word += curl_slices(0, obj, 1 if f > 0 else -1)
    word.append(cap(0))
    return SlicedTangle((), word, name=f"unknot[{f}]")


# name -> (strands, braid word, framings or None for blackboard)
LINKS = {
    "unknot": (1, "", None),
    "unknot_curl": (2, "1", None),
    "hopf": (2, "1 1", None),
    "hopf_neg": (2, "-1 -1", None),
    "torus24": (2, "1 1 1 1", None),
    "trefoil": (2, "1 1 1", None),
    "trefoil_left": (2, "-1 -1 -1", None),
    "figure8": (3, "1 -2 1 -2", None),
    "chain3": (3, "1 1 2 2", None),
    "chain3_mixed": (3, "1 1 -2 -2", None),
    "whitehead_like": (3, "1 1 -2 1 -2", None),
    "split2": (2, "", None),
    "split_hopf_unknot": (3, "1 1", None),
    "torus25": (2, "1 1 1 1 1", None),
    "borromean": (3, "1 -2 1 -2 1 -2", None),
}


def link(name: str, framings: dict | None = None) -> PDLink:
    n, word, fr = LINKS[name]
    return braid_closure_pd(n, parse_braid(word), framings or fr, name=name)


def closed_corpus() -> list[str]:
    """Ten closed links used for the vanishing of F with typical colors."""
    return ["unknot", "hopf", "torus24", "trefoil", "figure8", "chain3",
            "split2", "split_hopf_unknot", "torus25", "borromean"]


def cut_corpus() -> list[str]:
    """Multi-component links for cut independence."""
    return ["hopf", "hopf_neg", "torus24", "chain3", "chain3_mixed", "whitehead_like",
            "split2", "split_hopf_unknot", "borromean"]
