"""
Chord diagrams on skeletons of oriented circles and intervals.

A diagram stores, for every skeleton component, the word of chord labels met
along the orientation (cyclic for a circle, linear for an interval). Each
label occurs exactly twice overall. Only the combinatorial order matters, so
the canonical form relabels chords by first occurrence and minimizes over
rotations of the circle words.

Text format (one item per line, ``#`` starts a comment)::

    component 1 (p q r s)      # circle: cyclic word of point names
    component 2 [u v]          # interval: linear word, oriented downward
    chord p r
    chord q s
    chord u v

A combination file holds several diagrams on one skeleton, each introduced
by ``term <rational>``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

__all__ = [
    "Skeleton",
    "ChordDiagram",
    "DiagramCombination",
    "ChordError",
    "circle",
    "interval",
    "enumerate_diagrams",
    "four_term_combinations",
    "cut_diagram",
    "underlying_diagram",
    "parse_diagram",
    "parse_combination",
    "format_diagram",
    "relator_rank",
]


class ChordError(ValueError):
    pass


@dataclass(frozen=True)
class Skeleton:
    """Components as ``(index, kind)`` with kind 'circle' or 'interval'.

    Interval components come first; their order is the order of the boundary
    points of the tangle skeleton.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple((int(i), k) for i, k in self.components)
        kinds = [k for _, k in comps]
        if any(k not in ("circle", "interval") for k in kinds):
            raise ChordError("component kinds are 'circle' and 'interval'")
        if kinds != sorted(kinds, key=lambda k: k != "interval"):
            raise ChordError("interval components must precede circles")
        if len({i for i, _ in comps}) != len(comps):
            raise ChordError("duplicate component index")
        object.__setattr__(self, "components", comps)

    @property
    def indices(self) -> tuple:
        return tuple(i for i, _ in self.components)

    def kind(self, i: int) -> str:
        for j, k in self.components:
            if j == i:
                return k
        raise ChordError(f"no component {i}")

    @property
    def intervals(self) -> tuple:
        return tuple(i for i, k in self.components if k == "interval")

    @property
    def is_closed(self) -> bool:
        return not self.intervals

    @property
    def is_one_one(self) -> bool:
        return len(self.intervals) == 1

    def __str__(self):
        return " ".join(f"{i}{'O' if k == 'circle' else 'I'}" for i, k in self.components)


def circle(n: int = 1) -> Skeleton:
    return Skeleton(tuple((i, "circle") for i in range(1, n + 1)))


def interval(extra_circles: int = 0) -> Skeleton:
    """The (1,1) skeleton: interval 1, optionally with circles 2, 3, ..."""
    return Skeleton(((1, "interval"),) + tuple((i, "circle") for i in range(2, extra_circles + 2)))


def _relabel(words: tuple) -> tuple:
    names: dict = {}
    out = []
    for w in words:
        out.append(tuple(names.setdefault(x, len(names)) for x in w))
    return tuple(out)


@dataclass(frozen=True)
class ChordDiagram:
    skeleton: Skeleton
    words: tuple  # one tuple of chord labels per skeleton component

    def __post_init__(self):
        words = tuple(tuple(w) for w in self.words)
        if len(words) != len(self.skeleton.components):
            raise ChordError("one word per skeleton component is required")
        counts: dict = {}
        for w in words:
            for x in w:
                counts[x] = counts.get(x, 0) + 1
        bad = [x for x, n in counts.items() if n != 2]
        if bad:
            raise ChordError(f"chord label {bad[0]!r} must occur exactly twice")
        object.__setattr__(self, "words", words)

    @property
    def degree(self) -> int:
        return sum(len(w) for w in self.words) // 2

    def word(self, i: int) -> tuple:
        return self.words[self.skeleton.indices.index(i)]

    def canonical(self) -> "ChordDiagram":
        return ChordDiagram(self.skeleton, self._canonical_words)

    @cached_property
    def _canonical_words(self) -> tuple:
        kinds = [k for _, k in self.skeleton.components]
        choices = [range(len(w)) if k == "circle" and w else (0,) for w, k in zip(self.words, kinds)]
        best = None
        for rot in itertools.product(*choices):
            ws = tuple(w[r:] + w[:r] for w, r in zip(self.words, rot))
            enc = _relabel(ws)
            if best is None or enc < best:
                best = enc
        return best

    def key(self) -> tuple:
        return self._canonical_words

    def __eq__(self, other):
        return (isinstance(other, ChordDiagram) and self.skeleton == other.skeleton
                and self.key() == other.key())

    def __hash__(self):
        return hash((self.skeleton, self.key()))

    def __lt__(self, other):
        return (self.degree, self.key()) < (other.degree, other.key())

    def chords(self) -> list:
        """List of ``((comp, k), (comp', k'))`` endpoint pairs, by chord label."""
        ends: dict = {}
        for (i, _), w in zip(self.skeleton.components, self.words):
            for k, x in enumerate(w):
                ends.setdefault(x, []).append((i, k))
        return [tuple(ends[x]) for x in sorted(ends, key=str)]

    def __str__(self):
        parts = []
        for (i, k), w in zip(self.skeleton.components, _relabel(self.words)):
            body = " ".join(map(str, w))
            parts.append(f"{i}({body})" if k == "circle" else f"{i}[{body}]")
        return " ".join(parts)


@dataclass
class DiagramCombination:
    """Sparse rational combination of diagrams on one skeleton."""

    skeleton: Skeleton
    terms: dict = field(default_factory=dict)  # canonical diagram -> Fraction

    def add(self, d: ChordDiagram, c=1) -> None:
        if d.skeleton != self.skeleton:
            raise ChordError("all diagrams of a combination share one skeleton")
        d = d.canonical()
        v = self.terms.get(d, Fraction(0)) + Fraction(c)
        if v:
            self.terms[d] = v
        else:
            self.terms.pop(d, None)

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        return " ".join(f"{'+' if c > 0 else '-'}{abs(c)}*{d}" for d, c in self.items()) or "0"


# ---------------------------------------------------------------------------
# enumeration

def _matchings(points: list):
    if not points:
        yield []
        return
    a = points[0]
    for k in range(1, len(points)):
        rest = points[1:k] + points[k + 1:]
        for m in _matchings(rest):
            yield [(a, points[k])] + m


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_diagrams(s: Skeleton, m: int) -> list[ChordDiagram]:
    """All combinatorial types of degree-m diagrams on ``s``, sorted."""
    if m < 0:
        raise ChordError("degree must be nonnegative")
    found = set()
    k = len(s.components)
    for sizes in _compositions(2 * m, k):
        slots = [(c, p) for c, n in enumerate(sizes) for p in range(n)]
        for match in _matchings(slots):
            words = [[None] * n for n in sizes]
            for label, (u, v) in enumerate(match):
                words[u[0]][u[1]] = label
                words[v[0]][v[1]] = label
            found.add(ChordDiagram(s, tuple(map(tuple, words))).canonical())
    return sorted(found)


# ---------------------------------------------------------------------------
# four-term relation

def _positions(d: ChordDiagram) -> list:
    """Points as (component position, rational coordinate, label)."""
    out = []
    for c, w in enumerate(d.words):
        for k, x in enumerate(w):
            out.append((c, Fraction(k), x))
    return out


def _from_positions(s: Skeleton, pts: list) -> ChordDiagram:
    words = []
    for c in range(len(s.components)):
        here = sorted((p, x) for cc, p, x in pts if cc == c)
        words.append(tuple(x for _, x in here))
    return ChordDiagram(s, tuple(words))


def _gaps(d: ChordDiagram) -> list:
    """All places where a new point can be inserted, as (component, coordinate)."""
    out = []
    for c, ((_, kind), w) in enumerate(zip(d.skeleton.components, d.words)):
        n = len(w)
        if kind == "interval":
            out += [(c, Fraction(2 * k - 1, 2)) for k in range(n + 1)]
        else:
            out += [(c, Fraction(2 * k + 1, 2)) for k in range(max(n, 1))]
    return out


def four_term_combinations(s: Skeleton, m: int) -> list[DiagramCombination]:
    """Generators of the 4T relations in degree m.

    Take a degree m-1 diagram, one of its chords with ends P (on strand j) and
    Q (on strand k), and a point on a strand i. A new chord from that point ends
    just before or just after P, or just before or just after Q:

        D(P-) - D(P+) + D(Q-) - D(Q+) = 0

    where before/after is along the orientation. Trivial and repeated
    relations are dropped.
    """
    if m < 2:
        return []
    seen = set()
    out = []
    eps = Fraction(1, 4)
    for base in enumerate_diagrams(s, m - 1):
        pts = _positions(base)
        new = "new"
        labels = sorted({x for _, _, x in pts})
        for fixed in labels:
            ends = [(c, p) for c, p, x in pts if x == fixed]
            for g in _gaps(base):
                combo = DiagramCombination(s)
                for (c, p), sign in ((ends[0], 1), (ends[1], 1)):
                    for delta, sg in ((-eps, 1), (eps, -1)):
                        extra = [(g[0], g[1], new), (c, p + delta, new)]
                        combo.add(_from_positions(s, pts + extra), sign * sg)
                if not combo.terms:
                    continue
                key = tuple(sorted((d.key(), c) for d, c in combo.terms.items()))
                neg = tuple(sorted((d.key(), -c) for d, c in combo.terms.items()))
                if key in seen or neg in seen:
                    continue
                seen.add(key)
                out.append(combo)
    return out


def relator_rank(s: Skeleton, m: int) -> tuple[int, int]:
    """(number of diagrams, rank of the 4T relators) in degree m, over Q."""
    import sympy

    diags = enumerate_diagrams(s, m)
    index = {d: k for k, d in enumerate(diags)}
    rows = []
    for combo in four_term_combinations(s, m):
        row = [0] * len(diags)
        for d, c in combo.terms.items():
            row[index[d]] = sympy.Rational(c.numerator, c.denominator)
        rows.append(row)
    if not rows:
        return len(diags), 0
    return len(diags), sympy.Matrix(rows).rank()


# ---------------------------------------------------------------------------
# cutting and underlying diagrams

def cut_diagram(d: ChordDiagram, i: int, basepoint: int = 0) -> ChordDiagram:
    """Open circle ``i`` into an interval just before its point ``basepoint``.

    The interval keeps the label ``i`` and moves to the front of the skeleton.
    """
    if i not in d.skeleton.indices:
        raise ChordError(f"no component {i}")
    if d.skeleton.kind(i) != "circle":
        raise ChordError(f"component {i} is not a circle")
    if d.skeleton.intervals:
        raise ChordError("cut_diagram expects a closed skeleton")
    w = d.word(i)
    if w and not 0 <= basepoint < len(w):
        raise ChordError(f"basepoint {basepoint} out of range")
    opened = w[basepoint:] + w[:basepoint] if w else ()
    comps = [(i, "interval")] + [(j, k) for j, k in d.skeleton.components if j != i]
    words = [opened] + [d.word(j) for j, _ in comps[1:]]
    return ChordDiagram(Skeleton(tuple(comps)), tuple(words)).canonical()


def underlying_diagram(t) -> ChordDiagram:
    """Chord diagram of the double points of a sliced word or PD link."""
    from .tangles.pd import PDLink

    if isinstance(t, PDLink):
        return _underlying_pd(t)
    tr = t.trace()
    open_comps = [c for _, c in t.top]
    if len(open_comps) != len(set(open_comps)):
        raise ChordError("an open component meets the top boundary more than once")
    comps = [(c, "interval") for c in open_comps]
    comps += [(c, "circle") for c in sorted(t.components) if c not in open_comps]
    sing = set(t.double_points)
    words = [tuple(k for k, _ in tr.get(c, []) if k in sing) for c, _ in comps]
    return ChordDiagram(Skeleton(tuple(comps)), tuple(words)).canonical()


def _underlying_pd(link) -> ChordDiagram:
    head = {}
    for k, x in enumerate(link.crossings):
        if not x.singular:
            continue
        for slot in range(4):
            if x.slot_in(slot):
                head[x.edges[slot]] = k
    comps = [(c.index, "circle") for c in sorted(link.components, key=lambda c: c.index)]
    words = []
    for i, _ in comps:
        words.append(tuple(head[e] for e in link.component(i).edges if e in head))
    return ChordDiagram(Skeleton(tuple(comps)), tuple(words)).canonical()


# ---------------------------------------------------------------------------
# text format

_COMP = re.compile(r"component\s+(-?\d+)\s*([(\[])\s*([^)\]]*)\s*([)\]])$")
_CHORD = re.compile(r"chord\s+(\S+)\s+(\S+)$")
_TERM = re.compile(r"term\s+(\S+)$")


def _parse_block(lines: list) -> ChordDiagram:
    comps = []
    words = []
    chords = []
    for lineno, line in lines:
        m = _COMP.match(line)
        if m:
            idx, o, body, c = m.groups()
            if (o, c) not in (("(", ")"), ("[", "]")):
                raise ChordError(f"line {lineno}: mismatched brackets")
            comps.append((int(idx), "circle" if o == "(" else "interval"))
            words.append(body.split())
            continue
        m = _CHORD.match(line)
        if m:
            chords.append((lineno, m.group(1), m.group(2)))
            continue
        raise ChordError(f"line {lineno}: cannot parse {line!r}")
    where = {}
    for c, w in enumerate(words):
        for k, p in enumerate(w):
            if p in where:
                raise ChordError(f"point {p!r} appears twice")
            where[p] = (c, k)
    label = {}
    for lineno, p, q in chords:
        for x in (p, q):
            if x not in where:
                raise ChordError(f"line {lineno}: unknown point {x!r}")
            if x in label:
                raise ChordError(f"line {lineno}: point {x!r} is already on a chord")
            label[x] = f"{p}-{q}"
    missing = [p for p in where if p not in label]
    if missing:
        raise ChordError(f"point {missing[0]!r} is not on any chord")
    order = sorted(range(len(comps)), key=lambda c: (comps[c][1] != "interval", c))
    skel = Skeleton(tuple(comps[c] for c in order))
    return ChordDiagram(skel, tuple(tuple(label[p] for p in words[c]) for c in order))


def _lines(text: str) -> list:
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((n, line))
    return out


def parse_diagram(text: str) -> ChordDiagram:
    return _parse_block(_lines(text))


def parse_combination(text: str) -> DiagramCombination:
    """A combination file, or a single diagram (coefficient 1)."""
    lines = _lines(text)
    if not lines or not _TERM.match(lines[0][1]):
        d = _parse_block(lines)
        combo = DiagramCombination(d.skeleton)
        combo.add(d, 1)
        return combo
    blocks = []
    for n, line in lines:
        m = _TERM.match(line)
        if m:
            blocks.append((Fraction(m.group(1)), []))
        else:
            blocks[-1][1].append((n, line))
    diags = [(c, _parse_block(b)) for c, b in blocks]
    combo = DiagramCombination(diags[0][1].skeleton)
    for c, d in diags:
        combo.add(d, c)
    return combo


def format_diagram(d: ChordDiagram) -> str:
    lines = []
    names = {}
    k = 0
    for (i, kind), w in zip(d.skeleton.components, d.words):
        pts = []
        for x in w:
            names.setdefault(x, []).append(f"p{k}")
            pts.append(f"p{k}")
            k += 1
        o, c = ("(", ")") if kind == "circle" else ("[", "]")
        lines.append(f"component {i} {o}{' '.join(pts)}{c}")
    for x in sorted(names, key=lambda x: int(names[x][0][1:])):
        p, q = names[x]
        lines.append(f"chord {p} {q}")
    return "\n".join(lines) + "\n"
