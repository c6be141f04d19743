"""
Compile a planar diagram into a sliced Morse word.

The sweep keeps a frontier: the strands crossing the current horizontal line,
left to right. Each strand leaves an already placed crossing end and heads for
an unplaced one. A crossing is placed below the frontier when the frontier
strands heading for it are consecutive. Around a placed crossing the
counterclockwise order of its ends is (top-right, top-left, bottom-left,
bottom-right), so its top ends read right to left along the frontier.

* Missing top ends are supplied by a cup whose outer strand takes over the
  role of that edge on the frontier.
* Adjacent frontier strands that are the two halves of one edge are capped.
* If the strands for the next crossing wrap around the ends of the frontier,
  the leftmost strand is rerouted over the top of the whole word to the right
  end (a cup prepended at the top, a cap appended at the bottom).

Framings are realized afterwards by inserting curls.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pd import PDLink
from .sliced import Slice, SlicedTangle, TangleError, cap, cross, cup, curl_slices

__all__ = ["slice_link", "STRATEGIES", "SliceError"]

STRATEGIES = ("greedy", "reverse")


class SliceError(TangleError):
    """The sweep could not place the remaining crossings."""


@dataclass
class _Strand:
    eps: int
    comp: int
    src: tuple | None  # placed end this strand leaves, (crossing, slot)
    dst: tuple  # unplaced end it heads for


class _Builder:
    def __init__(self, link: PDLink):
        self.link = link
        self.word: list[Slice] = []
        self.front: list[_Strand] = []
        self.uses: dict = {}
        for k, x in enumerate(link.crossings):
            for s, e in enumerate(x.edges):
                self.uses.setdefault(e, []).append((k, s))
        self.edge_comp = link.edge_component()
        self.placed: set = set()

    # ends ----------------------------------------------------------------
    def edge_at(self, end) -> int:
        k, s = end
        return self.link.crossings[k].edges[s]

    def partner(self, end) -> tuple:
        a, b = self.uses[self.edge_at(end)]
        return b if a == end else a

    def comp_at(self, end) -> int:
        return self.edge_comp[self.edge_at(end)]

    def incoming(self, end) -> bool:
        k, s = end
        return self.link.crossings[k].slot_in(s)

    def out_strand(self, end) -> _Strand:
        """Frontier strand leaving the placed end ``end``."""
        return _Strand(-1 if self.incoming(end) else 1, self.comp_at(end), end, self.partner(end))

    # word ------------------------------------------------------------------
    def emit(self, s: Slice):
        self.word.append(s)

    def obj(self) -> tuple:
        return tuple((st.eps, st.comp) for st in self.front)

    def rotate(self):
        """Reroute the leftmost frontier strand to the right end."""
        st = self.front[0]
        self.word = [cup(0, -st.eps, st.comp)] + [s.shifted(1) for s in self.word]
        self.front.insert(0, _Strand(-st.eps, st.comp, None, None))
        self.front.append(_Strand(st.eps, st.comp, st.src, st.dst))
        self.emit(cap(0))
        del self.front[0:2]

    def cap_pairs(self):
        changed = True
        while changed:
            changed = False
            for i in range(len(self.front) - 1):
                a, b = self.front[i], self.front[i + 1]
                if a.dst == b.src and b.dst == a.src:
                    self.emit(cap(i))
                    del self.front[i:i + 2]
                    changed = True
                    break
            if not changed and len(self.front) >= 2:
                a, b = self.front[-1], self.front[0]
                if a.dst == b.src and b.dst == a.src:
                    self.rotate()
                    changed = True

    # placement ---------------------------------------------------------------
    def shared_positions(self, k: int) -> dict:
        return {st.dst[1]: i for i, st in enumerate(self.front) if st.dst[0] == k}

    def contiguity(self, k: int):
        """(rotations needed, ordered slots) if crossing k can be placed, else None."""
        pos = self.shared_positions(k)
        if not pos:
            return 0, []
        n = len(self.front)
        m = len(pos)
        for r in range(n):
            # frontier rotated left by r
            idx = sorted((p - r) % n for p in pos.values())
            if idx[-1] - idx[0] != m - 1:
                continue
            slots = [None] * m
            for s, p in pos.items():
                slots[(p - r) % n - idx[0]] = s
            ok = all(slots[j + 1] == (slots[j] - 1) % 4 for j in range(m - 1))
            if ok:
                return r, slots
        return None

    def place(self, k: int, rotations: int):
        for _ in range(rotations):
            self.rotate()
        pos = self.shared_positions(k)
        m = len(pos)
        if m >= 2:
            slots_lr = sorted(pos, key=lambda s: pos[s])
            # the top pair is the rightmost two of the first three (or the only two)
            if m == 2:
                tl, tr = slots_lr
            else:
                tl, tr = slots_lr[1], slots_lr[2]
            p = pos[tl]
            self._cross(k, p, tr)
        elif m == 1:
            (tl, p), = pos.items()
            tr = (tl - 1) % 4
            inner = self._inner_eps((k, tr))
            self.emit(cup(p + 1, inner, self.comp_at((k, tr))))
            self.front[p + 1:p + 1] = [_Strand(inner, self.comp_at((k, tr)), None, (k, tr)),
                                       _Strand(-inner, self.comp_at((k, tr)), (k, tr), self.partner((k, tr)))]
            self._cross(k, p, tr)
        else:
            tr, tl = 0, 1
            p = len(self.front)
            if self.partner((k, tl)) == (k, tr):
                inner = self._inner_eps((k, tl))
                self.emit(cup(p, inner, self.comp_at((k, tl))))
                self.front[p:p] = [_Strand(inner, self.comp_at((k, tl)), None, (k, tl)),
                                   _Strand(-inner, self.comp_at((k, tl)), None, (k, tr))]
            else:
                il = self._inner_eps((k, tl))
                self.emit(cup(p, -il, self.comp_at((k, tl))))
                self.front[p:p] = [_Strand(-il, self.comp_at((k, tl)), (k, tl), self.partner((k, tl))),
                                   _Strand(il, self.comp_at((k, tl)), None, (k, tl))]
                p += 1
                ir = self._inner_eps((k, tr))
                self.emit(cup(p + 1, ir, self.comp_at((k, tr))))
                self.front[p + 1:p + 1] = [_Strand(ir, self.comp_at((k, tr)), None, (k, tr)),
                                           _Strand(-ir, self.comp_at((k, tr)), (k, tr), self.partner((k, tr)))]
            self._cross(k, p, tr)
        self.placed.add(k)
        self.cap_pairs()

    def _inner_eps(self, end) -> int:
        return 1 if self.incoming(end) else -1

    def _cross(self, k: int, p: int, tr: int):
        """Crossing k on frontier positions p (top-left) and p+1 (top-right)."""
        x = self.link.crossings[k]
        tl = (tr + 1) % 4
        a, b = self.front[p], self.front[p + 1]
        if a.dst != (k, tl) or b.dst != (k, tr):
            raise SliceError(f"internal: crossing {k} top ends misplaced")
        if a.eps != self._inner_eps((k, tl)) or b.eps != self._inner_eps((k, tr)):
            raise SliceError(f"internal: orientation mismatch at crossing {k}")
        self.emit(cross(p, 0 if x.singular else x.sign))
        bl, br = (tr + 2) % 4, (tr + 3) % 4
        self.front[p:p + 2] = [self.out_strand((k, bl)), self.out_strand((k, br))]


def _pieces(link: PDLink) -> list[list[int]]:
    """Crossings grouped by connected piece of the diagram."""
    parent = list(range(len(link.crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    uses: dict = {}
    for k, x in enumerate(link.crossings):
        for e in x.edges:
            uses.setdefault(e, []).append(k)
    for ks in uses.values():
        a, b = find(ks[0]), find(ks[-1])
        parent[a] = b
    groups: dict = {}
    for k in range(len(link.crossings)):
        groups.setdefault(find(k), []).append(k)
    return sorted(groups.values(), key=min)


def slice_link(link: PDLink, strategy: str = "greedy") -> SlicedTangle:
    """Sliced closed word for a PD link (double points become ``Xsing`` slices)."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown slicing strategy {strategy!r}")
    b = _Builder(link)
    pieces = _pieces(link)
    if strategy == "reverse":
        pieces = [sorted(p, reverse=True) for p in reversed(pieces)]
    for piece in pieces:
        todo = list(piece)
        while todo:
            best = None
            for k in todo:
                c = b.contiguity(k)
                if c is None:
                    continue
                r, slots = c
                key = (-len(slots), r)
                if best is None or key < best[0]:
                    best = (key, k, r)
            if best is None:
                raise SliceError("no placeable crossing; is the diagram planar?")
            _, k, r = best
            b.place(k, r)
            todo.remove(k)
        if b.front:
            raise SliceError("frontier not empty after closing a piece")
    for c in link.components:
        if not c.edges:
            b.emit(cup(0, 1, c.index))
            b.emit(cap(0))
    word = SlicedTangle((), b.word, name=link.name)
    return _frame(word, link.framings())


def _frame(t: SlicedTangle, framings: dict) -> SlicedTangle:
    slices = list(t.slices)
    for comp, f in sorted(framings.items()):
        w = SlicedTangle((), slices).writhe(comp)
        need = f - w
        if not need:
            continue
        levels = SlicedTangle((), slices).levels()
        k = next(i for i, s in enumerate(slices) if s.kind == "Cup" and s.comp == comp)
        obj = levels[k + 1]
        pos = slices[k].pos
        sign = 1 if need > 0 else -1
        extra = []
        for _ in range(abs(need)):
            extra += curl_slices(pos, obj, sign)
        slices[k + 1:k + 1] = extra
    return SlicedTangle((), slices, name=t.name)
