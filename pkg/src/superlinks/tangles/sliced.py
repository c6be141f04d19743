"""
Morse words of elementary tangles.

Time runs from the top boundary to the bottom boundary. An object is a tuple
of points ``(eps, comp)``; ``eps = +1`` means the strand is oriented
downward (it carries the module itself), ``eps = -1`` upward (the dual).
Every slice is one elementary piece placed at a position, with identities on
all other strands:

* ``X`` crossing on positions ``p, p+1`` with ``sign`` +1, -1 or 0 (a double
  point). The strand entering at the top-left leaves at the bottom-right.
* ``Cup`` opens a new pair of strands ``(eps, c), (-eps, c)`` at ``p``.
* ``Cap`` closes the pair at ``p, p+1``, which must be ``(eps, c), (-eps, c)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

Point = tuple  # (eps, comp)

__all__ = [
    "Slice",
    "SlicedTangle",
    "TangleError",
    "crossing_sign",
    "over_strand",
    "cross",
    "cup",
    "cap",
    "closure",
    "curl_slices",
    "cut",
]


class TangleError(ValueError):
    """Ill-typed or otherwise invalid tangle word."""


@dataclass(frozen=True)
class Slice:
    kind: str  # "X", "Cup", "Cap"
    pos: int
    sign: int = 0  # crossings: +1, -1, 0 for a double point
    eps: int = 1  # Cup: orientation of the left strand created
    comp: int = 0  # Cup: component of the created strands

    def shifted(self, k: int) -> "Slice":
        return replace(self, pos=self.pos + k)

    def __str__(self):
        if self.kind == "X":
            tag = {1: "X+", -1: "X-", 0: "Xsing"}[self.sign]
            return f"{tag}@{self.pos}"
        if self.kind == "Cup":
            return f"Cup({'+' if self.eps > 0 else '-'}{self.comp})@{self.pos}"
        return f"Cap@{self.pos}"


def cross(pos: int, sign: int) -> Slice:
    return Slice("X", pos, sign=sign)


def cup(pos: int, eps: int, comp: int) -> Slice:
    return Slice("Cup", pos, eps=eps, comp=comp)


def cap(pos: int) -> Slice:
    return Slice("Cap", pos)


def crossing_sign(eps_left: int, eps_right: int, over: str) -> int:
    """Sign of a crossing whose top-left/top-right strands have the given
    orientations and where ``over`` ('left' or 'right') names the over strand
    by its top end."""
    # direction vectors (x right, y up); time runs downward
    a = (1, -1) if eps_left > 0 else (-1, 1)
    b = (-1, -1) if eps_right > 0 else (1, 1)
    det = a[0] * b[1] - a[1] * b[0]
    s = 1 if det > 0 else -1
    return s if over == "left" else -s


def over_strand(eps_left: int, eps_right: int, sign: int) -> str:
    """Inverse of :func:`crossing_sign`: which top end is the over strand."""
    return "left" if crossing_sign(eps_left, eps_right, "left") == sign else "right"


def apply_slice(obj: tuple, s: Slice) -> tuple:
    p = s.pos
    n = len(obj)
    if s.kind == "X":
        if not 0 <= p < n - 1:
            raise TangleError(f"crossing at {p} out of range for width {n}")
        return obj[:p] + (obj[p + 1], obj[p]) + obj[p + 2:]
    if s.kind == "Cup":
        if not 0 <= p <= n:
            raise TangleError(f"cup at {p} out of range for width {n}")
        return obj[:p] + ((s.eps, s.comp), (-s.eps, s.comp)) + obj[p:]
    if s.kind == "Cap":
        if not 0 <= p < n - 1:
            raise TangleError(f"cap at {p} out of range for width {n}")
        (e1, c1), (e2, c2) = obj[p], obj[p + 1]
        if e1 != -e2 or c1 != c2:
            raise TangleError(f"cap at {p} joins incompatible points {obj[p]} and {obj[p + 1]}")
        return obj[:p] + obj[p + 2:]
    raise TangleError(f"unknown slice kind {s.kind!r}")


@dataclass
class SlicedTangle:
    """A Morse word with its top boundary object; the bottom is derived."""

    top: tuple = ()
    slices: list = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.top = tuple(tuple(p) for p in self.top)
        self.slices = list(self.slices)
        self.levels()  # validates

    def levels(self) -> list[tuple]:
        """Object at every level; ``levels()[k]`` is the object above slice k."""
        objs = [self.top]
        cur = self.top
        for k, s in enumerate(self.slices):
            try:
                cur = apply_slice(cur, s)
            except TangleError as exc:
                raise TangleError(f"slice {k} ({s}): {exc}") from None
            objs.append(cur)
        return objs

    @property
    def bottom(self) -> tuple:
        return self.levels()[-1]

    @property
    def components(self) -> list[int]:
        seen = {c for _, c in self.top}
        for s in self.slices:
            if s.kind == "Cup":
                seen.add(s.comp)
        return sorted(seen)

    def is_closed(self) -> bool:
        return not self.top and not self.bottom

    def is_one_one(self) -> bool:
        top, bot = self.top, self.bottom
        return len(top) == 1 and len(bot) == 1 and top[0] == bot[0] and top[0][0] == 1

    @property
    def double_points(self) -> list[int]:
        return [k for k, s in enumerate(self.slices) if s.kind == "X" and s.sign == 0]

    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if s.kind == "X")

    def then(self, other: "SlicedTangle") -> "SlicedTangle":
        if self.bottom != other.top:
            raise TangleError(f"cannot compose: {self.bottom} != {other.top}")
        return SlicedTangle(self.top, self.slices + other.slices, self.name)

    def word(self) -> str:
        return " ".join(str(s) for s in self.slices)

    def __str__(self):
        return f"SlicedTangle(top={self.top}, word=[{self.word()}])"

    # -- combinatorial tracing -------------------------------------------
    def trace(self) -> dict:
        """Follow every component along its orientation.

        Returns ``comp -> list of (slice_index, role)`` for each crossing passage,
        where role is 'left' or 'right' (the top end through which the strand
        passes, regardless of direction). Closed components start at the first
        passage found; an open component starts at its top boundary point.
        """
        levels = self.levels()
        visits: dict = {}
        succ = _successors(self, levels)
        start_points = []
        for p, (e, c) in enumerate(self.top):
            if e > 0:
                start_points.append(((0, p), c))
        last = len(self.slices)
        for p, (e, c) in enumerate(levels[-1]):
            if e < 0:
                start_points.append(((last, p), c))
        done = set()
        for node, c in start_points:
            seq = []
            cur = node
            while cur is not None and cur not in done:
                done.add(cur)
                nxt, event = succ[cur]
                if event is not None:
                    seq.append(event)
                cur = nxt
            visits.setdefault(c, []).append(seq)
        for lvl, obj in enumerate(levels):
            for p, (e, c) in enumerate(obj):
                node = (lvl, p)
                if node in done:
                    continue
                seq = []
                cur = node
                while cur not in done:
                    done.add(cur)
                    nxt, event = succ[cur]
                    if event is not None:
                        seq.append(event)
                    cur = nxt
                visits.setdefault(c, []).append(seq)
        for c, seqs in visits.items():
            if len(seqs) != 1:
                raise TangleError(f"component {c} is not connected ({len(seqs)} pieces)")
        return {c: seqs[0] for c, seqs in visits.items()}

    def writhe(self, comp: int | None = None) -> int:
        """Sum of crossing signs; restricted to self-crossings of ``comp`` if given."""
        levels = self.levels()
        total = 0
        for k, s in enumerate(self.slices):
            if s.kind != "X" or s.sign == 0:
                continue
            c1 = levels[k][s.pos][1]
            c2 = levels[k][s.pos + 1][1]
            if comp is None or (c1 == comp and c2 == comp):
                total += s.sign
        return total

    def linking_number(self, c1: int, c2: int) -> int:
        levels = self.levels()
        total = 0
        for k, s in enumerate(self.slices):
            if s.kind != "X" or s.sign == 0:
                continue
            pair = {levels[k][s.pos][1], levels[k][s.pos + 1][1]}
            if pair == {c1, c2} and c1 != c2:
                total += s.sign
        assert total % 2 == 0
        return total // 2

    def framings(self) -> dict:
        return {c: self.writhe(c) for c in self.components}


def _successors(t: SlicedTangle, levels: list[tuple]) -> dict:
    """Map each node (level, pos) to the next node along the orientation and
    the crossing passage (if any) between them."""
    succ: dict = {}
    nslices = len(t.slices)

    def down(lvl, p):
        """Node at lvl+1 reached by going down from (lvl, p) through slice lvl."""
        s = t.slices[lvl]
        q = s.pos
        if s.kind == "X":
            if p == q:
                return (lvl + 1, q + 1), (lvl, "left")
            if p == q + 1:
                return (lvl + 1, q), (lvl, "right")
            return (lvl + 1, p), None
        if s.kind == "Cup":
            return (lvl + 1, p + 2 if p >= q else p), None
        # Cap
        if p == q:
            return ("turn", q + 1), None
        if p == q + 1:
            return ("turn", q), None
        return (lvl + 1, p - 2 if p > q + 1 else p), None

    def up(lvl, p):
        """Node at lvl-1 reached by going up from (lvl, p) through slice lvl-1."""
        s = t.slices[lvl - 1]
        q = s.pos
        if s.kind == "X":
            if p == q:
                return (lvl - 1, q + 1), (lvl - 1, "right")
            if p == q + 1:
                return (lvl - 1, q), (lvl - 1, "left")
            return (lvl - 1, p), None
        if s.kind == "Cup":
            if p == q:
                return ("turn", q + 1), None
            if p == q + 1:
                return ("turn", q), None
            return (lvl - 1, p - 2 if p > q + 1 else p), None
        return (lvl - 1, p + 2 if p >= q else p), None

    for lvl, obj in enumerate(levels):
        for p, (e, c) in enumerate(obj):
            if e > 0:
                if lvl == nslices:
                    succ[(lvl, p)] = (None, None)
                    continue
                nxt, ev = down(lvl, p)
                if nxt[0] == "turn":
                    nxt = (lvl, nxt[1])  # cap: continue upward on partner at same level
                succ[(lvl, p)] = (nxt, ev)
            else:
                if lvl == 0:
                    succ[(lvl, p)] = (None, None)
                    continue
                nxt, ev = up(lvl, p)
                if nxt[0] == "turn":
                    nxt = (lvl, nxt[1])  # cup: continue downward on partner
                succ[(lvl, p)] = (nxt, ev)
    return succ


# ---------------------------------------------------------------------------
# Builders

def closure(t: SlicedTangle) -> SlicedTangle:
    """Close a (1,1)-tangle by a strand running up its right-hand side."""
    if not t.is_one_one():
        raise TangleError("closure expects a (1,1)-tangle")
    eps, comp = t.top[0]
    word = [cup(0, 1, comp)] + list(t.slices) + [cap(0)]
    return SlicedTangle((), word, name=f"closure({t.name})" if t.name else "")


def curl_slices(pos: int, obj: tuple, sign: int, side: str = "right") -> list[Slice]:
    """Slices inserting a framing curl of the given sign on the strand at ``pos``.

    The loop is drawn to the right (or left) of the strand; both strands at the
    crossing run parallel, so ``sign`` is directly the oriented crossing sign.
    """
    eps, comp = obj[pos]
    if side == "right":
        return [cup(pos + 1, eps, comp), cross(pos, sign), cap(pos + 1)]
    return [cup(pos, -eps, comp), cross(pos + 1, sign), cap(pos)]


def cut(t: SlicedTangle, comp: int) -> SlicedTangle:
    """Open component ``comp`` of a closed word into a (1,1)-tangle.

    The cut point is an upward segment of ``comp``; if it is not already the
    leftmost strand at its level it is first pulled there over the strands to
    its left (a finger move, undone right after the cut).
    """
    if not t.is_closed():
        raise TangleError("cut expects a closed link word")
    if comp not in t.components:
        raise TangleError(f"no component {comp}")
    levels = t.levels()
    best = None
    for lvl, obj in enumerate(levels):
        for p, (e, c) in enumerate(obj):
            if c == comp and e < 0:
                key = (p, lvl)
                if best is None or key < best:
                    best = key
                break
    if best is None:
        raise TangleError(f"component {comp} has no upward segment")
    p, lvl = best
    obj = levels[lvl]
    upper = list(t.slices[:lvl])
    lower = list(t.slices[lvl:])
    # finger: move the strand from p to 0 passing over everything to its left
    out_moves = []
    back_moves = []
    cur = obj
    for k in range(p - 1, -1, -1):
        s = crossing_sign(cur[k][0], cur[k + 1][0], "right")
        out_moves.append(cross(k, s))
        cur = apply_slice(cur, out_moves[-1])
    for k in range(0, p):
        s = crossing_sign(cur[k][0], cur[k + 1][0], "left")
        back_moves.append(cross(k, s))
        cur = apply_slice(cur, back_moves[-1])
    upper = upper + out_moves
    lower = back_moves + lower
    word = [s.shifted(1) for s in upper]
    word.append(cap(0))
    word.append(cup(0, 1, comp))
    word += [s.shifted(1) for s in lower]
    return SlicedTangle(((1, comp),), word, name=f"cut({t.name},{comp})" if t.name else "")
