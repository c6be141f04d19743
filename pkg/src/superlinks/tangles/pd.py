"""
Planar-diagram link files.

Grammar (one statement per line, ``#`` starts a comment, blank lines ignored)::

    file      := [ "PD" name ] "COMPONENTS" n component{n} crossing* color*
    component := "COMPONENT" i "framing=" int "edges=" [ edge ("," edge)* ]
    crossing  := ("X" | "SING") "[" a "," b "," c "," d "]" ("+" | "-")
    color     := "COLOR" i algebra label

Edges are positive integers; ``a b c d`` are listed counterclockwise starting
from the incoming under strand, so the under strand runs ``a -> c``. For ``X``
the sign is the crossing sign: the over strand runs ``d -> b`` when positive
and ``b -> d`` when negative. For ``SING`` (a double point) the token fixes
the direction of the second strand the same way (``+``: ``d -> b``).
A component's edges are listed along its orientation; an empty list declares
a crossingless unknot. ``label`` is a parameter name, a rational, or (for sl2)
a non-negative integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

__all__ = ["PDCrossing", "PDComponent", "PDLink", "PDParseError", "parse_pd", "format_pd"]


class PDParseError(ValueError):
    """Malformed or inconsistent link text; the message carries the line number."""


@dataclass(frozen=True)
class PDCrossing:
    edges: tuple  # (a, b, c, d)
    sign: int  # +1 / -1
    singular: bool = False

    def slot_in(self, k: int) -> bool:
        """Whether slot k is where its edge enters the crossing."""
        if k == 0:
            return True
        if k == 2:
            return False
        over_from_d = self.sign > 0
        return (k == 3) == over_from_d

    def opposite(self, k: int) -> int:
        return (k + 2) % 4

    def __str__(self):
        tag = "SING" if self.singular else "X"
        a, b, c, d = self.edges
        return f"{tag}[{a},{b},{c},{d}] {'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class PDComponent:
    index: int
    framing: int
    edges: tuple


@dataclass
class PDLink:
    components: list
    crossings: list
    colors: dict = field(default_factory=dict)  # index -> (algebra, label text)
    name: str = ""

    @property
    def component_indices(self) -> list:
        return [c.index for c in self.components]

    def component(self, i: int) -> PDComponent:
        for c in self.components:
            if c.index == i:
                return c
        raise KeyError(i)

    @property
    def double_points(self) -> int:
        return sum(1 for x in self.crossings if x.singular)

    def edge_component(self) -> dict:
        return {e: c.index for c in self.components for e in c.edges}

    def framings(self) -> dict:
        return {c.index: c.framing for c in self.components}

    def writhe(self, i: int) -> int:
        ec = self.edge_component()
        return sum(x.sign for x in self.crossings
                   if not x.singular and ec[x.edges[0]] == i and ec[x.edges[1]] == i)

    def resolved(self, signs: dict) -> "PDLink":
        """Replace double point k (index into crossings) by a crossing of sign signs[k]."""
        out = []
        for k, x in enumerate(self.crossings):
            if not x.singular:
                out.append(x)
                continue
            s = signs[k]
            a, b, c, d = x.edges
            if x.sign > 0:  # second strand d -> b
                out.append(PDCrossing((a, b, c, d), 1) if s > 0 else PDCrossing((d, a, b, c), -1))
            else:  # second strand b -> d
                out.append(PDCrossing((a, b, c, d), -1) if s < 0 else PDCrossing((b, c, d, a), 1))
        return PDLink(list(self.components), out, dict(self.colors), self.name)

    def validate(self) -> None:
        _validate(self, {})


_COMP = re.compile(r"COMPONENT\s+(-?\d+)\s+framing=(-?\d+)\s+edges=([0-9,\s]*)$")
_CROSS = re.compile(r"(X|SING)\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]\s*([+-])$")
_COLOR = re.compile(r"COLOR\s+(-?\d+)\s+(\w+)\s+(\S+)$")


def parse_pd(text: str) -> PDLink:
    name = ""
    declared = None
    comps: list = []
    crossings: list = []
    colors: dict = {}
    lines_of: dict = {"crossing": [], "component": {}}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("PD"):
            name = line[2:].strip()
            continue
        if line.startswith("COMPONENTS"):
            try:
                declared = int(line.split()[1])
            except (IndexError, ValueError):
                raise PDParseError(f"line {n}: expected 'COMPONENTS <count>'") from None
            continue
        m = _COMP.match(line)
        if m:
            idx, fr = int(m.group(1)), int(m.group(2))
            if idx < 1:
                raise PDParseError(f"line {n}: component index must be >= 1")
            body = m.group(3).strip()
            try:
                edges = tuple(int(e) for e in body.split(",") if e.strip()) if body else ()
            except ValueError:
                raise PDParseError(f"line {n}: bad edge list {body!r}") from None
            if idx in lines_of["component"]:
                raise PDParseError(f"line {n}: component {idx} declared twice")
            lines_of["component"][idx] = n
            comps.append(PDComponent(idx, fr, edges))
            continue
        if line.startswith("COMPONENT"):
            raise PDParseError(f"line {n}: expected 'COMPONENT <i> framing=<int> edges=<e1,e2,...>'")
        m = _CROSS.match(line)
        if m:
            edges = tuple(int(m.group(k)) for k in range(2, 6))
            sign = 1 if m.group(6) == "+" else -1
            crossings.append(PDCrossing(edges, sign, m.group(1) == "SING"))
            lines_of["crossing"].append(n)
            continue
        m = _COLOR.match(line)
        if m:
            colors[int(m.group(1))] = (m.group(2), m.group(3))
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        raise PDParseError(f"line {n}, column {col}: cannot parse {line!r}")
    if declared is None:
        raise PDParseError("missing 'COMPONENTS <count>' header")
    if declared != len(comps):
        raise PDParseError(f"header declares {declared} components, found {len(comps)}")
    comps.sort(key=lambda c: c.index)
    link = PDLink(comps, crossings, colors, name)
    _validate(link, lines_of)
    for i in colors:
        if i not in link.component_indices:
            raise PDParseError(f"COLOR for unknown component {i}")
    return link


def _validate(link: PDLink, lines_of: dict) -> None:
    cross_lines = lines_of.get("crossing", [])

    def where(k):
        return f"line {cross_lines[k]}: " if k < len(cross_lines) else ""

    uses: dict = {}
    for k, x in enumerate(link.crossings):
        for slot, e in enumerate(x.edges):
            uses.setdefault(e, []).append((k, slot))
            if len(uses[e]) > 2:
                raise PDParseError(f"{where(k)}edge label {e} used more than twice")
    for e, u in uses.items():
        if len(u) != 2:
            k = u[0][0]
            raise PDParseError(f"{where(k)}edge label {e} used only once")
    owner: dict = {}
    for c in link.components:
        for e in c.edges:
            if e in owner:
                raise PDParseError(f"edge {e} listed in components {owner[e]} and {c.index}")
            owner[e] = c.index
            if e not in uses:
                raise PDParseError(f"component {c.index} lists edge {e}, which no crossing uses")
    for e in uses:
        if e not in owner:
            raise PDParseError(f"edge {e} belongs to no component")
    # orientation: every edge enters one crossing slot and leaves another
    for e, u in uses.items():
        ins = [link.crossings[k].slot_in(s) for k, s in u]
        if sorted(ins) != [False, True]:
            k = u[0][0]
            raise PDParseError(f"{where(k)}orientation inconsistent along edge {e}")
    for c in link.components:
        es = c.edges
        for t, e in enumerate(es):
            nxt = es[(t + 1) % len(es)]
            (k, s), = [(k, s) for k, s in uses[e] if link.crossings[k].slot_in(s)]
            x = link.crossings[k]
            if x.edges[x.opposite(s)] != nxt:
                raise PDParseError(
                    f"{where(k)}component {c.index}: edge {e} is followed by "
                    f"{x.edges[x.opposite(s)]}, not {nxt}")


def format_pd(link: PDLink) -> str:
    lines = []
    if link.name:
        lines.append(f"PD {link.name}")
    lines.append(f"COMPONENTS {len(link.components)}")
    for c in link.components:
        lines.append(f"COMPONENT {c.index} framing={c.framing} edges={','.join(map(str, c.edges))}")
    for x in link.crossings:
        lines.append(str(x))
    for i in sorted(link.colors):
        alg, lab = link.colors[i]
        lines.append(f"COLOR {i} {alg} {lab}")
    return "\n".join(lines) + "\n"
