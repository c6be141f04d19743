import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superlinks.chords import (ChordDiagram, ChordError, DiagramCombination, Skeleton, circle,
                               cut_diagram, enumerate_diagrams, format_diagram, four_term_combinations,
                               interval, parse_combination, parse_diagram, relator_rank,
                               underlying_diagram)
from superlinks.tangles.singular import make_singular_representative


def _matchings(pts):
    if not pts:
        yield []
        return
    first, rest = pts[0], pts[1:]
    for k, q in enumerate(rest):
        for m in _matchings(rest[:k] + rest[k + 1:]):
            yield [(first, q)] + m


def brute_force_count(kinds, m):
    """Orbits of point configurations: distribute 2m points over the components,
    pair them up, and identify configurations that differ by rotating circles."""
    n = len(kinds)
    seen = set()
    for split in itertools.product(range(2 * m + 1), repeat=n):
        if sum(split) != 2 * m:
            continue
        pts = [(c, k) for c in range(n) for k in range(split[c])]
        for mt in _matchings(pts):
            best = None
            rots = [range(split[c]) if kinds[c] == "circle" and split[c] else [0] for c in range(n)]
            for r in itertools.product(*rots):
                def mv(p):
                    c, k = p
                    return (c, (k + r[c]) % split[c]) if split[c] else p
                key = tuple(sorted(tuple(sorted((mv(p), mv(q)))) for p, q in mt))
                best = key if best is None or key < best else best
            seen.add((split, best))
    return len(seen)


@pytest.mark.parametrize("kinds", [("circle",), ("interval",), ("circle", "circle"),
                                   ("interval", "circle")])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_enumeration_matches_brute_force(kinds, m):
    skel = Skeleton(tuple((i + 1, k) for i, k in enumerate(kinds)))
    ds = enumerate_diagrams(skel, m)
    assert len(ds) == len(set(ds)) == brute_force_count(kinds, m)


def test_enumeration_small_cases():
    for s in (circle(1), circle(2), interval(), interval(1)):
        (d,) = enumerate_diagrams(s, 0)
        assert d.degree == 0
    assert len(enumerate_diagrams(circle(1), 1)) == 1
    assert len(enumerate_diagrams(circle(1), 2)) == 2


def test_canonical_fixed_point():
    for s in (circle(1), circle(2), interval(1)):
        for d in enumerate_diagrams(s, 3):
            assert d.canonical() == d
            assert d.canonical().canonical().words == d.canonical().words
    rotated = ChordDiagram(circle(1), (("x", "y", "x", "z", "y", "z"),))
    again = ChordDiagram(circle(1), (("c", "a", "c", "b", "a", "b"),))
    assert rotated == again


def test_four_term_structure():
    assert four_term_combinations(circle(1), 1) == []
    for s in (circle(1), interval(), interval(1)):
        for m in (2, 3):
            for combo in four_term_combinations(s, m):
                terms = combo.items()
                assert 1 <= len(terms) <= 4
                assert sum(c for _, c in terms) == 0
                assert all(d.skeleton == combo.skeleton for d, _ in terms)


# frozen from exact row reduction over Q: (number of diagrams, rank of the 4T relators)
GOLDEN_RANKS = {
    ("circle", 2): (2, 0),
    ("circle", 3): (5, 2),
    ("circle", 4): (18, 12),
    ("interval", 2): (3, 1),
    ("interval", 3): (15, 12),
    ("interval", 4): (105, 99),
}


@pytest.mark.parametrize("key", sorted(GOLDEN_RANKS))
def test_four_term_ranks(key):
    kind, m = key
    s = circle(1) if kind == "circle" else interval()
    assert relator_rank(s, m) == GOLDEN_RANKS[key]


def test_dim_A_circle_equals_interval():
    for m in (2, 3, 4):
        nc, rc = GOLDEN_RANKS[("circle", m)]
        ni, ri = GOLDEN_RANKS[("interval", m)]
        assert nc - rc == ni - ri


def test_cut_examples():
    (empty,) = enumerate_diagrams(circle(1), 0)
    assert cut_diagram(empty, 1).skeleton.is_one_one
    (one,) = enumerate_diagrams(circle(1), 1)
    assert cut_diagram(one, 1) == enumerate_diagrams(interval(), 1)[0]
    with pytest.raises(ChordError):
        cut_diagram(one, 2)


def test_cut_keeps_label():
    d = enumerate_diagrams(circle(2), 2)[-1]
    c = cut_diagram(d, 2)
    assert c.skeleton.intervals == (2,)
    assert c.degree == 2


def test_cut_basepoints_cover_rotations():
    d = ChordDiagram(circle(1), ((0, 1, 0, 2, 1, 2),))
    cuts = {cut_diagram(d, 1, b) for b in range(6)}
    assert len(cuts) > 1


def test_underlying_examples():
    (one,) = enumerate_diagrams(circle(1), 1)
    assert underlying_diagram(make_singular_representative(one)) == one
    (empty,) = enumerate_diagrams(circle(1), 0)
    assert underlying_diagram(make_singular_representative(empty)).degree == 0


def test_text_roundtrip():
    for s in (circle(1), circle(2), interval(), interval(1)):
        for m in range(4):
            for d in enumerate_diagrams(s, m):
                assert parse_diagram(format_diagram(d)) == d


def test_parse_example():
    d = parse_diagram("""
        component 1 [u v w x]   # interval
        component 2 ()
        chord u w
        chord v x
    """)
    assert d.skeleton.is_one_one and d.degree == 2
    assert d == ChordDiagram(interval(1), ((0, 1, 0, 1), ()))


@pytest.mark.parametrize("text", [
    "component 1 (p q r)\nchord p q\n",
    "component 1 (p q)\nchord p z\n",
    "component 1 (p p)\nchord p p\n",
    "component 1 (p q]\nchord p q\n",
    "component 1 (p q r s)\nchord p q\nchord q r\nchord r s\n",
    "nonsense\n",
])
def test_parse_errors(text):
    with pytest.raises(ChordError):
        parse_diagram(text)


def test_combination_file():
    combo = parse_combination("""
term 1
component 1 [a b c d]
chord a b
chord c d
term -1/2
component 1 [a b c d]
chord a c
chord b d
""")
    assert sorted(c for _, c in combo.items()) == [Fraction(-1, 2), 1]
    single = parse_combination("component 1 (p q)\nchord p q\n")
    assert [c for _, c in single.items()] == [1]


def test_combination_cancels():
    d = enumerate_diagrams(interval(), 1)[0]
    combo = DiagramCombination(interval())
    combo.add(d, 2)
    combo.add(d, -2)
    assert combo.items() == []


@settings(max_examples=50, deadline=None)
@given(st.permutations([0, 0, 1, 1, 2, 2, 3, 3]), st.integers(0, 7))
def test_rotation_invariance(word, r):
    d = ChordDiagram(circle(1), (tuple(word),))
    rot = ChordDiagram(circle(1), (tuple(word[r:] + word[:r]),))
    assert d == rot and hash(d) == hash(rot)
