import pytest

from superlinks.chords import ChordDiagram, circle, enumerate_diagrams, interval, underlying_diagram
from superlinks.tangles.braids import braid_closure_sliced, parse_braid
from superlinks.tangles.corpus import (LINKS, closed_corpus, double_unknot_framing_corpus, link,
                                       move_equivalence_corpus)
from superlinks.tangles.pd import PDParseError, format_pd, parse_pd
from superlinks.tangles.singular import make_singular_representative, resolve_singularities
from superlinks.tangles.sliced import SlicedTangle, TangleError, apply_slice, closure, cross, cup, cut
from superlinks.tangles.slicing import STRATEGIES, slice_link

TREFOIL = """\
PD trefoil
COMPONENTS 1
COMPONENT 1 framing=3 edges=1,2,3,4,5,6
X[1,5,2,4] +
X[5,3,6,2] +
X[3,1,4,6] +
"""


def _well_typed(t: SlicedTangle):
    obj = t.top
    for s in t.slices:
        obj = apply_slice(obj, s)  # raises on mismatch
    return obj == t.bottom


def test_parse_unknot():
    L = parse_pd("COMPONENTS 1\nCOMPONENT 1 framing=0 edges=\n")
    assert len(L.components) == 1 and not L.crossings


def test_parse_trefoil():
    L = parse_pd(TREFOIL)
    assert len(L.components) == 1 and len(L.crossings) == 3
    assert L.framings() == {1: 3}


def test_edge_used_three_times():
    bad = TREFOIL.replace("X[3,1,4,6]", "X[3,1,1,6]")
    with pytest.raises(PDParseError, match="1"):
        parse_pd(bad)


def test_parse_errors_are_located():
    with pytest.raises(PDParseError, match="line 3"):
        parse_pd("COMPONENTS 1\nCOMPONENT 1 framing=0 edges=\nbogus\n")
    with pytest.raises(PDParseError):
        parse_pd("COMPONENT 1 framing=0 edges=\n")


@pytest.mark.parametrize("name", sorted(LINKS))
def test_pd_roundtrip(name):
    text = format_pd(link(name))
    again = parse_pd(text)
    assert format_pd(again) == text


def test_slice_unknot():
    t = slice_link(link("unknot"))
    assert [s.kind for s in t.slices] == ["Cup", "Cap"]


def test_slice_hopf():
    t = slice_link(link("hopf"))
    kinds = [s.kind for s in t.slices]
    assert kinds.count("Cup") == 2 and kinds.count("Cap") == 2
    signs = [s.sign for s in t.slices if s.kind == "X"]
    assert signs == [1, 1]


@pytest.mark.parametrize("name", sorted(LINKS))
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_slice_preserves_structure(name, strategy):
    L = link(name)
    t = slice_link(L, strategy)
    assert _well_typed(t) and t.is_closed()
    assert len(t.components) == len(L.components)
    assert t.framings() == L.framings()
    assert t.crossing_count() >= len(L.crossings)


def test_cut_unknot_is_identity_strand():
    t = cut(slice_link(link("unknot")), 1)
    assert t.is_one_one() and t.top == ((1, 1),)
    # the cut may route through a cancelling crossing pair; it is a plain strand up to R2
    assert t.writhe(1) == 0 and not t.double_points


def test_cut_hopf_each_component():
    t = slice_link(link("hopf"))
    c1, c2 = cut(t, 1), cut(t, 2)
    assert c1.top == ((1, 1),) and c2.top == ((1, 2),)
    assert c1.word() != c2.word()
    assert closure(c1).framings() == t.framings()
    with pytest.raises(TangleError):
        cut(t, 3)


def test_resolve_signs():
    one = SlicedTangle((), [cup(0, 1, 1), cup(2, 1, 1), cross(1, 0)])
    assert [c for c, _ in resolve_singularities(SlicedTangle((), [cup(0, 1, 1)]))] == [1]
    assert [c for c, _ in resolve_singularities(one)] == [1, -1]
    two = make_singular_representative(enumerate_diagrams(circle(1), 2)[0])
    terms = resolve_singularities(two)
    assert len(terms) == 4
    assert [c for c, _ in terms] == [1, -1, -1, 1]
    assert all(not t.double_points for _, t in terms)
    signs = [[t.slices[k].sign for k in two.double_points] for _, t in terms]
    assert signs == [[1, 1], [1, -1], [-1, 1], [-1, -1]]


def test_resolve_pd():
    t = make_singular_representative(enumerate_diagrams(circle(1), 1)[0])
    assert len(resolve_singularities(t)) == 2


def test_representative_examples():
    empty = make_singular_representative(ChordDiagram(circle(1), ((),)))
    assert not empty.double_points and empty.framings() == {1: 0}
    (one,) = enumerate_diagrams(circle(1), 1)
    t = make_singular_representative(one)
    assert len(t.double_points) == 1 and len(t.components) == 1


@pytest.mark.parametrize("skel", [circle(1), circle(2), circle(3), interval(), interval(1)],
                         ids=str)
def test_representative_roundtrip(skel):
    for m in range(4):
        for d in enumerate_diagrams(skel, m):
            for v in (0, 1, 2, 3):
                t = make_singular_representative(d, v)
                assert _well_typed(t)
                assert all(f == 0 for f in t.framings().values())
                assert underlying_diagram(t) == d


def test_representatives_differ():
    d = enumerate_diagrams(circle(1), 2)
    words = {make_singular_representative(x, v).word() for x in d for v in (0, 1)}
    assert len(words) == 2 * len(d)
    for skel in (circle(1), circle(2)):
        for m in range(3):
            for x in enumerate_diagrams(skel, m):
                assert make_singular_representative(x, 3).word() != make_singular_representative(x, 0).word()
    with pytest.raises(ValueError):
        make_singular_representative(d[0], 4)


def test_move_corpus():
    pairs = move_equivalence_corpus()
    assert len(pairs) >= 30
    moves = {p.move for p in pairs}
    assert {"R2", "R3"} <= moves
    for p in pairs:
        assert p.lhs.top == p.rhs.top and p.lhs.bottom == p.rhs.bottom
        assert _well_typed(p.lhs) and _well_typed(p.rhs)
    assert [p.id for p in move_equivalence_corpus()] == [p.id for p in pairs]


def test_framing_corpus():
    for _, u0, u2 in double_unknot_framing_corpus():
        (f0,) = u0.framings().values()
        (f2,) = u2.framings().values()
        assert f2 == f0 + 2


def test_closed_corpus_size():
    assert len(closed_corpus()) == 10


def test_braid_closure_components():
    t = braid_closure_sliced(3, parse_braid("1 1 2 2"))
    assert len(t.components) == 3
    assert t.linking_number(1, 2) == 1
