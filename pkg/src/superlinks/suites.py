"""
Verification suites shared by ``superlinks verify`` and the acceptance tests.

Each suite returns a :class:`~superlinks.report.Report` whose cases are exact
comparisons in the truncated series ring (or over rational functions).
"""

from __future__ import annotations

from .chords import circle, enumerate_diagrams, four_term_combinations, interval
from .engine import basis_states, first_difference
from .quantum.invariants import F_prime, closed_value, qdim, vassiliev_coefficient
from .quantum.ribbon import RibbonDatum
from .quantum.validate import validate_datum
from .report import Report
from .scalars import coefficient
from .tangles.corpus import (LINKS, closed_corpus, cut_corpus, double_unknot_framing_corpus,
                             link, move_equivalence_corpus)
from .tangles.singular import make_singular_representative
from .tangles.sliced import SlicedTangle, cap, cup, cut
from .tangles.slicing import STRATEGIES, slice_link
from .weightsys import ClassicalFunctor, ColorAssignment, weight_of_combination

__all__ = ["SUITES", "default_labels", "run_suite"]

SUITES = ("ybe", "moves", "cut", "fourT", "vanish", "match", "qdim")

_GL11_LABELS = ("a", "b", "c", "d")


def default_labels(algebra: str, n: int = 4) -> dict:
    """Symbolic colors a, b, c, ... for gl11; the defining module for sl2."""
    if algebra == "sl2":
        return {i: 1 for i in range(1, n + 1)}
    return {i: _GL11_LABELS[i - 1] for i in range(1, n + 1)}


def _three(labels: dict) -> tuple:
    vals = [labels[k] for k in sorted(labels)]
    while len(vals) < 3:
        vals.append(vals[-1])
    return tuple(vals[:3])


def suite_ybe(rd: RibbonDatum, labels: dict, **_) -> Report:
    rep = Report("ybe")
    rep.extend(validate_datum(rd, _three(labels)))
    return rep


def suite_moves(rd: RibbonDatum, labels: dict, seed: int = 0, **_) -> Report:
    """Move-related word pairs, framing pairs and slicing strategies."""
    rep = Report("moves")
    cols = {1: labels[1], 2: labels.get(2, labels[1]), 3: labels.get(3, labels[1]),
            4: labels.get(4, labels[1])}
    F = rd.functor(cols)
    for p in move_equivalence_corpus(seed):
        A, B = F.evaluate(p.lhs), F.evaluate(p.rhs)
        diff = first_difference(A, B, basis_states(F.strand_dims(p.lhs.top)))
        rep.add(f"move/{p.id}", p.lhs.word(), "equal" if diff is None else f"differs at {diff[0]}->{diff[1]}",
                diff is None)
    theta = rd.twist(rd.label(cols[1]))
    for pid, u0, u2 in double_unknot_framing_corpus():
        # open both unknots at their first upward segment and compare brackets
        b0 = F.endomorphism_scalar(cut(u0, 1))
        b2 = F.endomorphism_scalar(cut(u2, 1))
        want = b0 * theta * theta
        rep.add(pid, b2, want, (b2 - want).is_zero())
    for name in sorted(LINKS):
        L = link(name)
        vals = []
        for s in STRATEGIES:
            t = slice_link(L, s)
            comp = min(t.components)
            vals.append(F.endomorphism_scalar(cut(t, comp)))
        rep.add(f"slicing/{name}", vals[0], vals[1], (vals[0] - vals[1]).is_zero())
    return rep


def suite_cut(rd: RibbonDatum, labels: dict, corpus=None, **_) -> Report:
    rep = Report("cut")
    for name in corpus or cut_corpus():
        L = link(name)
        vals = {}
        for i in L.component_indices:
            if rd.is_typical(rd.label(labels[i])):
                vals[i] = F_prime(rd, labels, L, i).value
        if not vals:
            continue
        ks = sorted(vals)
        for i in ks[1:]:
            rep.add(f"cut/{name}/{ks[0]}vs{i}", vals[ks[0]], vals[i], (vals[ks[0]] - vals[i]).is_zero())
    return rep


def suite_fourT(rd: RibbonDatum, labels: dict, max_order: int = 4, **_) -> Report:
    rep = Report("fourT")
    ca = ColorAssignment(rd.algebra_id, labels)
    F = ClassicalFunctor(ca)
    skeletons = [interval(), interval(1)]
    for s in skeletons:
        top = max_order if len(s.components) == 1 else min(max_order, 3)
        for m in range(2, top + 1):
            for k, combo in enumerate(four_term_combinations(s, m)):
                x = weight_of_combination(ca, combo, F)
                rep.add(f"fourT/{s}/m{m}/{k:04d}", x, 0, x.is_zero())
    return rep


def singular_corpus(k: int, count: int = 5) -> list:
    """``count`` distinct k-singular links with framing 0 (distinct as words)."""
    out = []
    seen = set()
    for s in (circle(1), circle(2), circle(3)):
        for d in enumerate_diagrams(s, k):
            for v in (0, 1, 2):
                t = make_singular_representative(d, v)
                if t.word() in seen:
                    continue
                seen.add(t.word())
                out.append(t)
                if len(out) >= count:
                    return out
    return out


def suite_vanish(rd: RibbonDatum, labels: dict, max_order: int = 3, **_) -> Report:
    """Type-m vanishing: the h^m coefficient vanishes with m+1 double points."""
    rep = Report("vanish")
    for m in range(max_order + 1):
        for k, t in enumerate(singular_corpus(m + 1)):
            x = vassiliev_coefficient(rd, labels, m, t, 1)
            rep.add(f"vanish/m{m}/{k}/{t.name}", x, 0, x.is_zero())
    return rep


def match_corpus(max_order: int) -> list:
    out = []
    for s in (circle(1), circle(2)):
        for m in range(max_order + 1):
            out += enumerate_diagrams(s, m)
    return out


def suite_match(rd: RibbonDatum, labels: dict, max_order: int = 3, **_) -> Report:
    from .quantum.invariants import canonicality_report

    ca = ColorAssignment(rd.algebra_id, {1: labels[1], 2: labels.get(2, labels[1])})
    rep = Report("match")
    rep.extend(canonicality_report(rd, ca, match_corpus(max_order), max_order))
    return rep


def suite_qdim(rd: RibbonDatum, labels: dict, corpus=None, **_) -> Report:
    """Quantum dimensions, and F on closed links with at least one typical color."""
    rep = Report("qdim")
    upward = SlicedTangle((), [cup(0, -1, 1), cap(0)])
    for k in sorted(labels):
        a = labels[k]
        q = qdim(rd, a)
        lab = rd.label(a)
        # other orientation of the unknot, and the pivot supertrace
        alt = rd.functor({1: a}).scalar(upward)
        par = rd.parity(lab)
        tr = rd.zero
        for g, p in zip(rd.pivot(lab), par):
            tr = tr - g if p else tr + g
        rep.add(f"qdim/{a}/orientation", q, alt, (q - alt).is_zero())
        rep.add(f"qdim/{a}/supertrace", q, tr, (q - tr).is_zero())
        if rd.algebra_id == "gl11":
            rep.add(f"qdim/{a}/zero", q, 0, q.is_zero())
        else:
            c0 = coefficient(q, 0)
            dim = rd.dim(lab)
            rep.add(f"qdim/{a}/h0", c0, dim, (c0 - dim).is_zero())
    if rd.algebra_id == "gl11":
        first = labels[min(labels)]
        mixed = {c: (first if c == 1 else 0) for c in labels}
        for name in corpus or closed_corpus():
            L = link(name)
            for tag, cols in (("generic", labels), ("one-typical", mixed)):
                if tag == "one-typical" and len(L.components) == 1:
                    continue
                x = closed_value(rd, cols, L)
                rep.add(f"vanishF/{name}/{tag}", x, 0, x.is_zero())
    return rep


_RUNNERS = {
    "ybe": suite_ybe,
    "moves": suite_moves,
    "cut": suite_cut,
    "fourT": suite_fourT,
    "vanish": suite_vanish,
    "match": suite_match,
    "qdim": suite_qdim,
}


def run_suite(name: str, rd: RibbonDatum, labels: dict | None = None, **options) -> Report:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    labels = labels or default_labels(rd.algebra_id)
    return _RUNNERS[name](rd, labels, **options)
