"""
Load-time validation of ribbon data: every axiom is checked as a matrix
identity in the truncated series ring rather than trusted.
"""

from __future__ import annotations

from ..engine import LocalMap, basis_states, compose, first_difference, operator
from ..report import Report
from ..scalars import coefficient
from ..superalgebra import bundled_algebra, omega_on, representation
from ..tangles.sliced import SlicedTangle, curl_slices
from .ribbon import RibbonDatum, flip_first

__all__ = ["check_ybe", "check_inverse", "check_semiclassical", "check_twist",
           "check_zigzag", "validate_datum"]


def _identity(dims, one) -> LocalMap:
    m = LocalMap(len(dims), len(dims))
    for s in basis_states(dims):
        m.add(s, s, one)
    return m


def _diff_text(diff) -> str:
    s, d, x, y = diff
    return f"entry {s}->{d}: {x} vs {y}"


def check_ybe(rd: RibbonDatum, labels: tuple, report: Report | None = None) -> Report:
    """c_{12} c_{23} c_{12} = c_{23} c_{12} c_{23} on V(a) (x) V(b) (x) V(c)."""
    report = report or Report("ybe")
    a, b, c = (rd.label(x) for x in labels)
    F = rd.functor({})
    X = lambda u, v: F.braid_down(u, v, 1)
    dims = [rd.dim(a), rd.dim(b), rd.dim(c)]
    lhs = operator([(X(a, b), 0), (X(a, c), 1), (X(b, c), 0)], dims, rd.one, out_width=3)
    rhs = operator([(X(b, c), 1), (X(a, c), 0), (X(a, b), 1)], dims, rd.one, out_width=3)
    diff = first_difference(lhs, rhs, basis_states(dims))
    cid = f"ybe/{rd.algebra_id}/{a},{b},{c}"
    if diff is None:
        report.add(cid, "c12c23c12", "c23c12c23", True)
    else:
        report.add(cid, "c12c23c12", _diff_text(diff), False)
    return report


def check_inverse(rd: RibbonDatum, labels: tuple, report: Report | None = None) -> Report:
    report = report or Report("inverse")
    a, b = (rd.label(x) for x in labels)
    dims = [rd.dim(a), rd.dim(b)]
    ident = _identity(dims, rd.one)
    for name, first, second in (("R.Rinv", rd.R_inv(a, b), rd.R(a, b)),
                                ("Rinv.R", rd.R(a, b), rd.R_inv(a, b))):
        prod = compose(first, second, rd.zero)
        diff = first_difference(prod, ident, basis_states(dims))
        cid = f"inverse/{rd.algebra_id}/{name}/{a},{b}"
        report.add(cid, name, "Id" if diff is None else _diff_text(diff), diff is None)
    return report


def check_semiclassical(rd: RibbonDatum, labels: tuple, report: Report | None = None) -> Report:
    """R = Id + h r + O(h^2) with r + r21 = (rho (x) rho)(Omega).

    A triangular R cannot have r itself equal to Omega/2; the symmetric part
    (R + R21)/2 is what the double-point rule sees: X+ - X- = h tau Omega + O(h^2).
    """
    report = report or Report("semiclassical")
    a, b = (rd.label(x) for x in labels)
    g = bundled_algebra(rd.algebra_id)
    om = omega_on(g, representation(g, a), representation(g, b))
    pa, pb = rd.parity(a), rd.parity(b)
    R = rd.R(a, b)
    Rba = rd.R(b, a)
    # R21 = tau o R(b,a) o tau on V(a) (x) V(b)
    tau_ab = flip_first(pa, pb, rd.one)
    R21 = compose(compose(tau_ab, Rba, rd.zero), flip_first(pb, pa, rd.one), rd.zero)
    dims = [rd.dim(a), rd.dim(b)]
    ok = True
    first_bad = ""
    for s in basis_states(dims):
        for dst in basis_states(dims):
            c0 = coefficient(R.entry(s, dst, rd.zero), 0)
            want0 = 1 if s == dst else 0
            if c0 != want0:
                ok = False
                first_bad = first_bad or f"h^0 entry {s}->{dst} = {c0}"
            r1 = coefficient(R.entry(s, dst, rd.zero), 1) + coefficient(R21.entry(s, dst, rd.zero), 1)
            w = om.get(s, {}).get(dst)
            if (r1 - w if w is not None else r1) != 0:
                ok = False
                first_bad = first_bad or f"h^1 entry {s}->{dst}: r+r21 = {r1}, Omega = {w or 0}"
    report.add(f"semiclassical/{rd.algebra_id}/{a},{b}", "r+r21", first_bad or "Omega", ok)
    return report


def check_twist(rd: RibbonDatum, label, report: Report | None = None) -> Report:
    """Left and right curls of each sign and orientation equal theta^{+-1} times Id."""
    report = report or Report("twist")
    a = rd.label(label)
    F = rd.functor({1: a})
    theta = rd.twist(a)
    for eps in (1, -1):
        obj = ((eps, 1),)
        for sign in (1, -1):
            want = theta if sign > 0 else theta ** -1
            for side in ("right", "left"):
                t = SlicedTangle(obj, curl_slices(0, obj, sign, side))
                m = F.evaluate(t)
                ident = _identity([rd.dim(a)], want)
                diff = first_difference(m, ident, basis_states([rd.dim(a)]))
                cid = f"twist/{rd.algebra_id}/{a}/eps{eps:+d}/sign{sign:+d}/{side}"
                report.add(cid, "curl", "theta" if diff is None else _diff_text(diff), diff is None)
    return report


def check_zigzag(rd: RibbonDatum, label, report: Report | None = None) -> Report:
    from ..tangles.sliced import cap, cup

    report = report or Report("zigzag")
    a = rd.label(label)
    F = rd.functor({1: a})
    for eps in (1, -1):
        obj = ((eps, 1),)
        for side, word in (("right", [cup(1, -eps, 1), cap(0)]), ("left", [cup(0, eps, 1), cap(1)])):
            t = SlicedTangle(obj, word)
            m = F.evaluate(t)
            diff = first_difference(m, _identity([rd.dim(a)], rd.one), basis_states([rd.dim(a)]))
            report.add(f"zigzag/{rd.algebra_id}/{a}/eps{eps:+d}/{side}", "snake",
                       "Id" if diff is None else _diff_text(diff), diff is None)
    return report


def validate_datum(rd: RibbonDatum, labels: tuple) -> Report:
    """All load-time axioms on the given labels (at least three)."""
    rep = Report(f"validate {rd.algebra_id}")
    a, b, c = labels[:3]
    check_ybe(rd, (a, b, c), rep)
    for x, y in ((a, b), (b, a), (a, a)):
        check_inverse(rd, (x, y), rep)
        check_semiclassical(rd, (x, y), rep)
    for x in (a, b):
        check_twist(rd, x, rep)
        check_zigzag(rd, x, rep)
    return rep
