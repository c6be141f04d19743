"""Acceptance criteria 1-9. Each test records one line; the lines are printed
together at the end of the pytest run (see conftest.py)."""

import time
from collections import Counter

import pytest
import sympy

from superlinks.quantum.invariants import F_prime, modified_dim, qdim
from superlinks.quantum.ribbon import bundled_ribbon
from superlinks.scalars import coefficient, series_inv
from superlinks.suites import run_suite, singular_corpus
from superlinks.tangles.corpus import closed_corpus, link

RESULTS: dict = {}


def record(n, title, ok, detail, started, budget):
    took = time.perf_counter() - started
    note = "" if took <= budget else f", over the {budget} s budget"
    RESULTS[n] = f"CRITERION {n} {'PASS' if ok else 'FAIL'}: {title} ({detail}; {took:.1f} s{note})"
    assert ok, RESULTS[n]


@pytest.fixture(scope="module")
def rds():
    return {"gl11": bundled_ribbon("gl11"), "sl2": bundled_ribbon("sl2")}


def test_criterion_1_yang_baxter(rds):
    t0 = time.perf_counter()
    ok, n = True, 0
    for alg, rd in rds.items():
        rep = run_suite("ybe", rd)
        cases = [c for c in rep.cases if c.id.startswith("ybe/")]
        n += len(cases)
        ok &= bool(cases) and all(c.passed for c in cases) and rd.trunc_order == 8
    record(1, "Yang-Baxter exact to h^8, gl11 (a,b,c) and sl2", ok, f"{n} full triple-product checks", t0, 10)


def test_criterion_2_moves(rds):
    t0 = time.perf_counter()
    rep = run_suite("moves", rds["gl11"])
    pairs = [c for c in rep.cases if c.id.startswith(("move/", "framing/"))]
    kinds = {c.id.split("/")[1] for c in pairs if c.id.startswith("move/")}
    ok = (len(pairs) >= 30 and all(c.passed for c in pairs)
          and {"R2", "R3", "slide", "curl"} <= kinds and any(c.id.startswith("framing/") for c in pairs))
    record(2, "evaluate_F equal on move-related pairs", ok, f"{len(pairs)} pairs, moves {sorted(kinds)}",
           t0, 30)


def test_criterion_3_zero_quantum_dimension(rds):
    t0 = time.perf_counter()
    rd = rds["gl11"]
    ok = all(qdim(rd, x).is_zero() for x in ("a", "b", "7/3"))
    rep = run_suite("qdim", rd)
    vanish = [c for c in rep.cases if c.id.startswith("vanishF/")]
    names = {c.id.split("/")[1] for c in vanish}
    ok &= names == set(closed_corpus()) and len(names) == 10 and all(c.passed for c in vanish)
    record(3, "qdim(V(a)) = 0 and F = 0 on 10 closed links with a typical color", ok,
           f"{len(vanish)} link colorings", t0, 30)


def test_criterion_4_cut_independence(rds):
    t0 = time.perf_counter()
    rep = run_suite("cut", rds["gl11"])
    names = {c.id.split("/")[1] for c in rep.cases}
    ok = {"hopf", "torus24", "chain3"} <= names and rep.passed
    record(4, "F' independent of the typical cut", ok, f"{len(rep.cases)} cut pairs on {len(names)} links",
           t0, 60)


def test_criterion_5_vassiliev_vanishing(rds):
    t0 = time.perf_counter()
    ok = True
    for m in range(4):
        links = singular_corpus(m + 1, count=5)
        ok &= len(links) == 5 and len({t.word() for t in links}) == 5
        ok &= all(len(t.double_points) == m + 1 and all(f % 2 == 0 for f in t.framings().values())
                  for t in links)
    rep = run_suite("vanish", rds["gl11"], max_order=3)
    per_m = Counter(c.id.split("/")[1] for c in rep.cases)
    ok &= rep.passed and all(per_m[f"m{m}"] >= 5 for m in range(4))
    record(5, "order-m coefficient vanishes with m+1 double points, m = 0..3", ok,
           f"{sum(per_m.values())} links", t0, 60)


def test_criterion_6_weight_system_match(rds):
    t0 = time.perf_counter()
    ok, n = True, 0
    for alg, rd in rds.items():
        rep = run_suite("match", rd, max_order=3)
        cases = [c for c in rep.cases if c.id.startswith("match/")]
        reps = Counter(c.id.rsplit("/", 1)[0] for c in cases)
        ok &= rep.passed and min(reps.values()) >= 2
        ok &= {c.id.split("/")[1] for c in cases} == {"m0", "m1", "m2", "m3"}
        n += len(cases)
    record(6, "Vassiliev coefficient = w_prime for degree <= 3 on 1 and 2 circles", ok,
           f"{n} cases, >= 2 distinct representatives each", t0, 120)


def test_criterion_7_four_term(rds):
    t0 = time.perf_counter()
    ok, n = True, 0
    for alg, rd in rds.items():
        rep = run_suite("fourT", rd, max_order=4)
        degrees = {c.id.split("/")[2] for c in rep.cases}
        ok &= rep.passed and degrees == {"m2", "m3", "m4"}
        n += len(rep.cases)
    record(7, "what_W kills every 4T relator, degrees 2-4, gl11 and sl2", ok, f"{n} relators", t0, 30)


def _alexander_trefoil():
    """Alexander polynomial from a Seifert matrix of the right-handed trefoil."""
    t = sympy.Symbol("t")
    V = sympy.Matrix([[-1, 1], [0, -1]])
    return t, sympy.expand((V - t * V.T).det())


def test_criterion_8_alexander(rds):
    t0 = time.perf_counter()
    rd = rds["gl11"]
    ratio = F_prime(rd, {1: "a"}, link("trefoil", {1: 0})).value * series_inv(modified_dim(rd, "a"))
    A, h = sympy.symbols("a h")
    ours = sum(sympy.sympify(str(coefficient(ratio, k)).replace("^", "**"), locals={"a": A}) * h ** k
               for k in range(rd.trunc_order))
    t, delta = _alexander_trefoil()
    found = None
    for k in range(-6, 7):
        for sign in (1, -1):
            target = sign * delta * t ** sympy.Rational(k, 2)
            ser = sympy.series(target.subs(t, sympy.exp(2 * A * h)), h, 0, rd.trunc_order).removeO()
            if sympy.expand(ser - ours) == 0:
                found = (sign, k)
    ok = found is not None
    detail = f"Delta = {delta}, match with unit {'-' if ok and found[0] < 0 else ''}t^({sympy.Rational(found[1], 2)})" if ok \
        else f"Delta = {delta}, no unit monomial matches"
    record(8, "F'(trefoil)/F'(unknot) = Alexander polynomial at t = e^(2ah)", ok, detail, t0, 30)


def test_criterion_9_not_reproducible():
    RESULTS[9] = ("CRITERION 9 NOT REPRODUCIBLE: the analytic identity between the quantum (1,1) "
                  "invariant and the weight system composed with the Kontsevich integral needs Z; "
                  "criterion 6 is the combinatorial substitute")
    pytest.skip("explicitly not reproducible: no desk-scale computation of the Kontsevich integral")
