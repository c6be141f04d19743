import itertools

import pytest
import sympy

import superlinks.weightsys as ws
from superlinks.chords import ChordDiagram, circle, cut_diagram, enumerate_diagrams, four_term_combinations, interval
from superlinks.scalars import RatFunc, parse_ratfunc
from superlinks.tangles.sliced import SlicedTangle, cross
from superlinks.weightsys import (ClassicalFunctor, ColorAssignment, SimplicityError, evaluate_G,
                                  matrix_of, w_prime, weight_of_combination, what_W)

A = sympy.Symbol("a")
a = RatFunc.param("a")


# ---- oracle: U(g) words evaluated by hand-written matrices -------------------------------

def _gl11():
    # V(a) on C^{1|1}: the Kac module with highest weight (2a, 0)
    mats = [sympy.Matrix([[2 * A, 0], [0, 2 * A - 1]]), sympy.Matrix([[0, 0], [0, 1]]),
            sympy.Matrix([[0, 2 * A], [0, 0]]), sympy.Matrix([[0, 0], [1, 0]])]
    parity = [0, 0, 1, 1]
    # inverse of the supertrace Gram matrix on E11 E22 E12 E21
    omega = {(0, 0): 1, (1, 1): -1, (2, 3): -1, (3, 2): 1}
    return mats, parity, omega


def _sl2():
    mats = [sympy.Matrix([[0, 1], [0, 0]]), sympy.Matrix([[0, 0], [1, 0]]), sympy.Matrix([[1, 0], [0, -1]])]
    return mats, [0, 0, 0], {(0, 1): 1, (1, 0): 1, (2, 2): sympy.Rational(1, 2)}


def _koszul(par_seq, perm):
    """Sign of reordering odd factors from chord order into ``perm`` order."""
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and par_seq[perm[i]] and par_seq[perm[j]]:
                s = -s
    return s


def oracle_what_W(word, algebra):
    """Sum over Omega terms per chord, reorder the tensor factors from
    (chord 1 left, chord 1 right, chord 2 left, ...) into the order of the
    points on the strand, multiply the actions, read off the scalar."""
    mats, parity, omega = _gl11() if algebra == "gl11" else _sl2()
    labels = []
    for x in word:
        if x not in labels:
            labels.append(x)
    # slot of each point in chord order
    slot = []
    seen = {}
    for x in word:
        k = labels.index(x)
        slot.append(2 * k + seen.get(x, 0))
        seen[x] = 1
    total = sympy.zeros(2, 2)
    for choice in itertools.product(omega.items(), repeat=len(labels)):
        seq = []
        coef = 1
        for (i, j), c in choice:
            seq += [i, j]
            coef *= c
        par = [parity[x] for x in seq]
        sign = _koszul(par, slot)
        M = sympy.eye(2)
        for s in slot:
            M = M * mats[seq[s]]  # the word x_{p1} x_{p2} ... read along the strand
        total += sign * coef * M
    total = total.applyfunc(sympy.factor)
    assert total[0, 1] == 0 and total[1, 0] == 0 and sympy.simplify(total[0, 0] - total[1, 1]) == 0
    return sympy.factor(total[0, 0])


def _as_sympy(x: RatFunc):
    return sympy.factor(sympy.sympify(str(x).replace("^", "**"), locals={"a": A}))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("algebra", ["gl11", "sl2"])
def test_what_W_matches_index_sum_oracle(algebra, m):
    ca = ColorAssignment(algebra, {1: "a" if algebra == "gl11" else 1})
    for d in enumerate_diagrams(interval(), m):
        got = _as_sympy(what_W(ca, d))
        want = oracle_what_W(d.word(1), algebra)
        assert sympy.simplify(got - want) == 0, str(d)


def test_empty_is_identity():
    ca = ColorAssignment("gl11", {1: "a"})
    (d,) = enumerate_diagrams(interval(), 0)
    G = evaluate_G(ca, d)
    assert matrix_of(G, [2]) == [[RatFunc.const(1), RatFunc.const(0)], [RatFunc.const(0), RatFunc.const(1)]]
    assert what_W(ca, d) == 1


def test_self_chord_casimir():
    (d,) = enumerate_diagrams(interval(), 1)
    assert what_W(ColorAssignment("gl11", {1: "a"}), d) == 4 * a * a - 2 * a
    assert what_W(ColorAssignment("sl2", {1: 1}), d) == parse_ratfunc("3/2")


def test_two_strand_chord():
    ca = ColorAssignment("gl11", {1: "a", 2: "b"})
    F = ClassicalFunctor(ca)
    t = SlicedTangle(((1, 1), (1, 2)), [cross(0, 0)])
    M = matrix_of(F.evaluate(t), [2, 2])
    assert len(M) == 4
    assert any(not M[i][j].is_zero() for i in range(4) for j in range(4) if i != j)
    # closing both strands: the supertrace vanishes
    d = ChordDiagram(circle(2), ((0,), (0,)))
    assert weight_of_combination(ca, _single(d)).is_zero()


def _single(d):
    from superlinks.chords import DiagramCombination

    c = DiagramCombination(d.skeleton)
    c.add(d, 1)
    return c


@pytest.mark.parametrize("algebra,label", [("gl11", "a"), ("sl2", 1), ("sl2", 2)])
def test_four_term_vanishing(algebra, label):
    ca = ColorAssignment(algebra, {1: label, 2: label if algebra == "sl2" else "b"})
    F = ClassicalFunctor(ca)
    for s in (interval(), interval(1)):
        for m in (2, 3):
            for combo in four_term_combinations(s, m):
                assert weight_of_combination(ca, combo, F).is_zero()


def test_basepoint_independence():
    ca = ColorAssignment("gl11", {1: "a", 2: "b"})
    for s in (circle(1), circle(2)):
        for m in range(4):
            for d in enumerate_diagrams(s, m):
                for i in s.indices:
                    n = len(d.word(i))
                    vals = {str(what_W(ca, cut_diagram(d, i, b))) for b in range(max(n, 1))}
                    assert len(vals) == 1, str(d)


def test_w_prime_examples(gl11):
    ca = ColorAssignment("gl11", {1: "a", 2: "b"})
    (empty,) = enumerate_diagrams(circle(1), 0)
    assert w_prime(ca, empty, 1, gl11) == 1 / (2 * a)
    for m in range(3):
        for d in enumerate_diagrams(circle(2), m):
            assert w_prime(ca, d, 1, gl11) == w_prime(ca, d, 2, gl11), str(d)
    five = gl11.with_normalization(5)
    d = enumerate_diagrams(circle(2), 2)[3]
    assert w_prime(ca, d, 1, five) == 5 * w_prime(ca, d, 1, gl11)


def test_w_prime_atypical():
    ca = ColorAssignment("gl11", {1: 0})
    with pytest.raises(ValueError, match="atypical"):
        w_prime(ca, enumerate_diagrams(circle(1), 1)[0], 1)


def test_non_simple_module_is_refused(monkeypatch):
    real = ws.omega_on

    def diagonal_only(g, r1, r2):
        om = real(g, r1, r2)
        return {s: {d: c for d, c in row.items() if d == s} for s, row in om.items()}

    monkeypatch.setattr(ws, "omega_on", diagonal_only)
    (d,) = enumerate_diagrams(interval(), 1)
    with pytest.raises(SimplicityError):
        what_W(ColorAssignment("gl11", {1: "a"}), d)


def test_what_W_needs_one_one():
    with pytest.raises(ValueError):
        what_W(ColorAssignment("gl11", {1: "a"}), enumerate_diagrams(circle(1), 1)[0])
