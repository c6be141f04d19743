import dataclasses
from fractions import Fraction

import pytest
import sympy

from superlinks.scalars import RatFunc
from superlinks.superalgebra import (AlgebraError, bundled_algebra, casimir_operator, casimir_two_tensor,
                                     check_casimir_invariance, check_form, check_homomorphism,
                                     check_super_jacobi, is_typical, load_algebra, representation,
                                     super_dimension)

GL11 = bundled_algebra("gl11")
SL2 = bundled_algebra("sl2")


def _unit(r, c):
    m = sympy.zeros(2, 2)
    m[r, c] = 1
    return m


def _str(m):
    # supertrace on C^{1|1}, first basis vector even
    return m[0, 0] - m[1, 1]


def test_jacobi_bundled():
    assert check_super_jacobi(SL2).passed
    assert check_super_jacobi(GL11).passed


def test_jacobi_perturbed_names_triple():
    bad = GL11.with_constant(GL11.index("E11"), GL11.index("E12"), GL11.index("E12"), 2)
    rep = check_super_jacobi(bad)
    assert not rep.passed
    assert "E12" in str(rep)


def test_form_axioms():
    assert check_form(GL11) == []
    assert check_form(SL2) == []


def test_gl11_omega_matches_supertrace_oracle():
    # matrix units E11 E22 E12 E21 of gl(1|1); Gram matrix of str(xy), then inverse
    units = [_unit(0, 0), _unit(1, 1), _unit(0, 1), _unit(1, 0)]
    gram = sympy.Matrix(4, 4, lambda i, j: _str(units[i] * units[j]))
    assert gram[2, 3] == 1 and gram[3, 2] == -1
    inv = gram.inv()
    om = casimir_two_tensor(GL11)
    assert [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(4)] == \
        [list(r) for r in om.coeff]
    # odd block: E12 (x) E21 and E21 (x) E12 with opposite signs
    assert om.coeff[2][3] == -om.coeff[3][2] != 0


def test_sl2_omega():
    om = casimir_two_tensor(SL2)
    e, f, h = (SL2.index(x) for x in "efh")
    assert om.coeff[e][f] == om.coeff[f][e] == 1
    assert om.coeff[h][h] == Fraction(1, 2)


def test_omega_super_symmetric():
    for g in (GL11, SL2):
        om = casimir_two_tensor(g).coeff
        for i in range(g.dim):
            for j in range(g.dim):
                assert om[j][i] == (-1) ** (g.parity[i] * g.parity[j]) * om[i][j]


def test_degenerate_form():
    zero = dataclasses.replace(GL11, form=[[0] * 4 for _ in range(4)])
    with pytest.raises(AlgebraError):
        casimir_two_tensor(zero)


def test_gl11_module():
    r = representation(GL11, "a")
    assert r.dim == 2 and r.parity == (0, 1)
    assert super_dimension(r) == 0
    assert check_homomorphism(GL11, r) == []


def test_sl2_defining_module():
    r = representation(SL2, 1)
    assert r.dim == 2
    assert r.action["h"] == [[RatFunc.const(1), RatFunc.const(0)], [RatFunc.const(0), RatFunc.const(-1)]]
    for n in range(4):
        assert check_homomorphism(SL2, representation(SL2, n)) == []


def test_casimir_eigenvalues():
    a = RatFunc.param("a")
    C = casimir_operator(GL11, representation(GL11, "a"))
    assert C[0][0] == C[1][1] == 4 * a * a - 2 * a
    assert C[0][1].is_zero() and C[1][0].is_zero()
    C = casimir_operator(SL2, representation(SL2, 1))
    assert C[0][0] == C[1][1] == Fraction(3, 2)


def test_casimir_invariance():
    assert check_casimir_invariance(GL11, representation(GL11, "a"), representation(GL11, "b")) == []
    assert check_casimir_invariance(SL2, representation(SL2, 1), representation(SL2, 2)) == []


def test_typicality():
    assert is_typical(GL11, "a")
    assert is_typical(GL11, "3/2")
    assert not is_typical(GL11, 0)
    assert all(is_typical(SL2, n) for n in range(4))


def test_unknown_label():
    with pytest.raises(AlgebraError):
        representation(SL2, "x")
    with pytest.raises(AlgebraError):
        bundled_algebra("sl3")


def test_plugin_parse_error():
    with pytest.raises(AlgebraError):
        load_algebra("algebra broken\nbasis x\nparity 0 0\n")
