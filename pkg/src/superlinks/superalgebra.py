"""
Finite-dimensional Lie superalgebras, their modules and the Casimir 2-tensor.

Structure constants and the invariant form are exact rationals; action
matrices of a module family may depend on one color parameter and are stored
as :class:`~superlinks.scalars.RatFunc` entries.

Algebra plugin files are line oriented::

    algebra gl11
    rank 1
    odd_positive_roots 1
    basis E11 E22 E12 E21
    parity 0 0 1 1
    bracket E12 E21 = E11 + E22      # unlisted reversed pairs follow by antisymmetry
    form                              # B(x_i, x_j), one row per line
      1 0 0 0
      ...
    end
    family V a                        # module family with parameter slot `a`
    module_parity 0 1
    action E11                        # one matrix block per basis element
      2*a 0
      0 2*a-1
    end
    typical a != 0                    # generic values are typical

``family V builtin sl2`` selects a family generated in Python instead.
``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping, Sequence

from .scalars import ZERO, RatFunc, parse_ratfunc

__all__ = [
    "SuperVectorSpace",
    "LieSuperalgebraDatum",
    "CasimirTensor",
    "RepresentationDatum",
    "AlgebraError",
    "JacobiReport",
    "load_algebra",
    "bundled_algebra",
    "check_super_jacobi",
    "check_form",
    "casimir_two_tensor",
    "representation",
    "is_typical",
    "check_homomorphism",
    "check_casimir_invariance",
    "casimir_operator",
    "super_dimension",
    "normalize_label",
]


class AlgebraError(ValueError):
    """Invalid algebra data, label or plugin text."""


@dataclass(frozen=True)
class SuperVectorSpace:
    dim: int
    parity: tuple

    def __post_init__(self):
        if self.dim < 1 or len(self.parity) != self.dim:
            raise AlgebraError(f"bad super vector space: dim={self.dim}, parity={self.parity}")
        if any(p not in (0, 1) for p in self.parity):
            raise AlgebraError("parities must be 0 or 1")

    @property
    def super_dim(self) -> int:
        return sum(1 if p == 0 else -1 for p in self.parity)


Matrix = list  # list of rows of RatFunc


@dataclass
class RepresentationDatum:
    algebra_id: str
    label: object
    space: SuperVectorSpace
    action: dict  # basis name -> Matrix
    typical: bool

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parity(self) -> tuple:
        return self.space.parity


@dataclass
class _Family:
    name: str
    param: str | None
    parity: tuple = ()
    action_text: dict = field(default_factory=dict)
    typical_expr: str | None = None
    builtin: str | None = None


@dataclass
class LieSuperalgebraDatum:
    id: str
    basis: tuple
    parity: tuple
    brackets: dict  # (i, j) -> {k: Fraction}
    form: list  # Fraction matrix
    rank: int = 1
    odd_positive_roots: int = 0
    family: _Family | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, name: str) -> int:
        try:
            return self.basis.index(name)
        except ValueError:
            raise AlgebraError(f"{self.id}: unknown basis element {name!r}") from None

    def bracket(self, i: int, j: int) -> dict:
        return self.brackets.get((i, j), {})

    def with_constant(self, i: int, j: int, k: int, value) -> "LieSuperalgebraDatum":
        """Copy with one structure constant c_{ij}^k replaced (for negative tests)."""
        br = {key: dict(v) for key, v in self.brackets.items()}
        br.setdefault((i, j), {})[k] = Fraction(value)
        return LieSuperalgebraDatum(self.id, self.basis, self.parity, br, self.form,
                                    self.rank, self.odd_positive_roots, self.family)


# ---------------------------------------------------------------------------
# plugin parsing

def load_algebra(text: str) -> LieSuperalgebraDatum:
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((n, line))
    meta: dict = {}
    basis: list = []
    parity: list = []
    bracket_lines: list = []
    form: list = []
    family: _Family | None = None
    it = iter(lines)

    def block(start_line):
        rows = []
        for n, line in it:
            if line == "end":
                return rows
            rows.append((n, line.split()))
        raise AlgebraError(f"line {start_line}: block not closed by 'end'")

    for n, line in it:
        words = line.split()
        key = words[0]
        try:
            if key in ("algebra", "rank", "odd_positive_roots"):
                meta[key] = words[1]
            elif key == "basis":
                basis = words[1:]
            elif key == "parity":
                parity = [int(w) for w in words[1:]]
            elif key == "bracket":
                bracket_lines.append((n, line[len("bracket"):].strip()))
            elif key == "form":
                form = [[Fraction(w) for w in row] for _, row in block(n)]
            elif key == "family":
                if len(words) >= 3 and words[2] == "builtin":
                    family = _Family(words[1], None, builtin=words[3])
                else:
                    family = _Family(words[1], words[2] if len(words) > 2 else None)
            elif key == "module_parity":
                _need(family, n).parity = tuple(int(w) for w in words[1:])
            elif key == "action":
                rows = block(n)
                _need(family, n).action_text[words[1]] = [row for _, row in rows]
            elif key == "typical":
                _need(family, n).typical_expr = line[len("typical"):].strip()
            else:
                raise AlgebraError(f"unknown keyword {key!r}")
        except AlgebraError as exc:
            if str(exc).startswith("line "):
                raise
            raise AlgebraError(f"line {n}: {exc}") from None
        except (ValueError, IndexError) as exc:
            raise AlgebraError(f"line {n}: {exc}") from None
    if "algebra" not in meta or not basis:
        raise AlgebraError("plugin needs 'algebra' and 'basis' lines")
    if len(parity) != len(basis):
        raise AlgebraError("parity vector length differs from basis size")
    names = tuple(basis)
    brackets: dict = {}
    for n, body in bracket_lines:
        m = re.fullmatch(r"(\w+)\s+(\w+)\s*=\s*(.+)", body)
        if not m:
            raise AlgebraError(f"line {n}: expected 'bracket X Y = combination'")
        i, j = names.index(m.group(1)), names.index(m.group(2))
        brackets[(i, j)] = _linear_combination(m.group(3), names, n)
    for (i, j), val in list(brackets.items()):
        if (j, i) not in brackets:
            s = -1 if parity[i] * parity[j] == 0 else 1
            brackets[(j, i)] = {k: s * c for k, c in val.items()}
    if len(form) != len(names) or any(len(r) != len(names) for r in form):
        raise AlgebraError("form must be a square matrix of basis size")
    g = LieSuperalgebraDatum(meta["algebra"], names, tuple(parity), brackets, form,
                             int(meta.get("rank", 1)), int(meta.get("odd_positive_roots", 0)),
                             family)
    if family is not None and family.builtin is None:
        for x in family.action_text:
            g.index(x)
        missing = [x for x in names if x not in family.action_text]
        if missing:
            raise AlgebraError(f"family {family.name}: no action block for {missing}")
    return g


def _need(family, n):
    if family is None:
        raise AlgebraError(f"line {n}: module data before any 'family' line")
    return family


def _linear_combination(text: str, names: Sequence[str], n: int) -> dict:
    out: dict = {}
    text = text.replace(" ", "")
    if text == "0":
        return out
    for sign, coeff, name in re.findall(r"([+-]?)(\d+(?:/\d+)?\*?)?([A-Za-z]\w*)", text):
        c = Fraction(coeff.rstrip("*")) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        if name not in names:
            raise AlgebraError(f"line {n}: unknown basis element {name!r}")
        k = names.index(name)
        out[k] = out.get(k, Fraction(0)) + c
    return {k: c for k, c in out.items() if c}


_BUNDLED = {"gl11": "gl11.algebra", "sl2": "sl2.algebra"}
_cache: dict = {}


def bundled_algebra(name: str) -> LieSuperalgebraDatum:
    if name not in _BUNDLED:
        raise AlgebraError(f"unknown algebra {name!r}; bundled: {sorted(_BUNDLED)}")
    if name not in _cache:
        text = resources.files("superlinks.data").joinpath(_BUNDLED[name]).read_text()
        _cache[name] = load_algebra(text)
    return _cache[name]


# ---------------------------------------------------------------------------
# structural checks

@dataclass
class JacobiReport:
    checked: int
    failures: list  # (x, y, z, nonzero combination)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.passed:
            return f"super-Jacobi: {self.checked} triples PASS"
        x, y, z, v = self.failures[0]
        return f"super-Jacobi: {len(self.failures)}/{self.checked} triples FAIL, first ({x},{y},{z}) -> {v}"


def _br(g, u: dict, v: dict) -> dict:
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in g.bracket(i, j).items():
                out[k] = out.get(k, 0) + a * b * c
    return {k: c for k, c in out.items() if c}


def check_super_jacobi(g: LieSuperalgebraDatum) -> JacobiReport:
    """Koszul-signed Jacobi sum and super-antisymmetry on all basis triples."""
    p = g.parity
    failures = []
    n = g.dim
    for i in range(n):
        for j in range(n):
            # antisymmetry and grading, reported as the triple (i, j, -)
            lhs = g.bracket(i, j)
            rhs = {k: -(-1) ** (p[i] * p[j]) * c for k, c in g.bracket(j, i).items()}
            diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
            diff = {k: c for k, c in diff.items() if c}
            bad_grade = any(p[k] != (p[i] + p[j]) % 2 for k in lhs)
            if diff or bad_grade:
                failures.append((g.basis[i], g.basis[j], "-", diff or "grading"))
    count = n * n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                count += 1
                ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
                t1 = _br(g, ei, _br(g, ej, ek))
                t2 = _br(g, _br(g, ei, ej), ek)
                t3 = _br(g, ej, _br(g, ei, ek))
                s = (-1) ** (p[i] * p[j])
                tot: dict = {}
                for key in set(t1) | set(t2) | set(t3):
                    tot[key] = t1.get(key, 0) - t2.get(key, 0) - s * t3.get(key, 0)
                tot = {key: c for key, c in tot.items() if c}
                if tot:
                    failures.append((g.basis[i], g.basis[j], g.basis[k],
                                     {g.basis[q]: str(c) for q, c in tot.items()}))
    return JacobiReport(count, failures)


def check_form(g: LieSuperalgebraDatum) -> list:
    """Failures of evenness, supersymmetry and invariance of B (empty if fine)."""
    B, p, n = g.form, g.parity, g.dim
    bad = []
    for i in range(n):
        for j in range(n):
            if B[i][j] and p[i] != p[j]:
                bad.append(("even", g.basis[i], g.basis[j]))
            if B[j][i] != (-1) ** (p[i] * p[j]) * B[i][j]:
                bad.append(("supersymmetric", g.basis[i], g.basis[j]))
            for k in range(n):
                lhs = sum(c * B[m][k] for m, c in g.bracket(i, j).items())
                rhs = sum(c * B[i][m] for m, c in g.bracket(j, k).items())
                if lhs != rhs:
                    bad.append(("invariant", g.basis[i], g.basis[j], g.basis[k]))
    return bad


@dataclass(frozen=True)
class CasimirTensor:
    """Omega = sum_{ij} coeff[i][j] x_i (x) x_j."""

    algebra_id: str
    coeff: tuple

    def terms(self):
        for i, row in enumerate(self.coeff):
            for j, c in enumerate(row):
                if c:
                    yield i, j, c


def _invert(M: list) -> list:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise AlgebraError("invariant form is degenerate")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def casimir_two_tensor(g: LieSuperalgebraDatum) -> CasimirTensor:
    """Omega = sum_i x_i (x) x^i with dual basis B(x^i, x_j) = delta_ij."""
    inv = _invert(g.form)
    return CasimirTensor(g.id, tuple(tuple(row) for row in inv))


# ---------------------------------------------------------------------------
# modules

def normalize_label(g: LieSuperalgebraDatum, label):
    """Canonical label: int for sl2, RatFunc for one-parameter families."""
    fam = g.family
    if fam is None:
        raise AlgebraError(f"{g.id} has no module family")
    if fam.builtin == "sl2":
        try:
            n = int(label)
        except (TypeError, ValueError):
            raise AlgebraError(f"sl2 label must be a non-negative integer, got {label!r}") from None
        if n < 0 or str(label).strip() not in (str(n), f"{n}"):
            raise AlgebraError(f"sl2 label must be a non-negative integer, got {label!r}")
        return n
    if isinstance(label, RatFunc):
        return label
    if isinstance(label, (int, Fraction)):
        return RatFunc.const(label)
    if isinstance(label, str):
        try:
            return parse_ratfunc(label)
        except ValueError as exc:
            raise AlgebraError(f"bad color label {label!r}: {exc}") from None
    raise AlgebraError(f"bad color label {label!r}")


def _sl2_irrep(n: int) -> tuple:
    d = n + 1
    z = [[ZERO] * d for _ in range(d)]
    e = [row[:] for row in z]
    f = [row[:] for row in z]
    hh = [row[:] for row in z]
    for j in range(d):
        hh[j][j] = RatFunc.const(n - 2 * j)
        if j + 1 < d:
            f[j + 1][j] = RatFunc.const(j + 1)
        if j >= 1:
            e[j - 1][j] = RatFunc.const(n - j + 1)
    return (0,) * d, {"e": e, "f": f, "h": hh}


def representation(g: LieSuperalgebraDatum, label) -> RepresentationDatum:
    a = normalize_label(g, label)
    fam = g.family
    if fam.builtin == "sl2":
        par, act = _sl2_irrep(a)
        return RepresentationDatum(g.id, a, SuperVectorSpace(len(par), par), act, True)
    if fam.builtin is not None:
        raise AlgebraError(f"unknown builtin family {fam.builtin!r}")
    subst = {fam.param: a} if fam.param else {}
    act = {}
    for x, rows in fam.action_text.items():
        act[x] = [[_eval_entry(w, subst) for w in row] for row in rows]
    space = SuperVectorSpace(len(fam.parity), fam.parity)
    return RepresentationDatum(g.id, a, space, act, is_typical(g, a))


def _eval_entry(text: str, subst: Mapping) -> RatFunc:
    return parse_ratfunc(text, bindings=subst)


def is_typical(g: LieSuperalgebraDatum, label) -> bool:
    a = normalize_label(g, label)
    fam = g.family
    if fam.builtin == "sl2" or fam.typical_expr is None:
        return True
    m = re.fullmatch(r"(.+?)\s*!=\s*0", fam.typical_expr)
    if not m:
        raise AlgebraError(f"unsupported typicality condition {fam.typical_expr!r}")
    cond = _eval_entry(m.group(1), {fam.param: a})
    # a symbolic color is generic, hence typical unless the condition vanishes identically
    return not cond.is_zero()


def super_dimension(rep: RepresentationDatum) -> int:
    return rep.space.super_dim


# ---------------------------------------------------------------------------
# matrix helpers over RatFunc

def _mat_mul(A, B):
    n, m, k = len(A), len(B), len(B[0]) if B else 0
    out = [[ZERO] * k for _ in range(n)]
    for i in range(n):
        for t in range(m):
            a = A[i][t]
            if a.is_zero():
                continue
            row = B[t]
            for j in range(k):
                if not row[j].is_zero():
                    out[i][j] = out[i][j] + a * row[j]
    return out


def _mat_lin(terms, dim):
    out = [[ZERO] * dim for _ in range(dim)]
    for c, M in terms:
        for i in range(dim):
            for j in range(dim):
                if not M[i][j].is_zero():
                    out[i][j] = out[i][j] + M[i][j] * c
    return out


def _mat_eq(A, B) -> bool:
    return all((a - b).is_zero() for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def check_homomorphism(g: LieSuperalgebraDatum, rep: RepresentationDatum) -> list:
    """Basis pairs where rho([x,y]) != rho(x)rho(y) - (-1)^{|x||y|} rho(y)rho(x),
    plus any action matrix that is not parity homogeneous."""
    bad = []
    p, mp = g.parity, rep.parity
    mats = [rep.action[x] for x in g.basis]
    for i, M in enumerate(mats):
        for r in range(rep.dim):
            for c in range(rep.dim):
                if not M[r][c].is_zero() and (mp[r] + mp[c]) % 2 != p[i]:
                    bad.append(("parity", g.basis[i], r, c))
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = _mat_lin([(c, mats[k]) for k, c in g.bracket(i, j).items()], rep.dim)
            s = -(-1) ** (p[i] * p[j])
            rhs = _mat_lin([(1, _mat_mul(mats[i], mats[j])), (s, _mat_mul(mats[j], mats[i]))], rep.dim)
            if not _mat_eq(lhs, rhs):
                bad.append((g.basis[i], g.basis[j]))
    return bad


def casimir_operator(g: LieSuperalgebraDatum, rep: RepresentationDatum) -> Matrix:
    """m o (rho (x) rho)(Omega) on one module."""
    om = casimir_two_tensor(g)
    terms = [(c, _mat_mul(rep.action[g.basis[i]], rep.action[g.basis[j]])) for i, j, c in om.terms()]
    return _mat_lin(terms, rep.dim)


def omega_on(g: LieSuperalgebraDatum, r1: RepresentationDatum, r2: RepresentationDatum) -> dict:
    """(rho1 (x) rho2)(Omega) as a sparse map ``(i, j) -> {(k, l): coeff}``,
    with the Koszul sign (x (x) y)(v (x) w) = (-1)^{|y||v|} xv (x) yw."""
    om = casimir_two_tensor(g)
    out: dict = {}
    for a, b, c in om.terms():
        X = r1.action[g.basis[a]]
        Y = r2.action[g.basis[b]]
        pb = g.parity[b]
        for i in range(r1.dim):
            for j in range(r2.dim):
                sgn = -1 if pb and r1.parity[i] else 1
                for k in range(r1.dim):
                    if X[k][i].is_zero():
                        continue
                    for l in range(r2.dim):
                        if Y[l][j].is_zero():
                            continue
                        key = (k, l)
                        row = out.setdefault((i, j), {})
                        row[key] = row.get(key, ZERO) + X[k][i] * Y[l][j] * (c * sgn)
    return {s: {d: v for d, v in row.items() if not v.is_zero()} for s, row in out.items()}


def check_casimir_invariance(g: LieSuperalgebraDatum, r1: RepresentationDatum,
                             r2: RepresentationDatum) -> list:
    """Basis elements x for which (rho1 (x) rho2)(Omega) fails to supercommute
    with Delta(x) = x (x) 1 + 1 (x) x. Omega is even, so supercommuting means commuting."""
    om = omega_on(g, r1, r2)
    n1, n2 = r1.dim, r2.dim
    states = [(i, j) for i in range(n1) for j in range(n2)]

    def omega_mat():
        M = {s: dict(row) for s, row in om.items()}
        return M

    def delta(x):
        X1, X2 = r1.action[x], r2.action[x]
        px = g.parity[g.index(x)]
        M: dict = {}
        for i, j in states:
            row = M.setdefault((i, j), {})
            for k in range(n1):
                if not X1[k][i].is_zero():
                    row[(k, j)] = row.get((k, j), ZERO) + X1[k][i]
            sgn = -1 if px and r1.parity[i] else 1
            for l in range(n2):
                if not X2[l][j].is_zero():
                    row[(i, l)] = row.get((i, l), ZERO) + X2[l][j] * sgn
        return M

    def compose(A, B):  # B after A
        out: dict = {}
        for s, row in A.items():
            acc: dict = {}
            for mid, c in row.items():
                for d, w in B.get(mid, {}).items():
                    acc[d] = acc.get(d, ZERO) + c * w
            out[s] = {d: v for d, v in acc.items() if not v.is_zero()}
        return out

    bad = []
    O = omega_mat()
    for x in g.basis:
        D = delta(x)
        A = compose(D, O)
        B = compose(O, D)
        for s in states:
            ra, rb = A.get(s, {}), B.get(s, {})
            if any(not (ra.get(k, ZERO) - rb.get(k, ZERO)).is_zero() for k in set(ra) | set(rb)):
                bad.append(x)
                break
    return bad
