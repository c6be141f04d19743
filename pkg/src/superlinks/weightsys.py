"""
The classical functor G on chord diagrams and the weight systems built from it.

G lives in super vector spaces over rational functions of the color
parameters: crossings of either sign are the super flip, the pivot is trivial
(so closing a strand takes the supertrace), and a double point of two
downward strands is ``tau o (rho_a (x) rho_b)(Omega)``. A chord diagram is
evaluated through a singular representative, whose ordinary crossings G does
not see, so the same contraction engine serves both sides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chords import ChordDiagram, DiagramCombination, cut_diagram
from .engine import LocalMap, basis_states
from .functor import NonScalarError, TangleFunctor
from .quantum.ribbon import RibbonDatum, bundled_ribbon, flip_first
from .scalars import RatFunc
from .superalgebra import bundled_algebra, is_typical, normalize_label, omega_on, representation
from .tangles.singular import make_singular_representative

__all__ = [
    "ColorAssignment",
    "ClassicalFunctor",
    "SimplicityError",
    "evaluate_G",
    "what_W",
    "w_prime",
    "weight_of_combination",
    "matrix_of",
]

ONE = RatFunc.const(1)
ZERO = RatFunc.const(0)


class SimplicityError(NonScalarError):
    """G(D) on the open strand is not a multiple of the identity."""


@dataclass
class ColorAssignment:
    """Component index -> module label, all for one algebra."""

    algebra_id: str
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        g = bundled_algebra(self.algebra_id)
        self.labels = {int(c): normalize_label(g, a) for c, a in self.labels.items()}

    def __getitem__(self, comp):
        return self.labels[comp]

    def items(self):
        return self.labels.items()

    def typical(self, comp) -> bool:
        return is_typical(bundled_algebra(self.algebra_id), self.labels[comp])


def _labels(colors) -> dict:
    return colors.labels if isinstance(colors, ColorAssignment) else dict(colors)


def _plain(c: RatFunc):
    """Constants as int/Fraction, which the engine multiplies cheaply."""
    if not c.is_constant():
        return c
    f = c.to_fraction()
    return int(f) if f.denominator == 1 else f


class ClassicalFunctor(TangleFunctor):
    """Scalars are ints, Fractions or RatFuncs; results are coerced to RatFunc."""

    one = 1
    zero = 0

    def __init__(self, colors: ColorAssignment):
        super().__init__(colors.labels)
        self.g = bundled_algebra(colors.algebra_id)
        self._reps: dict = {}

    def rep(self, a):
        key = str(a)
        if key not in self._reps:
            self._reps[key] = representation(self.g, a)
        return self._reps[key]

    def dim(self, a) -> int:
        return self.rep(a).dim

    def parity(self, a) -> tuple:
        return self.rep(a).parity

    def pivot(self, a) -> list:
        return [1] * self.dim(a)

    def pivot_inv(self, a) -> list:
        return [1] * self.dim(a)

    def braid_down(self, a, b, sign: int) -> LocalMap:
        pa, pb = self.parity(a), self.parity(b)
        if sign:
            return flip_first(pa, pb, 1)
        om = omega_on(self.g, self.rep(a), self.rep(b))
        m = LocalMap(2, 2)
        for (i, j), row in om.items():
            for (k, l), c in row.items():
                c = _plain(c)
                m.add((i, j), (l, k), -c if pa[k] and pb[l] else c)
        return m

    def evaluate(self, t) -> LocalMap:
        m = super().evaluate(t)
        out = LocalMap(m.n_in, m.n_out)
        for s, row in m.table.items():
            for d, c in row:
                out.add(s, d, RatFunc.coerce(c))
        return out

    def scalar(self, t) -> RatFunc:
        return RatFunc.coerce(super().scalar(t))

    def endomorphism_scalar(self, t, what: str = "endomorphism") -> RatFunc:
        return RatFunc.coerce(super().endomorphism_scalar(t, what))


def evaluate_G(colors: ColorAssignment, d: ChordDiagram) -> LocalMap:
    """G(d) from the basis states of the top boundary to those of the bottom."""
    F = ClassicalFunctor(colors)
    return F.evaluate(make_singular_representative(d))


def matrix_of(m: LocalMap, dims: list) -> list:
    """Dense matrix ``M[out][in]`` of a map between equal boundaries."""
    states = basis_states(dims)
    idx = {s: k for k, s in enumerate(states)}
    M = [[ZERO] * len(states) for _ in states]
    for s in states:
        for dst, c in m.table.get(s, ()):
            M[idx[dst]][idx[s]] = M[idx[dst]][idx[s]] + c
    return M


def what_W(colors: ColorAssignment, d: ChordDiagram) -> RatFunc:
    """The scalar x with G(d) = x Id on the open strand of a (1,1) diagram."""
    if not d.skeleton.is_one_one:
        raise ValueError("what_W expects a diagram on a (1,1) skeleton")
    F = ClassicalFunctor(colors)
    try:
        return F.endomorphism_scalar(make_singular_representative(d), "what_W")
    except NonScalarError as exc:
        raise SimplicityError(f"{exc}; the open-strand module is not simple") from None


def w_prime(colors: ColorAssignment, d: ChordDiagram, i: int,
            rd: RibbonDatum | None = None, basepoint: int = 0) -> RatFunc:
    """d_0(V_i) * what_W of ``d`` cut open at component i."""
    from .quantum.invariants import d_zero

    rd = rd or bundled_ribbon(colors.algebra_id)
    if not colors.typical(i):
        raise ValueError(f"component {i} is colored by an atypical module")
    return d_zero(rd, colors[i]) * what_W(colors, cut_diagram(d, i, basepoint))


def weight_of_combination(colors: ColorAssignment, combo: DiagramCombination,
                          functor: ClassicalFunctor | None = None) -> RatFunc:
    """Linear extension of what_W (on (1,1) skeletons) or of the closed value.

    Passing one ``functor`` across calls reuses the values of diagrams already seen.
    """
    F = functor or ClassicalFunctor(colors)
    total = ZERO
    for d, c in combo.items():
        total = total + _diagram_value(F, d) * c
    return total


def _diagram_value(F: ClassicalFunctor, d: ChordDiagram) -> RatFunc:
    memo = F._cache.setdefault("diagrams", {})
    if d not in memo:
        t = make_singular_representative(d)
        if d.skeleton.is_one_one:
            memo[d] = F.endomorphism_scalar(t, "what_W")
        elif d.skeleton.is_closed:
            memo[d] = F.scalar(t)
        else:
            raise ValueError("combinations are evaluated on closed or (1,1) skeletons")
    return memo[d]
