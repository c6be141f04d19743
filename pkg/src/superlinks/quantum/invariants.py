"""
Link invariants from a ribbon datum: the functor F, the bracket of a
(1,1)-tangle, quantum and modified dimensions, the renormalized invariant
F' = d(V_i) <F(T_i)>, and Vassiliev coefficients of its h-expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..engine import LocalMap
from ..report import Report
from ..scalars import RatFunc, TruncatedSeries, TruncationError, coefficient
from ..tangles.pd import PDLink
from ..tangles.singular import even_framed, make_singular_representative, resolve_singularities
from ..tangles.sliced import SlicedTangle, TangleError, cap, cup, cut
from ..tangles.slicing import slice_link
from .ribbon import RibbonDatum, RibbonError

__all__ = [
    "InvariantSeries",
    "FramingError",
    "as_word",
    "evaluate_F",
    "closed_value",
    "bracket",
    "qdim",
    "modified_dim",
    "d_zero",
    "F_prime",
    "Q_prime",
    "what_Q",
    "vassiliev_coefficient",
    "canonicality_report",
]


class FramingError(ValueError):
    """Vassiliev data are only defined for even framings."""


@dataclass(frozen=True)
class InvariantSeries:
    value: TruncatedSeries
    link: str = ""
    colors: tuple = ()
    cut: int | None = None

    def __str__(self):
        return str(self.value)


def _labels(colors) -> dict:
    return dict(getattr(colors, "labels", colors))


def as_word(L) -> SlicedTangle:
    """Sliced word of a PD link (or the word itself)."""
    if isinstance(L, PDLink):
        return slice_link(L)
    if isinstance(L, SlicedTangle):
        return L
    raise TypeError(f"expected a PDLink or SlicedTangle, got {type(L).__name__}")


def _no_double_points(t: SlicedTangle, what: str):
    if t.double_points:
        raise TangleError(f"{what}: resolve the {len(t.double_points)} double point(s) first")


def evaluate_F(rd: RibbonDatum, colors, t) -> LocalMap:
    t = as_word(t)
    _no_double_points(t, "evaluate_F")
    return rd.functor(_labels(colors)).evaluate(t)


def closed_value(rd: RibbonDatum, colors, L) -> TruncatedSeries:
    t = as_word(L)
    _no_double_points(t, "closed_value")
    return rd.functor(_labels(colors)).scalar(t)


def bracket(rd: RibbonDatum, colors, t: SlicedTangle) -> TruncatedSeries:
    """<F(t)> for a (1,1)-tangle: the scalar x with F(t) = x Id."""
    _no_double_points(t, "bracket")
    return rd.functor(_labels(colors)).endomorphism_scalar(t, "bracket")


def _unknot(a_comp: int = 1) -> SlicedTangle:
    return SlicedTangle((), [cup(0, 1, a_comp), cap(0)], name="unknot")


def qdim(rd: RibbonDatum, a) -> TruncatedSeries:
    """F of the 0-framed unknot colored a."""
    return rd.functor({1: a}).scalar(_unknot())


def modified_dim(rd: RibbonDatum, a) -> TruncatedSeries:
    return rd.modified_dim(a)


def d_zero(rd: RibbonDatum, a) -> RatFunc:
    return coefficient(rd.modified_dim(a), 0)


def _typical_cut(rd: RibbonDatum, colors: dict, i: int, comps) -> None:
    if i not in comps:
        raise TangleError(f"no component {i}")
    if i not in colors:
        raise TangleError(f"component {i} has no color")
    if not rd.is_typical(rd.label(colors[i])):
        raise RibbonError(f"cannot cut at component {i}: its color {colors[i]} is atypical")


def F_prime(rd: RibbonDatum, colors, L, i: int = 1) -> InvariantSeries:
    """d(V_i) <F(T_i)> with T_i the (1,1)-tangle obtained by cutting component i."""
    t = as_word(L)
    _no_double_points(t, "F_prime")
    colors = _labels(colors)
    _typical_cut(rd, colors, i, t.components)
    value = rd.modified_dim(colors[i]) * bracket(rd, colors, cut(t, i))
    return InvariantSeries(value, t.name, tuple(sorted((c, str(a)) for c, a in colors.items())), i)


def Q_prime(rd: RibbonDatum, colors, L, i: int = 1) -> InvariantSeries:
    return F_prime(rd, colors, L, i)


def what_Q(rd: RibbonDatum, colors, T: SlicedTangle) -> InvariantSeries:
    colors = _labels(colors)
    return InvariantSeries(bracket(rd, colors, T), T.name,
                           tuple(sorted((c, str(a)) for c, a in colors.items())), T.top[0][1])


def vassiliev_coefficient(rd: RibbonDatum, colors, m: int, t, i: int = 1,
                          method: str = "local") -> RatFunc:
    """Signed sum over all resolutions of the h^m coefficient of F'(resolution).

    ``t`` is a closed singular word or PD link with even framings. With
    ``method="resolve"`` the 2^k resolutions are evaluated one by one; the
    default ``"local"`` evaluates once with every double point mapped to
    X+ - X-, which is the same sum by multilinearity. Only coefficients up to
    h^m are carried: every factor is a power series in h, so the h^m
    coefficient is already exact at that order.
    """
    if method not in ("local", "resolve"):
        raise ValueError("method is 'local' or 'resolve'")
    if m < 0:
        raise ValueError("order must be nonnegative")
    if m >= rd.trunc_order:
        raise TruncationError(f"order {m} needs a truncation order above {m} (have {rd.trunc_order}); "
                              f"N >= {m + 4} is recommended")
    if isinstance(t, PDLink):
        if any(f % 2 for f in t.framings().values()):
            raise FramingError("Vassiliev coefficients are defined for even framings only")
        t = slice_link(t)
    if not even_framed(t):
        raise FramingError("Vassiliev coefficients are defined for even framings only")
    colors = _labels(colors)
    _typical_cut(rd, colors, i, t.components)
    work = rd.at_order(m + 1)
    opened = cut(t, i)
    if method == "local":
        total = work.functor(colors, double_points=True).endomorphism_scalar(opened, "bracket")
    else:
        F = work.functor(colors)
        total = work.zero
        for sign, term in resolve_singularities(opened):
            x = F.endomorphism_scalar(term, "bracket")
            total = total + x if sign > 0 else total - x
    return coefficient(work.modified_dim(colors[i]) * total, m)


def canonicality_report(rd: RibbonDatum, colors, corpus, m_max: int,
                        variants=(0, 1, 3), classical_rd: RibbonDatum | None = None) -> Report:
    """Vassiliev coefficients of singular representatives against W'.

    For every diagram D of degree m <= m_max in ``corpus`` (closed skeletons),
    every distinct representative variant and every typical component i, compares the
    h^m coefficient with d_0(V_i) What_W(D_i). The W' side takes d_0 from
    ``classical_rd`` (the bundled datum by default), so a rescaled ``rd`` shows
    up as mismatches. Also records Q'(unknot) = d(V_1) for the unknot colored
    by component 1's color.
    """
    from ..superalgebra import bundled_algebra, is_typical
    from ..weightsys import ColorAssignment, w_prime

    if m_max >= rd.trunc_order:
        raise TruncationError(f"m_max {m_max} must be below the truncation order {rd.trunc_order}")
    labels = _labels(colors)
    ca = colors if isinstance(colors, ColorAssignment) else ColorAssignment(rd.algebra_id, labels)
    classical_rd = classical_rd or _bundled_like(rd)
    g = bundled_algebra(ca.algebra_id)
    rep = Report("canonicality")
    for d in corpus:
        if d.degree > m_max:
            continue
        for i in d.skeleton.indices:
            if not is_typical(g, ca[i]):
                continue
            want = w_prime(ca, d, i, classical_rd)
            seen = set()
            for v in variants:
                t = make_singular_representative(d, v)
                if t.word() in seen:
                    continue
                seen.add(t.word())
                got = vassiliev_coefficient(rd, labels, d.degree, t, i)
                rep.add(f"match/m{d.degree}/{d}/cut{i}/rep{v}", got, want, (got - want).is_zero())
    if 1 in labels and is_typical(g, ca[1]):
        u = Q_prime(rd, {1: labels[1]}, _unknot(), 1).value
        dv = classical_rd.modified_dim(labels[1])
        rep.add("unknot/Qprime=d", u, dv, (u - dv).is_zero())
    return rep


def _bundled_like(rd: RibbonDatum) -> RibbonDatum:
    from .ribbon import bundled_ribbon

    return bundled_ribbon(rd.algebra_id, rd.trunc_order)
