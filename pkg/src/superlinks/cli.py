"""
Command line interface::

    superlinks invariant LINK [--algebra A] [--colors 1=a,2=b] [--cut I] [--trunc N]
    superlinks vassiliev LINK --order M [--algebra A] [--colors ...] [--cut I] [--rep K]
    superlinks weight DIAGRAM [--algebra A] [--colors ...] [--cut I]
    superlinks verify --suite S [--algebra A] [--colors ...] [--max-order M] [--out FILE]

LINK is a PD file, a chord-diagram file (realized by a singular
representative, variant ``--rep``), or ``corpus:NAME`` for a bundled link.
Output is exact text; the exit status is 0 on success and on a passing
verification, 1 on a failing verification, 2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .chords import ChordError, parse_combination, parse_diagram
from .functor import NonScalarError
from .quantum.invariants import FramingError, F_prime, vassiliev_coefficient
from .quantum.ribbon import RibbonError, bundled_ribbon, load_ribbon
from .scalars import DEFAULT_TRUNC_ORDER, ScalarError
from .superalgebra import AlgebraError
from .suites import SUITES, default_labels, run_suite
from .tangles.corpus import LINKS, link
from .tangles.pd import PDParseError, parse_pd
from .tangles.singular import make_singular_representative
from .tangles.sliced import TangleError
from .weightsys import ColorAssignment, w_prime, weight_of_combination

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def parse_colors(text: str | None) -> dict:
    """``"1=a,2=b"`` -> {1: 'a', 2: 'b'}."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"bad color binding {item!r}; expected INDEX=LABEL")
        k, v = item.split("=", 1)
        try:
            out[int(k)] = v.strip()
        except ValueError:
            raise UsageError(f"bad component index in {item!r}") from None
    return out


def _datum(args):
    if args.trunc < 2:
        raise UsageError("--trunc must be at least 2")
    if getattr(args, "ribbon", None):
        rd = load_ribbon(Path(args.ribbon).read_text(), args.trunc)
        if rd.algebra_id != args.algebra:
            args.algebra = rd.algebra_id
        return rd
    return bundled_ribbon(args.algebra, args.trunc)


def _load_link(spec: str, rep: int = 0):
    """PD link, or the representative of a chord diagram, plus its file colors."""
    if spec.startswith("corpus:"):
        name = spec.split(":", 1)[1]
        if name not in LINKS:
            raise UsageError(f"unknown corpus link {name!r}; known: {', '.join(sorted(LINKS))}")
        return link(name), {}
    text = Path(spec).read_text()
    words = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    first = next((w[0] for w in words if w), "")
    if first in ("component", "chord"):
        d = parse_diagram(text)
        return make_singular_representative(d, rep), {}
    L = parse_pd(text)
    return L, {i: lab for i, (_, lab) in L.colors.items()}


def _labels(args, n_comps, file_colors: dict) -> dict:
    labels = default_labels(args.algebra, max(n_comps, 1))
    labels.update(file_colors)
    labels.update(parse_colors(args.colors))
    return labels


def _components(L):
    return L.component_indices if hasattr(L, "component_indices") else sorted(L.components)


def cmd_invariant(args, out) -> int:
    rd = _datum(args)
    L, fc = _load_link(args.link)
    labels = _labels(args, len(_components(L)), fc)
    value = F_prime(rd, labels, L, args.cut).value
    print(value, file=out)
    return 0


def cmd_vassiliev(args, out) -> int:
    rd = _datum(args)
    L, fc = _load_link(args.link, args.rep)
    labels = _labels(args, len(_components(L)), fc)
    x = vassiliev_coefficient(rd, labels, args.order, L, args.cut)
    print(x, file=out)
    return 0


def cmd_weight(args, out) -> int:
    combo = parse_combination(Path(args.diagram).read_text())
    s = combo.skeleton
    labels = default_labels(args.algebra, max(len(s.components), 1))
    labels.update(parse_colors(args.colors))
    ca = ColorAssignment(args.algebra, {i: labels[i] for i in s.indices} or {1: labels[1]})
    if s.is_closed and args.cut is not None:
        rd = bundled_ribbon(args.algebra, args.trunc)
        total = None
        for d, c in combo.items():
            x = w_prime(ca, d, args.cut, rd) * c
            total = x if total is None else total + x
        print(total if total is not None else 0, file=out)
        return 0
    print(weight_of_combination(ca, combo), file=out)
    return 0


def cmd_verify(args, out) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rd = _datum(args)
    labels = default_labels(rd.algebra_id)
    labels.update(parse_colors(args.colors))
    options = {}
    if args.max_order is not None:
        options["max_order"] = args.max_order
    if args.corpus:
        options["corpus"] = [c for c in args.corpus.split(",") if c]
    rep = run_suite(args.suite, rd, labels, **options)
    text = rep.text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    print(f"SUMMARY {rep.summary()}", file=out)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superlinks", description="Renormalized quantum link invariants "
                                "and their weight systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, cut_default=1):
        sp.add_argument("--algebra", default="gl11", choices=("gl11", "sl2"))
        sp.add_argument("--colors", default=None, help="component colors, e.g. 1=a,2=b")
        sp.add_argument("--trunc", type=int, default=DEFAULT_TRUNC_ORDER, help="truncation order N")
        sp.add_argument("--cut", type=int, default=cut_default, help="component to cut open")

    sp = sub.add_parser("invariant", help="print F' of a link")
    sp.add_argument("link")
    common(sp)
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("vassiliev", help="print the order-m Vassiliev coefficient")
    sp.add_argument("link")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--rep", type=int, default=0, help="representative variant for diagram input")
    common(sp)
    sp.set_defaults(func=cmd_vassiliev)

    sp = sub.add_parser("weight", help="evaluate a chord diagram (or combination)")
    sp.add_argument("diagram")
    common(sp, cut_default=None)
    sp.set_defaults(func=cmd_weight)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True)
    sp.add_argument("--corpus", default=None, help="comma-separated corpus link names")
    sp.add_argument("--max-order", type=int, default=None)
    sp.add_argument("--out", default=None, help="write the report here")
    sp.add_argument("--ribbon", default=None, help="ribbon plugin file to use instead of the bundled one")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except FramingError as exc:
        print(f"error: {exc} (singular links must be restricted to even framings)", file=sys.stderr)
    except (UsageError, PDParseError, ChordError, TangleError, RibbonError, AlgebraError,
            NonScalarError, ScalarError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
