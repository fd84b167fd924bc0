"""Command-line front end: ``polyfibers analyze``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .exactalg import AlgebraicNumber
from .exactalg.algebraic import format_rational
from .invariants import ConsistencyError, FiberReport, analyze
from .parser import ParseError, format_polynomial, parse_polynomial
from .resolution import ResolutionError, ValueOutsideTower, resolve_infinity

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2


class InputError(ValueError):
    pass


def _alg(c: AlgebraicNumber) -> str:
    return format_rational(c.to_rational()) if c.is_rational() else str(c)


def _place_json(p) -> dict:
    out = {
        "dicritical": p.dicritical,
        "n": p.n,
        "surjective": p.surjective,
        "euler_jump": p.euler_jump,
        "branches": [{"component": f"A{b.owner}", "m": b.m, "ell": b.ell, "image": b.image}
                     for b in p.branches],
    }
    if p.bamboo is not None:
        out["bamboo"] = {"components": list(p.bamboo.components),
                         "multiplicities": list(p.bamboo.multiplicities)}
    return out


def fiber_json(rep: FiberReport) -> dict:
    m = rep.monodromy
    w = m.vanishing_distribution
    return {
        "value": _alg(rep.value),
        "n": rep.n_Fc,
        "r": rep.r_Fc,
        "chi": rep.chi_Fc,
        "mu": rep.mu,
        "euler_jump": rep.euler_jump,
        "in_B_inf": rep.in_B_inf,
        "acyclic": rep.j.acyclic,
        "strongly_acyclic": rep.j.strongly_acyclic,
        "acyclic_per_place": rep.checks.get("acyclic_per_place"),
        "j": {"injective": rep.j.injective, "surjective": rep.j.surjective,
              "isomorphism": rep.j.isomorphism, "rk_ker": rep.j.rk_ker_jc},
        "monodromy": {"rk_inv": m.rk_inv, "rk_K1": m.rk_K1, "jordan2_eigen1": m.jordan2_eigen1,
                      "vanishing": {"W-1": w[0], "W0": w[1], "W1": w[2], "W2": w[3]}},
        "singular_points": [s.describe() for s in rep.sing_points],
        "places": [_place_json(p) for p in rep.places],
        "G_c": rep.G_c.to_json(),
        "Gbar_c": rep.Gbar_c.to_json(),
        "G_cP": [g.to_json() for g in rep.G_cP],
    }


def build_report(f, vars=("x", "y"), values=None):
    """JSON-ready dict plus ``{filename: dot text}`` for the graphs it mentions."""
    res = resolve_infinity(f)
    bif, fibers = analyze(f, values, res)
    doc = {
        "polynomial": format_polynomial(f, vars),
        "B_aff": [_alg(c) for c in bif.B_aff],
        "B_inf": [_alg(c) for c in bif.B_inf],
        "B": [_alg(c) for c in bif.B],
        "chi_generic": bif.chi_generic,
        "dicritical_degrees": [d.degree for d in res.dicriticals],
        "Gbar_inf": res.graph_inf.to_json(),
        "fibers": [fiber_json(r) for r in fibers],
    }
    dots = {}
    if bif.B or values is not None:
        dots["Gbar_inf.dot"] = res.graph_inf.to_dot("Gbar_inf")
    for k, r in enumerate(fibers):
        dots[f"fiber{k}_G_c.dot"] = r.G_c.to_dot(f"G_c_{k}")
        dots[f"fiber{k}_Gbar_c.dot"] = r.Gbar_c.to_dot(f"Gbar_c_{k}")
        for i, g in enumerate(r.G_cP):
            dots[f"fiber{k}_G_cP{i}.dot"] = g.to_dot(f"G_cP_{k}_{i}")
    return doc, dots


def _parse_value(text: str) -> AlgebraicNumber:
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"--value must be a rational number, got {text!r}") from e
    return AlgebraicNumber.rational(q)


def _parse_vars(text: str):
    names = tuple(v.strip() for v in text.split(","))
    if len(names) != 2 or not all(n.isidentifier() for n in names) or names[0] == names[1]:
        raise InputError(f"--vars expects two distinct identifiers, got {text!r}")
    return names


def _make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyfibers",
                                 description="Fiber topology of polynomial maps C^2 -> C.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="bifurcation set and fiber invariants")
    src = an.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help="polynomial expression")
    src.add_argument("--poly", type=Path, help="file holding the polynomial expression")
    an.add_argument("--value", help="analyze only the fiber over this rational value")
    an.add_argument("--vars", default="x,y", help="the two variable names (default x,y)")
    an.add_argument("--dot", type=Path, help="directory for Graphviz DOT files")
    an.add_argument("--json-indent", type=int, default=None, help="indent JSON output")
    return ap


def main(argv=None) -> int:
    ap = _make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    try:
        vars = _parse_vars(args.vars)
        text = args.expr if args.expr is not None else args.poly.read_text(encoding="utf-8")
        f = parse_polynomial(text, vars)
        values = None if args.value is None else [_parse_value(args.value)]
        doc, dots = build_report(f, vars, values)
    except ConsistencyError as e:
        print(f"consistency error: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ResolutionError, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ParseError, InputError, ValueOutsideTower, ValueError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.dot is not None:
        args.dot.mkdir(parents=True, exist_ok=True)
        for name, body in dots.items():
            (args.dot / name).write_text(body, encoding="utf-8")
    json.dump(doc, sys.stdout, indent=args.json_indent, sort_keys=False)
    sys.stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
