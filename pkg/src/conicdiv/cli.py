"""Command line interface: ``conicdiv <command> ...``, JSON on stdout."""

from __future__ import annotations

import argparse
import json
import sys

from . import io, presets, render
from .conic import conic_witness, enumerate_conic_classes
from .divisors import class_group
from .multiplicity import (
    class_mu,
    fit_multiplicities,
    frobenius_colength_oracle,
    hk_function,
    hk_multiplicity,
    hk_quasi_polynomial,
    is_totally_unimodular,
    multiplicity_vector,
)
from .segre import (
    NotCohenMacaulayError,
    class_factors,
    cm_permutation,
    depth,
    depth_map,
    dimension,
    is_cm,
    veronese_segre_cm_set,
)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vals = _ints(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers lo,hi, got {text!r}")
    return vals[0], vals[1]


def _qp_json(q) -> dict:
    return {"degree": q.degree, "period": q.period, "coefficients": q.coefficients}


def cmd_classgroup(args):
    cone = io.load_cone(args.input)
    g = class_group(cone)
    return {"invariant_factors": list(g.invariant_factors), "free_rank": g.free_rank}


def cmd_conic_list(args):
    cone = io.load_cone(args.input)
    g = class_group(cone)
    table = enumerate_conic_classes(cone, g)
    mu = class_mu(cone, table) if args.mu else None
    rows = []
    for r in table:
        row = {
            "label": r.label,
            "representative": r.representative,
            "volume": r.volume,
            "pieces": len(r.pieces),
        }
        if mu is not None:
            row["mu"] = mu[r.label]
        rows.append(row)
    return {"classes": rows, "total_volume": table.total_volume}


def cmd_conic_test(args):
    cone = io.load_cone(args.input)
    w = conic_witness(cone, args.u)
    out = {"conic": w is not None}
    if w is not None:
        out["witness"] = list(w)
    return out


def cmd_segre_cm(args):
    factors = class_factors(args.dims, args.shifts)
    cm = is_cm(factors)
    return {
        "cm": cm,
        "depth": depth(factors),
        "dimension": dimension(factors),
        "permutation": list(cm_permutation(factors)) if cm else None,
    }


def cmd_segre_region(args):
    depths = depth_map(args.dims, args.window)
    full = sum(args.dims) - (len(args.dims) - 1)
    points = [{"diff": list(p), "depth": dep, "cm": dep == full} for p, dep in depths.items()]
    return {"dimension": full, "cm_count": sum(p["cm"] for p in points), "points": points}


def cmd_segre_veronese(args):
    return {"cm_classes": sorted(veronese_segre_cm_set(tuple(args.dims), tuple(args.steps), args.window))}


def cmd_decompose(args):
    cone = io.load_cone(args.input)
    g = class_group(cone)
    table = enumerate_conic_classes(cone, g)
    mv = multiplicity_vector(cone, g, table, args.n)
    out = {
        "n": mv.n,
        "counts": [{"label": lab, "count": c} for lab, c in mv.counts.items()],
    }
    if args.fit:
        fits = fit_multiplicities(cone, g, table, args.nmax, args.max_period)
        out["quasi_polynomials"] = [
            {"label": lab, "volume": table.row(lab).volume, **_qp_json(q)} for lab, q in fits.items()
        ]
    return out


def cmd_hk(args):
    if not (args.function or args.multiplicity or args.oracle or args.tu or args.fit):
        raise ValueError("choose at least one of --function, --multiplicity, --oracle, --tu, --fit")
    cone = io.load_cone(args.input)
    out = {}
    if args.tu:
        out["totally_unimodular"] = is_totally_unimodular(cone)
    if args.function or args.multiplicity or args.oracle or args.fit:
        g = class_group(cone)
        table = enumerate_conic_classes(cone, g)
        mu = class_mu(cone, table)
        if args.function:
            out["function"] = {"n": args.function, "value": hk_function(cone, g, table, args.function, mu)}
        if args.multiplicity:
            out["e_hk"] = hk_multiplicity(cone, g, table, mu)
        if args.oracle:
            oracle = frobenius_colength_oracle(cone, args.oracle)
            fn = hk_function(cone, g, table, args.oracle, mu)
            out["oracle"] = {"n": args.oracle, "value": oracle, "function": fn, "identity": oracle == fn}
        if args.fit:
            out["quasi_polynomial"] = _qp_json(hk_quasi_polynomial(cone, g, table, args.fit, args.max_period))
    return out


def cmd_render_cells(args):
    cone = io.load_cone(args.input)
    if cone.dim != 2:
        raise ValueError("render cells needs a rank 2 monoid")
    g = class_group(cone)
    table = enumerate_conic_classes(cone, g)
    svg = render.render_cells(table)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return {"output": args.output, "classes": len(table)}


def cmd_render_segre(args):
    if len(args.dims) not in (2, 3):
        raise ValueError("render segre supports 2 or 3 factors")
    depths = depth_map(args.dims, args.window)
    full = sum(args.dims) - (len(args.dims) - 1)
    conic = presets.segre_conic_differences(args.dims, args.window)
    svg = render.render_segre(depths, full, conic)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return {
        "output": args.output,
        "cm_points": sum(dep == full for dep in depths.values()),
        "conic_points": len(conic),
    }


class _JSONErrorParser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": message, "type": "UsageError"}), file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _JSONErrorParser(prog="conicdiv", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classgroup", help="divisor class group Z^s / sigma(Z^d)")
    s.add_argument("input", help="preset name, JSON file or inline JSON")
    s.set_defaults(func=cmd_classgroup)

    conic = sub.add_parser("conic", help="conic divisor classes").add_subparsers(dest="sub", required=True)
    s = conic.add_parser("list")
    s.add_argument("input")
    s.add_argument("--mu", action="store_true", help="add minimal generator counts")
    s.set_defaults(func=cmd_conic_list)
    s = conic.add_parser("test")
    s.add_argument("input")
    s.add_argument("--u", type=_ints, required=True)
    s.set_defaults(func=cmd_conic_test)

    segre = sub.add_parser("segre", help="Segre product classes").add_subparsers(dest="sub", required=True)
    s = segre.add_parser("cm")
    s.add_argument("--dims", type=_ints, required=True)
    s.add_argument("--shifts", type=_ints, required=True)
    s.set_defaults(func=cmd_segre_cm)
    s = segre.add_parser("region")
    s.add_argument("--dims", type=_ints, required=True)
    s.add_argument("--window", type=_pair, required=True)
    s.set_defaults(func=cmd_segre_region)
    s = segre.add_parser("veronese")
    s.add_argument("--dims", type=_ints, required=True)
    s.add_argument("--steps", type=_ints, required=True)
    s.add_argument("--window", type=_pair, required=True)
    s.set_defaults(func=cmd_segre_veronese)

    s = sub.add_parser("decompose", help="multiplicities of conic classes in R^(1/n)")
    s.add_argument("input")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--fit", action="store_true")
    s.add_argument("--nmax", type=int, default=30)
    s.add_argument("--max-period", type=int, default=None)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("hk", help="Hilbert-Kunz function and multiplicity")
    s.add_argument("input")
    s.add_argument("--function", type=int, metavar="N")
    s.add_argument("--multiplicity", action="store_true")
    s.add_argument("--oracle", type=int, metavar="N")
    s.add_argument("--tu", action="store_true", help="total unimodularity of the support forms")
    s.add_argument("--fit", type=int, metavar="NMAX", help="fit q_HK from n = 1..NMAX")
    s.add_argument("--max-period", type=int, default=None)
    s.set_defaults(func=cmd_hk)

    rend = sub.add_parser("render", help="SVG drawings").add_subparsers(dest="sub", required=True)
    s = rend.add_parser("cells")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render_cells)
    s = rend.add_parser("segre")
    s.add_argument("--dims", type=_ints, required=True)
    s.add_argument("--window", type=_pair, required=True)
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_render_segre)
    return p


_VECTOR_FLAGS = ("--u", "--dims", "--shifts", "--steps", "--window")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--window -5,5" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VECTOR_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_values(argv))
    try:
        result = args.func(args)
    except (ValueError, NotCohenMacaulayError, RuntimeError, OSError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}), file=sys.stderr)
        return 1
    print(io.dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
