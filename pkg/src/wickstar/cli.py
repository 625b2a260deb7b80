"""Command-line front end.

Exit codes: 0 every checked property holds, 1 a property fails (with a
witness in the report), 2 invalid input, 3 the solver was inconclusive
(no solution inside the ansatz space).  Identical inputs produce
byte-identical reports; the formal parameter is rendered ``v`` in text
output and is never accepted inside input expressions.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .chart import Chart
from .errors import InputError, InternalConsistencyError, SingularSubstitution, ValidationError
from .expr import parse, render_ratfunc, render_scalar, render_series
from .forms import Form
from .jsonio import load_action, load_chart, load_field, load_map
from .momentum import (
    berezin_toeplitz,
    bt_momentum,
    check_strong_invariance,
    classical_momentum,
    hamiltonian_data,
    momentum_map,
)
from .series import Series
from .star import StarProduct
from .symmetry import (
    check_automorphism,
    check_derivation,
    check_quasi_inner,
    quasi_inner_primitive,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


def _series_json(s: Series) -> List[str]:
    return [render_ratfunc(c) for c in s.coeffs]


def _form_json(f: Form) -> List[dict]:
    out = []
    for (zi, wi) in sorted(f.terms):
        out.append(
            {
                "z": [k + 1 for k in zi],
                "w": [l + 1 for l in wi],
                "coef": render_ratfunc(f.terms[(zi, wi)]),
            }
        )
    return out


def _form_text(f: Form) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for (zi, wi) in sorted(f.terms):
        basis = "^".join([f"dz{k + 1}" for k in zi] + [f"dw{l + 1}" for l in wi])
        coef = render_ratfunc(f.terms[(zi, wi)])
        parts.append(f"({coef}) {basis}" if basis else coef)
    return " + ".join(parts)


def _chart_json(chart: Chart) -> dict:
    data = {
        "dimension": chart.dim,
        "order": chart.order,
        "u": [[render_ratfunc(f) for f in row] for row in chart.u],
    }
    if chart.v is not None:
        data["v"] = [[render_ratfunc(f) for f in row] for row in chart.v]
    return data


def _emit(report: dict, lines: List[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)


def _chart_order(args) -> Optional[int]:
    return args.order


# -- command handlers ---------------------------------------------------------


def cmd_star(args) -> int:
    chart = load_chart(args.chart, args.order)
    left = parse(args.left, chart.dim)
    right = parse(args.right, chart.dim)
    product = StarProduct(chart)
    series = product.star_rf(left, right)
    report = {
        "command": "star",
        "ok": True,
        "order": product.order,
        "series": _series_json(series),
    }
    _emit(report, [render_series(series)], args.format)
    return EXIT_OK


def cmd_karabegov(args) -> int:
    chart = load_chart(args.chart, args.order)
    kform = chart.karabegov_form()
    report = {
        "command": "karabegov",
        "ok": True,
        "order": chart.order,
        "form": [_form_json(kform[s]) for s in range(chart.order + 1)],
    }
    lines = [f"order {s}: {_form_text(kform[s])}" for s in range(chart.order + 1)]
    _emit(report, lines, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    chart = load_chart(args.chart, args.order)
    product = StarProduct(chart)
    if args.property == "assoc":
        rep = product.verify_associativity(args.dmax)
    elif args.property == "wick-type":
        rep = product.verify_wick_type(args.dmax)
    elif args.property == "roundtrip":
        try:
            extracted = product.extract_karabegov()
            ok = extracted == chart.karabegov_form().truncate(product.order)
            witness = None if ok else "extracted form differs"
        except InternalConsistencyError as exc:
            ok, witness = False, str(exc)
        from .star import CertificateReport

        rep = CertificateReport("roundtrip", ok, chart.dim * (product.order + 1), witness)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown property {args.property!r}")
    report = {
        "command": f"verify {args.property}",
        "ok": rep.ok,
        "cases": rep.cases,
        "witness": rep.witness,
    }
    _emit(report, [rep.line()], args.format)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_invariance(args) -> int:
    chart = load_chart(args.chart, args.order)
    field = load_field(args.field, chart.dim)
    rep = check_derivation(chart, field, args.dmax)
    report = {
        "command": "invariance",
        "ok": rep.ok,
        "holomorphy_ok": rep.holomorphy_ok,
        "form_invariance_per_order": list(rep.lie_form_zero),
        "derivation_certified": rep.derivation_certified,
        "cases": rep.cases,
        "witness": rep.witness,
    }
    lines = [
        f"Lie_X I = 0: {'yes' if rep.holomorphy_ok else 'no'}",
        "Lie_X K = 0 per order: "
        + " ".join("yes" if f else "no" for f in rep.lie_form_zero),
        f"derivation certificate: {'PASS' if rep.derivation_certified else 'FAIL'}"
        + (f" witness: {rep.witness}" if rep.witness else ""),
    ]
    _emit(report, lines, args.format)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_automorphism(args) -> int:
    chart = load_chart(args.chart, args.order)
    phi = load_map(args.map, chart.dim)
    rep = check_automorphism(chart, phi, args.dmax)
    report = {
        "command": "automorphism",
        "ok": rep.ok,
        "form_invariance_per_order": list(rep.pullback_form_equal),
        "automorphism_certified": rep.automorphism_certified,
        "cases": rep.cases,
        "witness": rep.witness,
    }
    lines = [
        "pullback preserves K per order: "
        + " ".join("yes" if f else "no" for f in rep.pullback_form_equal),
        f"automorphism certificate: {'PASS' if rep.automorphism_certified else 'FAIL'}"
        + (f" witness: {rep.witness}" if rep.witness else ""),
    ]
    _emit(report, lines, args.format)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_quasi_inner(args) -> int:
    chart = load_chart(args.chart, args.order)
    field = load_field(args.field, chart.dim)
    derivation = check_derivation(chart, field, args.dmax)
    if not derivation.ok:
        report = {
            "command": "quasi-inner",
            "ok": False,
            "reason": "field is not a derivation",
            "witness": derivation.witness,
        }
        _emit(report, ["field is not a derivation of the product"], args.format)
        return EXIT_FAIL
    seed = parse(args.candidate, chart.dim) if args.candidate else None
    primitive = quasi_inner_primitive(chart, field, seed=seed)
    if primitive is None:
        report = {
            "command": "quasi-inner",
            "ok": False,
            "reason": "NOT_FOUND: no primitive in the ansatz space",
        }
        _emit(report, ["NOT_FOUND: no primitive in the ansatz space"], args.format)
        return EXIT_INCONCLUSIVE
    rep = check_quasi_inner(chart, field, primitive, args.dmax)
    report = {
        "command": "quasi-inner",
        "ok": rep.ok,
        "a": _series_json(primitive),
        "primitive_ok_per_order": list(rep.primitive_ok),
        "realization_ok": rep.realization_ok,
        "hamiltonian_field_matches": rep.hamiltonian_matches,
        "cases": rep.cases,
        "witness": rep.witness,
    }
    lines = [
        f"a = {render_series(primitive)}",
        f"d a = i_X K per order: "
        + " ".join("yes" if f else "no" for f in rep.primitive_ok),
        f"realization X = -(1/v) ad(a): {'PASS' if rep.realization_ok else 'FAIL'}"
        + (f" witness: {rep.witness}" if rep.witness else ""),
        f"Hamiltonian field of a_0 equals X: {'yes' if rep.hamiltonian_matches else 'no'}",
    ]
    _emit(report, lines, args.format)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_qmm(args) -> int:
    chart = load_chart(args.chart, args.order)
    action = load_action(args.action, chart.dim)
    result = momentum_map(chart, action, dmax=args.dmax)
    if result.status == "not_found":
        name, order = result.failing
        report = {
            "command": "qmm",
            "ok": False,
            "status": "not_found",
            "failing": {"xi": name, "order": order},
        }
        _emit(
            report,
            [f"NOT_FOUND: no primitive for i_X K at xi={name}, order {order}"],
            args.format,
        )
        return EXIT_INCONCLUSIVE
    lam_json = {}
    lam_lines = []
    for (a, b), series in sorted(result.lam.items()):
        key = f"({action.names[a]},{action.names[b]})"
        lam_json[key] = [render_scalar(c) for c in series.coeffs]
        first = next((c for c in series.coeffs if not c.is_zero()), None)
        if first is not None:
            lam_lines.append(f"[lambda]{key} = {render_scalar(first)}")
    if result.status == "obstructed":
        report = {
            "command": "qmm",
            "ok": False,
            "status": "obstructed",
            "lambda": lam_json,
            "h1": result.h1,
            "h2": result.h2,
        }
        lines = ["OBSTRUCTED: " + "; ".join(lam_lines or ["[lambda] = 0"])]
        _emit(report, lines, args.format)
        return EXIT_FAIL
    report = {
        "command": "qmm",
        "ok": True,
        "status": "ok",
        "momentum_map": {
            action.names[i]: _series_json(result.j_momentum[i]) for i in range(action.m)
        },
        "tau": {
            action.names[i]: [render_scalar(c) for c in result.tau[i].coeffs]
            for i in range(action.m)
        },
        "lambda": lam_json,
        "h1": result.h1,
        "h2": result.h2,
        "unique": result.unique,
        "certificates": [r.line() for r in result.reports],
    }
    lines = [
        f"quantum momentum mapping found (H1={result.h1}, H2={result.h2}, "
        + ("unique" if result.unique else "not unique")
        + ")",
    ]
    for i in range(action.m):
        lines.append(f"J({action.names[i]}) = {render_series(result.j_momentum[i])}")
    lines += [r.line() for r in result.reports]
    _emit(report, lines, args.format)
    return EXIT_OK


def cmd_strong_invariance(args) -> int:
    chart = load_chart(args.chart, args.order)
    action = load_action(args.action, chart.dim)
    if args.j0:
        if len(args.j0) != action.m:
            raise InputError(f"--j0 needs {action.m} expressions")
        j0 = [parse(e, chart.dim) for e in args.j0]
    else:
        # Prefer an equivariant classical momentum mapping; fall back to
        # plain Hamiltonian data (the criterion itself needs only that).
        j0 = classical_momentum(chart, action) or hamiltonian_data(chart, action)
        if j0 is None:
            report = {
                "command": "strong-invariance",
                "ok": False,
                "status": "no_classical_momentum",
            }
            _emit(report, ["no classical momentum data found for omega"], args.format)
            return EXIT_INCONCLUSIVE
    rep = check_strong_invariance(chart, action, j0, dmax=args.dmax)
    report = {
        "command": "strong-invariance",
        "ok": rep.ok,
        "classical_hamiltonian_ok": rep.classical_hamiltonian_ok,
        "classical_equivariant_ok": rep.classical_equivariant_ok,
        "strongly_invariant": rep.strongly_invariant,
        "witness": rep.witness,
        "j0_certified": rep.certification.ok if rep.certification else None,
    }
    lines = [
        f"d J0 = i_X omega: {'yes' if rep.classical_hamiltonian_ok else 'no'}",
        f"J0 equivariant at order 0: {'yes' if rep.classical_equivariant_ok else 'no'}",
        f"strongly invariant: {'yes' if rep.strongly_invariant else 'no'}"
        + (f" ({rep.witness})" if rep.witness else ""),
    ]
    if rep.certification:
        lines.append(rep.certification.line())
    _emit(report, lines, args.format)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bt(args) -> int:
    chart = load_chart(args.chart, args.order)
    if not args.action:
        bt = berezin_toeplitz(chart)
        kform = bt.karabegov_form()
        report = {
            "command": "bt",
            "ok": True,
            "chart": _chart_json(bt),
            "form": [_form_json(kform[s]) for s in range(min(1, bt.order) + 1)],
        }
        lines = [json.dumps(_chart_json(bt), indent=2)]
        _emit(report, lines, args.format)
        return EXIT_OK
    action = load_action(args.action, chart.dim)
    result = bt_momentum(chart, action, dmax=args.dmax)
    if result.status != "ok":
        report = {"command": "bt", "ok": False, "status": result.status, "detail": result.failing}
        _emit(report, [f"{result.status}: {result.failing}"], args.format)
        return EXIT_INCONCLUSIVE
    report = {
        "command": "bt",
        "ok": result.ok,
        "chart": _chart_json(result.bt_chart),
        "j0": [render_ratfunc(f) for f in result.j0],
        "divergence_quarter": [render_ratfunc(f) for f in result.j_div],
        "contraction_identity": result.contraction_ok,
        "pairing_identity": result.pairing_ok,
        "certification": result.certification.line(),
        "equivariance": result.equivariance.line(),
    }
    lines = [
        f"i_X rho = d j: {'yes' if result.contraction_ok else 'no'}",
        f"rho(X,X') = j([.,.]): {'yes' if result.pairing_ok else 'no'}",
        result.certification.line(),
        result.equivariance.line(),
    ]
    for i in range(action.m):
        lines.append(f"J({action.names[i]}) = {render_series(result.j[i])}")
    _emit(report, lines, args.format)
    return EXIT_OK if result.ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wick",
        description="Exact Wick-type star products: construction and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, chart=True):
        if chart:
            p.add_argument("--chart", required=True, help="chart JSON file")
        p.add_argument("--order", type=int, default=None, help="truncation order override")
        p.add_argument("--dmax", type=int, default=None, help="monomial exponent bound for sweeps")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("star", help="multiply two expressions")
    common(p)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(handler=cmd_star)

    p = sub.add_parser("karabegov", help="print the characterizing form")
    common(p)
    p.set_defaults(handler=cmd_karabegov)

    p = sub.add_parser("verify", help="run a complete finite certificate")
    p.add_argument("property", choices=("assoc", "wick-type", "roundtrip"))
    common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("invariance", help="derivation test for a vector field")
    common(p)
    p.add_argument("--field", required=True, help="vector field JSON file")
    p.set_defaults(handler=cmd_invariance)

    p = sub.add_parser("automorphism", help="automorphism test for a chart map")
    common(p)
    p.add_argument("--map", required=True, help="chart map JSON file")
    p.set_defaults(handler=cmd_automorphism)

    p = sub.add_parser("quasi-inner", help="realize a derivation as -(1/v) ad(a)")
    common(p)
    p.add_argument("--field", required=True)
    p.add_argument("--candidate", default=None, help="order-0 candidate expression")
    p.set_defaults(handler=cmd_quasi_inner)

    p = sub.add_parser("qmm", help="quantum momentum mapping pipeline")
    common(p)
    p.add_argument("--action", required=True, help="Lie algebra action JSON file")
    p.set_defaults(handler=cmd_qmm)

    p = sub.add_parser("strong-invariance", help="strong invariance test")
    common(p)
    p.add_argument("--action", required=True)
    p.add_argument("--j0", nargs="*", default=None, help="classical momentum expressions")
    p.set_defaults(handler=cmd_strong_invariance)

    p = sub.add_parser("bt", help="Berezin-Toeplitz chart and momentum mapping")
    common(p)
    p.add_argument("--action", default=None)
    p.set_defaults(handler=cmd_bt)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InputError, ValidationError, SingularSubstitution) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
