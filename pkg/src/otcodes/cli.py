"""Command-line entry point: ``otcodes <subcommand> FILE [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import betti as bt
from .codes import code_params, parity_check
from .errors import InputError, OTCodesError
from .harness import fixture_names, load, parse_order, verify
from .matroid import broken_circuits, circuits, components, loops
from .orlikterao import alpha, check_proudfoot_speyer, ot_presentation
from .polyring import GroebnerBasis, Polynomial, format_monomial, hilbert_numerator, support_monomial


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _setup(args):
    code, cf = load(args.file)
    order_src = args.order if args.order is not None else cf.order
    order = parse_order(order_src, code.n)
    return code, cf, order


def _dual(code):
    if code.k == code.n:
        raise InputError("k = n: the code has no nonzero dual, nothing to compute")
    return parity_check(code)


def _labels(s):
    return [i + 1 for i in s]


def cmd_info(args) -> int:
    code, cf, _ = _setup(args)
    P = code_params(code)
    G = code.G.to_lists(signed=True)
    H = parity_check(code).to_lists(signed=True) if code.k < code.n else []
    payload = {"name": cf.name, "field": code.p, "n": P.n, "k": P.k, "d": P.d, "ghw": list(P.ghw),
               "degenerate": P.degenerate, "generator": G, "parity_check": H}
    text = "\n".join([f"{cf.name or args.file}: [{P.n}, {P.k}, {P.d}] code over F_{code.p}",
                      f"generalized Hamming weights: {list(P.ghw)}",
                      "generator matrix:", *("  " + " ".join(f"{v:>2}" for v in r) for r in G),
                      "parity-check matrix:", *("  " + " ".join(f"{v:>2}" for v in r) for r in H)])
    _emit(args, payload, text)
    return 0


def cmd_circuits(args) -> int:
    code, cf, _ = _setup(args)
    H = _dual(code)
    cs = circuits(H)
    comps = components(cs, code.n)
    payload = {"circuits": [{"support": _labels(c.support), "dependency": list(c.dependency)} for c in cs],
               "components": [_labels(b) for b in comps.blocks], "loops": _labels(loops(H))}
    lines = [f"{len(cs)} circuits of the parity-check columns:"]
    for c in cs:
        lines.append("  {" + ",".join(map(str, _labels(c.support))) + "}  coefficients "
                     + str(list(code.field.signed(a) for a in c.dependency)))
    lines.append(f"components: {payload['components']}   loops: {payload['loops']}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_ot(args) -> int:
    code, cf, order = _setup(args)
    pres = ot_presentation(_dual(code))
    res = check_proudfoot_speyer(pres, order)
    o = res.basis.order
    payload = {"alpha": alpha(pres), "order": _labels(order.priority),
               "generators": [f.format(o) for f in pres.polynomials],
               "groebner_basis": [f.format(o) for f in res.basis.elements],
               "initial_ideal": [format_monomial(m) for m in res.initial],
               "circuit_generators_form_groebner_basis": res.holds}
    lines = [f"Orlik-Terao ideal, alpha = {payload['alpha']}, order {payload['order']}",
             "circuit generators:", *("  " + g for g in payload["generators"]),
             "reduced Groebner basis:", *("  " + g for g in payload["groebner_basis"]),
             "initial ideal: " + ", ".join(payload["initial_ideal"]),
             f"initial ideal equals broken-circuit ideal: {res.holds}"]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_sr(args) -> int:
    code, cf, order = _setup(args)
    n = code.n
    cs = circuits(_dual(code))
    bc = broken_circuits(cs, order.priority)
    circ = [format_monomial(support_monomial(n, c.support)) for c in cs]
    broken = [format_monomial(support_monomial(n, s)) for s in bc.minimal_nonfaces]
    payload = {"order": _labels(order.priority), "circuit_ideal": circ, "broken_circuit_ideal": broken}
    _emit(args, payload, "\n".join([f"circuit ideal: <{', '.join(circ)}>",
                                    f"broken-circuit ideal (order {payload['order']}): <{', '.join(broken)}>"]))
    return 0


def _ideal_basis(args, code, order):
    n, p = code.n, code.p
    cs = circuits(_dual(code))
    if args.ideal == "ot":
        return check_proudfoot_speyer(ot_presentation(parity_check(code)), order).basis
    if args.ideal == "sr":
        monos = [support_monomial(n, c.support) for c in cs]
    else:
        monos = [support_monomial(n, s) for s in broken_circuits(cs, order.priority).minimal_nonfaces]
    return GroebnerBasis(order, tuple(Polynomial.monomial(n, p, m) for m in monos))


def cmd_betti(args) -> int:
    code, cf, order = _setup(args)
    G = _ideal_basis(args, code, order)
    jmax = args.jmax if args.jmax is not None else code.n + 2
    B = bt.koszul_betti(G, j_max=jmax, n=code.n, p=code.p)
    payload = {"ideal": args.ideal, "field": code.p, "betti": B.triples(), "truncated": B.truncated}
    text = B.render()
    if not B.truncated:
        S = bt.summarize(B)
        payload.update({"t": list(S.t), "T": list(S.T), "pdim": S.pdim, "reg": S.reg,
                        "multiplicity": S.multiplicity, "cm": S.cm})
        text += f"\nt = {list(S.t)}  T = {list(S.T)}  pdim = {S.pdim}  reg = {S.reg}  e = {S.multiplicity}"
    _emit(args, payload, text)
    return 0


def cmd_hilbert(args) -> int:
    code, cf, order = _setup(args)
    G = _ideal_basis(args, code, order)
    upto = args.jmax if args.jmax is not None else 10
    K = hilbert_numerator(G.leading_monomials())
    h, codim = bt.reduce_numerator(K)
    series = bt.series_coefficients_from_numerator(K, code.n, upto)
    payload = {"ideal": args.ideal, "numerator": K, "h_vector": h, "dimension": code.n - codim,
               "hilbert_function": series}
    text = (f"HS = ({' + '.join(f'{c}*s^{i}' for i, c in enumerate(h) if c)}) / (1 - s)^{code.n - codim}\n"
            f"Hilbert function to degree {upto}: {series}")
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    code, cf, order = _setup(args)
    report = verify(code, order, args.jmax, args.seed, name=cf.name)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render() + "\n")
    return 1 if report.failed() else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otcodes",
        description="Orlik-Terao and Stanley-Reisner invariants of linear codes. "
                    f"FILE may be a path or a bundled fixture name ({', '.join(fixture_names())}).")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "info": (cmd_info, "code parameters and matrices"),
        "circuits": (cmd_circuits, "circuits of the parity-check columns"),
        "ot": (cmd_ot, "Orlik-Terao generators and Groebner basis"),
        "sr": (cmd_sr, "circuit and broken-circuit monomial ideals"),
        "betti": (cmd_betti, "graded Betti table"),
        "hilbert": (cmd_hilbert, "Hilbert series and function"),
        "verify": (cmd_verify, "run every check and print a report"),
    }
    for name, (fn, help_text) in commands.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="code file (JSON) or fixture name")
        sp.add_argument("--order", help="variable priority, greatest first, e.g. 1,2,3,4,6,7,5")
        sp.add_argument("--jmax", type=int, help="largest internal degree computed")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--seed", type=int, default=0, help="seed for the sampled term orders")
        if name in ("betti", "hilbert"):
            sp.add_argument("--ideal", choices=("ot", "sr", "bc"), default="ot",
                            help="Orlik-Terao, circuit, or broken-circuit ideal")
        sp.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except OTCodesError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
