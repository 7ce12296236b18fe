"""``satake`` command-line interface.

Exit status: 0 success, 1 mathematical FAIL, 2 usage error (including
malformed weights, unsupported data and unreadable caches), 3 resource budget
exceeded.  ``--json`` emits canonical JSON (sorted keys, fixed separators).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .errors import CacheError, ResourceBudgetError, UnsupportedDatumError, WeightError
from .polys import IntPoly
from .rootdata import RootDatum, build_root_datum, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1, default=str)


def _wstr(v: Sequence[int]) -> str:
    return ",".join(str(a) for a in v)


def _weight_text(v: Sequence[int]) -> str:
    return str(v[0]) if len(v) == 1 else f"({_wstr(v)})"


# --------------------------------------------------------------------------
# handlers; each returns (exit status, json payload, text lines)

def _datum(args) -> RootDatum:
    return build_root_datum(args.datum, args.lattice)


def _weight(d: RootDatum, text: str):
    return d.check_weight(parse_weight(text))


def cmd_rootdata(args):
    d = _datum(args)
    d.check_invariants()
    sysv = d.dual_system
    payload = {
        "datum": d.label, "lattice": d.lattice,
        "cartan": [list(r) for r in d.cartan],
        "dual_cartan": [list(r) for r in sysv.cartan],
        "positive_roots": [list(r) for r in d.positive_roots],
        "positive_coroots": [list(r) for r in d.positive_coroots],
        "dual_positive_roots": [list(r) for r in sysv.positive_roots],
        "rho_dual": list(sysv.rho),
        "h_coefficients": list(d.h_coeffs),
        "weyl_order": sysv.weyl_order,
        "components": [[str(c) for c in t] for t in d.component_group],
    }
    lines = [f"{d.label} ({d.lattice} lattice), |W| = {sysv.weyl_order}",
             f"positive roots of G^vee (simple-root coords): {payload['dual_positive_roots']}",
             f"rho of G^vee: {payload['rho_dual']}   lambda(h) = {payload['h_coefficients']} . lambda",
             f"components: {len(payload['components'])}"]
    return EXIT_OK, payload, lines


def cmd_orbit(args):
    from .rootdata import weyl_orbit

    d = _datum(args)
    lam = _weight(d, args.lam)
    info = weyl_orbit(d, lam)
    payload = {"datum": d.label, "lambda": list(lam),
               "orbit": [list(v) for v in sorted(info.orbit)], "dominant": list(info.dominant),
               "size": len(info.orbit)}
    lines = [f"orbit size {len(info.orbit)}, dominant representative {_weight_text(info.dominant)}"]
    lines += ["  " + _weight_text(v) for v in sorted(info.orbit)]
    return EXIT_OK, payload, lines


def cmd_klpoly(args):
    from .klhecke import kl_engine
    from .weyl import affine_weyl_group

    d = _datum(args)
    g = affine_weyl_group(d)
    eng = kl_engine(d)
    if args.x or args.y:
        if not (args.x and args.y):
            raise UsageError("--x and --y must be given together")
        x, y = g.deserialize(args.x), g.deserialize(args.y)
    else:
        if args.lam is None or args.mu is None:
            raise UsageError("give --lambda and --mu, or --x and --y")
        x = g.max_coset_rep(_weight(d, args.mu))
        y = g.max_coset_rep(_weight(d, args.lam))
    p = eng.P(x, y)
    comparable = g.bruhat_leq(x, y)
    payload = {"datum": d.label, "x": g.serialize(x), "y": g.serialize(y),
               "comparable": comparable, "polynomial": p.to_json()}
    note = "" if comparable else "   (x is not below y: zero by convention)"
    return EXIT_OK, payload, [f"P = {p.pretty()}{note}"]


def cmd_stalks(args):
    from .grassview import closure_leq, ic_stalk_poincare
    from .rootdata import dominant_weights

    d = _datum(args)
    lam = _weight(d, args.lam)
    mus = ([_weight(d, args.mu)] if args.mu else
           [m for m in dominant_weights(d, d.weight_h(lam)) if closure_leq(d, m, lam)])
    rows, lines = [], []
    for mu in mus:
        s = ic_stalk_poincare(d, lam, mu)
        rows.append({"mu": list(mu), **s.to_json()})
        lines.append(f"{_weight_text(mu):>10}  {s.poly.pretty() if s.in_closure else '0 (not in closure)'}")
    payload = {"datum": d.label, "lambda": list(lam), "stalks": rows}
    return EXIT_OK, payload, lines


def cmd_qmult(args):
    from .grassview import lusztig_q_analog

    d = _datum(args)
    lam, mu = _weight(d, args.lam), _weight(d, args.mu)
    p = lusztig_q_analog(d, lam, mu)
    payload = {"datum": d.label, "lambda": list(lam), "mu": list(mu), "polynomial": p.to_json()}
    return (EXIT_OK if p.nonnegative() or p.is_zero() else EXIT_FAIL), payload, [p.pretty()]


def cmd_brylinski(args):
    from .principal import brylinski_poincare
    from .repbuild import build_irrep

    d = _datum(args)
    lam, mu = _weight(d, args.lam), _weight(d, args.mu)
    rep = brylinski_poincare(build_irrep(d, lam, args.budget), mu, allow_nondominant=args.allow_nondominant)
    payload = {"datum": d.label, **rep.to_json()}
    lines = [f"P = {rep.poincare.pretty()}",
             "jumps (i, dim): " + ", ".join(f"({i}, {c})" for i, c in rep.jumps)]
    return EXIT_OK, payload, lines


def cmd_tensor(args):
    from .repbuild import tensor_decompose

    d = _datum(args)
    lam, mu = _weight(d, args.lam), _weight(d, args.mu)
    dec = tensor_decompose(d, lam, mu, budget=args.budget * args.budget)
    order = sorted(dec, key=lambda nu: (-d.weight_h(nu), tuple(-a for a in nu)))
    payload = {"datum": d.label, "lambda": list(lam), "mu": list(mu),
               "decomposition": {_wstr(nu): dec[nu] for nu in order}}
    return EXIT_OK, payload, [", ".join(f"{_weight_text(nu)}:{dec[nu]}" for nu in order)]


def cmd_hecke_check(args):
    from .klhecke import HeckeAlgebra, kl_engine
    from .polys import IntPoly as P
    from .weyl import affine_weyl_group

    d = _datum(args)
    g = affine_weyl_group(d)
    alg = HeckeAlgebra(kl_engine(d), max_terms=args.max_terms)
    checks: Dict[str, bool] = {}
    t_sum = P({1: 1, -1: 1})
    checks["c_s c_s = (t + 1/t) c_s"] = all(
        alg.multiply(alg.c(s), alg.c(s)).coeff == {s: t_sum} for s in g.simple)
    elems = g.elements_up_to(args.max_length)
    checks["c_e c_y = c_y"] = all(alg.multiply(alg.c(g.identity), alg.c(y)).coeff == {y: P.one()}
                                  for y in elems)
    checks["bar(c_y) = c_y"] = all(alg.bar(alg.to_T(alg.c(y))).coeff == alg.to_T(alg.c(y)).coeff
                                   for y in elems)
    checks["c -> T -> c round trip"] = all(alg.to_c(alg.to_T(alg.c(y))).coeff == {y: P.one()}
                                           for y in elems)
    eng = kl_engine(d)
    checks["KL coefficients non-negative"] = all(
        p.nonnegative() for y in elems for p in eng.column(y).values())
    ok = all(checks.values())
    payload = {"datum": d.label, "lattice": d.lattice, "max_length": args.max_length,
               "elements": len(elems), "checks": checks, "verdict": "PASS" if ok else "FAIL"}
    lines = [f"{'PASS' if v else 'FAIL'}  {k}" for k, v in checks.items()]
    lines.append(f"{len(elems)} elements up to length {args.max_length}: {payload['verdict']}")
    return (EXIT_OK if ok else EXIT_FAIL), payload, lines


def cmd_satake_check(args):
    from .klhecke import satake_structure_check

    d = _datum(args)
    rep = satake_structure_check(d, _weight(d, args.lam), _weight(d, args.mu), max_terms=args.max_terms)
    payload = rep.to_json()
    if rep.verdict == "INCOMPLETE":
        return EXIT_BUDGET, payload, [f"INCOMPLETE: {'; '.join(rep.notes)}"]
    lines = ["nu: hecke constant | tensor multiplicity"]
    for nu in sorted(set(rep.hecke_constants) | set(rep.tensor_multiplicities)):
        h = rep.hecke_constants.get(nu)
        lines.append(f"  {_weight_text(nu)}: {h.pretty('t') if h else 0} | {rep.tensor_multiplicities.get(nu, 0)}")
    lines.append(rep.verdict)
    return (EXIT_OK if rep.verdict == "PASS" else EXIT_FAIL), payload, lines


def cmd_exponents(args):
    from .principal import centralizer_basis, centralizer_is_abelian, kostant_identity, principal_triple

    d = _datum(args)
    cb = centralizer_basis(d)
    eig, want, ok = kostant_identity(d)
    abelian = centralizer_is_abelian(d)
    payload = {**cb.to_json(), "f_coefficients": [str(c) for c in principal_triple(d).f_coeffs],
               "invariant_degree_prediction": want, "kostant_identity": ok, "abelian": abelian}
    lines = [f"ad h eigenvalues on the centralizer: {eig}",
             f"2(d_i - 1) from invariant degrees: {want}",
             f"exponents: {cb.exponents}   abelian: {abelian}"]
    return (EXIT_OK if ok and abelian else EXIT_FAIL), payload, lines


def cmd_minuscule(args):
    from .grassview import minuscule_weight
    from .principal import minuscule_cyclicity_check

    d = _datum(args)
    tags = [parse_weight(args.coset)] if args.coset else list(d.component_group)
    rows, lines, ok = [], [], True
    for tag in tags:
        rep = minuscule_cyclicity_check(d, tag)
        ok &= rep.cyclic and rep.single_orbit
        rows.append(rep.to_json())
        lines.append(f"coset {','.join(map(str, rep.coset))}: mu_C = {_weight_text(rep.mu_c)}, "
                     f"dim {rep.dim}, U(a)-span {rep.span_dim}")
    return (EXIT_OK if ok else EXIT_FAIL), {"datum": d.label, "cosets": rows}, lines


def cmd_hom_a(args):
    from .principal import graded_hom_over_a

    d = _datum(args)
    lam, mu = _weight(d, args.lam), _weight(d, args.mu)
    graded = graded_hom_over_a(d, lam, mu, args.budget)
    payload = {"datum": d.label, "lambda": list(lam), "mu": list(mu),
               "graded_dimensions": {str(k): v for k, v in sorted(graded.items())},
               "total": sum(graded.values())}
    lines = [", ".join(f"{k}:{v}" for k, v in sorted(graded.items())) or "0",
             f"total {payload['total']}"]
    return EXIT_OK, payload, lines


def _parse_u(terms: List[str], rank: int) -> Dict[tuple, Fraction]:
    u: Dict[tuple, Fraction] = {}
    for term in terms:
        mono, _, coef = term.partition(":")
        exps = parse_weight(mono)
        if len(exps) != rank or any(e < 0 for e in exps):
            raise WeightError(f"monomial {mono!r} needs {rank} non-negative exponents")
        try:
            c = Fraction(coef) if coef else Fraction(1)
        except ValueError:
            raise WeightError(f"bad coefficient {coef!r}") from None
        u[exps] = u.get(exps, Fraction(0)) + c
    return u


def cmd_pairing(args):
    from .principal import schubert_pairing

    d = _datum(args)
    lam = _weight(d, args.lam)
    u = _parse_u(args.u or ["0" + ",0" * (d.rank - 1)], d.rank)
    val = schubert_pairing(d, u, lam, args.budget)
    payload = {"datum": d.label, "lambda": list(lam),
               "u": {_wstr(k): str(v) for k, v in sorted(u.items())}, "value": str(val),
               "normalization": "divided-power lowest vector; centralizer generators as in 'exponents'"}
    return EXIT_OK, payload, [str(val)]


def cmd_verify(args):
    from .acceptance import Scope, attach_all, run_suite, summary_lines

    if args.datum is not None:
        build_root_datum(args.datum)   # validates the label
    if not args.no_cache:
        attach_all()
    report = run_suite(Scope(args.datum, args.max_height))
    status = EXIT_OK if report["overall"] == "PASS" else EXIT_FAIL
    return status, report, summary_lines(report)


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the KL cache")
    common.add_argument("-v", "--verbose", action="store_true")

    dat = _Parser(add_help=False)
    dat.add_argument("datum", help="series letter + rank: A1, A2, A3, B2, C2, G2")
    dat.add_argument("--lattice", choices=("coweight", "coroot"), default="coweight",
                     help="translation lattice (default: coweight, i.e. all of X_*(T))")
    dat.add_argument("--budget", type=int, default=400, help="maximum module dimension")

    lm = _Parser(add_help=False)
    lm.add_argument("--lambda", dest="lam", required=True, help="comma-separated coordinates")
    lm.add_argument("--mu", required=True)

    p = _Parser(prog="satake", description="Exact Satake-correspondence workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("rootdata", parents=[common, dat], help="root datum summary")
    s.set_defaults(func=cmd_rootdata)
    s = sub.add_parser("orbit", parents=[common, dat], help="Weyl orbit of a weight")
    s.add_argument("--lambda", dest="lam", required=True)
    s.set_defaults(func=cmd_orbit)
    s = sub.add_parser("klpoly", parents=[common, dat], help="P_{w(mu), w(lambda)} or P_{x,y}")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--mu")
    s.add_argument("--x", help="serialized element 'tag|translation|word'")
    s.add_argument("--y")
    s.set_defaults(func=cmd_klpoly)
    s = sub.add_parser("stalks", parents=[common, dat], help="IC stalk polynomials below lambda")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--mu")
    s.set_defaults(func=cmd_stalks)
    for name, func, help_ in (("qmult", cmd_qmult, "Lusztig q-analogue of weight multiplicity"),
                              ("tensor", cmd_tensor, "tensor product decomposition"),
                              ("hom-a", cmd_hom_a, "graded Hom over the centralizer")):
        s = sub.add_parser(name, parents=[common, dat, lm], help=help_)
        s.set_defaults(func=func)
    s = sub.add_parser("brylinski", parents=[common, dat, lm], help="principal-nilpotent filtration")
    s.add_argument("--allow-nondominant", action="store_true")
    s.set_defaults(func=cmd_brylinski)
    s = sub.add_parser("hecke-check", parents=[common, dat], help="Hecke algebra self-checks")
    s.add_argument("--max-length", type=int, default=4)
    s.add_argument("--max-terms", type=int, default=200_000)
    s.set_defaults(func=cmd_hecke_check, lattice_default="coroot")
    s = sub.add_parser("satake-check", parents=[common, dat, lm],
                       help="Hecke structure constants vs tensor multiplicities")
    s.add_argument("--max-terms", type=int, default=200_000)
    s.set_defaults(func=cmd_satake_check, lattice_default="coroot")
    s = sub.add_parser("exponents", parents=[common, dat], help="principal centralizer and exponents")
    s.set_defaults(func=cmd_exponents)
    s = sub.add_parser("minuscule", parents=[common, dat], help="minuscule weights and cyclicity")
    s.add_argument("--coset", help="fractional tag (e.g. 1/3,2/3) or a representative weight")
    s.set_defaults(func=cmd_minuscule)
    s = sub.add_parser("pairing", parents=[common, dat], help="Schubert pairing <v^lam, u v_lam>")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--u", action="append", metavar="E1,..,Er[:COEF]",
                   help="monomial in the centralizer generators; repeatable")
    s.set_defaults(func=cmd_pairing)
    s = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    s.add_argument("--datum")
    s.add_argument("--max-height", type=int)
    s.set_defaults(func=cmd_verify)
    return p


def _resolve_lattice(argv: Sequence[str], args) -> None:
    # Hecke checks default to the coroot lattice unless one was asked for.
    default = getattr(args, "lattice_default", None)
    if default and not any(a == "--lattice" or a.startswith("--lattice=") for a in argv):
        args.lattice = default


def run_command(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        print(str(exc), file=err)
        return EXIT_USAGE
    except SystemExit as exc:          # --help
        return int(exc.code or 0)
    _resolve_lattice(argv, args)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=err)
    try:
        if args.command != "verify" and not args.no_cache and hasattr(args, "datum"):
            from .cache import attach_cache
            attach_cache(_datum(args))
        status, payload, lines = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except UnsupportedDatumError as exc:
        print(f"unsupported datum: {exc}", file=err)
        return EXIT_USAGE
    except WeightError as exc:
        print(f"bad weight: {exc}", file=err)
        return EXIT_USAGE
    except CacheError as exc:
        print(f"cache error: {exc}", file=err)
        return EXIT_USAGE
    except ResourceBudgetError as exc:
        print(f"resource budget exceeded: {exc}", file=err)
        return EXIT_BUDGET
    if args.json:
        out.write(dumps(payload) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return status


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
