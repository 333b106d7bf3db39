"""Command line front end.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or parse error,
3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import groups as groups_mod
from .errors import BudgetExceeded, SpecError, ValidationError
from .euler import chi_A, chi_k_recursive, reduce_product, zeta_cellwise, zeta_direct
from .groups import centralizer, generated_subgroup, parse_group_spec, trivial_group
from .gspace import parse_space, virtual_with_euler
from .presentations import DEFAULT_BUDGET, parse_presentation
from .series import first_difference
from .verify import (IDENTITIES, verify_bryan_fulman, verify_conjugacy_types, verify_counterexamples,
                     verify_definitions, verify_engines, verify_induction, verify_induction_chain,
                     verify_lemma3, verify_macdonald, verify_prop_product, verify_tamanoi)
from .wreath import conjugacy_classes_by_type

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max relator evaluations per enumeration")
    p.add_argument("--cap", type=int, default=None, help="group order cap")
    render = p.add_mutually_exclusive_group()
    render.add_argument("--json", dest="pretty", action="store_false", help="compact JSON output (default)")
    render.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON output")
    p.add_argument("--output", "-o", default=None, help="write output to a file instead of stdout")
    p.set_defaults(pretty=False)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="orbichi", description="Exact orbifold Euler characteristics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="describe a group")
    p.add_argument("spec")
    p.add_argument("--wreath", type=int, default=None, metavar="N", help="also list the classes of G wr S_N by type")

    p = sub.add_parser("chi", parents=[common], help="compute chi^(A)(X, G)")
    p.add_argument("--group", default="trivial")
    p.add_argument("--space", default="pt")
    p.add_argument("--A", dest="A", required=True)
    p.add_argument("--engine", choices=["auto", "homs", "recursive", "product"], default="auto")

    p = sub.add_parser("zeta", parents=[common], help="compute the series zeta^(A)_(X,G) to order N")
    p.add_argument("--group", default="trivial")
    p.add_argument("--space", default="pt")
    p.add_argument("--A", dest="A", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--engine", choices=["direct", "cellwise", "both"], default="cellwise")

    p = sub.add_parser("verify", parents=[common], help="check one of the identities")
    p.add_argument("identity", help=", ".join(IDENTITIES))
    p.add_argument("--group", default=None)
    p.add_argument("--into", action="append", default=[], help="target group for induction (repeat for a chain)")
    p.add_argument("--space", default=None)
    p.add_argument("--chi", type=int, default=None, help="virtual Euler characteristic over the trivial group")
    p.add_argument("--A", dest="A", default=None)
    p.add_argument("--A1", default=None)
    p.add_argument("--A2", default=None)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--subgroup", default=None, help="generators of K (lemma3)")
    p.add_argument("--a", type=int, default=None, help="the extending element (lemma3)")
    p.add_argument("--lhs-engine", choices=["types", "brute"], default="types")

    p = sub.add_parser("counterexample", parents=[common], help="reproduce the Z_2 and Z x Z_2 counterexamples")
    p.add_argument("--N", type=int, default=2)
    return parser


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _space_over_trivial(args):
    g = trivial_group()
    if args.space is not None:
        return parse_space(args.space, g)
    return virtual_with_euler(g, _need(args.chi, "--chi or --space"))


def cmd_group(args) -> tuple[dict, int]:
    g = parse_group_spec(args.spec)
    out = {"label": g.label, "order": g.order, "identity": g.identity,
           "abelian": g.is_abelian(),
           "classes": [{"representative": c.representative, "size": c.size,
                        "centralizer_order": centralizer(g, c.representative).order}
                       for c in g.conjugacy_classes]}
    if args.wreath is not None:
        out["wreath"] = {"n": args.wreath,
                         "types": [{"type": t.to_json(), "class_size": s}
                                   for t, s in conjugacy_classes_by_type(g, args.wreath)]}
    return out, EXIT_OK


def cmd_chi(args) -> tuple[dict, int]:
    g = parse_group_spec(args.group)
    x = parse_space(args.space, g)
    a = parse_presentation(args.A)
    engine = args.engine
    if engine == "auto":
        try:
            value, engine = chi_A(x, a, args.budget), "homs"
        except BudgetExceeded:
            if a.free_abelian_rank is not None:
                engine = "recursive"
            elif a.factors is not None:
                engine = "product"
            else:
                raise
    if engine == "homs":
        value = chi_A(x, a, args.budget)
    elif engine == "recursive":
        rank = a.free_abelian_rank
        if rank is None:
            raise UsageError("the recursive engine needs A = free-abelian:k")
        value = chi_k_recursive(x, rank - 1)
    elif engine == "product":
        if a.factors is None:
            raise UsageError("the product engine needs A = product(A1,A2)")
        value = reduce_product(x, *a.factors, budget=args.budget)
    return {"value": str(value), "engine": engine, "integer": Fraction(value).denominator == 1}, EXIT_OK


def cmd_zeta(args) -> tuple[dict, int]:
    if args.N < 0:
        raise UsageError("--N must be non-negative")
    g = parse_group_spec(args.group)
    x = parse_space(args.space, g)
    a = parse_presentation(args.A)
    if args.engine == "direct":
        s = zeta_direct(x, a, args.N, args.budget)
    elif args.engine == "cellwise":
        s = zeta_cellwise(x, a, args.N, args.budget)
    else:
        s = zeta_direct(x, a, args.N, args.budget)
        other = zeta_cellwise(x, a, args.N, args.budget)
        idx = first_difference(s, other)
        out = s.to_json()
        out.update(engine="both", agree=idx is None)
        if idx is not None:
            out["cellwise"] = other.to_json()["coefficients"]
            out["first_mismatch"] = idx
        return out, EXIT_OK if idx is None else EXIT_FAIL
    out = s.to_json()
    out["engine"] = args.engine
    return out, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    name = args.identity
    if name not in IDENTITIES:
        raise UsageError(f"unknown identity {name!r}; choose from {', '.join(IDENTITIES)}")
    budget = args.budget
    if name == "macdonald":
        report = verify_macdonald(_space_over_trivial(args), args.N)
    elif name == "bryan-fulman":
        report = verify_bryan_fulman(_space_over_trivial(args), parse_presentation(_need(args.A, "--A")),
                                     args.N, budget)
    elif name == "tamanoi":
        report = verify_tamanoi(parse_group_spec(args.group or "trivial"), args.k, args.N, args.lhs_engine)
    elif name == "counterexamples":
        report = verify_counterexamples(max(args.N, 2))
    elif name == "conjugacy-types":
        report = verify_conjugacy_types(parse_group_spec(_need(args.group, "--group")), args.n)
    elif name == "lemma3":
        kp = parse_group_spec(_need(args.group, "--group"))
        gens = [int(v) for v in _need(args.subgroup, "--subgroup").split(",") if v.strip()]
        report = verify_lemma3(kp, generated_subgroup(kp, gens), _need(args.a, "--a"), args.k)
    else:
        g = parse_group_spec(args.group or "trivial")
        x = parse_space(args.space or "pt", g)
        if name == "induction":
            targets = [parse_group_spec(s) for s in args.into] or [g]
            a = parse_presentation(_need(args.A, "--A"))
            report = (verify_induction(x, targets[0], a, budget=budget) if len(targets) == 1
                      else verify_induction_chain(x, targets, a, budget))
        elif name == "prop-product":
            report = verify_prop_product(x, parse_presentation(_need(args.A1, "--A1")),
                                         parse_presentation(_need(args.A2, "--A2")), budget)
        elif name == "engines":
            report = verify_engines(x, parse_presentation(_need(args.A, "--A")), args.N, budget)
        else:
            report = verify_definitions(x, args.k, budget)
    return report.to_json(), EXIT_OK if report.overall else EXIT_FAIL


def cmd_counterexample(args) -> tuple[dict, int]:
    report = verify_counterexamples(max(args.N, 2))
    return report.to_json(), EXIT_OK if report.overall else EXIT_FAIL


COMMANDS = {"group": cmd_group, "chi": cmd_chi, "zeta": cmd_zeta, "verify": cmd_verify,
            "counterexample": cmd_counterexample}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None and args.cap < 1:
        parser.error("--cap must be positive")
    if args.budget < 1:
        parser.error("--budget must be positive")
    saved_cap = groups_mod.ORDER_CAP
    if args.cap is not None:
        groups_mod.ORDER_CAP = args.cap
    try:
        out, code = COMMANDS[args.command](args)
    except (UsageError, SpecError, ValidationError, ValueError) as exc:
        print(f"orbichi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"orbichi: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        groups_mod.ORDER_CAP = saved_cap
    text = json.dumps(out, indent=2 if args.pretty else None)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
