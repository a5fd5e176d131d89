import argparse
import logging
import sys
from typing import Optional, Sequence
from gs.algebra import FiniteGroup
from gs.congruence import (BRUTEFORCE_CUTOFF, congruences_bruteforce, congruences_principal,
                           gset_permutable, is_segregated)
from gs.errors import AlgebraError, AxiomError, FormatError
from gs.gset import GSet, orbits, stabilizer
from gs.parser import Instance, parse_file
from gs.printer import Printer, format_set
from gs.report import CLAIMS, SuiteSummary, VerdictReport
from gs.semigroup import (FiniteSemigroup, build_gx0, ideals, ideals_form_chain, sg_congruences,
                          sg_congruences_bruteforce, sg_permutable)
from gs.theorems import Bounds, DEFAULT_BOUNDS, example_reports, run_catalog_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(AlgebraError):
    pass


def load(path: str, kind: type) -> Instance:
    instance = parse_file(path)
    if not isinstance(instance, kind):
        raise UsageError(f"{path} does not hold a {kind_name(kind)}.")
    return instance


def kind_name(kind: type) -> str:
    return {FiniteGroup: "group", GSet: "gset", FiniteSemigroup: "semigroup"}[kind]


def instance_size(instance: Instance) -> int:
    if isinstance(instance, GSet):
        return instance.carrier_size
    return instance.order


def emit(text: str, out: Optional[str] = None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as f:
        f.write(text)


def emit_verdict(report: VerdictReport) -> int:
    emit(Printer().print(report) + "\n")
    return EXIT_OK if report.verdict else EXIT_FAIL


def emit_lattice(found, brute=None) -> int:
    emit("".join(f"{p}\n" for p in found))
    if brute is not None and brute != found:
        logger.error("brute force found %d congruences, principal closure %d", len(brute), len(found))
        return EXIT_FAIL
    return EXIT_OK


# Subcommands.

def cmd_validate(args) -> int:
    try:
        instance = parse_file(args.file)
    except AxiomError as e:
        witness = {"error": type(e).__name__, "witness": list(e.witness or ())}
        return emit_verdict(VerdictReport(claim_id="validate", instance_descriptor=args.file,
                                          verdict=False, witness=witness))
    kind = kind_name(type(instance))
    return emit_verdict(VerdictReport(claim_id="validate", instance_descriptor=f"{kind} {args.file}",
                                      verdict=True, stats={"size": instance_size(instance)}))


def cmd_orbits(args) -> int:
    X = load(args.file, GSet)
    emit(Printer().print(orbits(X)) + "\n")
    return EXIT_OK


def cmd_stabilizer(args) -> int:
    X = load(args.file, GSet)
    if not (0 <= args.point < X.carrier_size):
        raise UsageError(f"Point {args.point} is outside 0..{X.carrier_size - 1}.")
    emit(format_set(stabilizer(X, args.point).members) + "\n")
    return EXIT_OK


def cmd_congruences(args) -> int:
    X = load(args.file, GSet)
    found = congruences_principal(X)
    brute = None
    if X.carrier_size <= BRUTEFORCE_CUTOFF:
        brute = congruences_bruteforce(X)
    else:
        logger.info("carrier of %d points, brute-force check skipped", X.carrier_size)
    return emit_lattice(found, brute)


def cmd_permutable(args) -> int:
    return emit_verdict(gset_permutable(load(args.file, GSet)))


def cmd_segregated(args) -> int:
    return emit_verdict(is_segregated(load(args.file, GSet)))


def cmd_semigroup(args) -> int:
    X = load(args.file, GSet)
    emit(Printer().print(build_gx0(X.group, X)), args.output)
    return EXIT_OK


def cmd_sg_congruences(args) -> int:
    S = load(args.file, FiniteSemigroup)
    found = sg_congruences(S)
    brute = None
    if S.order <= BRUTEFORCE_CUTOFF:
        brute = sg_congruences_bruteforce(S)
    else:
        logger.info("semigroup of order %d, brute-force check skipped", S.order)
    return emit_lattice(found, brute)


def cmd_sg_permutable(args) -> int:
    return emit_verdict(sg_permutable(load(args.file, FiniteSemigroup)))


def cmd_ideals(args) -> int:
    S = load(args.file, FiniteSemigroup)
    found = ideals(S)
    emit("".join(format_set(i) + "\n" for i in found))
    if args.chain:
        return emit_verdict(ideals_form_chain(S, found))
    return EXIT_OK


def emit_summary(summary: SuiteSummary, out: Optional[str] = None) -> int:
    emit(Printer().print(summary), out)
    return EXIT_OK if summary.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    bounds = Bounds(max_group=args.max_group, max_carrier=args.max_carrier, max_orbits=args.max_orbits)
    summary = run_catalog_suite(bounds, args.claims, jobs=args.jobs)
    return emit_summary(summary, args.output)


def cmd_example(args) -> int:
    reports = example_reports()
    return emit_summary(SuiteSummary.collect(reports), args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsets",
        description="Congruence permutability of finite G-sets and (G,X,0) semigroups.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to standard error (-vv for debug output)")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("validate", help="check the axioms of a group, gset or semigroup file")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("orbits", help="orbit decomposition of a G-set")
    p.add_argument("file")
    p.set_defaults(run=cmd_orbits)

    p = sub.add_parser("stabilizer", help="stabilizer subgroup of a point")
    p.add_argument("file")
    p.add_argument("point", type=int)
    p.set_defaults(run=cmd_stabilizer)

    p = sub.add_parser("congruences", help="all congruences of a G-set")
    p.add_argument("file")
    p.set_defaults(run=cmd_congruences)

    p = sub.add_parser("permutable", help="is the G-set congruence permutable")
    p.add_argument("file")
    p.set_defaults(run=cmd_permutable)

    p = sub.add_parser("segregated", help="is the G-set segregated")
    p.add_argument("file")
    p.set_defaults(run=cmd_segregated)

    p = sub.add_parser("semigroup", help="the (G,X,0) semigroup of a G-set")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=cmd_semigroup)

    p = sub.add_parser("sg-congruences", help="all congruences of a semigroup")
    p.add_argument("file")
    p.set_defaults(run=cmd_sg_congruences)

    p = sub.add_parser("sg-permutable", help="is the semigroup congruence permutable; a failure names "
                       "the least pair in one composition but not the other")
    p.add_argument("file")
    p.set_defaults(run=cmd_sg_permutable)

    p = sub.add_parser("ideals", help="two-sided ideals of a semigroup")
    p.add_argument("file")
    p.add_argument("--chain", action="store_true", help="also check that the ideals form a chain")
    p.set_defaults(run=cmd_ideals)

    p = sub.add_parser("verify", help="run the catalog suite")
    p.add_argument("claims", nargs="+", metavar="claim", help=f"one of {', '.join(CLAIMS)} or all")
    p.add_argument("--max-group", type=int, default=DEFAULT_BOUNDS.max_group)
    p.add_argument("--max-carrier", type=int, default=DEFAULT_BOUNDS.max_carrier)
    p.add_argument("--max-orbits", type=int, default=DEFAULT_BOUNDS.max_orbits)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("example-paper", help="reproduce the two-point example")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(run=cmd_example)

    return parser


def configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    configure_logging(args.verbose)

    try:
        return args.run(args)
    except FileNotFoundError as e:
        sys.stderr.write(f"error: file not found: {e.filename}\n")
    except OSError as e:
        sys.stderr.write(f"error: cannot read {e.filename}: {e.strerror}\n")
    except FormatError as e:
        if e.context:
            sys.stderr.write(e.context + "\n")
        sys.stderr.write(f"format error: {e}\n")
    except AlgebraError as e:
        sys.stderr.write(f"error: {e}\n")
    return EXIT_USAGE
