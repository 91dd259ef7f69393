import argparse
import json
import sys
from fractions import Fraction
from orbikit.app import AppBase, CommandBase
from orbikit.models import (
    ActionSpec, AreaResult, Classification, CommandResult, CoveringCertificate,
    EulerSummary, FiberEnumeration, FundamentalSummary, Signature,
    SimplicialSurface, UsageError, VectorFieldZero, WeightedProjectiveSpace,
    WpsEuler
)
from orbikit.covering import (
    certificate_from_quotients, enumerate_fiber_data, verify_certificate
)
from orbikit.euler import (
    build_stratified_complex, euler_closed_form, euler_from_complex,
    euler_from_strata, strata_summary
)
from orbikit.fixtures import fixture_names, load_fixture
from orbikit.fundamental import (
    classify, group_order, presentation, simplify_presentation
)
from orbikit.geometry import (
    constant_curvature_area, poincare_hopf_check, spindle_gauss_bonnet
)
from orbikit.quotient import action_from_spec, quotient
from orbikit.signature import double_mirrors
from orbikit.wps import wps_euler, wps_football, wps_strata


# Input
def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as ex:
        raise UsageError(message=f"Cannot read '{path}': {ex.strerror}", root_cause=ex)


def read_json(path: str):
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise UsageError(message=f"'{path}' is not valid JSON: {ex.msg}", root_cause=ex)


def add_signature_arguments(parser):
    parser.add_argument("signature", nargs="?", metavar="SIG",
                        help="signature text, or '-' to read it from stdin")
    parser.add_argument("--file", help="file holding the signature as text or JSON")


def read_signature(args) -> Signature:
    sources = [s for s in (args.signature, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError(
            message="give the signature exactly once: as text, with --file, or '-'")
    if args.file is None and args.signature != "-":
        return Signature.from_text(args.signature)

    text = read_text(args.file or "-").strip()
    if text.startswith("{"):
        try:
            return Signature.model_validate(json.loads(text))
        except json.JSONDecodeError as ex:
            raise UsageError(message=f"signature file is not valid JSON: {ex.msg}")
    return Signature.from_text(text)


def parse_weights(text: str) -> WeightedProjectiveSpace:
    try:
        weights = [int(w) for w in text.split(",")]
    except ValueError:
        raise UsageError(message=f"weights must be comma separated integers: '{text}'")
    return WeightedProjectiveSpace(weights=tuple(weights))


def parse_zeros(text: str):
    zeros = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        try:
            order, index = item.split(":")
            zeros.append(VectorFieldZero(local_order=int(order), lift_index=int(index)))
        except ValueError:
            raise UsageError(message=f"zero must look like 'order:index', got '{item}'")
    return zeros


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(message=f"not a rational number: '{text}'")


def load_action(args, settings):
    if args.fixture:
        spec = load_fixture(args.fixture)
    elif args.action:
        spec = ActionSpec.model_validate(read_json(args.action))
    else:
        raise UsageError(message="give an action with --action or --fixture")
    surface = None
    if getattr(args, "surface", None):
        surface = SimplicialSurface.model_validate(read_json(args.surface))
    return action_from_spec(spec, surface, settings.closure_bound)


def add_action_arguments(parser):
    parser.add_argument("--action", help="action JSON file")
    parser.add_argument("--fixture", choices=fixture_names(),
                        help="use a built-in action instead of --action")
    parser.add_argument("--subdivisions", type=int,
                        help="barycentric subdivisions applied before the quotient")


# Commands
class EulerCommand(CommandBase):
    name = "euler"
    help = "orbifold Euler characteristic, computed three ways"

    def add_arguments(self, parser):
        add_signature_arguments(parser)

    def process(self, args):
        sig = read_signature(args)
        complex_ = build_stratified_complex(sig)
        summary = EulerSummary(
            signature=sig,
            closed_form=euler_closed_form(sig),
            cell_sum=euler_from_complex(complex_),
            strata_sum=euler_from_strata(complex_))
        lines = [f"{sig}",
                 f"closed form: {summary.closed_form}",
                 f"cell sum:    {summary.cell_sum}",
                 f"strata sum:  {summary.strata_sum}"]
        if self.debug:
            lines += [f"  {s.label}: chi_c {s.chi_c} / {s.order}"
                      for s in strata_summary(complex_)]
        if not summary.agree:
            self.logger.warning(f"Euler characteristics disagree for {sig}")
        return CommandResult(text="\n".join(lines), data=summary, passed=summary.agree)


class ClassifyCommand(CommandBase):
    name = "classify"
    help = "Bad, Spherical, Euclidean or Hyperbolic"

    def add_arguments(self, parser):
        add_signature_arguments(parser)

    def process(self, args):
        sig = read_signature(args)
        result = Classification(signature=sig, geometry=classify(sig),
                                euler=euler_closed_form(sig))
        return CommandResult(text=result.geometry.value, data=result)


class FundamentalGroupCommand(CommandBase):
    name = "pi1"
    help = "presentation and order of the orbifold fundamental group"

    def add_arguments(self, parser):
        add_signature_arguments(parser)
        parser.add_argument("--max-cosets", type=int,
                            default=self.settings.max_cosets)

    def process(self, args):
        sig = read_signature(args)
        pres = presentation(sig)
        order = group_order(pres, args.max_cosets)
        result = FundamentalSummary(presentation=pres, order=order)
        text = f"{pres}\nsimplified: {simplify_presentation(pres)}\norder: {order}"
        return CommandResult(text=text, data=result)


class DoubleCommand(CommandBase):
    name = "double"
    help = "closed orientable double across the mirrors"

    def add_arguments(self, parser):
        add_signature_arguments(parser)

    def process(self, args):
        double = double_mirrors(read_signature(args))
        return CommandResult(text=str(double), data=double)


class QuotientCommand(CommandBase):
    name = "quotient"
    help = "quotient orbifold of a finite simplicial action"

    def add_arguments(self, parser):
        parser.add_argument("--surface", help="surface JSON file (overrides the action's)")
        add_action_arguments(parser)

    def process(self, args):
        action = load_action(args, self.settings)
        result = quotient(action, args.subdivisions or self.settings.subdivisions,
                          self.settings.closure_bound)
        lines = [
            f"signature: {result.signature if result.signature else '-'}",
            f"group order: {result.group_order}",
            f"chi: {result.chi_cover} = {result.group_order} * {result.chi_quotient}",
            "cells: {} vertices, {} edges, {} faces".format(*result.complex.counts())
        ]
        if result.note:
            lines.append(f"note: {result.note}")
        return CommandResult(text="\n".join(lines), data=result)


class CoverVerifyCommand(CommandBase):
    group = "cover"
    name = "verify"
    help = "verify a covering certificate"

    def add_arguments(self, parser):
        parser.add_argument("certificate", metavar="FILE",
                            help="certificate JSON file, or '-' for stdin")

    def process(self, args):
        cert = CoveringCertificate.model_validate(read_json(args.certificate))
        report = verify_certificate(cert)
        lines = ["PASS" if report.passed else "FAIL"]
        lines += [f"  [{'ok' if c.passed else 'ng'}] {c.name}: {c.detail}"
                  for c in report.checks]
        return CommandResult(text="\n".join(lines), data=report, passed=report.passed)


class CoverEnumerateCommand(CommandBase):
    group = "cover"
    name = "enumerate"
    help = "fiber data over a cone point of order n in a covering of degree r"

    def add_arguments(self, parser):
        parser.add_argument("-n", type=int, required=True, help="base local order")
        parser.add_argument("-r", type=int, required=True, help="covering degree")

    def process(self, args):
        fibers = enumerate_fiber_data(args.n, args.r)
        result = FiberEnumeration(n=args.n, r=args.r, fibers=fibers)
        text = "\n".join("{" + ",".join(str(d) for d in f) + "}" for f in fibers)
        return CommandResult(text=text, data=result)


class CoverFromQuotientCommand(CommandBase):
    group = "cover"
    name = "from-quotient"
    help = "certificate of M//H -> M//G for a subgroup H"

    def add_arguments(self, parser):
        add_action_arguments(parser)
        parser.add_argument("--subgroup", required=True,
                            help="JSON file with the subgroup generators")

    def process(self, args):
        action = load_action(args, self.settings)
        subgroup = ActionSpec.model_validate(read_json(args.subgroup))
        cert = certificate_from_quotients(
            action, subgroup.generators,
            args.subdivisions or self.settings.subdivisions,
            self.settings.closure_bound)
        report = verify_certificate(cert)
        text = (f"{cert.cover.signature} -> {cert.base.signature}, degree {cert.degree}\n"
                + "\n".join(f"  {f.point} ({f.order}): {list(f.preimages)}"
                            for f in cert.fibers))
        return CommandResult(text=text, data=cert, passed=report.passed)


class WpsCommandBase(CommandBase):
    group = "wps"

    def add_arguments(self, parser):
        parser.add_argument("-w", "--weights", required=True,
                            help="comma separated weights, e.g. 1,2,3")


class WpsStrataCommand(WpsCommandBase):
    name = "strata"
    help = "coordinate strata with their local groups"

    def process(self, args):
        poset = wps_strata(parse_weights(args.weights))
        text = "\n".join(
            "{{{}}} {}{}".format(",".join(str(i) for i in s.indices), s.local_group,
                                 " singular" if s.singular else "")
            for s in poset.strata)
        return CommandResult(text=text, data=poset)


class WpsEulerCommand(WpsCommandBase):
    name = "euler"
    help = "orbifold Euler characteristic"

    def process(self, args):
        w = parse_weights(args.weights)
        result = WpsEuler(weights=w.weights, euler=wps_euler(w))
        return CommandResult(text=str(result.euler), data=result)


class WpsFootballCommand(WpsCommandBase):
    name = "football"
    help = "signature of a weighted projective line"

    def process(self, args):
        sig = wps_football(parse_weights(args.weights))
        return CommandResult(text=str(sig), data=sig)


class GaussBonnetCommand(CommandBase):
    name = "gauss-bonnet"
    help = "total curvature of a spindle metric on the (p, q)-football"

    def add_arguments(self, parser):
        parser.add_argument("-p", type=int, required=True)
        parser.add_argument("-q", type=int, required=True)
        parser.add_argument("--intervals", type=int, default=self.settings.intervals)
        parser.add_argument("--profile", choices=["smoothstep", "linear", "cosine"],
                            default="smoothstep")
        parser.add_argument("--amplitude", type=float, default=0.0)
        parser.add_argument("--tolerance", type=float, default=self.settings.tolerance)

    def process(self, args):
        report = spindle_gauss_bonnet(args.p, args.q, args.intervals,
                                      args.profile, args.amplitude)
        passed = report.rel_error <= args.tolerance
        text = (f"total curvature: {report.total_curvature:.12f}\n"
                f"target:          {report.target:.12f}\n"
                f"area:            {report.area:.12f}\n"
                f"relative error:  {report.rel_error:.3e}")
        return CommandResult(text=text, data=report, passed=passed)


class PoincareHopfCommand(CommandBase):
    name = "poincare-hopf"
    help = "check a list of vector field zeros against chi"

    def add_arguments(self, parser):
        add_signature_arguments(parser)
        parser.add_argument("--zeros", default="",
                            help="comma separated 'local_order:lift_index' pairs")

    def process(self, args):
        report = poincare_hopf_check(read_signature(args), parse_zeros(args.zeros))
        text = ("PASS" if report.passed else "FAIL") + f": {report.checks[0].detail}"
        return CommandResult(text=text, data=report, passed=report.passed)


class AreaCommand(CommandBase):
    name = "area"
    help = "area of a constant curvature metric, as a multiple of pi"

    def add_arguments(self, parser):
        add_signature_arguments(parser)
        parser.add_argument("-K", "--curvature", required=True,
                            help="constant curvature as a rational, e.g. -1 or 1/2")

    def process(self, args):
        sig = read_signature(args)
        curvature = parse_rational(args.curvature)
        area = constant_curvature_area(sig, curvature)
        result = AreaResult(signature=sig, curvature=curvature, area_over_pi=area)
        return CommandResult(text=f"{area}*pi", data=result)


class FixtureCommand(CommandBase):
    name = "fixture"
    help = "write a built-in action as JSON"

    def add_arguments(self, parser):
        parser.add_argument("fixture_name", metavar="NAME", choices=fixture_names())
        parser.add_argument("-o", "--output", help="output file (stdout if omitted)")

    def process(self, args):
        spec = load_fixture(args.fixture_name)
        if args.output:
            try:
                with open(args.output, "w") as f:
                    f.write(spec.model_dump_json(by_alias=True, indent=2))
            except OSError as ex:
                raise UsageError(message=f"Cannot write '{args.output}': {ex.strerror}")
            return CommandResult(text=f"wrote {args.fixture_name} to {args.output}")
        return CommandResult(text=spec.model_dump_json(by_alias=True, indent=2), data=spec)


class OrbikitApp(AppBase):
    commands = [
        EulerCommand, ClassifyCommand, FundamentalGroupCommand, DoubleCommand,
        QuotientCommand, CoverVerifyCommand, CoverEnumerateCommand,
        CoverFromQuotientCommand, WpsStrataCommand, WpsEulerCommand,
        WpsFootballCommand, GaussBonnetCommand, PoincareHopfCommand,
        AreaCommand, FixtureCommand
    ]


def build_parser(app: AppBase, parser_class=argparse.ArgumentParser):
    parser = parser_class(prog="orbikit", description="Computations with closed 2-orbifolds.")
    parser.add_argument("--debug", action="store_true", help="debug logging and tracebacks")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    groups = {}
    for key in app.command_keys():
        command = app.get_command(key)
        if command.group:
            if command.group not in groups:
                group_parser = subparsers.add_parser(command.group)
                groups[command.group] = group_parser.add_subparsers(
                    dest="subcommand", metavar="SUBCOMMAND", required=True)
            sub = groups[command.group].add_parser(command.name, help=command.help)
        else:
            sub = subparsers.add_parser(command.name, help=command.help)
        sub.add_argument("--format", choices=["human", "json"], default="human")
        sub.add_argument("--debug", action="store_true", default=argparse.SUPPRESS)
        command.add_arguments(sub)
        sub.set_defaults(command_key=key)
    return parser
