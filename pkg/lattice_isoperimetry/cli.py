#  Copyright (C) 2026 The lattice-isoperimetry authors.
#  This program is free software: you can redistribute it and/or modify
#  it under the terms of the GNU Affero General Public License as
#  published by the Free Software Foundation, either version 3 of the
#  License, or (at your option) any later version.
#  This program is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
#  GNU Affero General Public License for more details.
#  You should have received a copy of the GNU Affero General Public License
#  along with this program. If not, see <https://www.gnu.org/licenses/>.

import argparse
import json
import logging
import sys
from typing import Any, Callable, List, Optional, Sequence, TextIO, Tuple

from marshmallow import Schema

from lattice_isoperimetry.core import config
from lattice_isoperimetry.core.exceptions import (
    LatticeIsoperimetryException,
    NotConverged,
    VerificationFailure,
)
from lattice_isoperimetry.helpers.calculus import classify_point, reference_constants
from lattice_isoperimetry.helpers.cell_geometry import (
    build_cell,
    check_face_planes,
    check_vertex_table,
    embed_euclidean,
    export_obj,
)
from lattice_isoperimetry.helpers.families import (
    analyze_box_stratum,
    analyze_rd_stratum,
    enumerate_two_value_orbits,
    family_scan,
    orbit_class,
    verify_opposite_monotonicity,
)
from lattice_isoperimetry.helpers.optimize import minimize_f, random_restart_survey
from lattice_isoperimetry.helpers.quotient import evaluate, f_closed, reference_table
from lattice_isoperimetry.helpers.selling import RHO_BCC, RHO_FCC, RHO_SC
from lattice_isoperimetry.models.enums import Classification, OrbitName, OutputMode
from lattice_isoperimetry.models.marshmallow import (
    EvalReportSchema,
    MonotonicityReportSchema,
    OptimizationResultSchema,
    OrbitClassSchema,
    ReferenceRowSchema,
    RestrictedStratumReportSchema,
    StationaryReportSchema,
    SurveySummarySchema,
    VerificationCheckSchema,
    validate_selling_params,
)
from lattice_isoperimetry.models.reports import OptimizationResult
from lattice_isoperimetry.models.selling import SellingParams

_LOGGER = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_IO_ERROR = 4

Check = Tuple[str, bool, str]


def _fixed(value: float) -> str:
    return f"{value:.{config.HUMAN_DECIMALS}f}"


def _vector(values: Sequence[float]) -> str:
    return "(" + ", ".join(_fixed(value) for value in values) + ")"


def _mode(args: argparse.Namespace) -> OutputMode:
    return OutputMode.JSON if args.json else OutputMode.HUMAN


def _dump(schema: Schema, obj: Any, out: TextIO, many: bool = False) -> None:
    print(json.dumps(schema.dump(obj, many=many), indent=2, ensure_ascii=False), file=out)


def cmd_eval(args: argparse.Namespace, out: TextIO) -> int:
    report = evaluate(validate_selling_params(args.rho))
    if _mode(args) == OutputMode.JSON:
        _dump(EvalReportSchema(), report, out)
        return EXIT_SUCCESS
    print(f"rho          {report.params}", file=out)
    print(f"det A        {_fixed(report.det)}", file=out)
    print(f"F (closed)   {_fixed(report.f_closed)}", file=out)
    print(f"F (cell)     {_fixed(report.f_geometric)}", file=out)
    print(f"Q            {_fixed(report.q)}", file=out)
    print(f"volume       {_fixed(report.volume)}", file=out)
    print("faces:", file=out)
    for name, area in report.faces:
        print(f"  {name:<5} {_fixed(area)}", file=out)
    return EXIT_SUCCESS


def cmd_analyze(args: argparse.Namespace, out: TextIO) -> int:
    if args.stratum:
        stratum_report = (
            analyze_rd_stratum() if args.stratum == "rhombic-dodecahedra" else analyze_box_stratum()
        )
        if _mode(args) == OutputMode.JSON:
            _dump(RestrictedStratumReportSchema(), stratum_report, out)
            return EXIT_SUCCESS
        print(f"stratum           {stratum_report.stratum}", file=out)
        print(f"point             {_vector(stratum_report.point)}", file=out)
        print(f"F                 {_fixed(stratum_report.value)}", file=out)
        print(f"gradient          {_vector(stratum_report.gradient)}", file=out)
        print(f"spectrum          {_vector(stratum_report.spectrum)}", file=out)
        print(f"tangent spectrum  {_vector(stratum_report.tangent_spectrum)}", file=out)
        print(f"strict minimum    {stratum_report.is_strict_min}", file=out)
        return EXIT_SUCCESS

    report = classify_point(
        validate_selling_params(args.rho), gradient_step=args.h_grad, hessian_step=args.h_hess
    )
    if _mode(args) == OutputMode.JSON:
        _dump(StationaryReportSchema(), report, out)
        return EXIT_SUCCESS
    print(f"rho               {report.point}", file=out)
    print(f"gradient          {_vector(report.gradient)}", file=out)
    print("hessian", file=out)
    for row in report.hessian:
        print(f"  {_vector(row)}", file=out)
    print(f"full spectrum     {_vector(report.full_spectrum)}", file=out)
    print(f"tangent spectrum  {_vector(report.tangent_spectrum)}", file=out)
    print(f"active set        {list(report.active_set)}", file=out)
    print(f"stratum           {report.stratum}", file=out)
    print(f"euler residual    {report.euler_residual:.3e}", file=out)
    if report.one_sided:
        print("note              one-sided Hessian on a boundary stratum", file=out)
    print(f"classification    {report.classification.value}", file=out)
    return EXIT_SUCCESS


def cmd_table(args: argparse.Namespace, out: TextIO) -> int:
    rows = reference_table()
    if _mode(args) == OutputMode.JSON:
        _dump(ReferenceRowSchema(), rows, out, many=True)
        return EXIT_SUCCESS
    header = ("structure", "F (exact)", "F", "Q", "Q (tessellations)")
    print("{:<10} {:<20} {:>10} {:>7} {:>18}".format(*header), file=out)
    for name, expression, value, q, measured in rows:
        print(f"{name:<10} {expression:<20} {value:>10.6f} {q:>7.4f} {measured:>18.4f}", file=out)
    return EXIT_SUCCESS


def cmd_orbits(args: argparse.Namespace, out: TextIO) -> int:
    orbits = enumerate_two_value_orbits()
    if _mode(args) == OutputMode.JSON:
        _dump(OrbitClassSchema(), orbits, out, many=True)
        return EXIT_SUCCESS
    for orbit in orbits:
        print(
            f"{orbit.name.value}  weight {orbit.weight}  size {orbit.orbit_size:>2}  "
            f"{orbit.representative}",
            file=out,
        )
    return EXIT_SUCCESS


def cmd_family(args: argparse.Namespace, out: TextIO) -> int:
    scan = family_scan(orbit_class(OrbitName(args.orbit)), args.u_min, args.u_max, args.steps)
    text = scan.to_csv(config.JSON_SIGNIFICANT_DIGITS)
    if args.out:
        with open(args.out, "w") as csv_file:
            csv_file.write(text)
        _LOGGER.info("Family scan written.", extra=dict(path=args.out, rows=len(scan.rows)))
    else:
        out.write(text)
    return EXIT_SUCCESS


def _print_result(result: OptimizationResult, out: TextIO) -> None:
    print(f"start       {result.start}", file=out)
    print(f"minimizer   {_vector(result.minimizer)}", file=out)
    print(f"F           {_fixed(result.f_value)}", file=out)
    print(f"iterations  {result.iterations}", file=out)
    print(f"method      {result.method.value}", file=out)
    print(f"converged   {result.converged}", file=out)


def cmd_minimize(args: argparse.Namespace, out: TextIO) -> int:
    if args.random:
        summary = random_restart_survey(
            args.random, args.seed, workers=args.workers, max_iter=args.max_iter
        )
        if _mode(args) == OutputMode.JSON:
            _dump(SurveySummarySchema(), summary, out)
            return EXIT_SUCCESS
        print(f"evidence            {summary.evidence}", file=out)
        print(f"starts              {summary.n_starts}", file=out)
        print(f"seed                {summary.seed}", file=out)
        print(f"best F              {_fixed(summary.best_f)}", file=out)
        print(f"best minimizer      {_vector(summary.best_minimizer)}", file=out)
        print(f"converged fraction  {summary.converged_fraction:.4f}", file=out)
        print(f"BCC fraction        {summary.bcc_fraction:.4f}", file=out)
        print(f"candidates          {len(summary.counterexample_candidates)}", file=out)
        return EXIT_SUCCESS

    result = minimize_f(
        validate_selling_params(args.start), max_iter=args.max_iter, record_trace=args.trace
    )
    if _mode(args) == OutputMode.JSON:
        _dump(OptimizationResultSchema(), result, out)
    else:
        _print_result(result, out)
    return EXIT_SUCCESS if result.converged else NotConverged.exit_code


def cmd_export(args: argparse.Namespace, out: TextIO) -> int:
    params = validate_selling_params(args.rho)
    text = export_obj(build_cell(params), embed_euclidean(params))
    if args.out:
        with open(args.out, "w") as obj_file:
            obj_file.write(text)
        _LOGGER.info("Cell exported.", extra=dict(path=args.out, rho=str(params)))
    else:
        out.write(text)
    return EXIT_SUCCESS


def _check(name: str, run: Callable[[], Tuple[bool, str]]) -> Check:
    try:
        passed, detail = run()
    except LatticeIsoperimetryException as error:
        passed, detail = False, str(error)
    return name, passed, detail


def _exact_values() -> Tuple[bool, str]:
    constants = reference_constants()
    pairs = ((RHO_BCC, constants.f_bcc), (RHO_FCC, constants.f_fcc), (RHO_SC, constants.f_sc))
    errors = [abs(f_closed(rho) - expected) / expected for rho, expected in pairs]
    return max(errors) <= 1e-12, f"max relative error {max(errors):.2e}"


def _table() -> Tuple[bool, str]:
    printed = [f"{q:.4f}" for _, _, _, q, _ in reference_table()]
    return printed == ["0.5236", "0.7405", "0.7534"], ", ".join(printed)


def _classifications() -> Tuple[bool, str]:
    expected = (
        (RHO_BCC, Classification.INTERIOR_STRICT_MIN),
        (RHO_FCC, Classification.SADDLE),
        (RHO_SC, Classification.NON_STATIONARY),
    )
    found = [classify_point(rho).classification for rho, _ in expected]
    return (
        found == [classification for _, classification in expected],
        ", ".join(classification.value for classification in found),
    )


def _orbits() -> Tuple[bool, str]:
    sizes = [orbit.orbit_size for orbit in enumerate_two_value_orbits()]
    return sizes == [6, 3, 12, 4, 4, 12], "/".join(str(size) for size in sizes)


def _opposite_family() -> Tuple[bool, str]:
    try:
        report = verify_opposite_monotonicity()
    except VerificationFailure as error:
        return False, f"{error.check} at {error.sample}"
    return True, json.dumps(MonotonicityReportSchema().dump(report))


def _strata() -> Tuple[bool, str]:
    reports = (analyze_rd_stratum(), analyze_box_stratum())
    return (
        all(report.is_strict_min for report in reports),
        "; ".join(f"{report.stratum}: {_vector(report.tangent_spectrum)}" for report in reports),
    )


_GEOMETRY_LATTICES = (
    RHO_BCC,
    RHO_FCC,
    RHO_SC,
    RHO_BCC.scaled(1e-6),
    SellingParams(0.3, 1.7, 0.9, 1.2, 0.5, 2.1),
)


def _cell_geometry() -> Tuple[bool, str]:
    findings = []
    for rho in _GEOMETRY_LATTICES:
        vertices, faces = check_vertex_table(rho), check_face_planes(rho)
        if vertices or faces:
            findings.append(f"{rho}: vertices {vertices}, faces {faces}")
    return not findings, "; ".join(findings) or f"{len(_GEOMETRY_LATTICES)} lattices consistent"


def run_checks() -> List[Check]:
    """
    Run the reference computations: exact quotients, the vertex table and face planes of the
    cell, the table of quotients, the classification of BCC, FCC and SC, the orbit sizes, the
    opposite family and the restricted strata.
    """
    return [
        _check("exact_values", _exact_values),
        _check("cell_geometry", _cell_geometry),
        _check("table", _table),
        _check("classification", _classifications),
        _check("orbits", _orbits),
        _check("opposite_family", _opposite_family),
        _check("restricted_strata", _strata),
    ]


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    checks = run_checks()
    if _mode(args) == OutputMode.JSON:
        _dump(
            VerificationCheckSchema(),
            [dict(name=name, passed=passed, detail=detail) for name, passed, detail in checks],
            out,
            many=True,
        )
    else:
        for name, passed, detail in checks:
            print(f"{'PASS' if passed else 'FAIL'}  {name:<18} {detail}", file=out)
    return EXIT_SUCCESS if all(passed for _, passed, _ in checks) else VerificationFailure.exit_code


def _positive_int(value: str) -> int:
    if (number := int(value)) < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    """
    The parser of the command line, one subcommand per operation.
    """
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="Render the output as JSON.")

    parser = argparse.ArgumentParser(
        prog="lattice-iso",
        description="Voronoi cells and isoperimetric quotients of three-dimensional lattices "
        "given by their Selling parameters.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    eval_parser = commands.add_parser("eval", parents=[output], help="Evaluate a lattice.")
    eval_parser.add_argument("--rho", required=True, help="Selling parameters a,b,c,d,e,f.")
    eval_parser.set_defaults(handler=cmd_eval)

    analyze = commands.add_parser(
        "analyze", parents=[output], help="Classify a point as a critical point of F."
    )
    target = analyze.add_mutually_exclusive_group(required=True)
    target.add_argument("--rho", help="Selling parameters a,b,c,d,e,f.")
    target.add_argument(
        "--stratum",
        choices=("rhombic-dodecahedra", "boxes"),
        help="Analyse the restricted functional of a stratum at its symmetric point.",
    )
    analyze.add_argument("--h-grad", type=float, help="Gradient step at unit scale.")
    analyze.add_argument("--h-hess", type=float, help="Hessian step at unit scale.")
    analyze.set_defaults(handler=cmd_analyze)

    table = commands.add_parser("table", parents=[output], help="Quotients of SC, FCC, BCC.")
    table.set_defaults(handler=cmd_table)

    orbits = commands.add_parser("orbits", parents=[output], help="Two-value S4 orbits.")
    orbits.set_defaults(handler=cmd_orbits)

    family = commands.add_parser("family", help="Scan a two-value family as CSV.")
    family.add_argument(
        "--class",
        dest="orbit",
        choices=[name.value for name in OrbitName],
        default=OrbitName.O.value,
    )
    family.add_argument("--u-min", type=float, default=0.0)
    family.add_argument("--u-max", type=float, default=config.FAMILY_U_MAX)
    family.add_argument(
        "--steps",
        type=_positive_int,
        default=int(round(config.FAMILY_U_MAX / config.FAMILY_U_STEP)),
        help="Number of intervals of the grid.",
    )
    family.add_argument("--out", help="Output CSV file (default: standard output).")
    family.set_defaults(handler=cmd_family)

    minimize = commands.add_parser("minimize", parents=[output], help="Minimise F.")
    starts = minimize.add_mutually_exclusive_group(required=True)
    starts.add_argument("--start", help="Starting Selling parameters a,b,c,d,e,f.")
    starts.add_argument("--random", type=_positive_int, help="Number of random restarts.")
    minimize.add_argument("--seed", type=int, default=0)
    minimize.add_argument("--max-iter", type=_positive_int)
    minimize.add_argument("--workers", type=_positive_int)
    minimize.add_argument("--trace", action="store_true", help="Record F at every iteration.")
    minimize.set_defaults(handler=cmd_minimize)

    export = commands.add_parser("export", help="Export the cell as Wavefront OBJ.")
    export.add_argument("--rho", required=True, help="Selling parameters a,b,c,d,e,f.")
    export.add_argument("--out", help="Output OBJ file (default: standard output).")
    export.set_defaults(handler=cmd_export)

    verify = commands.add_parser("verify", parents=[output], help="Run the reference checks.")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Entry point of the command line. Exit codes: 0 success, 1 failed computation or check,
    2 invalid input, 3 degenerate geometry, 4 I/O error.
    """
    logging.basicConfig(
        level=config.LOG_LEVEL, format="%(asctime)s %(levelname)s %(name)s %(message)s"
    )
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out or sys.stdout)
    except LatticeIsoperimetryException as error:
        _LOGGER.error("Command failed.", extra=dict(command=args.command, error=str(error)))
        print(f"error: {error}", file=sys.stderr)
        return error.exit_code
    except OSError as error:
        _LOGGER.error("I/O error.", extra=dict(command=args.command, error=str(error)))
        print(f"error: {error}", file=sys.stderr)
        return EXIT_IO_ERROR
