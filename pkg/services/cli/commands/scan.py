"""`scan --scenario ic2 --ineq <name> --step <q>`: boundary CSV over the box section."""
from shared.utils.exceptions import UsageError
from services.cli.services.inequality_parser_service import resolve_inequality
from services.cli.services.io_service import write_text
from services.dist.services.scan_service import ScanService, format_scan_csv

SCAN_SCENARIOS = ("ic2",)


def register(subparsers) -> None:
    parser = subparsers.add_parser("scan", help="Least violating PR weight per noise level")
    parser.add_argument("--scenario", default="ic2", help="Protocol scenario (ic2)")
    parser.add_argument("--ineq", required=True, help="Inequality text or a built-in name")
    parser.add_argument("--step", required=True, help="Grid step for epsilon, rational p/q")
    parser.add_argument("--resolution", type=float, help="Bisection resolution for gamma")
    parser.add_argument("--workers", type=int, help="Worker processes for grid points")
    parser.add_argument("--output", "-o", help="Write the CSV to a file instead of stdout")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    if args.scenario not in SCAN_SCENARIOS:
        raise UsageError(f"Unknown scan scenario '{args.scenario}', expected one of {', '.join(SCAN_SCENARIOS)}")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be at least 1")
    candidate = resolve_inequality(args.ineq)
    if candidate.name is None:
        candidate = candidate.model_copy(update={"name": args.ineq})
    result = ScanService(candidate, args.step, args.resolution).run(args.workers)
    write_text(args.output, format_scan_csv(result), out)
    return 0
