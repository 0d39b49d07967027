"""`eval --dist <json> --ineq <expr>`: slack of an inequality on a distribution."""
from services.cli.services.inequality_parser_service import resolve_inequality
from services.cli.services.io_service import load_distribution
from services.dist.services.entropy_service import evaluate_distribution, evaluate_exact
from shared.config import settings
from shared.utils.helpers import format_rational


def register(subparsers) -> None:
    parser = subparsers.add_parser("eval", help="Evaluate an inequality on a distribution")
    parser.add_argument("--dist", required=True, help="Distribution JSON file")
    parser.add_argument("--ineq", required=True, help="Inequality text or a built-in name")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    candidate = resolve_inequality(args.ineq)
    dist = load_distribution(args.dist)
    slack = evaluate_distribution(candidate, dist)
    out.write(f"slack {slack:.12g}\n")
    exact = evaluate_exact(candidate, dist)
    if exact is not None:
        out.write(f"exact {format_rational(exact)}\n")
    out.write("violated\n" if slack > settings.ENTROPY_TOLERANCE else "satisfied\n")
    return 0
