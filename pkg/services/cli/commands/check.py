"""`check <file> --ineq <expr>`: LP validity with a replayable certificate."""
from pathlib import Path

from shared.schemas.certificate import Verdict
from shared.utils.exceptions import EntropicException
from shared.utils.logger import get_logger
from services.cli.services.inequality_parser_service import resolve_inequality
from services.cli.services.io_service import certificate_to_json, load_structure
from services.cone.services.cone_service import ConeService
from services.verify.services.verify_service import VerifyService

logger = get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Decide whether the structure implies an inequality")
    parser.add_argument("file", help="Structure in the DSL format")
    parser.add_argument("--ineq", required=True, help="Inequality text or a built-in name")
    parser.add_argument("--certificate", help="Write the certificate as JSON to this path")
    parser.add_argument(
        "--no-data-processing",
        action="store_true",
        help="Leave data processing rows out of the system",
    )
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    candidate = resolve_inequality(args.ineq)
    system = ConeService(load_structure(args.file)).assemble(
        include_data_processing=not args.no_data_processing
    )
    verifier = VerifyService(system)
    certificate = verifier.is_valid(candidate)
    if not verifier.replay(certificate):
        raise EntropicException("Certificate failed to replay", code="INTERNAL_ERROR")
    if args.certificate:
        Path(args.certificate).write_bytes(certificate_to_json(certificate, system.index) + b"\n")
        logger.info("Wrote certificate", path=args.certificate)
    verdict = "valid" if certificate.verdict == Verdict.VALID else "not implied"
    out.write(f"{verdict}\n")
    return 0
