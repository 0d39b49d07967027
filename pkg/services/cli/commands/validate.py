"""`validate <file>`: structure rules and coexisting sets."""
from shared.schemas.structure import ViolationKind
from shared.utils.helpers import join_names
from services.cli.services.io_service import load_structure
from services.model.services.structure_service import StructureService


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="Check a structure file against the causal rules")
    parser.add_argument("file", help="Structure in the DSL format")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    service = StructureService(load_structure(args.file))
    report = service.validate()
    if not report.ok:
        for violation in report.violations:
            out.write(f"{ViolationKind(violation.kind).value}: {violation.message}\n")
        return 1
    out.write("ok\n")
    for members in service.coexisting_sets:
        out.write(f"coexisting {{{join_names(members)}}}\n")
    return 0
