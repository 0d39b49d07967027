"""`scenario list` and `scenario <name> [--emit]`: built-in structures."""
from shared.utils.helpers import join_names
from services.cli.services.io_service import write_text
from services.model.services.dsl_service import emit_structure
from services.model.services.structure_service import StructureService
from services.scenarios.services.builders_service import SCENARIO_NAMES, get_scenario
from services.scenarios.services.inequalities_service import INEQUALITY_NAMES


def register(subparsers) -> None:
    parser = subparsers.add_parser("scenario", help="List or emit built-in structures")
    parser.add_argument("name", help="`list`, or a scenario name such as triangle, ic2, network4_2")
    parser.add_argument("--emit", action="store_true", help="Print the structure in the DSL format")
    parser.add_argument("--output", "-o", help="Write to a file instead of stdout")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    if args.name == "list":
        lines = ["# scenarios"] + list(SCENARIO_NAMES) + ["# inequalities"] + list(INEQUALITY_NAMES)
        out.write("\n".join(lines) + "\n")
        return 0
    structure = get_scenario(args.name)
    if args.emit:
        write_text(args.output, emit_structure(structure), out)
        return 0
    service = StructureService(structure)
    lines = [
        f"systems {len(structure.systems)}",
        f"operations {len(structure.operations)}",
        f"coordinates {len(service.subset_coordinates())}",
    ]
    lines += [f"coexisting {{{join_names(members)}}}" for members in service.coexisting_sets]
    lines += [
        f"context {{{join_names(structure.sort_names(context))}}}"
        for context in structure.marginal_scenario.contexts
    ]
    write_text(args.output, "\n".join(lines) + "\n", out)
    return 0
