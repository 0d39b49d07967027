"""`cone <file>`: constraint system and marginal cone of a structure."""
from services.cli.services.io_service import load_structure, write_text
from services.cone.services.pipeline_service import PipelineService
from services.cone.services.row_format_service import format_rows, format_system
from services.polyhedron.services.porta_service import write_ieq

DATA_PROCESSING = {"auto": None, "on": True, "off": False}


def add_pipeline_arguments(parser) -> None:
    parser.add_argument("file", help="Structure in the DSL format")
    parser.add_argument(
        "--data-processing",
        choices=tuple(DATA_PROCESSING),
        default="auto",
        help="Include data processing rows (auto: only for quantum structures)",
    )
    parser.add_argument("--output", "-o", help="Write to a file instead of stdout")


def pipeline_for(args) -> PipelineService:
    return PipelineService(
        load_structure(args.file),
        include_data_processing=DATA_PROCESSING[args.data_processing],
    )


def register(subparsers) -> None:
    parser = subparsers.add_parser("cone", help="Project the entropy cone onto the marginal scenario")
    add_pipeline_arguments(parser)
    parser.add_argument(
        "--marginal-only",
        action="store_true",
        help="Print only the marginal cone, without the full constraint system",
    )
    parser.add_argument("--format", choices=("text", "ieq"), default="text")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    pipeline = pipeline_for(args)
    report = pipeline.run()
    if args.format == "ieq":
        write_text(args.output, write_ieq(report.system), out)
        return 0
    index = report.system.index
    chunks = []
    if not args.marginal_only:
        chunks.append("# full system\n" + format_system(pipeline.full_system()))
    chunks.append("# shannon\n" + format_rows(report.trivial, index))
    chunks.append("# causal\n" + format_rows(report.nontrivial, index))
    write_text(args.output, "".join(chunks), out)
    return 0
