"""`rays <file>`: extreme rays of the marginal cone."""
from shared.schemas.polyhedron import ConeVRep
from services.cli.commands.cone import add_pipeline_arguments, pipeline_for
from services.cli.services.io_service import write_text
from services.polyhedron.services.dd_service import extreme_rays
from services.polyhedron.services.porta_service import write_poi


def format_vrep(vrep: ConeVRep) -> str:
    """Coordinate header, one ray per line, lineality lines prefixed `lin`."""
    index = vrep.index
    lines = ["# " + " ".join(index.label(k) for k in range(len(index)))]
    lines += [" ".join(str(v) for v in ray.coordinates) for ray in vrep.rays]
    lines += ["lin " + " ".join(str(v) for v in ray.coordinates) for ray in vrep.lineality]
    return "\n".join(lines) + "\n"


def register(subparsers) -> None:
    parser = subparsers.add_parser("rays", help="Extreme rays of the marginal cone")
    add_pipeline_arguments(parser)
    parser.add_argument("--format", choices=("text", "poi"), default="text")
    parser.set_defaults(handler=run)


def run(args, out) -> int:
    vrep = extreme_rays(pipeline_for(args).run().system)
    text = write_poi(vrep) if args.format == "poi" else format_vrep(vrep)
    write_text(args.output, text, out)
    return 0
