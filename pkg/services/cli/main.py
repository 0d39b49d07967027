"""
Command-line entry point.

    python -m services.cli.main [--log-level L] [--log-format F] <command> ...

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""
import argparse
import sys
from typing import Optional, Sequence, TextIO

from shared.config import settings
from shared.exceptions.handlers import handle_exception
from shared.utils.exceptions import UsageError
from shared.utils.logger import configure_logging
from services.cli.commands import register_commands


class _ArgumentParser(argparse.ArgumentParser):
    """Raise UsageError instead of exiting on bad arguments."""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="entropic", description=settings.APP_NAME)
    parser.add_argument("--log-level", default=None, help=f"Log level (default {settings.LOG_LEVEL})")
    parser.add_argument("--log-format", choices=("json", "console"), default=None)
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers)
    return parser


def run(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Parse `argv`, run the command and return the exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level, args.log_format)
        return args.handler(args, stdout)
    except SystemExit as exc:
        # --help and --version
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        return handle_exception(exc, stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
