"""Map exceptions to exit codes and JSON error lines on stderr."""
import sys
from typing import Any, Callable, Dict, TextIO

import orjson
import pydantic

from shared.utils.exceptions import EntropicException
from shared.utils.logger import get_logger

logger = get_logger(__name__)


def exit_code_for(exc: BaseException) -> int:
    """Exit code for an exception raised while running a command."""
    if isinstance(exc, EntropicException):
        return exc.exit_code
    return 1


def _payload(exc: BaseException) -> Dict[str, Any]:
    if isinstance(exc, EntropicException):
        return exc.to_dict()
    if isinstance(exc, pydantic.ValidationError):
        return {
            "error": "Validation Error",
            "code": "VALIDATION_ERROR",
            "details": orjson.loads(exc.json()),
        }
    return {
        "error": "Internal Error",
        "code": "INTERNAL_ERROR",
        "details": str(exc),
    }


def handle_exception(exc: BaseException, stream: TextIO = None) -> int:
    """
    Render an exception as one JSON line and return its exit code.

    Args:
        exc: The exception
        stream: Output stream, stderr by default

    Returns:
        Process exit code
    """
    stream = stream or sys.stderr
    if not isinstance(exc, (EntropicException, pydantic.ValidationError)):
        logger.exception("Unhandled error", error=str(exc))
    stream.write(orjson.dumps(_payload(exc)).decode() + "\n")
    return exit_code_for(exc)


def run_with_handlers(func: Callable[[], int]) -> int:
    """Run `func`, converting raised exceptions to exit codes."""
    try:
        return func()
    except Exception as exc:  # noqa: BLE001
        return handle_exception(exc)
