"""Exception handling for command-line entry points."""
from shared.exceptions.handlers import exit_code_for, handle_exception, run_with_handlers

__all__ = ["exit_code_for", "handle_exception", "run_with_handlers"]
