"""Subcommands of the command-line front end."""
from services.cli.commands import check, cone, evaluate, rays, scan, scenario, validate

COMMANDS = (validate, cone, rays, check, evaluate, scan, scenario)


def register_commands(subparsers) -> None:
    for command in COMMANDS:
        command.register(subparsers)
