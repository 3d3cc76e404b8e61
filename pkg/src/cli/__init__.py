from src.cli.base_command import BaseCommand, build_parser, run_from_CLI
from src.cli.commands import (
    COMMANDS,
    CompareCommand,
    LatticeInfoCommand,
    SolveCommand,
    SpectraCommand,
    SymbolicCommand,
    main,
)

__all__ = [
    "COMMANDS",
    "BaseCommand",
    "CompareCommand",
    "LatticeInfoCommand",
    "SolveCommand",
    "SpectraCommand",
    "SymbolicCommand",
    "build_parser",
    "main",
    "run_from_CLI",
]
