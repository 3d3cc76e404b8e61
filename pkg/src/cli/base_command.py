# Import abstract base class
from abc import ABC, abstractmethod
import argparse
import logging
from pathlib import Path

from src.models.errors import (
    ConfigurationError,
    ExitCode,
    FieldValidationError,
    LabError,
    LatticeIndexError,
    LatticeMismatchError,
    NumericError,
    OrderRangeError,
)
from src.models.schema import RunConfig
from src.utils.config_processor import RunConfigProcessor
from src.utils.file_handler import FileHandler, FileHandlerMode
from src.utils.get_input import extract_input_json

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class BaseCommand(ABC):
    """Abstract base class for lab commands.

    properties
    ----------
    run_config : RunConfig
        The processed RunConfig from the RunConfigProcessor.

    output_dir : Path
        Directory this command writes into: ``<output_dir>/<name>``.

    Methods
    -------
    load_config(input_json: dict, **overrides)
        Function to load and process input JSON data (plus CLI overrides)
        into a RunConfig.

    output_path(file_name: str) -> Path
        Function to place a result file inside the command's output directory.

    execute() -> ExitCode
        Core functionality of the command. Writes its result files and
        returns OK, or CHECK_FAILED when a reported check does not hold.

    run() -> ExitCode
        Function to run execute() and map library errors onto exit codes.

    -------
    """

    name: str = ""
    help: str = ""

    def __init__(self, file_handler: FileHandler | None = None):
        self.config_processor = RunConfigProcessor()
        self.file_handler = file_handler or FileHandler(FileHandlerMode.WRITE)

    @property
    def run_config(self) -> RunConfig:
        """Returns the processed RunConfig from the RunConfigProcessor."""
        return self.config_processor.get_run_config()

    @property
    def output_dir(self) -> Path:
        return Path(self.run_config.output_dir) / self.name

    def load_config(self, input_json: dict, **overrides) -> RunConfig:
        """Function to load and process input JSON data into a RunConfig."""
        return self.config_processor.process_input_into_config(input_json, **overrides)

    def output_path(self, file_name: str) -> Path:
        return self.output_dir / file_name

    @abstractmethod
    def execute(self) -> ExitCode:
        """Function to compute and save the command's results."""
        pass

    def run(self) -> ExitCode:
        """Run execute(), turning library errors into exit codes.
        - ConfigurationError, order and lattice errors -> CONFIG_ERROR
        - FieldValidationError -> VALIDATION_ERROR
        - NumericError (eigensolver, divergent integration) -> NUMERIC_ERROR
        - OSError -> IO_ERROR
        """
        try:
            return self.execute()
        except FieldValidationError as e:
            logger.error("%s", e)
            return ExitCode.VALIDATION_ERROR
        except (ConfigurationError, OrderRangeError, LatticeIndexError, LatticeMismatchError) as e:
            logger.error("%s", e)
            return ExitCode.CONFIG_ERROR
        except NumericError as e:
            logger.error("%s", e)
            return ExitCode.NUMERIC_ERROR
        except OSError as e:
            logger.error("%s", e)
            return ExitCode.IO_ERROR
        except LabError as e:
            logger.error("%s", e)
            return ExitCode.CONFIG_ERROR


def add_global_options(parser: argparse.ArgumentParser, defaults: bool = True) -> None:
    """Options accepted both before and after the command name.

    Subcommand copies use SUPPRESS defaults so a flag given before the
    command is not reset by the subparser.
    """

    def default(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument(
        "--config", type=str, default=default(None), help="Path to the run configuration JSON file."
    )
    parser.add_argument("--out", type=str, default=default(None), help="Output directory.")
    parser.add_argument(
        "--format",
        choices=["json", "csv"],
        default=default(None),
        help="Format of tabular results.",
    )
    parser.add_argument(
        "--seed", type=int, default=default(None), help="Seed for random initial fields."
    )
    parser.add_argument(
        "--order",
        type=int,
        default=default(None),
        help="Series order N (also the symbolic order).",
    )
    parser.add_argument(
        "--solution",
        type=str,
        default=default(None),
        help="Saved taylor_solution.json to analyse instead of solving again.",
    )
    parser.add_argument(
        "--log-level",
        default=default("WARNING"),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level.",
    )


def build_parser(commands: dict[str, type[BaseCommand]]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Taylor-in-time matrix formulation of periodic Navier-Stokes"
    )
    add_global_options(parser)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, command in commands.items():
        add_global_options(subparsers.add_parser(name, help=command.help), defaults=False)
    return parser


def run_from_CLI(commands: dict[str, type[BaseCommand]], argv: list[str] | None = None) -> int:
    """The CLI implementation to run one command end to end; returns the exit code."""
    parser = build_parser(commands)
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level, format=LOG_FORMAT)

    command = commands[args.command]()
    try:
        data = extract_input_json(args.config) if args.config else {}
        command.load_config(
            data,
            seed=args.seed,
            order=args.order,
            output_dir=args.out,
            output_format=args.format,
            solution_path=args.solution,
        )
    except (ConfigurationError, FileNotFoundError) as e:
        logger.error("%s", e)
        print(f"{args.command}: configuration error: {e}")
        return int(ExitCode.CONFIG_ERROR)

    code = command.run()
    if code is ExitCode.OK:
        print(f"{args.command} completed successfully. Output saved to {command.output_dir}")
    else:
        print(f"{args.command} finished with {code.name} ({int(code)})")
    return int(code)
