"""File Handler Module
Handles reading saved results and writing new ones.
- Output paths are validated against the supported result types and their
  directories are created on demand.
- Text, CSV rows and pydantic models each have a dedicated writer.
"""

import csv
import json
import logging
import os
from collections.abc import Iterable, Sequence
from enum import Enum
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel
from pydantic_core import to_jsonable_python

from src.utils.get_input import file_exists, get_file_extension

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class FileHandlerMode(Enum):
    READ = "r"
    WRITE = "w"


class ResultFileTypes(Enum):
    JSON = ".json"
    CSV = ".csv"
    TEXT = ".txt"


class FileHandler:
    def __init__(self, mode: FileHandlerMode = FileHandlerMode.WRITE):
        self.mode: FileHandlerMode = mode
        self.file_path: Path | None = None
        self.file_type: ResultFileTypes | None = None
        self.written: list[Path] = []  # every path saved through this handler

    def load_file(self, file_path: str | Path) -> bool:
        """Validate a result file for reading.
        - Raises FileNotFoundError if the path does not exist.
        - Raises ValueError for an unsupported extension.
        """
        self._read_mode_validation()
        if not file_exists(file_path):
            raise FileNotFoundError(f"File not found: {file_path}")
        self.__map_extension_to_file_type(file_path)
        return True

    def read_file(self) -> str:
        """Read the entire content of the loaded file."""
        self._read_mode_validation()
        if self.file_path is None:
            raise ValueError("No file has been loaded.")
        return self.file_path.read_text(encoding="utf-8")

    def load_model(self, file_path: str | Path, model: type[ModelT]) -> ModelT:
        """Load a JSON result file back into the pydantic model that wrote it.
        - Raises ValueError for a non-JSON path.
        - Raises pydantic's ValidationError when the content does not match.
        """
        self.load_file(file_path)
        if self.file_type is not ResultFileTypes.JSON:
            raise ValueError(f"Expected a JSON file, got {self.file_path}")
        return model.model_validate_json(self.read_file())

    def _write_mode_validation(self):
        if self.mode is not FileHandlerMode.WRITE:
            raise ValueError(f"FileHandler is not in write mode, current mode: {self.mode}")
        return True

    def _read_mode_validation(self):
        if self.mode is not FileHandlerMode.READ:
            raise ValueError(f"FileHandler is not in read mode, current mode: {self.mode}")
        return True

    def validate_output_file(self, file_path: str | Path) -> Path:
        """Validate the output file path and set file_path and file_type.
        - Maps the extension onto ResultFileTypes.
        - Creates the parent directory when missing and checks it is writable.
        """
        self._write_mode_validation()
        self.__map_extension_to_file_type(file_path)
        self.__write_dir_check(file_path)
        return self.file_path

    def __map_extension_to_file_type(self, file_path: str | Path) -> bool:
        extension = get_file_extension(file_path)
        try:
            self.file_type = ResultFileTypes(extension)
        except ValueError:
            raise ValueError(
                f"Unsupported file type: {extension}"
                f" Supported types are: {[e.value for e in ResultFileTypes]}"
            )
        self.file_path = Path(file_path)
        return True

    def __write_dir_check(self, file_path: str | Path) -> bool:
        directory = os.path.dirname(file_path) or "."
        if not os.path.exists(directory):
            os.makedirs(directory)
            logger.info("Created output directory %s", directory)
        if not os.access(directory, os.W_OK):
            raise PermissionError(f"Directory is not writable: {directory}")
        return True

    def save_file(self, output_path: str | Path, data: str) -> Path:
        """Save text to the output path."""
        path = self.validate_output_file(output_path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(data)
        return self.__record(path)

    def save_rows(
        self, output_path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> Path:
        """Save a table as CSV with a header row."""
        path = self.validate_output_file(output_path)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            writer.writerows(rows)
        return self.__record(path)

    def save_json(self, output_path: str | Path, payload: Any) -> Path:
        """Save a pydantic model (or anything pydantic can serialise) as indented JSON."""
        if isinstance(payload, BaseModel):
            text = payload.model_dump_json(indent=2, by_alias=True)
        else:
            text = json.dumps(to_jsonable_python(payload, by_alias=True), indent=2)
        return self.save_file(output_path, text + "\n")

    def save_table(
        self,
        output_path: str | Path,
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        output_format: str,
    ) -> Path:
        """Save a table as CSV or as a JSON list of records, by output_format."""
        path = Path(output_path).with_suffix(f".{output_format}")
        if output_format == "csv":
            return self.save_rows(path, header, rows)
        return self.save_json(path, [dict(zip(header, row)) for row in rows])

    def __record(self, path: Path) -> Path:
        self.written.append(path)
        logger.info("Wrote %s", path)
        return path
