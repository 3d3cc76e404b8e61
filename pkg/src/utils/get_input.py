# Set of methods to locate, validate and load JSON run configurations

import json
import pathlib

from src.models.errors import ConfigurationError


def extract_input_json(file_path: str | pathlib.Path) -> dict:
    """Load a JSON configuration file into a dict.

    Raises FileNotFoundError for a missing file and ConfigurationError for a
    file that is not ``.json`` or does not hold a JSON object.
    """
    validate_file_path(file_path)
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            input_json = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Malformed JSON in {file_path}: {e}") from e
    if not isinstance(input_json, dict):
        raise ConfigurationError(f"Top level of {file_path} must be a JSON object")
    return input_json


def validate_file_path(file_path: str | pathlib.Path) -> bool:
    if not file_exists(file_path):
        raise FileNotFoundError(f"File not found: {file_path}")
    if not path_endswith_json(file_path):
        raise ConfigurationError(f"File is not a JSON file: {file_path}")
    return True


def path_endswith_json(file_path: str | pathlib.Path) -> bool:
    return get_file_extension(file_path).lower() == ".json"


def get_file_extension(file_path: str | pathlib.Path) -> str:
    return pathlib.Path(file_path).suffix


def file_exists(file_path: str | pathlib.Path) -> bool:
    return pathlib.Path(file_path).is_file()
