import copy
from typing import Any

from pydantic import ValidationError

from src.models.errors import ConfigurationError
from src.models.schema import RunConfig


class RunConfigProcessor:
    """
    RunConfigProcessor
    Converts raw JSON input plus command-line overrides into a RunConfig and
    caches the result for subsequent access.
    Parameters
    ----------
    input_json : dict, optional
        Raw JSON mapping read from the configuration file. Missing keys take
        the RunConfig defaults, so an empty mapping is a valid configuration.
    Attributes
    ----------
    input_json : dict
        The raw input currently held by the processor.
    run_config : RunConfig or None
        Cached RunConfig, None until processing succeeds.
    Methods
    -------
    get_run_config() -> RunConfig
        Return the cached RunConfig, processing input_json first if needed.
    process_input_into_config(json_data=None, **overrides) -> RunConfig
        Apply overrides (seed, order, output_dir, output_format, solution_path;
        None means "not given"; order also sets symbolic_order when >= 1) on
        a copy of the raw input, validate it into a RunConfig, cache and
        return it.
    Raises
    ------
    ConfigurationError
        If the input does not validate; the pydantic error text is included.
    """

    def __init__(self, input_json: dict | None = None):
        self.input_json: dict = input_json or {}
        self.run_config: RunConfig | None = None

    def get_run_config(self) -> RunConfig:
        if self.run_config is None:
            self.process_input_into_config()
        return self.run_config

    def process_input_into_config(
        self,
        json_data: dict | None = None,
        seed: int | None = None,
        order: int | None = None,
        output_dir: str | None = None,
        output_format: str | None = None,
        solution_path: str | None = None,
    ) -> RunConfig:
        if json_data is not None:
            self.input_json = json_data

        data: dict[str, Any] = copy.deepcopy(self.input_json)
        if seed is not None:
            initial = data.setdefault("initial", {})
            if not isinstance(initial, dict):
                raise ConfigurationError("'initial' must be a JSON object")
            initial["seed"] = seed
        if order is not None:
            data.pop("order", None)
            data["N"] = order
            if order >= 1:
                data["symbolic_order"] = order
        if output_dir is not None:
            data["output_dir"] = output_dir
        if output_format is not None:
            data["output_format"] = output_format
        if solution_path is not None:
            data["solution_path"] = solution_path

        try:
            self.run_config = RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigurationError(f"Invalid run configuration: {e}") from e
        return self.run_config
