"""Python Script for compiling pulse programs on cli."""

import logging
from pathlib import Path
from typing import Annotated, Optional

# External modules
import typer

# Internal modules
from raqm_simulator.control.compiler import compile_program
from raqm_simulator.control.program import load_program
from raqm_simulator.run_local_experiments import (
    DOMAIN_ERRORS,
    ConfigOption,
    LogLevelOption,
    LogsFolderOption,
    OutOption,
    TimingOption,
    fail,
    setup_logging,
    timing_mode,
)
from raqm_simulator.settings import config_hash, load_config
from raqm_simulator.utils import LogLevel, dict_to_json

_logger = logging.getLogger(__name__)


def compile_file(
    program_file: Annotated[
        Path,
        typer.Argument(
            help="Program with one 'write|read <qubit_id> <row>,<col> <time_us> [state]' event per line."
        ),
    ],
    config_path: ConfigOption = None,
    out: OutOption = None,
    strict_timing: TimingOption = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.info,
) -> None:
    """Compile a pulse program into RF events for the control, write and read AODs."""
    setup_logging(logs_folder, log_level)
    try:
        config = load_config(config_path, output_dir=out, timing_mode=timing_mode(strict_timing))
        program = load_program(program_file)
        schedule = compile_program(program, config.memory_params(), config.timing_mode)
    except DOMAIN_ERRORS as e:
        fail(e)

    config.output_dir.mkdir(parents=True, exist_ok=True)
    output_file_path = config.output_dir / f"{Path(program_file).stem}_rf_events.json"
    dict_to_json(
        json_path=output_file_path,
        dictionary={
            **schedule.to_json_dict(),
            "seed": config.seed,
            "config_hash": config_hash(config),
        },
    )
    _logger.info(f"Compiled {program_file} to {output_file_path}.")
    for qubit_id, storage_time in sorted(schedule.storage_times_us.items()):
        typer.echo(f"qubit {qubit_id}: storage time {storage_time} us")
    typer.echo(f"Wrote {output_file_path}")
