"""Module to collect helper functions for logging and result files of the raqm-simulator package."""

import json
import logging
import sys
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Mapping, Optional, TextIO

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.10g"


class LogLevel(str, Enum):
    """Class for different log levels."""

    critical = "critical"
    error = "error"
    warning = "warning"
    info = "info"
    debug = "debug"
    notset = "notset"


log_dict = {
    "critical": logging.CRITICAL,
    "error": logging.ERROR,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
    "notset": logging.NOTSET,
}


def specify_root_logger(log_level: int, logs_folder: Path, stream: Optional[TextIO] = None):
    """Configure the root logger with a specific formatting and log level.

    A StreamHandler writes messages of at least ``log_level`` to ``stream``
    (stdout unless given) and a FileHandler keeps every message down to DEBUG
    in the logs folder.

    Attributes
    ----------
        log_level (int): The log_level to use for the logging given as int.
        logs_folder (Path): The folder where we store the log file.
        stream (TextIO): The console stream, stdout if None.

    """
    logging.root.setLevel(logging.NOTSET)

    stream_handler = logging.StreamHandler(sys.stdout if stream is None else stream)
    stream_handler.setLevel(log_level)

    # The log file keeps everything for later inspection of a run
    file_handler = create_file_handler(logs_folder)
    file_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter("%(asctime)s - %(levelname)-8s - %(message)s")
    stream_handler.setFormatter(formatter)
    file_handler.setFormatter(formatter)

    logging.root.handlers = [stream_handler, file_handler]


def create_file_handler(logs_path: Path) -> logging.FileHandler:
    """Create a file handler for logging to a file.

    Attributes
    ----------
        logs_path (Path): The path where the log file should be stored.

    """
    initial_time = datetime.now().strftime("%Y%m%d%H%M%S")
    log_file = logs_path / f"raqm_simulator_{initial_time}.log"
    return logging.FileHandler(log_file)


def set_log_folder(cwd: Path, logs_folder: Optional[str] = None) -> Path:
    """Return the folder for the log file.

    Without ``logs_folder`` the current working directory is used. A given
    folder may be absolute or relative to ``cwd``.

    Raises
    ------
        FileNotFoundError: If neither ``logs_folder`` nor ``cwd / logs_folder`` exists.

    """
    if logs_folder is None:
        return cwd
    for candidate in (Path(logs_folder), cwd / logs_folder):
        if candidate.is_dir():
            return candidate
    raise FileNotFoundError(f"Neither {logs_folder} nor {cwd / logs_folder} is a folder.")


def _to_builtin(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable.")


def dict_to_json(json_path: Path, dictionary: dict) -> None:
    """Write a dictionary as JSON with sorted keys, so equal content gives equal bytes.

    Args:
    ----
        json_path (Path): The path to the JSON file to be written.
        dictionary (dict): The dictionary to be converted to JSON.

    Raises:
    ------
        OSError: If there is an error writing the JSON file.

    """
    with open(str(json_path), "w") as f:
        json.dump(dictionary, f, indent=4, sort_keys=True, default=_to_builtin)
        f.write("\n")


def metadata_line(metadata: Mapping[str, object]) -> str:
    """Return the ``# key=value ...`` comment line opening every CSV result."""
    return "# " + " ".join(f"{key}={value}" for key, value in metadata.items())


def frame_to_csv(
    csv_path: Path,
    frame: pd.DataFrame,
    metadata: Mapping[str, object],
    index: bool = False,
    float_format: str = FLOAT_FORMAT,
) -> Path:
    """Write ``frame`` below a metadata comment line with a fixed float format.

    Args:
    ----
        csv_path (Path): Target file, overwritten if present.
        frame (pd.DataFrame): Table to write.
        metadata (Mapping): Key/value pairs for the comment line, e.g. seed and config hash.
        index (bool): Whether to write the index column.
        float_format (str): printf-style format applied to every float.

    """
    with open(csv_path, "w", newline="") as f:
        f.write(metadata_line(metadata) + "\n")
        frame.to_csv(f, index=index, float_format=float_format, lineterminator="\n")
    return csv_path


def grid_to_csv(
    csv_path: Path, grid: np.ndarray, metadata: Mapping[str, object]
) -> Path:
    """Write a 15 x 14 heatmap with row labels and column headers."""
    frame = pd.DataFrame(grid)
    frame.index.name = "row"
    return frame_to_csv(csv_path, frame, metadata, index=True)
