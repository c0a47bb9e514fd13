"""Python Script for running the harness experiments on cli."""

import logging
import sys
from pathlib import Path
from typing import Annotated, NoReturn, Optional

# External modules
import typer

# Internal modules
from raqm_simulator.control.compiler import ScheduleError, TimingMode
from raqm_simulator.harness.experiment_factory import get_experiment
from raqm_simulator.settings import load_config
from raqm_simulator.utils import LogLevel, log_dict, set_log_folder, specify_root_logger

_logger = logging.getLogger(__name__)

ConfigOption = Annotated[
    Optional[Path],
    typer.Option("--config", help="Flat 'key = value' configuration file. Flags override it."),
]
SeedOption = Annotated[
    Optional[int], typer.Option("--seed", help="Master seed of all random streams.")
]
ShotsOption = Annotated[
    Optional[int], typer.Option("--shots", help="Registered photons per basis and input state.")
]
AnalyticOption = Annotated[
    Optional[bool],
    typer.Option(
        "--analytic/--sampled", help="Use expectation values instead of Monte Carlo sampling."
    ),
]
OutOption = Annotated[
    Optional[Path], typer.Option("--out", help="Folder for the result files.")
]
TimingOption = Annotated[
    Optional[bool],
    typer.Option(
        "--strict-timing/--warn-timing",
        help="Reject storage times off the Larmor revivals, or only warn about them.",
    ),
]
WorkersOption = Annotated[
    Optional[int], typer.Option("--workers", help="Worker processes; results do not depend on it.")
]
LogsFolderOption = Annotated[
    Optional[str],
    typer.Option(
        "--logs-folder",
        help="This is the folder where we store the log file. You can either provide a folder relative "
        "to the current folder or you provide an absolute path. The default will be the current folder.",
    ),
]
LogLevelOption = Annotated[
    LogLevel,
    typer.Option(
        "--log-level",
        help="This gives you the possibilities to set different kinds of logging depth.",
    ),
]

DOMAIN_ERRORS = (ValueError, KeyError, FileNotFoundError, ScheduleError)


def setup_logging(
    logs_folder: Optional[str], log_level: LogLevel, use_stderr: bool = False
) -> None:
    """Configure the root logger for a CLI command, logging to stderr if ``use_stderr``."""
    specify_root_logger(
        log_level=log_dict[LogLevel(log_level)],
        logs_folder=set_log_folder(cwd=Path.cwd(), logs_folder=logs_folder),
        stream=sys.stderr if use_stderr else None,
    )


def fail(error: Exception) -> NoReturn:
    """Log ``error``, echo it to stderr and exit with code 1."""
    _logger.error(f"Aborted: {error}")
    typer.echo(f"Error: {error}", err=True)
    raise typer.Exit(code=1)


def timing_mode(strict: Optional[bool]) -> Optional[TimingMode]:
    """Translate the ``--strict-timing/--warn-timing`` flag."""
    if strict is None:
        return None
    return TimingMode.strict if strict else TimingMode.warn


def run_experiment(experiment_name: str, config_path: Optional[Path], **overrides) -> None:
    """Load the configuration, run one registered experiment and report its files."""
    try:
        config = load_config(config_path, **overrides)
        response = get_experiment(experiment_name, config).run(config.output_dir)
    except DOMAIN_ERRORS as e:
        fail(e)
    for key, value in response.report.items():
        typer.echo(f"{key}: {value}")
    for file_name in response.files:
        typer.echo(f"Wrote {file_name}")


def characterize(
    config_path: ConfigOption = None,
    seed: SeedOption = None,
    shots: ShotsOption = None,
    analytic: AnalyticOption = None,
    out: OutOption = None,
    strict_timing: TimingOption = None,
    workers: WorkersOption = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.info,
) -> None:
    """Measure the six-state storage fidelity of all 105 slots and compare it with the classical bounds."""
    setup_logging(logs_folder, log_level)
    run_experiment(
        "characterize",
        config_path,
        seed=seed,
        shots=shots,
        analytic=analytic,
        output_dir=out,
        timing_mode=timing_mode(strict_timing),
        workers=workers,
    )


def efficiency_map(
    config_path: ConfigOption = None,
    seed: SeedOption = None,
    shots: Annotated[
        Optional[int], typer.Option("--shots", help="Input pulses per cell.")
    ] = None,
    analytic: AnalyticOption = None,
    out: OutOption = None,
    workers: WorkersOption = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.info,
) -> None:
    """Scan the retrieval efficiency of all 210 cells from click statistics."""
    setup_logging(logs_folder, log_level)
    run_experiment(
        "efficiency-map",
        config_path,
        seed=seed,
        efficiency_shots=shots,
        analytic=analytic,
        output_dir=out,
        workers=workers,
    )


def random_access(
    config_path: ConfigOption = None,
    seed: SeedOption = None,
    shots: ShotsOption = None,
    analytic: AnalyticOption = None,
    out: OutOption = None,
    strict_timing: TimingOption = None,
    orders: Annotated[
        Optional[str],
        typer.Option("--orders", help="Read orders separated by ';', e.g. '1-2-3;3-2-1;2-1-3'."),
    ] = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.info,
) -> None:
    """Write three qubits, read them back in several orders and compare with the classical bounds."""
    setup_logging(logs_folder, log_level)
    run_experiment(
        "random-access",
        config_path,
        seed=seed,
        shots=shots,
        analytic=analytic,
        output_dir=out,
        timing_mode=timing_mode(strict_timing),
        read_orders=orders,
    )


def bounds(
    config_path: ConfigOption = None,
    mu_grid: Annotated[
        Optional[str], typer.Option("--mu-grid", help="Comma separated mean photon numbers.")
    ] = None,
    eta_grid: Annotated[
        Optional[str], typer.Option("--eta-grid", help="Comma separated retrieval efficiencies.")
    ] = None,
    out: OutOption = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.warning,
) -> None:
    """Print the classical bound table (mu, eta, n_min, gamma, bound) as CSV and write it with the per-slot bounds."""
    setup_logging(logs_folder, log_level, use_stderr=True)
    try:
        config = load_config(
            config_path, bounds_mu_grid=mu_grid, bounds_eta_grid=eta_grid, output_dir=out
        )
        response = get_experiment("bounds", config).run(config.output_dir)
    except DOMAIN_ERRORS as e:
        fail(e)
    typer.echo(Path(response.files[0]).read_text(), nl=False)


def storage_scan(
    config_path: ConfigOption = None,
    row: Annotated[Optional[int], typer.Option("--row", help="Row of the scanned slot.")] = None,
    col: Annotated[
        Optional[int], typer.Option("--col", help="Column of the U cell of the scanned slot.")
    ] = None,
    max_periods: Annotated[
        Optional[int], typer.Option("--max-periods", help="Scanned storage time in Larmor periods.")
    ] = None,
    seed: SeedOption = None,
    shots: Annotated[
        Optional[int], typer.Option("--shots", help="Input pulses per storage time.")
    ] = None,
    analytic: AnalyticOption = None,
    out: OutOption = None,
    logs_folder: LogsFolderOption = None,
    log_level: LogLevelOption = LogLevel.info,
) -> None:
    """Scan the retrieval efficiency of one slot over the storage time."""
    setup_logging(logs_folder, log_level)
    if (row is None) != (col is None):
        fail(ValueError("--row and --col must be given together."))
    run_experiment(
        "storage-scan",
        config_path,
        scan_slot=None if row is None else f"{row},{col}",
        scan_max_periods=max_periods,
        seed=seed,
        efficiency_shots=shots,
        analytic=analytic,
        output_dir=out,
    )
