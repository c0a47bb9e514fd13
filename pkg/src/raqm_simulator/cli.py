#!/usr/bin/env python3
"""Command line interface of the random-access quantum memory simulator."""

# External modules
import typer

# Bundled modules
from raqm_simulator.run_local_compile import compile_file
from raqm_simulator.run_local_experiments import (
    bounds,
    characterize,
    efficiency_map,
    random_access,
    storage_scan,
)

# Define command structure with typer module
app = typer.Typer(no_args_is_help=True)

app.command("bounds")(bounds)
app.command("characterize")(characterize)
app.command("efficiency-map")(efficiency_map)
app.command("random-access")(random_access)
app.command("storage-scan")(storage_scan)
app.command("compile")(compile_file)


def run():
    """Provide main entry point for the simulator CLI application.

    Usage:
        To tabulate the classical bounds:
            raqm-simulator bounds

        To characterize all slots of the array:
            raqm-simulator characterize --seed 7 --out results
    """
    app()
