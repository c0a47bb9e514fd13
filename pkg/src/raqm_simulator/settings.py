"""Python Script to define Experiment Settings.

The configuration file is flat ``key = value`` text; keys are the field
names of :class:`ExperimentConfig` and ``#`` starts a comment::

    # weak coherent input, mean photon number 0.5
    mu = 0.5
    # spin-wave 1/e decay time (us)
    tau_us = 27.8
    # retrieval revives at multiples of the Larmor period (us)
    larmor_period_us = 1.38
    # average conditional fidelity the depolarization is calibrated to
    target_fidelity = 0.9445
    # efficiency map: 18% in the middle, about 2% at the edge
    eta_center = 0.18
    eta_edge = 0.02
    # 65% fibre coupling of every optical path
    coupling_efficiency = 0.65
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from raqm_simulator.control.compiler import TimingMode
from raqm_simulator.memory.cell_array import StorageChannel, calibrate_depolarization
from raqm_simulator.memory.cells import QubitSlot
from raqm_simulator.memory.efficiency_map import (
    REFERENCE_STORAGE_TIME_US,
    EfficiencyMap,
    LarmorEnvelope,
    MemoryParams,
    default_efficiency_map,
    load_efficiency_map,
)
from raqm_simulator.photonics.detector import DetectorModel

_logger = logging.getLogger(__name__)

HASH_EXCLUDED_FIELDS = {"workers", "output_dir"}


def _parse_slots(text: str) -> List[QubitSlot]:
    slots = []
    for item in text.split(";"):
        row, col = (int(part) for part in item.strip().split(","))
        slots.append(QubitSlot.at(row, col))
    return slots


def _parse_floats(text: str) -> List[float]:
    return [float(item) for item in text.split(",") if item.strip()]


class ExperimentConfig(BaseModel):
    """Settings of every harness experiment.

    Attributes
    ----------
    mu : float
        Mean photon number of the weak coherent input (0.5).
    tau_us, larmor_period_us, dphi, crosstalk_eps, envelope :
        Storage channel, see :class:`MemoryParams`.
    target_fidelity : float
        Average conditional fidelity (94.45%) the depolarization is calibrated to.
    p_dep : float, optional
        Explicit depolarization probability, overriding the calibration.
    eta_center, eta_edge : float
        Efficiency profile of the array (18% middle, about 2% edge).
    efficiency_map_path : Path, optional
        CSV efficiency map replacing the profile.
    quantum_efficiency, dark_click_prob, coupling_efficiency : float
        Detection path, see :class:`DetectorModel`.
    storage_time_us : float
        Storage time of the characterization and efficiency scans (1.38 us).
    shots : int
        Registered photons per basis and input state for tomography.
    resamples : int
        Bootstrap resamples per fidelity estimate.
    efficiency_shots : int
        Input pulses per cell in the efficiency scan.
    seed : int
        Master seed of all random streams.
    workers : int
        Parallel worker processes; results do not depend on it.
    analytic : bool
        Use expectation values instead of sampling.
    timing_mode : TimingMode
        Treatment of storage times off the Larmor revivals.
    random_access_slots : str
        ``row,col`` of the U cells of the random-access qubits, ``;`` separated.
    random_access_spacing : int
        Larmor periods between consecutive random-access events.
    read_orders : str
        Read orders of the random-access demonstration, e.g. ``1-2-3;3-2-1``.
    bounds_mu_grid, bounds_eta_grid : str
        Comma separated grids of the bounds table.
    scan_slot : str
        ``row,col`` of the U cell scanned by the storage-time scan.
    scan_max_periods, scan_points_per_period : int
        Extent and sampling of the storage-time scan in Larmor periods.
    output_dir : Path
        Folder for result files.

    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    mu: float = Field(default=0.5, gt=0)
    tau_us: float = Field(default=27.8, gt=0)
    larmor_period_us: float = Field(default=1.38, gt=0)
    target_fidelity: float = Field(default=0.9445, gt=0.5, le=1)
    p_dep: Optional[float] = Field(default=None, ge=0, le=1)
    dphi: float = 0.0
    crosstalk_eps: float = Field(default=0.0, ge=0, le=1)
    envelope: LarmorEnvelope = LarmorEnvelope.cos2
    eta_center: float = Field(default=0.18, gt=0, le=1)
    eta_edge: float = Field(default=0.02, gt=0, le=1)
    efficiency_map_path: Optional[Path] = None
    quantum_efficiency: float = Field(default=1.0, ge=0, le=1)
    dark_click_prob: float = Field(default=0.0, ge=0, lt=1)
    coupling_efficiency: float = Field(default=0.65, ge=0, le=1)
    storage_time_us: float = Field(default=REFERENCE_STORAGE_TIME_US, ge=0)
    shots: int = Field(default=500, gt=0)
    resamples: int = Field(default=1000, ge=100)
    efficiency_shots: int = Field(default=100_000, gt=0)
    seed: int = Field(default=20190101, ge=0, lt=2**64)
    workers: int = Field(default=1, ge=1)
    analytic: bool = False
    timing_mode: TimingMode = TimingMode.strict
    random_access_slots: str = "3,2;7,6;11,10"
    random_access_spacing: int = Field(default=1, ge=1)
    read_orders: str = "1-2-3;3-2-1;2-1-3"
    bounds_mu_grid: str = "0.1,0.25,0.5,1,2"
    bounds_eta_grid: str = "0.01,0.02,0.05,0.1,0.18,0.5,1"
    scan_slot: str = "7,6"
    scan_max_periods: int = Field(default=3, ge=1)
    scan_points_per_period: int = Field(default=8, ge=1)
    output_dir: Path = Path(".")

    @field_validator("random_access_slots")
    @classmethod
    def _check_slots(cls, value: str) -> str:
        slots = _parse_slots(value)
        if len(set(slots)) != len(slots):
            raise ValueError("Random-access slots must be distinct.")
        return value

    @field_validator("read_orders")
    @classmethod
    def _check_orders(cls, value: str) -> str:
        for order in value.split(";"):
            labels = order.strip().split("-")
            if not all(label.isdigit() for label in labels):
                raise ValueError(f"Read order {order!r} must be dash-separated qubit numbers.")
        return value

    @field_validator("scan_slot")
    @classmethod
    def _check_scan_slot(cls, value: str) -> str:
        if len(_parse_slots(value)) != 1:
            raise ValueError("The storage-time scan addresses exactly one slot.")
        return value

    @field_validator("bounds_mu_grid", "bounds_eta_grid")
    @classmethod
    def _check_grid(cls, value: str) -> str:
        if not _parse_floats(value):
            raise ValueError("Grids must not be empty.")
        return value

    @model_validator(mode="after")
    def _check_components(self) -> "ExperimentConfig":
        if self.eta_edge > self.eta_center:
            raise ValueError("eta_edge must not exceed eta_center.")
        self.memory_params()
        self.detector()
        return self

    @property
    def depolarization(self) -> float:
        """Return the explicit or calibrated depolarization probability."""
        if self.p_dep is not None:
            return self.p_dep
        return calibrate_depolarization(self.target_fidelity)

    def memory_params(self) -> MemoryParams:
        """Return the storage channel parameters."""
        return MemoryParams(
            tau_us=self.tau_us,
            larmor_period_us=self.larmor_period_us,
            p_dep=self.depolarization,
            dphi=self.dphi,
            crosstalk_eps=self.crosstalk_eps,
            envelope=self.envelope,
        )

    def detector(self) -> DetectorModel:
        """Return the detection path."""
        return DetectorModel(
            quantum_efficiency=self.quantum_efficiency,
            dark_click_prob=self.dark_click_prob,
            coupling_efficiency=self.coupling_efficiency,
        )

    def efficiency_map(self) -> EfficiencyMap:
        """Return the CSV map if configured, otherwise the radial profile."""
        if self.efficiency_map_path is not None:
            return load_efficiency_map(self.efficiency_map_path)
        return default_efficiency_map(self.eta_center, self.eta_edge)

    def storage_channel(self) -> StorageChannel:
        """Return the single-slot write/store/read channel of the characterization."""
        return StorageChannel(
            efficiency_map=self.efficiency_map(),
            params=self.memory_params(),
            storage_time_us=self.storage_time_us,
            mean_photons=self.mu,
        )

    def qubit_slots(self) -> List[QubitSlot]:
        """Return the random-access slots in write order."""
        return _parse_slots(self.random_access_slots)

    def orders(self) -> List[Tuple[str, ...]]:
        """Return the configured read orders."""
        return [tuple(order.strip().split("-")) for order in self.read_orders.split(";")]

    def mu_grid(self) -> List[float]:
        """Return the mean photon numbers of the bounds table."""
        return _parse_floats(self.bounds_mu_grid)

    def eta_grid(self) -> List[float]:
        """Return the efficiencies of the bounds table."""
        return _parse_floats(self.bounds_eta_grid)

    def scan_times(self) -> List[float]:
        """Return the storage times (us) of the storage-time scan."""
        steps = self.scan_max_periods * self.scan_points_per_period
        step = self.larmor_period_us / self.scan_points_per_period
        return [round(k * step, 3) for k in range(steps + 1)]

    def scanned_slot(self) -> QubitSlot:
        """Return the slot of the storage-time scan."""
        return _parse_slots(self.scan_slot)[0]


def config_hash(config: ExperimentConfig) -> str:
    """Return a short SHA-256 digest of the settings that influence results.

    A configured efficiency map file enters with its contents, not only its path.
    """
    payload = config.model_dump(mode="json", exclude=HASH_EXCLUDED_FIELDS)
    if config.efficiency_map_path is not None:
        payload["efficiency_map_sha256"] = hashlib.sha256(
            Path(config.efficiency_map_path).read_bytes()
        ).hexdigest()
    digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()
    return digest[:16]


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines into a dictionary of raw strings."""
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            _logger.error(f"Config line {number} has no '=': {raw!r}")
            raise ValueError(f"Config line {number} is not of the form 'key = value'.")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def load_config(path: Optional[Path] = None, **overrides) -> ExperimentConfig:
    """Build the configuration from an optional file and explicit overrides.

    Overrides equal to ``None`` are ignored.
    """
    values = parse_config_text(Path(path).read_text()) if path is not None else {}
    values.update({key: value for key, value in overrides.items() if value is not None})
    config = ExperimentConfig(**values)
    _logger.debug(f"Loaded configuration {config_hash(config)}: {config}.")
    return config
