"""Result records of the harness experiments."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class SlotRecord(BaseModel):
    """Characterization of one cell pair.

    The classical-bound fields are ``None`` when the slot retrieves nothing,
    and ``sigmas`` is ``None`` for a zero standard deviation.
    """

    slot: str
    row: int
    pair: int
    mean_fidelity: float
    std_dev: float
    retrieval_prob: float
    efficiency: float
    classical_bound: Optional[float] = None
    n_min: Optional[int] = None
    gamma: Optional[float] = None
    eta_C: Optional[float] = None
    margin: Optional[float] = None
    sigmas: Optional[float] = None
    per_state: Dict[str, float] = Field(default_factory=dict)


class RunSummary(BaseModel):
    """Array-wide figures of a characterization run."""

    grand_mean_fidelity: float
    grand_std_dev: float
    mean_efficiency: float
    min_margin: Optional[float] = None
    min_sigmas: Optional[float] = None
    slots_above_bound: int


class RunReport(BaseModel):
    """Per-slot records and summary of a full-array characterization."""

    seed: int
    config_hash: str
    analytic: bool
    records: List[SlotRecord]
    summary: RunSummary


class QubitRecord(BaseModel):
    """One qubit of a random-access run under a given read order."""

    read_order: str
    qubit_id: str
    slot: str
    storage_time_us: float
    retrieval_prob: float
    efficiency: float
    mean_fidelity: float
    std_dev: float
    single_photon_bound: float
    coherent_bound: float
    efficiency_bound: Optional[float] = None
    margin: Optional[float] = None
    sigmas: Optional[float] = None
    per_state: Dict[str, float] = Field(default_factory=dict)


class RandomAccessReport(BaseModel):
    """Per-qubit records and compiled schedules of every read order."""

    seed: int
    config_hash: str
    analytic: bool
    records: List[QubitRecord]
    schedules: Dict[str, dict] = Field(default_factory=dict)
