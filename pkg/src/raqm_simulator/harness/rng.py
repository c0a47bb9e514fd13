"""Counter-based random streams.

Every stream is addressed by the master seed plus an integer key, e.g.
``(experiment, slot, state)``, so a result never depends on which worker
computed it or in which order.
"""

from enum import IntEnum

import numpy as np


class StreamDomain(IntEnum):
    """First key component, separating the experiments."""

    characterization = 1
    efficiency_scan = 2
    random_access = 3
    storage_scan = 4


def stream(seed: int, domain: StreamDomain, *key: int) -> np.random.Generator:
    """Return the Philox generator of ``(seed, domain, *key)``."""
    if any(part < 0 for part in key):
        raise ValueError(f"Stream keys must be non-negative, got {key}.")
    sequence = np.random.SeedSequence(seed, spawn_key=(int(domain), *map(int, key)))
    return np.random.Generator(np.random.Philox(sequence))
