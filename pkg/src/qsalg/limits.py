"""Shared enumeration bounds and sampling knobs.

All exhaustive scans over fuzzy subsets switch to deterministic sampling
once the search space passes `threshold()`.  The threshold can be moved
with the QSALG_THRESHOLD environment variable; every report echoes the
value that was in force.
"""

from __future__ import annotations

import os
import random

DEFAULT_THRESHOLD = 10_000
DEFAULT_SEED = 1729
SAMPLE_SIZE = 1000

# |target| ** |source| cap for exhaustive homomorphism enumeration.
HOM_ENUM_BOUND = 100_000

# |A| ** |A| cap for the endo-map scan behind nucleus enumeration.
ENDOMAP_BOUND = 1_000_000


def threshold(override=None):
    if override is not None:
        return int(override)
    raw = os.environ.get("QSALG_THRESHOLD")
    return int(raw) if raw else DEFAULT_THRESHOLD


def subset_space(n_values, n_slots):
    """Size of the space of tables with `n_slots` entries over `n_values`."""
    return n_values ** n_slots


def sample_tables(values, n_slots, seed, count=SAMPLE_SIZE):
    """Yield `count` pseudo-random value tuples, reproducibly for a seed."""
    rng = random.Random(seed)
    k = len(values)
    for _ in range(count):
        yield tuple(values[rng.randrange(k)] for _ in range(n_slots))
