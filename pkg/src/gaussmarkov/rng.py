"""Counter-based random number generation.

Every sampling routine in the package draws from numpy's Philox bit
generator keyed by (seed, stream). Philox is counter-based, so streams with
distinct keys are independent and bit-reproducible across platforms and
across batching strategies; parallel consumers take disjoint stream indices
derived from one master seed.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def make_generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Return a Generator on the Philox stream keyed by (seed, stream)."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
