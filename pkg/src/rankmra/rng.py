"""Deterministic random number generation."""

from __future__ import annotations

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator; same seed, same stream, on every platform."""
    return np.random.Generator(np.random.Philox(seed))
