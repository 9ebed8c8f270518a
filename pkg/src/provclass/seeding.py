"""Deterministic seed derivation for nested randomized tasks.

Every randomized stage derives its own seed from the run seed plus a stable
tuple of context parts, so results are identical no matter how work is
scheduled across threads.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(base: int, *parts) -> int:
    text = ":".join([str(int(base))] + [str(p) for p in parts])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


def rng_for(base: int, *parts) -> np.random.Generator:
    return np.random.default_rng(derive_seed(base, *parts))
