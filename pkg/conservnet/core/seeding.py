import zlib

import numpy as np


def _key_to_int(key: int | str) -> int:
    if isinstance(key, str):
        return zlib.crc32(key.encode())
    return key


def derive_seed(seed: int, *keys: int | str) -> int:
    """Stable 32-bit seed for a named sub-stream of a run seed."""
    entropy = [seed, *(_key_to_int(key) for key in keys)]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def make_rng(seed: int, *keys: int | str) -> np.random.Generator:
    if not keys:
        return np.random.default_rng(seed)
    return np.random.default_rng(derive_seed(seed, *keys))


def spawn_rngs(seed: int, count: int, *keys: int | str) -> list[np.random.Generator]:
    """Independent per-item generators (one per group, cell, ...)."""
    entropy = [seed, *(_key_to_int(key) for key in keys)]
    children = np.random.SeedSequence(entropy).spawn(count)
    return [np.random.default_rng(child) for child in children]
