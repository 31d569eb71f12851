"""
Parallel fan-out for independent tasks (repetitions, oracle starts, campaign
states) with deterministic seeding and index-ordered results
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar, Union

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

SeedLike = Union[None, int, np.random.SeedSequence]


def as_seed_sequence(seed: SeedLike) -> np.random.SeedSequence:
    """Fresh SeedSequence so that spawning never depends on earlier calls"""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.SeedSequence(seed.entropy, spawn_key=seed.spawn_key)
    return np.random.SeedSequence(seed)


def spawn_seeds(seed: SeedLike, count: int) -> List[np.random.SeedSequence]:
    """Child seeds indexed by task number"""
    return as_seed_sequence(seed).spawn(count)


def default_workers() -> int:
    return os.cpu_count() or 1


def run_tasks(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = 1) -> List[R]:
    """
    Apply fn to every item, possibly in a thread pool

    Results come back in item order whatever the worker count, and the first
    exception raised by any task propagates to the caller.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
