# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""Order preserving thread parallelism.

Results are always returned in input order, so reductions performed on them are
independent of the task schedule.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Any, TypeVar

logger = logging.getLogger(__name__)

THREADS_ENV_VAR: str = "GDSQ_THREADS"

T = TypeVar("T")


def max_workers(workers: int | None = None) -> int:
    """Resolve worker count: explicit value, else ``GDSQ_THREADS``, else CPU count."""
    if workers is None:
        env_value = os.environ.get(THREADS_ENV_VAR, "").strip()
        if env_value:
            try:
                workers = int(env_value)
            except ValueError as error:
                raise ValueError(
                    f"Invalid {THREADS_ENV_VAR}={env_value!r}, expected positive integer."
                ) from error
        else:
            workers = os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"Worker count must be positive, received {workers}.")
    return workers


def parallel_map(
    func: Callable[[Any], T], items: Iterable[Any], workers: int | None = None
) -> list[T]:
    """Map ``func`` over ``items`` with a thread pool, preserving order."""
    items = list(items)
    workers = min(max_workers(workers), max(len(items), 1))
    if workers == 1:
        return [func(item) for item in items]
    logger.debug("Mapping %d tasks over %d threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
