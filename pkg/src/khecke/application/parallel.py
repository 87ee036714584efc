"""Order-preserving fan-out over joblib workers."""
from collections.abc import Callable, Sequence
from functools import partial
from typing import TypeVar

from joblib import Parallel, delayed

from khecke.infrastructure.logging import get_logger

T = TypeVar("T")
R = TypeVar("R")

logger = get_logger(component="parallel")


def run_parallel(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """Apply ``func`` to every item; results come back in input order.

    ``jobs == 1`` (or fewer than two items) runs in-process so results never depend
    on worker scheduling and small calls pay no process start-up.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be positive (got {jobs})")
    if jobs == 1 or len(items) < 2:
        return [func(item) for item in items]
    logger.debug("Dispatching to workers", jobs=jobs, items=len(items))
    results: list[R] = Parallel(n_jobs=jobs)(delayed(func)(item) for item in items)
    return results


def mapper_for(jobs: int) -> Callable[[Callable[[T], R], Sequence[T]], list[R]]:
    """A ``(func, items) -> list`` mapper bound to ``jobs`` workers."""
    return partial(run_parallel, jobs=jobs)
