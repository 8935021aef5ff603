"""Retry policies for numerical procedures that may stall.

Adaptive quadrature is retried with a growing subdivision budget before a
caller falls back to Monte Carlo.
"""

import logging
from typing import Callable, TypeVar

from tenacity import (
    Retrying,
    before_sleep_log,
    retry_if_exception_type,
    stop_after_attempt,
    wait_none,
)

from ..exceptions import QuadratureError

logger = logging.getLogger(__name__)

T = TypeVar("T")


def escalating_quadrature(
    compute: Callable[[int], T],
    base_limit: int = 200,
    max_attempts: int = 4,
) -> T:
    """Run ``compute(limit)`` with a doubling subdivision limit until it converges.

    ``compute`` must raise QuadratureError when its integrals do not reach
    tolerance. The last QuadratureError is re-raised once attempts run out.
    """
    for attempt in Retrying(
        stop=stop_after_attempt(max_attempts),
        wait=wait_none(),
        retry=retry_if_exception_type(QuadratureError),
        before_sleep=before_sleep_log(logger, logging.WARNING),
        reraise=True,
    ):
        with attempt:
            limit = base_limit * 2 ** (attempt.retry_state.attempt_number - 1)
            return compute(limit)
    raise AssertionError("unreachable")  # pragma: no cover
