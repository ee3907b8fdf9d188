"""
Logs every verdict produced by a decorated entry point. Usable as
`@verdict_logger("valid")` around the semantics functions.
"""
from __future__ import annotations

import logging
import time
from functools import wraps
from typing import Any, Callable, Dict, Tuple, TypeVar, cast

from ptvalidity.rules import BotPolicy

logger = logging.getLogger("ptvalidity.verdicts")

F = TypeVar("F", bound=Callable[..., Any])


def _policy_of(args: Tuple[Any, ...], kw: Dict[str, Any]) -> str:
    policy = kw.get("policy")
    if policy is None:
        policy = next((a for a in args if isinstance(a, BotPolicy)), "default")
    return str(getattr(policy, "value", policy))


def verdict_logger(operation: str) -> Callable[[F], F]:
    """
    Decorator that logs the outcome of a validity check.

    Args:
        operation: Name recorded with every log line

    Returns:
        Decorated function that logs policy, verdict and elapsed time at DEBUG
    """

    def decorator(check_fn: F) -> F:
        @wraps(check_fn)
        def wrapper(*args: Any, **kw: Any) -> Any:
            started = time.perf_counter()
            res = check_fn(*args, **kw)

            if logger.isEnabledFor(logging.DEBUG):
                policy = _policy_of(args, kw)
                elapsed = (time.perf_counter() - started) * 1000
                logger.debug(
                    f"{operation}: policy={policy} "
                    f"valid={getattr(res, 'valid', res)} ({elapsed:.1f} ms)"
                )

            return res

        return cast(F, wrapper)

    return decorator
