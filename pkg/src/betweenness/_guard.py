"""Size guards for the exponential routines.

``BWL_MAX_N`` in the environment raises every guard to its value; the
caller then accepts whatever runtime follows.
"""

import os


class GuardError(ValueError):
    """Input is beyond the configured size guard."""


def effective_limit(limit: int) -> int:
    override = os.environ.get("BWL_MAX_N")
    if override:
        return max(limit, int(override))
    return limit


def check_guard(n: int, limit: int, what: str) -> None:
    cap = effective_limit(limit)
    if n > cap:
        raise GuardError(f"{what}: n={n} exceeds guard n <= {cap} (set BWL_MAX_N to override)")
