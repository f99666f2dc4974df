"""Hard size limits for the exhaustive searches.

The environment variable ``FPC_MAX_EXACT_N`` may lower any of these
thresholds for a run (useful to keep CI wall time bounded); it can never
raise them above the built-in caps.
"""

import os

from .errors import ParameterError

MAX_CUT_EXACT_N = 22
MAX_PERM_EXACT_N = 8
MAX_AUTOMORPHISM_N = 9
MAX_LP_ORACLE_N = 16
MAX_PLAN_N = 64

_ENV_VAR = "FPC_MAX_EXACT_N"


def exact_limit(builtin):
    """Return ``builtin`` clamped by the FPC_MAX_EXACT_N override, if set."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return builtin
    try:
        value = int(raw)
    except ValueError:
        raise ParameterError(
            f"{_ENV_VAR} must be an integer, got {raw!r}"
        ) from None
    if value < 0:
        raise ParameterError(f"{_ENV_VAR} must be non-negative, got {value}")
    return min(builtin, value)
