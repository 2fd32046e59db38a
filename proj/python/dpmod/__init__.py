"""Divided-power operators on rank-two Frobenius modules over F_p[x]."""

import json as _json

from ._core import (
    DpmodError,
    __version__,
    act,
    apply,
    binom_mod,
    dim_formula,
    dims,
    run_cli,
)
from ._core import verify_all as _verify_all


def verify_all(p):
    """Run every check at prime p and return the parsed report."""
    return _json.loads(_verify_all(p))


__all__ = [
    "DpmodError",
    "__version__",
    "act",
    "apply",
    "binom_mod",
    "dim_formula",
    "dims",
    "run_cli",
    "verify_all",
]
