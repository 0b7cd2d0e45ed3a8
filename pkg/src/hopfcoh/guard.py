"""Memory guard for ambient dimensions.

The limit defaults to 5 * 10**5 and can be changed with ``set_limit`` or the
``HOPFCOH_MAX_DIM`` environment variable.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

DEFAULT_LIMIT = 500_000


class ResourceGuardError(RuntimeError):
    """An ambient space would exceed the configured dimension limit."""

    def __init__(self, required: int, limit: int, where: str = ""):
        self.required = required
        self.limit = limit
        self.where = where
        super().__init__(f"{where or 'ambient space'} needs dimension {required}, limit is {limit}")


_limit: int | None = None


def get_limit() -> int:
    if _limit is not None:
        return _limit
    env = os.environ.get("HOPFCOH_MAX_DIM")
    return int(env) if env else DEFAULT_LIMIT


def set_limit(limit: int | None) -> None:
    global _limit
    _limit = None if limit is None else int(limit)


@contextmanager
def limit(value: int):
    global _limit
    old = _limit
    _limit = int(value)
    try:
        yield
    finally:
        _limit = old


def check_dim(required: int, where: str = "") -> None:
    lim = get_limit()
    if required > lim:
        raise ResourceGuardError(int(required), lim, where)
