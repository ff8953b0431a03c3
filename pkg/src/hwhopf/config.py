"""Size limits guarding the exponential enumerations.

Limits live in a context variable so that a caller (the CLI, a test) can
widen or narrow them for a block of code without threading a parameter
through every operation::

    with using_limits(max_vertices=18):
        x * y * z
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass
from typing import Iterator

from .errors import SizeGuardExceeded


@dataclass(frozen=True)
class Limits:
    max_edges: int = 12
    max_vertices: int = 10
    antipode_edge_limit: int = 8
    decomposition_edge_limit: int = 16

    def __post_init__(self):
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"{field.name} must be a positive integer, got {value!r}")


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("hwhopf_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


def set_limits(limits: Limits) -> None:
    _current.set(limits)


@contextlib.contextmanager
def using_limits(**overrides: int) -> Iterator[Limits]:
    limits = dataclasses.replace(get_limits(), **overrides)
    token = _current.set(limits)
    try:
        yield limits
    finally:
        _current.reset(token)


def check_size(what: str, value: int, limit_name: str) -> None:
    limit = getattr(get_limits(), limit_name)
    if value > limit:
        raise SizeGuardExceeded(f"{what} is {value}, above the {limit_name} limit of {limit}")
