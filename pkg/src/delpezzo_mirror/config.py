"""Series evaluation settings.

Settings live in a context variable so that they can be changed for a block
of code without touching any function signature and without shared mutable
state between threads.
"""
import contextlib
import contextvars
import os
from dataclasses import dataclass, replace

DEFAULT_MAX_TERMS = 100_000
MIN_MAX_TERMS = 64
ENV_MAX_TERMS = "HMS_MAX_TERMS"


@dataclass(frozen=True)
class SeriesSettings:
    max_terms: int = DEFAULT_MAX_TERMS
    extended: bool = False
    dps: int = 40
    # multiply every adaptively chosen window by this factor
    window_factor: int = 1
    min_half_width: int = 8


def _initial():
    s = SeriesSettings()
    env = os.environ.get(ENV_MAX_TERMS)
    if env:
        s = replace(s, max_terms=max(MIN_MAX_TERMS, int(env)))
    return s


_current = contextvars.ContextVar("series_settings", default=None)


def current():
    s = _current.get()
    if s is None:
        s = _initial()
    return s


@contextlib.contextmanager
def series_settings(**changes):
    """Temporarily override fields of the active SeriesSettings."""
    token = _current.set(replace(current(), **changes))
    try:
        yield current()
    finally:
        _current.reset(token)
