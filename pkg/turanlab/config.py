"""Runtime settings for turanlab."""
import logging
import os
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Any, Dict, Mapping, Optional

import voluptuous as vol

from .const import (
    CONF_ANGLE_MARGIN,
    CONF_C_TRI_OFFSET,
    CONF_CACHE_SIZE,
    CONF_CANONICAL_LIMIT,
    CONF_JOBS,
    CONF_MAX_EDGES,
    CONF_PATTERN_VERTEX_LIMIT,
    CONF_TURAN_MAX_N,
    CONF_XY_EXACT_LIMIT,
    DEFAULT_ANGLE_MARGIN,
    DEFAULT_C_TRI_OFFSET,
    DEFAULT_CACHE_SIZE,
    DEFAULT_CANONICAL_LIMIT,
    DEFAULT_JOBS,
    DEFAULT_MAX_EDGES,
    DEFAULT_PATTERN_VERTEX_LIMIT,
    DEFAULT_TURAN_MAX_N,
    DEFAULT_XY_EXACT_LIMIT,
    ENV_MAX_EDGES,
    MAX_CANONICAL_LIMIT,
    MAX_JOBS,
)
from .errors import InvalidArgumentError

_LOGGER = logging.getLogger(__name__)

SETTINGS_SCHEMA = vol.Schema({
    vol.Optional(CONF_MAX_EDGES, default=DEFAULT_MAX_EDGES): vol.All(vol.Coerce(int), vol.Range(min=1)),
    vol.Optional(CONF_CANONICAL_LIMIT, default=DEFAULT_CANONICAL_LIMIT): vol.All(vol.Coerce(int), vol.Range(min=1, max=MAX_CANONICAL_LIMIT)),
    vol.Optional(CONF_PATTERN_VERTEX_LIMIT, default=DEFAULT_PATTERN_VERTEX_LIMIT): vol.All(vol.Coerce(int), vol.Range(min=1, max=DEFAULT_PATTERN_VERTEX_LIMIT)),
    vol.Optional(CONF_TURAN_MAX_N, default=DEFAULT_TURAN_MAX_N): vol.All(vol.Coerce(int), vol.Range(min=0, max=DEFAULT_TURAN_MAX_N)),
    vol.Optional(CONF_XY_EXACT_LIMIT, default=DEFAULT_XY_EXACT_LIMIT): vol.All(vol.Coerce(int), vol.Range(min=1, max=DEFAULT_XY_EXACT_LIMIT)),
    vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): vol.All(vol.Coerce(int), vol.Range(min=1, max=MAX_JOBS)),
    vol.Optional(CONF_C_TRI_OFFSET, default=DEFAULT_C_TRI_OFFSET): vol.All(vol.Coerce(int), vol.Range(min=0)),
    vol.Optional(CONF_ANGLE_MARGIN, default=DEFAULT_ANGLE_MARGIN): vol.All(vol.Coerce(float), vol.Range(min=0, min_included=False)),
    vol.Optional(CONF_CACHE_SIZE, default=DEFAULT_CACHE_SIZE): vol.All(vol.Coerce(int), vol.Range(min=1)),
})


@dataclass(frozen=True)
class Settings:
    """Validated runtime settings."""
    max_edges: int = DEFAULT_MAX_EDGES
    canonical_limit: int = DEFAULT_CANONICAL_LIMIT
    pattern_vertex_limit: int = DEFAULT_PATTERN_VERTEX_LIMIT
    turan_max_n: int = DEFAULT_TURAN_MAX_N
    xy_exact_limit: int = DEFAULT_XY_EXACT_LIMIT
    jobs: int = DEFAULT_JOBS
    c_tri_offset: int = DEFAULT_C_TRI_OFFSET
    angle_margin: float = DEFAULT_ANGLE_MARGIN
    cache_size: int = DEFAULT_CACHE_SIZE

    def as_dict(self) -> Dict[str, Any]:
        """Return settings as a plain dict."""
        return asdict(self)


def _environment_overrides(environ: Mapping[str, str]) -> Dict[str, Any]:
    """Collect settings supplied through environment variables."""
    overrides: Dict[str, Any] = {}
    raw = environ.get(ENV_MAX_EDGES)
    if raw is not None and raw.strip():
        try:
            overrides[CONF_MAX_EDGES] = int(raw.strip())
        except ValueError as err:
            raise InvalidArgumentError(f"{ENV_MAX_EDGES} must be an integer, got {raw!r}") from err
    return overrides


def load_settings(
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> Settings:
    """Merge defaults, environment and explicit overrides into validated settings."""
    merged: Dict[str, Any] = {}
    merged.update(_environment_overrides(os.environ if environ is None else environ))
    if overrides:
        merged.update({key: value for key, value in overrides.items() if value is not None})

    try:
        validated = SETTINGS_SCHEMA(merged)
    except vol.Invalid as err:
        raise InvalidArgumentError(f"invalid settings: {err}") from err

    _LOGGER.debug("Loaded settings: %s", validated)
    return Settings(**validated)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings read once from the environment."""
    return load_settings()
