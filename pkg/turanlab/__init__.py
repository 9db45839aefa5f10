"""turanlab: tight cycles minus one edge, orientability and the 1/4 Turán density."""
import logging

from .config import Settings, get_settings, load_settings
from .const import DOMAIN, VERSION
from .core import Hypergraph3, Partition3, canonical_form, classify_partition
from .errors import (
    IndeterminateError,
    InternalInconsistencyError,
    InvalidArgumentError,
    NotOrientableError,
    ResourceLimitError,
    TuranLabError,
    UnsupportedSizeError,
)
from .families import ForbiddenFamily
from .orientation import BottleCertificate, find_bottle, orient
from .tournament import Tournament
from .walks import is_fcm_free

_LOGGER = logging.getLogger(__name__)
_LOGGER.addHandler(logging.NullHandler())

__version__ = VERSION

__all__ = [
    "BottleCertificate",
    "DOMAIN",
    "ForbiddenFamily",
    "Hypergraph3",
    "IndeterminateError",
    "InternalInconsistencyError",
    "InvalidArgumentError",
    "NotOrientableError",
    "Partition3",
    "ResourceLimitError",
    "Settings",
    "Tournament",
    "TuranLabError",
    "UnsupportedSizeError",
    "canonical_form",
    "classify_partition",
    "find_bottle",
    "get_settings",
    "is_fcm_free",
    "load_settings",
    "orient",
]
