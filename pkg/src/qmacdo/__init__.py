"""Exact verification toolkit for deformed MR- and NS-type q-difference operators
acting on super-Macdonald polynomials."""

from .errors import (
    BasisError,
    ConfigError,
    ConventionError,
    DegenerateBase,
    NotContained,
    NotInHook,
    PoleError,
    QMacdoError,
    RankError,
    SpecialParams,
    TruncationTooSmall,
)
from .partitions import Partition, fat_hook_contains, hook_split, partitions_of, partitions_up_to
from .ring import MRat, Ring, TruncSeries, USeries

__version__ = "0.1.0"

__all__ = [
    "BasisError",
    "ConfigError",
    "ConventionError",
    "DegenerateBase",
    "MRat",
    "NotContained",
    "NotInHook",
    "Partition",
    "PoleError",
    "QMacdoError",
    "RankError",
    "Ring",
    "SpecialParams",
    "TruncSeries",
    "TruncationTooSmall",
    "USeries",
    "fat_hook_contains",
    "hook_split",
    "partitions_of",
    "partitions_up_to",
]
