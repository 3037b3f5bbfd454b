"""Exact hexachordal, homometry and tiling computations on finite and continuous spaces."""

from .core import (
    PLAIN,
    SQUARED,
    DistanceDistribution,
    FiniteMetricMeasureSpace,
    HexalabError,
    MeasureError,
    SubsetMask,
    VolumeFunction,
    distance_distribution,
    power_mean,
    restricted_distribution,
    validate_space,
    volume_function,
)
from .hexcvc import check_cvc, check_hex, hex_defect, hex_defect_profile, homometric, is_transitive, patterson
from .symbolic import IntervalTable, check_hex_doubleprime, check_hex_prime, check_ind
from .tiling import CyclicSubset, find_complements, is_tiling_pair, zero_set
from .zrelation import homometry_classes, interval_content, ti_canonical

__version__ = "0.1.0"

__all__ = [
    "PLAIN",
    "SQUARED",
    "CyclicSubset",
    "DistanceDistribution",
    "FiniteMetricMeasureSpace",
    "HexalabError",
    "IntervalTable",
    "MeasureError",
    "SubsetMask",
    "VolumeFunction",
    "check_cvc",
    "check_hex",
    "check_hex_doubleprime",
    "check_hex_prime",
    "check_ind",
    "distance_distribution",
    "find_complements",
    "hex_defect",
    "hex_defect_profile",
    "homometric",
    "homometry_classes",
    "interval_content",
    "is_tiling_pair",
    "is_transitive",
    "patterson",
    "power_mean",
    "restricted_distribution",
    "ti_canonical",
    "validate_space",
    "volume_function",
    "zero_set",
]
