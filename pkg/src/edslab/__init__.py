"""Elliptic divisibility sequences, index-divisibility graphs, and
aliquot cycles, with exact arithmetic throughout."""

from .apparition import (
    RankRecord,
    RegularityReport,
    index_divisible,
    rank_composite,
    rank_prime,
    rank_prime_power,
    regularity,
)
from .curves import Point, WeierstrassCurve
from .divgraph import (
    AliquotCycle,
    Arrow,
    IndexDivisibilitySet,
    aliquot_cycles,
    anomalous_primes,
    arrows,
    classify_arrow,
    enumerate_set,
)
from .eds import EdsContext
from .errors import EdsLabError, PreconditionError, VerificationError

__all__ = [
    "AliquotCycle",
    "Arrow",
    "EdsContext",
    "EdsLabError",
    "IndexDivisibilitySet",
    "Point",
    "PreconditionError",
    "RankRecord",
    "RegularityReport",
    "VerificationError",
    "WeierstrassCurve",
    "aliquot_cycles",
    "anomalous_primes",
    "arrows",
    "classify_arrow",
    "enumerate_set",
    "index_divisible",
    "rank_composite",
    "rank_prime",
    "rank_prime_power",
    "regularity",
]

__version__ = "0.1.0"
