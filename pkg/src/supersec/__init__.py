"""Secretary algorithms for monotone set functions of bounded supermodular degree under matroid constraints."""
from .errors import (
    AccessViolation,
    CapacityError,
    ConfigError,
    ContractFault,
    DomainError,
    EndOfStream,
    SupersecError,
)
from .instance import Instance
from .matroid import ExplicitMatroid, Graphic, Matroid, Partition, Restricted, Truncated, Uniform
from .stream import ArrivalStream, OnlineOracles
from .valuation import DependencyMap, HypergraphValuation, TableValuation, Valuation

__version__ = "0.1.0"

__all__ = [
    "AccessViolation",
    "ArrivalStream",
    "CapacityError",
    "ConfigError",
    "ContractFault",
    "DependencyMap",
    "DomainError",
    "EndOfStream",
    "ExplicitMatroid",
    "Graphic",
    "HypergraphValuation",
    "Instance",
    "Matroid",
    "OnlineOracles",
    "Partition",
    "Restricted",
    "SupersecError",
    "TableValuation",
    "Truncated",
    "Uniform",
    "Valuation",
]
