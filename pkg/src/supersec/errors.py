"""Exception hierarchy shared by every module."""


class SupersecError(Exception):
    """Base class for all library errors."""


class DomainError(SupersecError, ValueError):
    """An element id or subset lies outside the ground set."""


class CapacityError(SupersecError):
    """An exhaustive computation would exceed its configured size limit."""


class ConfigError(SupersecError, ValueError):
    """An instance, generator spec or experiment config is malformed."""


class AccessViolation(SupersecError):
    """An online oracle was queried about an element that has not arrived."""


class EndOfStream(SupersecError):
    """All elements of an arrival stream have been revealed."""


class ContractFault(SupersecError):
    """A pluggable rule broke its declared contract."""
