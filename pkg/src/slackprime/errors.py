"""Exception hierarchy shared by every module."""


class SlackPrimeError(Exception):
    pass


class DomainError(SlackPrimeError, ValueError):
    """An argument lies outside the operation's domain (d < 2, composite p, ...)."""


class IntegerOverflow(SlackPrimeError, OverflowError):
    """A value left the unsigned 64-bit integer domain."""


class CapacityError(SlackPrimeError, MemoryError):
    """A sieve allocation would exceed the configured memory budget."""


class CheckpointError(SlackPrimeError):
    """A checkpoint file is unreadable, truncated, or fails its checksum."""
