"""Exception hierarchy shared by every pathkit module."""

from __future__ import annotations


class PathkitError(Exception):
    """Base class for all pathkit errors."""


class TermSyntaxError(PathkitError, ValueError):
    """Raised by the term and path parsers.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class FuelExhausted(PathkitError):
    """A normalizer ran out of fuel. ``partial`` holds whatever trace was built."""

    def __init__(self, message: str, partial=None):
        self.partial = partial
        super().__init__(message)


class InvalidPath(PathkitError, ValueError):
    def __init__(self, position: tuple[str, ...], reason: str):
        self.position = tuple(position)
        self.reason = reason
        where = ".".join(position) if position else "root"
        super().__init__(f"invalid path at {where}: {reason}")


class NotBetaEtaEqual(PathkitError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__("terms have different beta-eta normal forms")


class NoMatch(PathkitError, ValueError):
    def __init__(self, position: tuple[str, ...], rule: str):
        self.position = tuple(position)
        self.rule = rule
        where = ".".join(position) if position else "root"
        super().__init__(f"rule {rule} does not match at {where}")


class SequenceError(PathkitError, ValueError):
    """Malformed rw-sequence (step mismatch, endpoint drift, bad junction)."""


class StepMismatch(SequenceError):
    def __init__(self, index: int, expected, found):
        self.index = index
        self.expected = expected
        self.found = found
        super().__init__(f"step {index} does not reproduce its neighbour entry")


class EndpointDrift(SequenceError):
    pass


class JunctionMismatch(SequenceError):
    pass


class ShapeMismatch(PathkitError, ValueError):
    pass


class Incomposable(PathkitError, ValueError):
    """Endpoints of cells/paths do not line up for composition."""


class OracleBudgetExhausted(PathkitError):
    """The breadth-first oracle hit its node cap; the answer is unknown."""

    def __init__(self, explored: int):
        self.explored = explored
        super().__init__(f"oracle explored {explored} nodes without a verdict")
