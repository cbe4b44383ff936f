"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """A graph or matrix text input could not be parsed."""


class UnlabeledEdge(ValueError):
    """An operation that needs every edge label met an unlabeled edge."""


class OddWalkOddModulus(ValueError):
    """A cycle vector of an odd closed walk was requested with odd modulus."""


class SizeLimit(RuntimeError):
    """An exhaustive computation would exceed its documented guard."""


class InternalInconsistency(RuntimeError):
    """Two routes that must agree disagreed; this signals a bug, not bad input."""
