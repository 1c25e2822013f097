"""Exception types shared across the package."""


class KrankError(Exception):
    """Base class for all domain errors raised by this package."""


class NotAGroup(KrankError):
    """A multiplication table fails one of the group axioms.

    The message names the witnessing triple (associativity) or element
    (identity / inverse failure).
    """


class OrderBound(KrankError):
    """A generated group exceeded the configured order cap."""


class MissingKMinus1Datum(KrankError):
    """rank K_-1 was requested for a group without that external datum."""

    def __init__(self, label):
        self.label = label
        super().__init__(
            f"rank K_-1 is unknown for group {label!r}; "
            "supply a rank_minus1 datum for it"
        )


class ChainComplexViolation(KrankError):
    """Consecutive boundary maps do not compose to zero."""


class UnsupportedDimension(KrankError):
    """Trivial-isotropy rank assembly is only defined up to dimension 2."""


class ModelMismatch(KrankError):
    """A boundary-map model was applied to a graph it does not fit."""


class RankOutOfBounds(KrankError):
    """A user-supplied boundary rank violates 0 <= rank <= min(dim E, dim V)."""


class NotAHomomorphism(KrankError):
    """An edge map is not multiplicative; the message names a witness pair."""


class NotInjective(KrankError):
    """An edge map identifies two elements; the message names a witness."""


class ParameterOutOfRange(KrankError):
    """A named example was instantiated with an out-of-range parameter."""


class SchemaError(KrankError):
    """A model file violates the schema; the message names the JSON path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
