"""Shared exception types."""


class DesignForgeError(Exception):
    """Base class for all library errors."""


class InvalidGenerators(DesignForgeError):
    pass


class OrbitOverflow(DesignForgeError):
    pass


class NotFound(DesignForgeError):
    pass


class NotASubgroupElement(DesignForgeError):
    pass


class InvalidField(DesignForgeError):
    pass


class NonUniformBlockSize(DesignForgeError):
    pass


class NonUniformReplication(DesignForgeError):
    pass


class NotTDesign(DesignForgeError):
    """Raised with a witness pair of t-subsets covered unequally often."""

    def __init__(self, witness, counts):
        self.witness = witness
        self.counts = counts
        super().__init__(
            "t-subsets %r covered %d and %d times" % (witness, counts[0], counts[1])
        )


class BudgetExceeded(DesignForgeError):
    pass


class PartitionViolation(DesignForgeError):
    pass


class InternalInconsistency(DesignForgeError):
    pass
