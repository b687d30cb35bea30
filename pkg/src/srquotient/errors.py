class SRQError(Exception):
    """Base class for all errors raised by this package."""


class NotASubgroup(SRQError):
    pass


class CycleDetected(SRQError):
    pass


class RedundantCover(SRQError):
    pass


class NotComparable(SRQError):
    pass


class NotSimplicial(SRQError):
    pass


class NotGraded(SRQError):
    pass


class NotBoundedBelow(SRQError):
    pass


class ZeroColumn(SRQError):
    pass


class NotEssential(SRQError):
    pass


class NotRefined(SRQError):
    pass


class NotIndependent(SRQError):
    pass


class NotOrderIdeal(SRQError):
    pass


class DegreeTooLarge(SRQError):
    pass


class NotTranslative(SRQError):
    pass


class NotDecoupled(SRQError):
    pass


class NoDecompositionSupplied(SRQError):
    pass


class OrderIncomplete(SRQError):
    pass


class PreconditionsFailed(SRQError):
    pass


class InvalidAction(SRQError):
    pass
