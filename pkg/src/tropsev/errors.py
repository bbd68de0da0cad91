"""Exception hierarchy shared by all tropsev modules.

The CLI maps these onto exit codes: schema problems exit 1, violated
preconditions exit 2, and internal invariant breaches exit 3.
"""

from __future__ import annotations


class TropsevError(Exception):
    """Base class for all library errors."""


class SchemaError(TropsevError):
    """Malformed JSON input or value outside its documented schema."""


class PreconditionError(TropsevError):
    """An operation was called on data violating its stated precondition."""


class DegenerateSegment(PreconditionError):
    pass


class NonRegular(PreconditionError):
    pass


class NotNodal(PreconditionError):
    pass


class NotParallelogram(PreconditionError):
    pass


class ZeroScalar(PreconditionError):
    pass


class SupportMismatch(PreconditionError):
    pass


class DeltaTooLarge(PreconditionError):
    pass


class NotMaxRank(PreconditionError):
    pass


class NotSimpleNodal(PreconditionError):
    pass


class NotComplementary(PreconditionError):
    pass


class ConfigDegenerate(PreconditionError):
    """Point configuration failed an a-posteriori genericity certificate.

    Callers are expected to reseed and retry.
    """


class InternalInvariantError(TropsevError):
    """A consistency check that should be unconditionally true failed."""
