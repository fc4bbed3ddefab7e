"""Exceptions raised by seqwit.

Every error derives from ``SeqwitError`` which is a ``ValueError``: a failed
precondition on a descriptor is a bad value, not a crash.
"""

from __future__ import annotations


class SeqwitError(ValueError):
    """Base class for all seqwit errors."""


class DescriptorError(SeqwitError):
    """A descriptor violates its construction invariants."""


class UnsupportedCombination(SeqwitError):
    """The requested construction leaves the definable fragment."""


class ApexNotExcludable(SeqwitError):
    """The apex lies in every neighborhood of itself."""


class NotInIP(SeqwitError):
    """The set is not a countably infinite set almost contained in every neighborhood."""


class NotAccumulating(SeqwitError):
    """The set does not accumulate at the apex."""


class NotInSP(SeqwitError):
    """The sequence does not converge to the apex."""


class NotConvergent(SeqwitError):
    """A reference sequence must converge to the apex."""


class ContinuousFunction(SeqwitError):
    """The function is continuous at the apex, so it has no witnesses."""


class UnsupportedChannel(SeqwitError):
    """The operation is not defined for this channel kind."""


class NotStrictlyIncreasing(SeqwitError):
    """An index map must be strictly increasing with positive values."""


class MarkerNotInChain(SeqwitError):
    """The minimal marker is not an entry of the chain."""


class CorpusNotInIP(SeqwitError):
    """A MAD verification corpus member is not in I_P."""


class FamilyNotAD(SeqwitError):
    """The starting family is not pairwise almost disjoint."""


class UnknownSuite(SeqwitError):
    """No verification suite has this name."""


class InvalidConfig(SeqwitError):
    """Suite configuration failed validation."""


class ParseError(SeqwitError):
    """A descriptor document could not be parsed."""


class UnknownQuery(SeqwitError):
    """No descriptor query has this name."""
