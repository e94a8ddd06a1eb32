"""Exceptions shared across the engine.

Most of these are signals with mathematical meaning rather than crashes:
``RepInfiniteAtCap`` carries the partial census computed so far, and
``NoSolution`` is never raised at all (solvers return ``None``).
"""


class TauscopeError(Exception):
    """Base class for all engine errors."""


class NotFiniteDimensional(TauscopeError):
    """Path basis kept growing past the configured length cap."""


class MalformedRelation(TauscopeError):
    """A relation mixes sources/targets or is otherwise unusable."""


class UnsupportedCharacteristic(TauscopeError):
    """Operation needs characteristic zero (trace-form radical)."""


class NonSplitEndomorphism(TauscopeError):
    """dim End/rad > 1 but no splitting idempotent was found.

    Carries the offending module so the failure is reportable.
    """

    def __init__(self, message, module=None):
        super().__init__(message)
        self.module = module


class IsProjective(TauscopeError):
    """Almost split sequence requested for a projective module."""


class NotInCensus(TauscopeError):
    """A module could not be matched against the census (fatal)."""


class NotMember(TauscopeError):
    """Filtration length requested for a module outside the closure."""


class RoundtripFailure(TauscopeError):
    """alpha(torsionClosure(W)) != W; the input set was not wide."""


class SiltingCheckFailure(TauscopeError):
    """D_sigma' disagrees with the torsion class (upstream bug)."""


class ConeCheckFailure(TauscopeError):
    """Mapping-cone presentation failed one of its two verifications."""


class CrossCheckFailure(TauscopeError):
    """The two constructions of the localised ring disagree."""


class ReflectionNotUnique(TauscopeError):
    """Factorisation through the reflection unit is not unique (fatal)."""


class ParseError(TauscopeError):
    """Presentation text could not be parsed; carries line context."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class RepInfiniteAtCap(TauscopeError):
    """Knitting hit a cap; carries the partial census for bounded probes."""

    def __init__(self, message, partial=None, cap=None):
        super().__init__(message)
        self.partial = partial
        self.cap = cap
