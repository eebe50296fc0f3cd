"""Exception hierarchy shared by every layer.

Each error class name doubles as the diagnostic code printed by the CLI.
"""

from __future__ import annotations


class LogicError(Exception):
    """Base class for domain errors (CLI exit code 1)."""

    @property
    def code(self) -> str:
        return type(self).__name__


class ParseError(Exception):
    """Malformed input text (CLI exit code 2)."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.span = span

    code = "ParseError"


# stt-core
class UnboundVariable(LogicError):
    pass


class TypeMismatch(LogicError):
    def __init__(self, message: str, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found


class NonPropositionBody(LogicError):
    pass


# msfol-core
class UnknownSymbol(LogicError):
    pass


class ArityMismatch(LogicError):
    pass


class SortMismatch(LogicError):
    def __init__(self, message: str, expected=None, found=None):
        super().__init__(message)
        self.expected = expected
        self.found = found


class AmbiguousSort(LogicError):
    pass


class NonClosedAxiom(LogicError):
    pass


class IllFormedAxiom(LogicError):
    pass


# holsk
class SkolemCapture(LogicError):
    def __init__(self, message: str, symbol=None, variable=None, position=None):
        super().__init__(message)
        self.symbol = symbol
        self.variable = variable
        self.position = position


class NotAbstractable(LogicError):
    pass


class UnsupportedAtom(LogicError):
    pass


# rewrite
class FuelExhausted(LogicError):
    pass


# skolem
class NoExistential(LogicError):
    pass


class NotPrenex(LogicError):
    pass


class NameCollision(LogicError):
    pass


# debruijn
class DanglingIndex(LogicError):
    pass


class NonEmptyContextSort(LogicError):
    def __init__(self, message: str, position=None):
        super().__init__(message)
        self.position = position


# proofcheck
class BadStep(LogicError):
    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index


class NotModuloEqual(BadStep):
    pass


class EigenvariableViolation(BadStep):
    pass
