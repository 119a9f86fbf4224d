"""Exception hierarchy.

Every domain error carries a stable ``kind`` string (the class name unless
overridden); the CLI reports it in its JSON error object.
"""

from __future__ import annotations


class GravicatError(ValueError):
    kind = "GravicatError"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "kind" not in cls.__dict__:
            cls.kind = cls.__name__

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.message = message
        self.details = details
        # (line, column) of the expression node being evaluated, if any
        self.position: tuple[int, int] | None = None

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": self.message}
        if self.position is not None:
            out["line"], out["column"] = self.position
        out.update(self.details)
        return out


# lattices

class MalformedGram(GravicatError):
    """Gram matrix is not square or not symmetric."""


class NotUnimodular(GravicatError):
    pass


class UnknownLattice(GravicatError):
    pass


class NotIndefinite(GravicatError):
    pass


class NotDefinite(GravicatError):
    pass


class OddLattice(GravicatError):
    pass


class EvenSignatureViolation(GravicatError):
    """Even unimodular lattice whose signature is not divisible by 8."""


# periods and walls

class DegenerateForm(GravicatError):
    pass


class DimensionMismatch(GravicatError):
    pass


class NotPositiveDefinite(GravicatError):
    pass


class InvalidSubspace(GravicatError):
    pass


class InvalidPeriod(GravicatError):
    pass


class NotLorentzian(GravicatError):
    pass


class PeriodOnWall(GravicatError):
    pass


class OppositeCones(GravicatError):
    pass


# cobordisms

class BoundaryMismatch(GravicatError):
    pass


class LabelCollision(GravicatError):
    pass


class NotConnectedInterface(GravicatError):
    pass


class MissingC1(GravicatError):
    pass


class NotClosed(GravicatError):
    pass


# ledgers

class ParityViolation(GravicatError):
    """chi + sigma is odd, which no closed oriented 4-manifold allows."""


class MissingCharge(GravicatError):
    pass


class NotDivisible(GravicatError):
    pass


class MissingGenerators(GravicatError):
    pass


class LedgerError(GravicatError):
    pass


# expressions, manifests, CLI

class ExpressionSyntaxError(GravicatError):
    kind = "SyntaxError"

    def __init__(self, message: str, line: int, column: int, token: str):
        super().__init__(message, token=token)
        self.line = line
        self.column = column
        self.token = token
        self.position = (line, column)


class UnboundName(GravicatError):
    pass


class SchemaError(GravicatError):
    pass


class ManifestValidationError(GravicatError):
    """Aggregated record violations found while loading a manifest."""

    kind = "ValidationError"

    def __init__(self, violations: dict[str, list[str]]):
        summary = "; ".join(f"{name}: {', '.join(v)}" for name, v in violations.items())
        super().__init__(summary, violations=violations)
        self.violations = violations


class ManifestIOError(GravicatError):
    kind = "IoError"


class RankLimitExceeded(GravicatError):
    pass
