from __future__ import annotations

from dataclasses import dataclass, field


class DomainError(ValueError):
    """A well-formed request that violates a mathematical precondition."""


class SchemaError(ValueError):
    """Malformed input data; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class HypothesisViolation(DomainError):
    pass


class DisconnectedComplex(DomainError):
    pass


class InvalidComplex(DomainError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(v.message for v in self.violations)
        super().__init__(f"invalid complex: {lines}")


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    where: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": self.message, "where": dict(self.where)}
