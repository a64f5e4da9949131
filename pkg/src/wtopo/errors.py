"""Exception types shared across the package."""
from __future__ import annotations


class WtopoError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class ValidationError(WtopoError, ValueError):
    pass


class ReflexivityViolation(ValidationError):
    def __init__(self, i):
        self.i = i
        super().__init__(f"d[{i}][{i}] is not 0")


class TriangleViolation(ValidationError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"triangle inequality fails: d[{i}][{j}] + d[{j}][{k}] < d[{i}][{k}]")


class UnknownLabel(ValidationError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"unknown label {label!r}")


class UnknownObject(UnknownLabel):
    pass


class SizeLimitExceeded(WtopoError):
    """An enumeration would exceed its configured cap (CLI exit code 1)."""

    def __init__(self, what, limit):
        self.limit = limit
        super().__init__(f"{what} exceeds the size cap {limit}")


class EndpointMismatch(ValidationError):
    pass


class NotACategory(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"category laws fail: {witness}")


class WeightAxiomViolation(ValidationError):
    def __init__(self, a, b=None):
        self.pair = (a, b)
        if b is None:
            msg = f"identity {a!r} has nonzero weight"
        else:
            msg = f"w({a!r} + {b!r}) > w({a!r}) + w({b!r})"
        super().__init__(msg)


class NoRetractFound(WtopoError):
    pass


class CoverViolation(ValidationError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"piece interiors do not cover the plane at {witness}")


class EdgeOffSpace(ValidationError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge!r} has an endpoint outside the space")


class IncompatibleField(WtopoError, ValueError):
    pass


class NotUnimodular(ValidationError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"determinant {det} is not +1 or -1")
