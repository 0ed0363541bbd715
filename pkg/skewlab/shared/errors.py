"""
Exception hierarchy for skewlab.

Every error carries a structured witness so handlers can report the exact
violating cell, triple or element. Handlers map the four families onto status
codes (see STATUS_CODES); the CLI maps status codes onto exit codes.
"""

from typing import Any, Dict, Optional, Tuple


class SkewLabError(Exception):
    """Base class for every error raised by skewlab."""

    def __init__(self, message: str, **witness: Any):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': type(self).__name__,
            'message': self.message,
            'witness': {k: _jsonable(v) for k, v in self.witness.items()},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, 'item'):
        return value.item()
    return value


# =============================================================================
# Validation failures (exit code 1)
# =============================================================================

class ValidationError(SkewLabError):
    """Input tables do not describe the claimed structure."""


class TableShapeError(ValidationError):
    def __init__(self, reason: str):
        super().__init__(f"Malformed table: {reason}", reason=reason)


class NotLatinSquare(ValidationError):
    def __init__(self, axis: str, index: int, value: int):
        super().__init__(
            f"Not a Latin square: value {value} repeats in {axis} {index}",
            axis=axis, index=index, value=value,
        )


class NoIdentity(ValidationError):
    def __init__(self):
        super().__init__("Table has no two-sided identity element")


class NotAssociative(ValidationError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"Associativity fails at ({a}, {b}, {c})", triple=(a, b, c))


class IdentityMismatch(ValidationError):
    def __init__(self, add_identity: int, mul_identity: int):
        super().__init__(
            f"Additive identity {add_identity} differs from multiplicative identity {mul_identity}",
            add_identity=add_identity, mul_identity=mul_identity,
        )


class DistributivityFailure(ValidationError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(
            f"a∘(b+c) != (a∘b) - a + (a∘c) at a={a}, b={b}, c={c}", triple=(a, b, c)
        )


class LambdaInvariantFailure(ValidationError):
    def __init__(self, kind: str, witness: Tuple[int, ...]):
        super().__init__(f"λ is not a {kind} at {witness}", kind=kind, triple=witness)


class Degenerate(ValidationError):
    def __init__(self, kind: str, x: int):
        super().__init__(f"Row {x} of the {kind} table is not a permutation", kind=kind, row=x)


class NotBijective(ValidationError):
    def __init__(self, pair: Tuple[int, int]):
        super().__init__(f"r is not injective: pair {pair} is hit twice", pair=pair)


class BraidFailure(ValidationError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(f"Braid relation fails at ({x}, {y}, {z})", triple=(x, y, z))


# =============================================================================
# Parse failures (exit code 2)
# =============================================================================

class ParseError(SkewLabError):
    def __init__(self, line: Optional[int], reason: str):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"Parse error{where}: {reason}", line=line, reason=reason)
        self.line = line
        self.reason = reason


# =============================================================================
# Resource caps (exit code 3)
# =============================================================================

class ResourceLimitError(SkewLabError):
    """A configured search or size cap was exceeded."""


class TooLarge(ResourceLimitError):
    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} of size {size} exceeds the cap {limit}", what=what, size=size, limit=limit)


class PartialResult(SkewLabError):
    """A decomposition whose atoms are upper bounds only."""

    def __init__(self, partition: Any, flagged: Tuple[int, ...]):
        super().__init__(
            f"Minimal factors of {list(flagged)} exceed the exact search limit; blocks are upper bounds",
            flagged=flagged,
        )
        self.partition = partition


# =============================================================================
# Precondition failures (exit code 1)
# =============================================================================

class PreconditionError(SkewLabError):
    """An operation was called outside its domain."""


class InvalidSubbrace(PreconditionError):
    def __init__(self, members):
        super().__init__(f"{sorted(members)} is not a sub skew brace", members=sorted(members))


class NotTwoSided(PreconditionError):
    def __init__(self):
        super().__init__("The brace is not two-sided")


class NotGenerating(PreconditionError):
    def __init__(self, members):
        super().__init__(f"{sorted(members)} does not generate the brace", members=sorted(members))


class NotAdditivelyGenerating(PreconditionError):
    def __init__(self, members):
        super().__init__(
            f"{sorted(members)} does not generate the additive group", members=sorted(members)
        )


class NotAddSubgroup(PreconditionError):
    def __init__(self, members):
        super().__init__(f"{sorted(members)} is not an additive subgroup", members=sorted(members))


class UnsupportedQuery(PreconditionError):
    def __init__(self, family: str, set_name: str):
        super().__init__(f"Family {family} has no closed form for {set_name}", family=family, set_name=set_name)


class UnknownClaim(PreconditionError):
    def __init__(self, claim_id: str):
        super().__init__(f"Unknown claim {claim_id!r}", claim_id=claim_id)


# =============================================================================
# Internal check failures (exit code 1)
# =============================================================================

class InternalCheckFailure(SkewLabError):
    """A postcondition that holds for every valid input failed."""


class IllDefined(InternalCheckFailure):
    def __init__(self, table: str, witness: Tuple[int, ...]):
        super().__init__(f"Induced {table} table disagrees between representatives {witness}",
                         table=table, witness=witness)


class PostconditionFailure(InternalCheckFailure):
    def __init__(self, operation: str, detail: str):
        super().__init__(f"{operation}: {detail}", operation=operation, detail=detail)


class StrategyMismatch(InternalCheckFailure):
    def __init__(self, direct: int, lambda_based: int):
        super().__init__(
            f"Direct search found {direct} classes, λ search found {lambda_based}",
            direct=direct, lambda_based=lambda_based,
        )


def ensure(condition: bool, operation: str, detail: str) -> None:
    """Raise PostconditionFailure unless condition holds."""
    if not condition:
        raise PostconditionFailure(operation, detail)


STATUS_CODES = {
    ValidationError: 422,
    PreconditionError: 422,
    InternalCheckFailure: 422,
    ParseError: 400,
    ResourceLimitError: 413,
    PartialResult: 413,
}


def status_code_for(exc: BaseException) -> int:
    for cls, code in STATUS_CODES.items():
        if isinstance(exc, cls):
            return code
    return 500
