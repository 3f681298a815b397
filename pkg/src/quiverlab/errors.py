"""Exception hierarchy shared by every quiverlab module.

All domain errors derive from :class:`QuiverLabError` and expose a
``payload()`` dict so the CLI and the HTTP service can emit structured
errors uniformly.
"""

from __future__ import annotations


class QuiverLabError(Exception):
    """Base class for all domain errors."""

    def payload(self) -> dict:
        return {"type": type(self).__name__, "message": str(self)}


# --- matrix construction / mutation -----------------------------------------

class NonZeroDiagonal(QuiverLabError):
    def __init__(self, i: int, value: int):
        super().__init__(f"diagonal entry b[{i + 1}][{i + 1}] = {value} must be 0")
        self.index = i


class SignIncoherentPair(QuiverLabError):
    def __init__(self, i: int, j: int, bij: int, bji: int):
        super().__init__(
            f"entries b[{i + 1}][{j + 1}] = {bij} and b[{j + 1}][{i + 1}] = {bji} "
            "must be zero together or have strictly opposite signs"
        )
        self.pair = (i, j)


class NotSymmetrizable(QuiverLabError):
    pass


class FrozenVertex(QuiverLabError):
    def __init__(self, k: int):
        super().__init__(f"vertex {k + 1} is frozen and cannot be mutated")
        self.vertex = k


class IndexOutOfRange(QuiverLabError):
    def __init__(self, k: int, n: int):
        super().__init__(f"index {k + 1} out of range 1..{n}")
        self.index = k


class EmptyIndexSet(QuiverLabError):
    pass


class AlreadyFramed(QuiverLabError):
    pass


class SizeMismatch(QuiverLabError):
    pass


# --- constructions -----------------------------------------------------------

class UnknownName(QuiverLabError):
    pass


class BadParameters(QuiverLabError):
    pass


class InvalidSpec(QuiverLabError):
    pass


class HasSourceOrSink(QuiverLabError):
    pass


class NonGenericDrawing(QuiverLabError):
    pass


# --- embedding solver ---------------------------------------------------------

class TargetUnreachable(QuiverLabError):
    def __init__(self, m: int, detail: str = ""):
        msg = f"no mutation prefix reaches arrow count {m}"
        super().__init__(msg + (f": {detail}" if detail else ""))
        self.count = m


class SymmetrizerMismatch(QuiverLabError):
    pass


# --- plabic graphs ------------------------------------------------------------

class NotApplicable(QuiverLabError):
    pass


class ConditionsViolated(QuiverLabError):
    pass


# --- serialization ------------------------------------------------------------

class SchemaError(QuiverLabError):
    pass


# --- sessions ------------------------------------------------------------------

class UnknownSession(QuiverLabError):
    def __init__(self, sid: str):
        super().__init__(f"no session named {sid!r}")
        self.sid = sid
