"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: InputError -> 2,
CapacityError -> 3, TheoremViolation -> 1.
"""

from __future__ import annotations


class CatbaseError(Exception):
    """Base class for all package errors."""


class InputError(CatbaseError, ValueError):
    """Malformed or out-of-contract input (wrong sizes, bad documents)."""


class CapacityError(CatbaseError):
    """An enumeration would exceed a hard cap or the configured budget."""


class TheoremViolation(CatbaseError):
    """A result the theory guarantees failed to materialize.

    This is the tool's most valuable output: on a validated base it means
    either a genuine counterexample or an implementation bug, so it is a
    distinguished error rather than a silent None. ``check`` is a stable
    behavior-named id (e.g. "fundamental_witness", "equivalence").
    """

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}")
