"""Exception taxonomy shared across the package.

Three failure classes are distinguished so that callers (and the CLI)
can map them to distinct outcomes:

* ``InputError``: the caller handed us something malformed or out of
  contract (bad ids, unmet preconditions, oversized instances).
* ``InvariantViolation``: an internal consistency check failed.  These
  guard facts the algorithms are entitled to rely on; seeing one means
  either the input lied
  about its preconditions in a way we could not detect up front, or
  there is a bug.  Results are never silently wrong instead.
* ``SamplingExhausted``: a randomized search gave up within its budget.

Negative *verdicts* (a condition that simply fails to hold, with a
witness) are not exceptions; they are returned as values.
"""

from __future__ import annotations


class HamextError(Exception):
    """Base class for all package-specific errors."""


class InputError(HamextError):
    """Malformed input or violated precondition."""


class InvariantViolation(HamextError):
    """An internal invariant that should be unbreakable was broken."""

    def __init__(self, message: str, **context: object) -> None:
        super().__init__(message)
        self.context = dict(context)


class FrontierContamination(InvariantViolation):
    """A computation touched ball-frontier vertices whose neighbourhoods
    are incomplete.  Raised instead of returning a possibly wrong answer;
    callers typically re-explore with a larger radius."""


class SamplingExhausted(HamextError):
    """A seeded rejection sampler ran out of attempts."""

    def __init__(self, message: str, attempts: int) -> None:
        super().__init__(message)
        self.attempts = attempts
