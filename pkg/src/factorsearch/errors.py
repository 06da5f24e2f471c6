"""Exception types shared across the package."""


class FactorSearchError(Exception):
    """Base class for all errors raised by this package."""


class BadShape(FactorSearchError):
    """Input table is not a well-formed n-by-n matrix over 0..n-1."""


class NotAGroup(FactorSearchError):
    """Cayley table violates a group axiom; message names the witness."""


class UnknownSpec(FactorSearchError):
    """Group-spec string does not parse in the mini-language."""


class TooLarge(FactorSearchError):
    """Requested group exceeds the configured order limit."""


class ProfileMismatch(FactorSearchError):
    """Product of the requested factor sizes differs from the group order."""


class PositionOutOfRange(FactorSearchError):
    """Factor position outside the valid range for the requested check."""


class BudgetExceeded(FactorSearchError):
    """Enumeration would visit more candidates than the configured budget."""


class NotAFactorization(FactorSearchError):
    """Operation requires a genuine factorization as input."""


class BadCertificate(FactorSearchError):
    """Certificate failed verification.

    ``check`` names the first failing verification step (e.g. ``"sizes"``,
    ``"is_factorization"``, ``"DIV"``, ``"DIV2_III"``, ``"group"``).
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check
