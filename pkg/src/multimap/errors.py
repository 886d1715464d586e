"""Exception hierarchy.

Everything raised on purpose derives from :class:`MultimapError`, so callers
(and the CLI) can tell domain failures apart from programming errors.
"""


class MultimapError(Exception):
    """Base class for all domain errors."""


class MalformedRational(MultimapError, ValueError):
    pass


class UnsortedPartition(MultimapError, ValueError):
    pass


class SpecFormatError(MultimapError, ValueError):
    """The raw description does not parse structurally."""


class ConditionViolation(MultimapError):
    """One failed axiom of a Markov multi-map.

    ``condition`` is the axiom number (1-6), ``symbol`` the offending symbol id
    or ``None`` when the failure is global.
    """

    def __init__(self, condition, symbol, detail):
        self.condition = condition
        self.symbol = symbol
        self.detail = detail
        where = f" (symbol {symbol})" if symbol is not None else ""
        super().__init__(f"condition ({condition}) violated{where}: {detail}")


class InvalidMultiMap(MultimapError):
    """Raised by ``validate`` and carries every violation found."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


class UnsupportedBranchKind(MultimapError):
    pass


class NotNoCrossing(MultimapError):
    pass


class NotAdmissible(MultimapError):
    pass


class NonConvergence(MultimapError):
    def __init__(self, estimate, residual):
        self.estimate = estimate
        self.residual = residual
        super().__init__(
            f"power iteration did not converge: estimate={estimate!r}, residual={residual!r}"
        )


class ExplosionGuard(MultimapError):
    def __init__(self, needed, cap):
        self.needed = needed
        self.cap = cap
        super().__init__(f"enumeration needs {needed} items, cap is {cap} (set MULTIMAP_WORD_CAP)")


class NotIrreducible(MultimapError):
    pass


class ZeroEntropy(MultimapError):
    pass


class VerificationFailure(MultimapError):
    pass


class NoOptions(MultimapError):
    pass


class NotATrajectory(MultimapError):
    pass


class NotProperlyParametrized(MultimapError):
    pass


class LengthMismatch(MultimapError, ValueError):
    pass
