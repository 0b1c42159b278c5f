"""Exception types shared across the package."""


class GarsiaError(Exception):
    pass


class PoleError(GarsiaError, ZeroDivisionError):
    """A rational map was evaluated at a zero of its denominator."""


class NotPowerSeries(GarsiaError, ValueError):
    """The denominator of a rational map vanishes at 0."""


class GuardrailExceeded(GarsiaError, MemoryError):
    """An enumeration would exceed the configured atom or level limit."""


class HypothesisViolated(GarsiaError, ValueError):
    """A lemma checker was called outside the hypotheses of the lemma."""

    def __init__(self, clause, detail=""):
        self.clause = clause
        msg = clause if not detail else f"{clause}: {detail}"
        super().__init__(msg)


class LemmaViolation(GarsiaError, AssertionError):
    """The hypotheses of a lemma held but its conclusion failed."""


class PrecisionExhausted(GarsiaError, ArithmeticError):
    """Certification did not succeed below the precision cap."""


class IndistinguishableRoots(PrecisionExhausted):
    pass
