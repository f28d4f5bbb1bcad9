class InsufficientSupportError(ValueError):
    """A region or radius reaches outside the box a function is sampled on."""


class UnderResolvedError(ValueError):
    """A cube is too small relative to the grid spacing to be meaningful."""


class HypothesisError(ValueError):
    """A verification config violates the hypotheses of the statement it checks.

    The ``condition`` attribute is a short label for the violated hypothesis:
    the exponent-regime label ``"(4.1)/(4.2)/(4.3)"``, a weight class or
    ``"sigma > 0"``.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition
