"""Exception hierarchy.

``NoSolution`` and its relatives describe well-posed problems without an
answer; ``ParseError`` and ``DimensionError`` describe malformed input.
"""


class SkewInterpError(Exception):
    """Base class for library errors."""


class ParseError(SkewInterpError, ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text is not None:
                message = f"{message} in {text!r}"
        super().__init__(message)


class DimensionError(SkewInterpError, ValueError):
    pass


class NotMonic(SkewInterpError, ValueError):
    pass


class Singular(SkewInterpError, ArithmeticError):
    pass


class NoSolution(SkewInterpError):
    """The problem is well posed but has no solution."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class NotControllable(NoSolution):
    def __init__(self, reason="pair is not controllable"):
        super().__init__(reason)


class NotObservable(NoSolution):
    def __init__(self, reason="pair is not observable"):
        super().__init__(reason)


class NotSimilar(NoSolution):
    def __init__(self, reason="pairs are not similar"):
        super().__init__(reason)


class NodesNotPIndependent(NoSolution):
    def __init__(self, reason="interpolation nodes are not P-independent"):
        super().__init__(reason)


class VerificationError(AssertionError):
    """An exact post-condition check failed; indicates a library bug."""
