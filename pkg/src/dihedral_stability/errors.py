"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates an operation's precondition."""


class NonGeneratingError(ValueError):
    """A three-reflection set does not generate the whole dihedral group."""

    def __init__(self, n, a, b, gcd):
        self.n, self.a, self.b, self.gcd = n, a, b, gcd
        super().__init__(
            f"offsets {{0, {a}, {b}}} do not generate D_{n}: gcd(a, b, n) = {gcd}"
        )


class VerificationFailure(RuntimeError):
    """A checked bound or identity did not hold."""


class InternalError(RuntimeError):
    """A safety cap was hit; indicates a bug rather than bad input."""
