class InputError(ValueError):
    """Invalid argument (bad dimension, out-of-range constant, ...)."""


class NumericalError(ArithmeticError):
    """A numerical routine failed (singular system, non-finite values)."""
