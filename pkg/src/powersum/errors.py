"""Exception types shared across the package."""


class BudgetError(RuntimeError):
    """A requested computation exceeds a configured resource budget.

    Raised instead of silently truncating work; the message names the
    offending quantity so callers can raise the budget or shrink the job.
    """


class ReducibleModulusError(ValueError):
    """A polynomial offered as a field modulus is reducible.

    Carries a nontrivial monic factor as the witness.
    """

    def __init__(self, modulus, factor):
        self.modulus = tuple(modulus)
        self.factor = tuple(factor)
        super().__init__(
            f"polynomial {self.modulus} is reducible: divisible by {self.factor}"
        )
