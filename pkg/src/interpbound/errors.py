"""Exception types shared across modules."""


class BudgetExceededError(ValueError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        super().__init__(f"{what} needs {required}, budget is {budget}")
        self.what = what
        self.required = required
        self.budget = budget


class TrivialPropertyError(ValueError):
    """The property is constant on the family, so P^-1(0) or P^-1(1) is empty."""
