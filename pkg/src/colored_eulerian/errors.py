class BudgetExceeded(RuntimeError):
    """Raised instead of starting an enumeration larger than the allowed budget."""

    def __init__(self, what: str, size: int, budget: int):
        self.what, self.size, self.budget = what, size, budget
        super().__init__(f"{what} needs {size} objects, over the budget of {budget}")
