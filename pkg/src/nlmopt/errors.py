"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class NlmoptError(Exception):
    exit_code = 1


class InputError(NlmoptError, ValueError):
    """Malformed or inconsistent input (bad index, bad dimensions, bad file)."""

    exit_code = 2


class BudgetError(NlmoptError):
    """A guard rail refused the instance before any work was done."""

    exit_code = 3

    def __init__(self, cap, required, limit):
        self.cap = cap
        self.required = required
        self.limit = limit
        super().__init__(f"parameter blow-up: {cap} exceeded ({required} > {limit})")


class InfeasibleError(NlmoptError):
    """The instance has no admissible solution (disconnected graph, rank-deficient design)."""

    exit_code = 4


class ContractError(NlmoptError, AssertionError):
    """An internal invariant failed; indicates a bug or an inconsistent oracle."""

    exit_code = 70
