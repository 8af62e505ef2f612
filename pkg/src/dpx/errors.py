"""Exception types shared across the package."""


class NotAGroup(Exception):
    """A multiplication table fails one of the group axioms."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class InvalidInput(ValueError):
    """Bad user-facing input, e.g. even or undersized rotation orders."""


class InvalidTuple(InvalidInput):
    """A parameter tuple that breaks a type invariant."""


class InadmissibleTuple(Exception):
    """A well-formed parameter tuple that fails the admissibility conditions.

    Carries the ConditionReport so callers can surface the failing
    condition and, for the order conditions, a concrete witness k.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConstructionInconsistent(Exception):
    """A constructed table violates one of its defining relations."""

    def __init__(self, relation, detail=""):
        msg = f"relation {relation} does not hold"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.relation = relation
        self.detail = detail


class SearchBudgetExceeded(Exception):
    """An isomorphism search ran out of backtracking nodes."""

    def __init__(self, nodes):
        super().__init__(f"search stopped after {nodes} nodes")
        self.nodes = nodes


class BudgetExceeded(Exception):
    """A sweep would visit more seeds than the configured budget allows."""

    def __init__(self, total, budget):
        super().__init__(f"sweep needs {total} seeds, budget is {budget}")
        self.total = total
        self.budget = budget
