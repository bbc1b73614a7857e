"""Exception types shared across the package."""

from __future__ import annotations


class MismatchError(ValueError):
    """Inputs to an operation do not share the required category/context."""


class BudgetExceededError(Exception):
    """An exhaustive enumeration ran past its candidate budget.

    Candidates are counted as if by generate-and-test over the full raw
    product space, before any law filtering.  ``partial_count`` is the
    number of law-satisfying results found before the budget ran out.
    """

    def __init__(self, what: str, cap: int, partial_count: int):
        self.what = what
        self.cap = cap
        self.partial_count = partial_count
        super().__init__(
            f"enumeration budget exceeded for {what}: "
            f"cap {cap}, {partial_count} results found before giving up"
        )


class LoadError(Exception):
    """A fixture file could not be parsed or refers to unknown names."""

    def __init__(self, message: str, path: str | None = None,
                 line: int | None = None, col: int | None = None):
        self.path = path
        self.line = line
        self.col = col
        where = path or "<input>"
        if line is not None:
            where += f":{line}" + (f":{col}" if col is not None else "")
        super().__init__(f"{where}: {message}")
