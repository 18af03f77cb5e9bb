"""Exception types shared across the package.

The split matters to callers: admissibility predicates return booleans,
while operations whose preconditions require an admissible word (or the
main operating mode) raise instead, so tests can probe bad inputs
deliberately.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class InadmissibleWordError(DomainError):
    """A word precondition required membership in the language."""


class MainModeError(DomainError):
    """The operation is only defined for beta > 3 with alpha*beta = 1."""


class ScanDivergenceError(RuntimeError):
    """An obstruction scan was proven (or suspected) not to terminate."""
