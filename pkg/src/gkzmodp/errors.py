"""Shared exception vocabulary for bounded searches."""


class BudgetExceeded(Exception):
    """An enumeration or point count hit its configured resource budget.

    Raised instead of returning a partial or subsampled answer.
    """


class Undecided(Exception):
    """A semi-decidable membership question was not resolved at the cap.

    Only possible for non-pointed generator sets, where semigroup
    non-membership has no finite certificate in general.
    """
