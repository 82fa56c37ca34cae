"""Cost and memory guards.

Every expensive operation checks its inputs against a documented budget and
refuses (rather than degrading silently) when the budget is exceeded.  The
CLI maps GuardViolation to its own exit code.
"""


class GuardViolation(RuntimeError):
    """An input exceeds an operation's declared cost or memory budget."""

    def __init__(self, what, requested, limit):
        self.what = what
        self.requested = requested
        self.limit = limit
        super().__init__(f"{what}: requested {requested} exceeds guard {limit}")


def check(what, requested, limit, scale=1.0):
    if requested > limit * scale:
        raise GuardViolation(what, requested, limit * scale)
