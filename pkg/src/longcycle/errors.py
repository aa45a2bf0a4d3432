"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (the input is bad, CLI exit
code 1) and :class:`GuaranteeViolation` (a lemma or bound check failed, which
means a bug, CLI exit code 2).
"""


class LongCycleError(Exception):
    pass


class InputError(LongCycleError, ValueError):
    pass


class GuaranteeViolation(LongCycleError, AssertionError):
    pass


class ParseError(InputError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class LoopArc(InputError):
    def __init__(self, v: int):
        super().__init__(f"loop arc at vertex {v}")
        self.vertex = v


class DuplicateArc(InputError):
    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate arc ({u}, {v})")
        self.arc = (u, v)


class VertexOutOfRange(InputError):
    def __init__(self, v, n: int):
        super().__init__(f"vertex {v!r} out of range 0..{n - 1}")
        self.vertex = v


class NotEulerian(InputError):
    pass


class NotStronglyConnected(NotEulerian):
    pass


class Unreachable(InputError):
    def __init__(self, v: int, root: int):
        super().__init__(f"vertex {v} is not reachable from root {root}")
        self.vertex = v


class ArcNotInGraph(InputError):
    def __init__(self, arc):
        super().__init__(f"arc {tuple(arc)} is not in the digraph")
        self.arc = tuple(arc)


class NotViolating(InputError):
    pass


class NotBackArc(InputError):
    pass


class NotAncestor(InputError):
    pass


class NotFinal(InputError):
    pass


class BudgetExceeded(InputError):
    pass


class RetryBudgetExceeded(InputError):
    pass


class InternalInvariantViolation(GuaranteeViolation):
    pass


class TerminationBudgetExceeded(GuaranteeViolation):
    pass


class NoBackArc(GuaranteeViolation):
    pass


class BoundViolation(GuaranteeViolation):
    pass
