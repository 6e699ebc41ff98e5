"""Exception types raised across the package."""


class UpdrawError(Exception):
    """Base class for every error raised by updraw."""


class CycleDetected(UpdrawError, ValueError):
    pass


class InvalidParams(UpdrawError, ValueError):
    pass


class DegenerateSegment(UpdrawError, ValueError):
    pass


class MissingVertexPoint(UpdrawError, KeyError):
    pass


class EmptyDrawing(UpdrawError, ValueError):
    pass


class MissingAssignment(UpdrawError, KeyError):
    pass


class SpanViolation(UpdrawError, ValueError):
    pass


class InvalidLayout(UpdrawError, ValueError):
    pass


class InvalidDrawing(UpdrawError, ValueError):
    pass


class NotOneQueue(UpdrawError, ValueError):
    pass


class NotStrongStar(UpdrawError, ValueError):
    pass


class NotATree(UpdrawError, ValueError):
    pass


class NotACaterpillar(NotATree):
    pass


class NotTopological(UpdrawError, ValueError):
    pass


class NotUpwardPlanar(UpdrawError, ValueError):
    pass


class BudgetExceeded(UpdrawError, RuntimeError):
    pass
