from typing import Optional


class WittenCountError(Exception):
    """
    Base error. Like an HTTP exception it carries a status (the process exit
    code used by the CLI) and a human readable detail.
    """
    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ArithmeticOverflowError(WittenCountError):
    pass


class BudgetExceededError(WittenCountError):
    pass


class UnsupportedParameterError(WittenCountError):
    pass


class InvalidFormError(WittenCountError):
    pass


class FitError(WittenCountError):
    pass


class UsageError(WittenCountError):
    exit_code = 2


class ToleranceNotMetError(WittenCountError):
    def __init__(self, detail: str, best_estimate: float, error_estimate: float, subdivisions: int):
        super().__init__(detail)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions
