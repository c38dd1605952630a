class RetError(Exception):
    pass


class DomainError(RetError, ValueError):
    pass


class ConvergenceError(RetError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class NewtonFailure(ConvergenceError):
    def __init__(self, message, cell=None, iterations=None):
        super().__init__(message, iterations)
        self.cell = cell


class StepFailure(RetError):
    def __init__(self, message, t=None, state=None, partial=None):
        super().__init__(message)
        self.t = t
        self.state = state
        self.partial = partial


class MaxStepsExceeded(StepFailure):
    pass


class ConfigError(RetError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if line is not None:
            message = '{}:{}: {}'.format(path or '<config>', line, message)
        elif path is not None:
            message = '{}: {}'.format(path, message)
        super().__init__(message)
