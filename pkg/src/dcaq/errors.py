"""Exception hierarchy for the DCAQ toolkit."""


class DcaqError(ValueError):
    """Base class for every validation failure raised by this package."""


class InvalidRateError(DcaqError):
    pass


class InvalidRatioError(DcaqError):
    pass


class InvalidCountError(DcaqError):
    pass


class InvalidInputError(DcaqError):
    pass


class EmptyInputError(DcaqError):
    pass


class ScenarioError(DcaqError):
    """A scenario document failed to parse or validate.

    ``path`` is the dotted field path of the offending value, e.g.
    ``environment.client.hit_ratio``.
    """

    def __init__(self, path, message):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class DegenerateDistributionWarning(UserWarning):
    """Monte Carlo run over a fixed rate: every trial is identical."""
