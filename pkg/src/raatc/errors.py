class InconsistencyError(RuntimeError):
    """Two independent computations that must agree did not."""


class MissingHypothesisError(ValueError):
    """An exact formula was requested without the caller asserting its hypotheses."""
