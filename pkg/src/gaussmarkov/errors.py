"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input fails a structural precondition (shape, symmetry, domain)."""


class NotPSDError(ValidationError):
    """Symmetric matrix has an eigenvalue below the PSD tolerance."""


class InconsistentJointError(ValidationError):
    """Cross-covariance block is incompatible with the marginal covariance range."""


class RankDeficientProbesError(ValidationError):
    """Probe states do not span the state space."""


class LogarithmBranchError(ValidationError):
    """Principal matrix logarithm undefined: eigenvalue on the closed negative real axis."""


class GridError(ValidationError):
    """Time grid lacks the structure an estimator needs."""
