"""Gaussian transition kernels of linear SDEs.

Subpackages cover the full round trip: building transition kernels from a
generating triple (drift matrix, drift vector, diffusion covariance),
simulating the associated linear SDE, recovering the triple from sampled
kernels, checking the structural identities (kernel composition, martingale
moments, generator limits), and a boundary-noise heat equation example.
"""

__version__ = "0.1.0"

from .errors import (
    GridError,
    InconsistentJointError,
    LogarithmBranchError,
    NotPSDError,
    RankDeficientProbesError,
    ValidationError,
)
from .gaussian import GaussianMeasure, JointGaussian
from .semigroup import GeneratorModel, TransitionKernel

__all__ = [
    "GaussianMeasure",
    "JointGaussian",
    "GeneratorModel",
    "TransitionKernel",
    "ValidationError",
    "NotPSDError",
    "InconsistentJointError",
    "RankDeficientProbesError",
    "LogarithmBranchError",
    "GridError",
    "__version__",
]
