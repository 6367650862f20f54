"""Finite-dimensional Gaussian measures and conditional regression.

A measure is a pair (mean, cov) with cov symmetric positive semidefinite.
Degenerate covariances are first-class citizens: square roots and inverse
square roots go through the spectral decomposition, inverting only on the
numerical range and acting as zero on the numerical null space.

Conditioning works in regression form. For a joint Gaussian (X, Y) with
blocks (m_X, m_Y, C_X, C_Y, C_XY) the regression operator is

    K = C_X^{-1/2} C_XY        (pseudo-inverse square root of C_X)

and the law of Y given X = x is Gaussian with

    mean = m_Y + K^T C_X^{-1/2} (x - m_X),      cov = C_Y - K^T K.

The decomposition also yields the range-compatibility residual: for a
genuine joint Gaussian the columns of C_XY lie in the range of C_X^{1/2},
so the component of C_XY outside the numerical range of C_X measures how
far the blocks are from any actual joint law.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InconsistentJointError, NotPSDError, ValidationError
from .rng import make_generator

#: Relative eigenvalue tolerance below which a symmetric matrix counts as
#: not PSD; negatives above -EPS_PSD * max_eigenvalue are clamped to zero.
EPS_PSD = 1e-10

#: Default relative cutoff for pseudo-inverses (numerical rank decision).
PINV_RTOL = 1e-12

#: Default relative tolerance on the range-compatibility residual of a joint.
RANGE_TOL = 1e-8


def _as_vector(v, name: str) -> np.ndarray:
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.ndim != 1:
        raise ValidationError(f"{name} must be a vector, got shape {v.shape}")
    return v


def _as_square(m, name: str) -> np.ndarray:
    m = np.atleast_2d(np.asarray(m, dtype=float))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {m.shape}")
    return m


def _check_symmetric(m: np.ndarray, name: str) -> None:
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if float(np.abs(m - m.T).max(initial=0.0)) > 1e-10 * scale:
        raise ValidationError(f"{name} is not symmetric")


def symmetrize(m: np.ndarray) -> np.ndarray:
    """Exactly symmetric part (m + m^T) / 2."""
    return 0.5 * (m + m.T)


def _psd_eigh(cov: np.ndarray, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition with PSD validation and round-off clamping."""
    w, v = np.linalg.eigh(symmetrize(cov))
    top = max(float(w[-1]), 0.0)
    if float(w[0]) < -EPS_PSD * max(top, 1e-300):
        raise NotPSDError(
            f"{name} has eigenvalue {w[0]:.3e} below -{EPS_PSD:.0e} * {top:.3e}"
        )
    return np.clip(w, 0.0, None), v


def psd_sqrt(cov: np.ndarray) -> np.ndarray:
    """Symmetric square root of a symmetric PSD matrix.

    Eigenvalues below EPS_PSD times the largest are clamped to zero, so
    harmless round-off negativity (e.g. from covariance integration) does
    not poison the result. Raises NotPSDError for genuinely indefinite
    input and ValidationError for non-symmetric input.
    """
    cov = _as_square(cov, "cov")
    _check_symmetric(cov, "cov")
    w, v = _psd_eigh(cov, "cov")
    w[w < EPS_PSD * max(float(w[-1]), 0.0)] = 0.0
    return symmetrize((v * np.sqrt(w)) @ v.T)


def pseudo_inverse_sqrt(cov: np.ndarray, rel_tol: float = PINV_RTOL) -> np.ndarray:
    """C^{-1/2} on the numerical range of C, zero on the null space.

    Eigenvalues >= rel_tol * max are inverted as 1/sqrt; the rest are
    treated as exact zeros. The zero matrix maps to the zero matrix.
    """
    cov = _as_square(cov, "cov")
    _check_symmetric(cov, "cov")
    w, v = _psd_eigh(cov, "cov")
    cut = rel_tol * float(w[-1])
    inv = np.where(w >= max(cut, 1e-300), 1.0 / np.sqrt(np.where(w > 0, w, 1.0)), 0.0)
    if float(w[-1]) == 0.0:
        inv[:] = 0.0
    return symmetrize((v * inv) @ v.T)


def range_projector(cov: np.ndarray, rel_tol: float = PINV_RTOL) -> np.ndarray:
    """Orthogonal projector onto the numerical range of a symmetric PSD matrix."""
    cov = _as_square(cov, "cov")
    _check_symmetric(cov, "cov")
    w, v = _psd_eigh(cov, "cov")
    keep = w >= max(rel_tol * float(w[-1]), 1e-300)
    vk = v[:, keep]
    return symmetrize(vk @ vk.T)


@dataclass
class GaussianMeasure:
    """Gaussian measure N(mean, cov) on R^dim.

    The covariance is symmetrized at construction and validated to be PSD
    up to the EPS_PSD round-off allowance. Arrays are frozen (read-only)
    afterwards, so instances are safe to share across threads.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        self.mean = _as_vector(self.mean, "mean")
        cov = _as_square(self.cov, "cov")
        if cov.shape[0] != self.mean.shape[0]:
            raise ValidationError(
                f"mean has length {self.mean.shape[0]} but cov is {cov.shape}"
            )
        _check_symmetric(cov, "cov")
        self.cov = symmetrize(cov)
        _psd_eigh(self.cov, "cov")
        self.mean.setflags(write=False)
        self.cov.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mean.shape[0]


@dataclass
class JointGaussian:
    """Block description of a joint Gaussian vector (X, Y).

    Blocks: marginal means ``mean_x`` (N_X,), ``mean_y`` (N_Y,), marginal
    covariances ``cov_x``, ``cov_y`` and the cross block ``cov_xy`` of shape
    (N_X, N_Y) with entries E[(X - m_X)_i (Y - m_Y)_j]. The assembled block
    matrix [[C_X, C_XY], [C_XY^T, C_Y]] must be PSD.
    """

    mean_x: np.ndarray
    mean_y: np.ndarray
    cov_x: np.ndarray
    cov_y: np.ndarray
    cov_xy: np.ndarray

    def __post_init__(self) -> None:
        self.mean_x = _as_vector(self.mean_x, "mean_x")
        self.mean_y = _as_vector(self.mean_y, "mean_y")
        self.cov_x = symmetrize(_as_square(self.cov_x, "cov_x"))
        self.cov_y = symmetrize(_as_square(self.cov_y, "cov_y"))
        self.cov_xy = np.atleast_2d(np.asarray(self.cov_xy, dtype=float))
        nx, ny = self.mean_x.shape[0], self.mean_y.shape[0]
        if self.cov_x.shape != (nx, nx) or self.cov_y.shape != (ny, ny):
            raise ValidationError("marginal covariance shapes do not match means")
        if self.cov_xy.shape != (nx, ny):
            raise ValidationError(
                f"cov_xy must have shape {(nx, ny)}, got {self.cov_xy.shape}"
            )
        _psd_eigh(self.block_matrix(), "joint covariance")
        for arr in (self.mean_x, self.mean_y, self.cov_x, self.cov_y, self.cov_xy):
            arr.setflags(write=False)

    @property
    def dim_x(self) -> int:
        return self.mean_x.shape[0]

    @property
    def dim_y(self) -> int:
        return self.mean_y.shape[0]

    @property
    def cov_yx(self) -> np.ndarray:
        return self.cov_xy.T

    def block_matrix(self) -> np.ndarray:
        top = np.hstack([self.cov_x, self.cov_xy])
        bot = np.hstack([self.cov_xy.T, self.cov_y])
        return symmetrize(np.vstack([top, bot]))


@dataclass
class RegressionOperator:
    """Regression data of a joint Gaussian: K, its adjoint, and the residual
    of the range-compatibility condition Im(C_XY) within Im(C_X^{1/2})."""

    operator: np.ndarray          # K = C_X^{-1/2} C_XY, shape (N_X, N_Y)
    adjoint: np.ndarray           # K^T
    range_residual: float

    sqrt_inv_x: np.ndarray = field(repr=False, default=None)


def regression_operator(
    joint: JointGaussian,
    rel_tol: float = PINV_RTOL,
    range_tol: float = RANGE_TOL,
) -> RegressionOperator:
    """Compute K = C_X^{-1/2} C_XY and check range compatibility.

    The residual ||(I - P) C_XY||_F, with P the projector onto the numerical
    range of C_X, must stay below range_tol * ||C_XY||_F; a larger residual
    means the blocks cannot come from a genuine joint Gaussian and raises
    InconsistentJointError.
    """
    sqrt_inv = pseudo_inverse_sqrt(joint.cov_x, rel_tol)
    proj = range_projector(joint.cov_x, rel_tol)
    defect = joint.cov_xy - proj @ joint.cov_xy
    residual = float(np.linalg.norm(defect))
    scale = max(float(np.linalg.norm(joint.cov_xy)), 1e-300)
    if residual > range_tol * scale:
        raise InconsistentJointError(
            f"cross-covariance leaves the range of C_X: residual {residual:.3e} "
            f"exceeds {range_tol:.1e} * {scale:.3e}"
        )
    k = sqrt_inv @ joint.cov_xy
    return RegressionOperator(
        operator=k, adjoint=k.T, range_residual=residual, sqrt_inv_x=sqrt_inv
    )


def conditional(
    joint: JointGaussian, x_obs: np.ndarray, rel_tol: float = PINV_RTOL
) -> GaussianMeasure:
    """Law of Y given X = x_obs.

    mean = m_Y + K^T C_X^{-1/2} (x_obs - m_X); cov = C_Y - K^T K. The
    covariance does not depend on x_obs.
    """
    x_obs = _as_vector(x_obs, "x_obs")
    if x_obs.shape[0] != joint.dim_x:
        raise ValidationError(
            f"x_obs has length {x_obs.shape[0]}, expected {joint.dim_x}"
        )
    reg = regression_operator(joint, rel_tol)
    mean = joint.mean_y + reg.adjoint @ (reg.sqrt_inv_x @ (x_obs - joint.mean_x))
    cov = joint.cov_y - reg.adjoint @ reg.operator
    return GaussianMeasure(mean, symmetrize(cov))


def affine_pushforward(
    mu: GaussianMeasure, transform: np.ndarray, shift: np.ndarray | None = None
) -> GaussianMeasure:
    """Image of mu under x -> transform @ x + shift."""
    transform = np.atleast_2d(np.asarray(transform, dtype=float))
    if transform.shape[1] != mu.dim:
        raise ValidationError(
            f"transform has {transform.shape[1]} columns, expected {mu.dim}"
        )
    if shift is None:
        shift = np.zeros(transform.shape[0])
    shift = _as_vector(shift, "shift")
    if shift.shape[0] != transform.shape[0]:
        raise ValidationError("shift length does not match transform rows")
    return GaussianMeasure(
        transform @ mu.mean + shift, symmetrize(transform @ mu.cov @ transform.T)
    )


def convolve(mu1: GaussianMeasure, mu2: GaussianMeasure) -> GaussianMeasure:
    """Law of the sum of independent draws: means add, covariances add."""
    if mu1.dim != mu2.dim:
        raise ValidationError(f"dimension mismatch: {mu1.dim} vs {mu2.dim}")
    return GaussianMeasure(mu1.mean + mu2.mean, mu1.cov + mu2.cov)


def sample(
    mu: GaussianMeasure, seed: int, n: int, stream: int = 0
) -> np.ndarray:
    """n independent draws, shape (n, dim), reproducible from (seed, stream).

    Each draw is mean + S z with S the clamped spectral square root of the
    covariance and z standard normal from the Philox stream.
    """
    root = psd_sqrt(mu.cov)
    z = make_generator(seed, stream).standard_normal((n, mu.dim))
    return mu.mean + z @ root.T
