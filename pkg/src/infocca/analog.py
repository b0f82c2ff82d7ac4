"""Squared-loss MI estimation for real-valued pairs via characteristic features.

Samples are mapped onto complex exponentials on a symmetric frequency grid,
which turns dependence detection into correlation analysis of the mapped
streams.  A Gaussian taper on the empirical characteristic functions plays
the role of additive noise of variance ``sigma2`` on both sources: it
bounds the measurable information, fixes a finite feature dimension, and
endows the autocorrelation matrices with Hermitian-Toeplitz structure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from ._linalg import DEFAULT_EIG_FLOOR, inv_sqrt_hermitian

# Features whose whitener eigenvalue corresponds to fewer than a couple of
# effective samples have saturated, meaningless sample correlations.  The
# default floor scales the pseudo-inverse cut accordingly.
_FLOOR_SAMPLES = 2.0
_CONDITIONING_TRACE_LIMIT = 0.10

# chunk size for the single pass over samples, bounded by memory
_CHUNK_ENTRIES = 4_000_000


class ConditioningWarning(UserWarning):
    """A large share of autocorrelation mass fell below the eigenvalue floor."""


class SmallSampleWarning(UserWarning):
    """Fewer samples than feature dimensions; estimates will be noisy."""


def dimension_from_sigma(k: float, q: float, sigma_x: float, sigma: float) -> int:
    """Feature dimension covering the tapered characteristic support.

    ``k`` fixes how many standard deviations of the Gaussian taper are kept
    and ``q`` how many source standard deviations the implied periodization
    must span; both larger values enlarge the grid.  Always odd.
    """
    if min(k, q, sigma_x, sigma) <= 0:
        raise ValueError("all dimension-rule inputs must be positive")
    return 2 * math.ceil(k * q * sigma_x / sigma) + 1


def sigma_from_silverman(p: float, n_samples: int) -> float:
    """Smoothing variance from the sample count by the kernel-density rule.

    Shrinks as ``n^(-2/5)``, the minimax-optimal power law balancing the
    squared smoothing bias against the sampling variance.
    """
    if p <= 0:
        raise ValueError("scale factor must be positive")
    if n_samples < 1:
        raise ValueError("need at least one sample")
    return p * float(n_samples) ** (-0.4)


@dataclass(frozen=True)
class FeatureConfig:
    """Regularization bundle for the characteristic-space mapping.

    ``sigma2`` is the smoothing variance, ``alpha`` the frequency sampling
    period, ``n_points`` the (odd) grid size.  ``k``, ``q`` and
    ``silverman_p`` record how derived configs were built.  ``eig_floor``
    overrides the relative pseudo-inverse cut used in whitening; by default
    it is tied to the sample count at estimation time.
    """

    sigma2: float
    alpha: float
    n_points: int
    k: float | None = None
    q: float | None = None
    silverman_p: float | None = None
    eig_floor: float | None = None

    def __post_init__(self):
        if self.sigma2 <= 0:
            raise ValueError("smoothing variance must be positive")
        if self.alpha <= 0:
            raise ValueError("frequency sampling period must be positive")
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError("feature dimension must be odd and at least 3")

    @property
    def half_width(self) -> int:
        return (self.n_points - 1) // 2

    @classmethod
    def from_dimension_rule(
        cls,
        sigma2: float,
        sigma_x: float = 1.0,
        k: float = 3.0,
        q: float = 2.5,
        alpha: float | None = None,
        eig_floor: float | None = None,
    ) -> "FeatureConfig":
        """Derive the grid from the smoothing variance and source scale."""
        n = dimension_from_sigma(k, q, sigma_x, math.sqrt(sigma2))
        if alpha is None:
            alpha = 1.0 / (q * sigma_x)
        return cls(sigma2, alpha, n, k=k, q=q, eig_floor=eig_floor)

    @classmethod
    def from_silverman(
        cls,
        p: float,
        n_samples: int,
        sigma_x: float = 1.0,
        k: float = 3.0,
        q: float = 2.5,
        alpha: float | None = None,
        eig_floor: float | None = None,
    ) -> "FeatureConfig":
        """Derive everything from the sample count via the smoothing rule."""
        cfg = cls.from_dimension_rule(
            sigma_from_silverman(p, n_samples),
            sigma_x=sigma_x,
            k=k,
            q=q,
            alpha=alpha,
            eig_floor=eig_floor,
        )
        return replace(cfg, silverman_p=p)

    def resolve_floor(self, n_samples: int) -> float:
        if self.eig_floor is not None:
            return self.eig_floor
        return max(DEFAULT_EIG_FLOOR, _FLOOR_SAMPLES / float(n_samples))


@dataclass(frozen=True)
class RealPairedSamples:
    """Aligned sequences of real scalar observations."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
            raise ValueError("x and y must be 1-D sequences of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n_samples(self) -> int:
        return self.x.size

    def standardized(self) -> "RealPairedSamples":
        """Center both streams and scale them to unit sample variance."""
        sx = float(self.x.std())
        sy = float(self.y.std())
        if sx == 0 or sy == 0:
            raise ValueError("cannot standardize a constant stream")
        return RealPairedSamples((self.x - self.x.mean()) / sx, (self.y - self.y.mean()) / sy)

    def shifted_pairing(self, shift: int) -> "RealPairedSamples":
        """Re-pair x with a circularly shifted copy of y."""
        if shift % self.n_samples == 0:
            raise ValueError("shift must not be a multiple of the sample count")
        return RealPairedSamples(self.x, np.roll(self.y, shift))


@dataclass(frozen=True)
class TaperVectors:
    """Gaussian tapers on the symmetric and lag grids, plus the triangle."""

    symmetric: np.ndarray
    asymmetric: np.ndarray
    triangular: np.ndarray


def taper_vectors(cfg: FeatureConfig) -> TaperVectors:
    n = np.arange(cfg.n_points)
    decay = cfg.sigma2 * cfg.alpha**2 / 2.0
    return TaperVectors(
        symmetric=np.exp(-decay * (n - cfg.half_width) ** 2),
        asymmetric=np.exp(-decay * n**2),
        triangular=1.0 - n / cfg.n_points,
    )


def map_to_feature(x: float, cfg: FeatureConfig) -> np.ndarray:
    """Steering vector of one observation on the symmetric frequency grid."""
    if not np.isfinite(x):
        raise ValueError("observation must be finite")
    n = np.arange(cfg.n_points) - cfg.half_width
    return np.exp(1j * cfg.alpha * n * x)


@dataclass(frozen=True)
class FeatureStats:
    """Tapered first and second order statistics of mapped streams.

    ``mean_x``/``mean_y`` live on the symmetric grid; ``lag_x``/``lag_y``
    are the non-negative-lag tapered characteristic means that generate the
    Hermitian-Toeplitz autocorrelations; ``cross_cov`` is the tapered
    cross-covariance on the symmetric grid.
    """

    mean_x: np.ndarray
    mean_y: np.ndarray
    lag_x: np.ndarray
    lag_y: np.ndarray
    cross_cov: np.ndarray
    n_samples: int
    config: FeatureConfig

    @property
    def autocorr_x(self) -> np.ndarray:
        return scipy.linalg.toeplitz(self.lag_x)

    @property
    def autocorr_y(self) -> np.ndarray:
        return scipy.linalg.toeplitz(self.lag_y)


def _power_means_and_cross(x, y, cfg: FeatureConfig):
    """One pass over the samples: characteristic means and raw cross moment.

    Uses iterated multiplication of unit phasors instead of exponentials per
    grid point, chunked over samples to bound memory.
    """
    n = cfg.n_points
    k = cfg.half_width
    total = x.size
    chunk = max(1, min(total, _CHUNK_ENTRIES // n))
    sum_x = np.zeros(n, dtype=complex)
    sum_y = np.zeros(n, dtype=complex)
    sum_cross = np.zeros((n, n), dtype=complex)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        zx = np.exp(1j * cfg.alpha * x[start:stop])
        zy = np.exp(1j * cfg.alpha * y[start:stop])
        px = np.empty((n, stop - start), dtype=complex)
        py = np.empty((n, stop - start), dtype=complex)
        px[0] = 1.0
        py[0] = 1.0
        for i in range(1, n):
            px[i] = px[i - 1] * zx
            py[i] = py[i - 1] * zy
        sum_x += px.sum(axis=1)
        sum_y += py.sum(axis=1)
        # symmetric-grid blocks from non-negative powers by conjugation
        xs = np.vstack([px[1 : k + 1][::-1].conj(), px[: k + 1]])
        ys = np.vstack([py[1 : k + 1][::-1].conj(), py[: k + 1]])
        sum_cross += xs @ ys.conj().T
    return sum_x / total, sum_y / total, sum_cross / total


def compute_feature_stats(
    samples: RealPairedSamples, cfg: FeatureConfig
) -> FeatureStats:
    """Tapered characteristic statistics of a paired sample set."""
    if samples.n_samples < 2:
        raise ValueError("need at least two samples")
    tapers = taper_vectors(cfg)
    k = cfg.half_width
    cf_x, cf_y, raw_cross = _power_means_and_cross(samples.x, samples.y, cfg)
    lag_x = cf_x * tapers.asymmetric
    lag_y = cf_y * tapers.asymmetric
    sym_x = np.concatenate([cf_x[1 : k + 1][::-1].conj(), cf_x[: k + 1]])
    sym_y = np.concatenate([cf_y[1 : k + 1][::-1].conj(), cf_y[: k + 1]])
    mean_x = sym_x * tapers.symmetric
    mean_y = sym_y * tapers.symmetric
    cross = raw_cross * np.outer(tapers.symmetric, tapers.symmetric) - np.outer(
        mean_x, mean_y.conj()
    )
    return FeatureStats(
        mean_x=mean_x,
        mean_y=mean_y,
        lag_x=lag_x,
        lag_y=lag_y,
        cross_cov=cross,
        n_samples=samples.n_samples,
        config=cfg,
    )


def smi_from_stats(stats: FeatureStats) -> float:
    """Squared-loss MI from precomputed feature statistics."""
    floor = stats.config.resolve_floor(stats.n_samples)
    wx = inv_sqrt_hermitian(stats.autocorr_x, floor)
    wy = inv_sqrt_hermitian(stats.autocorr_y, floor)
    worst = max(wx.dropped_trace_fraction, wy.dropped_trace_fraction)
    if worst > _CONDITIONING_TRACE_LIMIT:
        warnings.warn(
            f"{worst:.1%} of autocorrelation mass fell below the eigenvalue floor",
            ConditioningWarning,
            stacklevel=2,
        )
    coherence = wx.matrix @ stats.cross_cov @ wy.matrix
    return float(np.sum(np.abs(coherence) ** 2))


def _prepare(samples: RealPairedSamples, cfg: FeatureConfig, standardize: bool):
    if standardize:
        samples = samples.standardized()
    if samples.n_samples < cfg.n_points:
        warnings.warn(
            f"only {samples.n_samples} samples for {cfg.n_points} feature dimensions",
            SmallSampleWarning,
            stacklevel=3,
        )
    return samples


def smi_analog(
    samples: RealPairedSamples, cfg: FeatureConfig, standardize: bool = True
) -> float:
    """Squared-loss MI of real-valued pairs on the characteristic feature space.

    Estimates the information of the sources contaminated by virtual
    Gaussian noise of variance ``cfg.sigma2``, which keeps the estimate
    finite for any input.  With ``standardize`` (the default) both streams
    are scaled to unit sample variance first, so ``cfg`` applies to
    normalized data.
    """
    samples = _prepare(samples, cfg, standardize)
    return smi_from_stats(compute_feature_stats(samples, cfg))


def smi_bias_reduced(
    samples: RealPairedSamples,
    cfg: FeatureConfig,
    shift: int | None = None,
    standardize: bool = True,
) -> float:
    """Floor-compensated estimate: aligned value minus a shifted-pairing value.

    Circularly shifting one stream destroys the pairing while preserving
    both marginals, so the subtracted term estimates the spurious dependence
    floor of the raw estimator at this sample size.
    """
    samples = _prepare(samples, cfg, standardize)
    if shift is None:
        shift = samples.n_samples // 2
    aligned = smi_from_stats(compute_feature_stats(samples, cfg))
    broken = smi_from_stats(
        compute_feature_stats(samples.shifted_pairing(shift), cfg)
    )
    return aligned - broken
