"""Plug-in dependence estimation for finite-alphabet paired samples.

The estimators map symbols onto codebook vectors, form first and second
order sample statistics, and read squared-loss mutual information off the
Frobenius norm of a whitened cross-covariance (a sample coherence matrix).
Full-rank codebooks all give the same value; the minimal lossless choice is
the regular simplex with one dimension less than the alphabet size.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._linalg import DEFAULT_EIG_FLOOR, inv_sqrt_hermitian
from .measures import JointMass, MassFunction, ZeroMarginalError

_RANK_TOL = 1e-10


class DegenerateSampleWarning(UserWarning):
    """Some alphabet symbol never occurs; estimation proceeds on the rest."""


@dataclass(frozen=True)
class DiscretePairedSamples:
    """Aligned symbol streams with declared alphabet sizes."""

    x: np.ndarray
    y: np.ndarray
    n_x: int
    n_y: int

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.int64)
        y = np.asarray(self.y, dtype=np.int64)
        if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
            raise ValueError("x and y must be 1-D sequences of equal length")
        if x.size < 1:
            raise ValueError("need at least one sample")
        for name, seq, size in (("x", x, self.n_x), ("y", y, self.n_y)):
            if size < 1:
                raise ValueError(f"alphabet size for {name} must be positive")
            if seq.size and (seq.min() < 0 or seq.max() >= size):
                raise ValueError(f"{name} contains symbols outside [0, {size})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_arrays(cls, x, y, n_x: int | None = None, n_y: int | None = None):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if n_x is None:
            n_x = int(x.max()) + 1 if x.size else 1
        if n_y is None:
            n_y = int(y.max()) + 1 if y.size else 1
        return cls(x, y, n_x, n_y)

    @property
    def n_samples(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class Codebook:
    """Complex mapping matrix with one column per alphabet symbol."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2:
            raise ValueError("codebook must be a matrix")
        rows, cols = v.shape
        if rows > cols:
            raise ValueError("codebook cannot have more dimensions than symbols")
        if rows > 0:
            s = np.linalg.svd(v, compute_uv=False)
            if s[-1] <= _RANK_TOL * s[0]:
                raise ValueError("codebook is not full row rank")
        object.__setattr__(self, "vectors", v)

    @property
    def n_symbols(self) -> int:
        return self.vectors.shape[1]


@dataclass(frozen=True)
class CoherenceMatrix:
    """Whitened cross-covariance with cached singular values."""

    values: np.ndarray
    singular_values: np.ndarray = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        sv = (
            np.linalg.svd(v, compute_uv=False)
            if min(v.shape) > 0
            else np.zeros(0)
        )
        if sv.size and sv[0] > 1.0 + 1e-9:
            raise ValueError(f"coherence singular value {sv[0]!r} exceeds 1")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "singular_values", sv)

    @property
    def frobenius_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


@dataclass(frozen=True)
class DmcSpec:
    """Discrete memoryless channel: column-stochastic transitions + input mass."""

    transition: np.ndarray
    input_mass: MassFunction

    def __post_init__(self):
        w = np.asarray(self.transition, dtype=float)
        if w.ndim != 2:
            raise ValueError("transition must be a matrix")
        if w.shape[1] != len(self.input_mass):
            raise ValueError("transition width must match the input alphabet")
        if np.any(w < 0):
            raise ValueError("transition probabilities must be non-negative")
        if np.any(np.abs(w.sum(axis=0) - 1.0) > 1e-12):
            raise ValueError("transition columns must sum to one")
        object.__setattr__(self, "transition", w)

    @property
    def n_inputs(self) -> int:
        return self.transition.shape[1]

    @property
    def n_outputs(self) -> int:
        return self.transition.shape[0]

    def output_mass(self) -> MassFunction:
        return MassFunction(self.transition @ self.input_mass.values)

    def joint_mass(self) -> JointMass:
        return JointMass((self.transition * self.input_mass.values).T)


def empirical_masses(
    samples: DiscretePairedSamples,
) -> tuple[MassFunction, MassFunction, JointMass]:
    """Relative-frequency estimates of the marginals and the joint."""
    n, m = samples.n_x, samples.n_y
    counts = np.bincount(samples.x * m + samples.y, minlength=n * m)
    joint = JointMass(counts.reshape(n, m) / samples.n_samples)
    return joint.marginal_x, joint.marginal_y, joint


def identity_codebook(n: int) -> Codebook:
    """Canonical-basis mapping (one-hot columns)."""
    return Codebook(np.eye(n, dtype=complex))


def simplex_codebook(n: int) -> Codebook:
    """Regular simplex mapping: n equidistant unit vectors in n-1 dimensions.

    Columns sum to zero and every pair of columns has inner product
    -1/(n-1), so the Gram matrix is a scaled centering projector.
    """
    if n < 2:
        raise ValueError("simplex mapping needs an alphabet of at least 2")
    v = np.zeros((n - 1, n))
    for i in range(n - 1):
        v[i, i] = np.sqrt(1.0 - np.sum(v[:i, i] ** 2))
        v[i, i + 1 :] = (-1.0 / (n - 1) - v[:i, i] @ v[:i, i + 1 :]) / v[i, i]
    return Codebook(v)


def _check_unseen(samples: DiscretePairedSamples, p, q) -> None:
    if np.any(p.values == 0) or np.any(q.values == 0):
        warnings.warn(
            "some declared symbols never occur; computing on the reduced alphabet",
            DegenerateSampleWarning,
            stacklevel=3,
        )


def sample_coherence(
    samples: DiscretePairedSamples,
    fx: Codebook | None = None,
    fy: Codebook | None = None,
    use_covariance: bool = False,
    floor: float = DEFAULT_EIG_FLOOR,
) -> CoherenceMatrix:
    """Sample coherence matrix of codebook-mapped streams.

    With ``use_covariance`` the whitening uses centered second moments (the
    canonical-correlation form); otherwise it uses raw autocorrelations.
    Both reduce to the same Frobenius norm for full-rank codebooks.  Symbols
    with zero counts are dropped through the pseudo-inverse branch.
    """
    p, q, joint = empirical_masses(samples)
    _check_unseen(samples, p, q)
    if fx is None:
        fx = identity_codebook(samples.n_x)
    if fy is None:
        fy = identity_codebook(samples.n_y)
    if fx.n_symbols != samples.n_x or fy.n_symbols != samples.n_y:
        raise ValueError("codebook width must match the alphabet size")
    residual = joint.values - np.outer(p.values, q.values)
    cross = fx.vectors @ residual @ fy.vectors.conj().T
    if use_covariance:
        gx = np.diag(p.values) - np.outer(p.values, p.values)
        gy = np.diag(q.values) - np.outer(q.values, q.values)
    else:
        gx = np.diag(p.values)
        gy = np.diag(q.values)
    wx = inv_sqrt_hermitian(fx.vectors @ gx @ fx.vectors.conj().T, floor)
    wy = inv_sqrt_hermitian(fy.vectors @ gy @ fy.vectors.conj().T, floor)
    return CoherenceMatrix(wx.matrix @ cross @ wy.matrix)


def smi_plugin_autocorr(
    samples: DiscretePairedSamples,
    fx: Codebook | None = None,
    fy: Codebook | None = None,
) -> float:
    """Plug-in squared-loss MI via autocorrelation-whitened coherence."""
    return sample_coherence(samples, fx, fy, use_covariance=False).frobenius_sq


def smi_plugin_simplex(samples: DiscretePairedSamples) -> float:
    """Plug-in squared-loss MI via the minimal simplex mapping.

    Uses covariance whitening on (n-1)-dimensional simplex codebooks, the
    smallest mapping that loses nothing relative to the full alphabet.
    """
    fx = simplex_codebook(samples.n_x) if samples.n_x >= 2 else None
    fy = simplex_codebook(samples.n_y) if samples.n_y >= 2 else None
    if fx is None or fy is None:
        # single-symbol alphabet carries no information
        return 0.0
    return sample_coherence(samples, fx, fy, use_covariance=True).frobenius_sq


def canonical_correlations(
    samples: DiscretePairedSamples,
    fx: Codebook | None = None,
    fy: Codebook | None = None,
) -> np.ndarray:
    """Non-increasing sample canonical correlations of the mapped streams."""
    if fx is None and samples.n_x >= 2:
        fx = simplex_codebook(samples.n_x)
    if fy is None and samples.n_y >= 2:
        fy = simplex_codebook(samples.n_y)
    if (fx is None or fx.vectors.shape[0] == 0) or (
        fy is None or fy.vectors.shape[0] == 0
    ):
        return np.zeros(0)
    coh = sample_coherence(samples, fx, fy, use_covariance=True)
    sv = coh.singular_values
    return sv[sv > _RANK_TOL]


def hgr_plugin(samples: DiscretePairedSamples) -> float:
    """Maximal-correlation estimate: the top sample canonical correlation."""
    sv = canonical_correlations(samples)
    return float(sv[0]) if sv.size else 0.0


def dtm(spec: DmcSpec) -> np.ndarray:
    """Divergence transition matrix of a discrete channel.

    The output-whitened, input-weighted transition matrix.  Its largest
    singular value is always one, and its second largest equals the top
    canonical correlation of the channel's joint mass.
    """
    p = spec.input_mass.values
    q = spec.output_mass().values
    if np.any(p == 0) or np.any(q == 0):
        raise ZeroMarginalError("channel has an unused input or output symbol")
    return (spec.transition * np.sqrt(p)) / np.sqrt(q)[:, None]
