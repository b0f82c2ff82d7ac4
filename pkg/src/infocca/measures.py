"""Closed-form quadratic information measures on known mass functions.

Everything here is deterministic and exact up to floating point: these are
the analytic quantities the sample-based estimators in the other modules
are tested against.  All entropies and divergences are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_SUM_TOL = 1e-12


class SupportMismatchError(ValueError):
    """q vanishes on part of the support of p, so the divergence is infinite."""


class ZeroMarginalError(ValueError):
    """A joint mass has an empty row or column, so whitening is undefined."""


@dataclass(frozen=True)
class MassFunction:
    """Probability vector: non-negative entries summing to one."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("mass function must be a non-empty vector")
        if np.any(v < 0):
            raise ValueError("mass function entries must be non-negative")
        if abs(float(v.sum()) - 1.0) > _SUM_TOL:
            raise ValueError(f"mass function sums to {v.sum()!r}, not 1")
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class JointMass:
    """Joint probability matrix over a product alphabet."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.size < 1:
            raise ValueError("joint mass must be a non-empty matrix")
        if np.any(v < 0):
            raise ValueError("joint mass entries must be non-negative")
        if abs(float(v.sum()) - 1.0) > _SUM_TOL:
            raise ValueError(f"joint mass sums to {v.sum()!r}, not 1")
        object.__setattr__(self, "values", v)

    @property
    def marginal_x(self) -> MassFunction:
        return MassFunction(self.values.sum(axis=1))

    @property
    def marginal_y(self) -> MassFunction:
        return MassFunction(self.values.sum(axis=0))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True)
class PerturbedPair:
    """A base mass plus a signed zero-sum direction scaled by a small step.

    Used to probe local behaviour of divergences around ``base``.
    """

    base: MassFunction
    direction: np.ndarray
    scale: float = field(default=0.0)

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != self.base.values.shape:
            raise ValueError("direction must match the base mass in length")
        if abs(float(d.sum())) > _SUM_TOL * max(1.0, float(np.abs(d).max())):
            raise ValueError("direction must sum to zero")
        object.__setattr__(self, "direction", d)
        # construction fails if base + scale*direction leaves the simplex
        self.perturbed()

    def perturbed(self) -> MassFunction:
        return MassFunction(self.base.values + self.scale * self.direction)


def information_potential(p: MassFunction) -> float:
    """Sum of squared probabilities (the collision probability)."""
    return float(np.sum(p.values**2))


def renyi2_entropy(p: MassFunction) -> float:
    """Second-order Renyi entropy, -log of the information potential."""
    return -math.log(information_potential(p))


def tsallis2_entropy(p: MassFunction) -> float:
    """Second-order Tsallis entropy, 1 minus the information potential."""
    return 1.0 - information_potential(p)


def shannon_entropy(p: MassFunction) -> float:
    """Shannon entropy with the 0*log(0) = 0 convention."""
    v = p.values[p.values > 0]
    return float(-np.sum(v * np.log(v)))


def kl_divergence(p: MassFunction, q: MassFunction) -> float:
    """Kullback-Leibler divergence with the 0*log(0) = 0 convention."""
    _check_support(p, q)
    mask = p.values > 0
    pv = p.values[mask]
    return float(np.sum(pv * np.log(pv / q.values[mask])))


def chi2_divergence(p: MassFunction, q: MassFunction) -> float:
    """Pearson chi-squared divergence, sum of p^2/q minus one."""
    _check_support(p, q)
    mask = q.values > 0
    return float(np.sum(p.values[mask] ** 2 / q.values[mask]) - 1.0)


def renyi2_divergence(p: MassFunction, q: MassFunction) -> float:
    """Second-order Renyi divergence, log(1 + chi-squared divergence)."""
    return math.log1p(chi2_divergence(p, q))


def _check_support(p: MassFunction, q: MassFunction) -> None:
    if p.values.shape != q.values.shape:
        raise ValueError("mass functions must share an alphabet")
    if np.any((p.values > 0) & (q.values == 0)):
        raise SupportMismatchError(
            "q vanishes where p has mass, divergence is infinite"
        )


def coherence_from_joint(joint: JointMass) -> np.ndarray:
    """Whitened dependence matrix of a joint mass.

    Scales the difference between the joint and the product of its marginals
    by the inverse square roots of the marginals.  Its squared Frobenius
    norm is the squared-loss mutual information and its singular values are
    the canonical correlations of the two alphabets.
    """
    p = joint.marginal_x.values
    q = joint.marginal_y.values
    if np.any(p == 0) or np.any(q == 0):
        raise ZeroMarginalError("joint mass has an empty row or column")
    residual = joint.values - np.outer(p, q)
    return residual / np.sqrt(np.outer(p, q))


def smi_exact(joint: JointMass) -> float:
    """Squared-loss mutual information of a known joint mass."""
    c = coherence_from_joint(joint)
    return float(np.sum(c * c))


def i2_from_smi(value: float) -> float:
    """Second-order mutual information from a squared-loss value."""
    if value < 0:
        raise ValueError("squared-loss mutual information cannot be negative")
    return math.log1p(value)


def shannon_mi(joint: JointMass) -> float:
    """Shannon mutual information of a known joint mass (nats)."""
    p = joint.marginal_x.values
    q = joint.marginal_y.values
    prod = np.outer(p, q)
    mask = joint.values > 0
    jv = joint.values[mask]
    return float(np.sum(jv * np.log(jv / prod[mask])))


def quadratic_dependence(joint: JointMass) -> float:
    """Squared norm of the gap between the joint and the marginal product.

    Unlike the squared-loss mutual information this carries no whitening,
    so it has no local relation to Shannon information; it is only zero iff
    the sources are independent.
    """
    p = joint.marginal_x.values
    q = joint.marginal_y.values
    residual = joint.values - np.outer(p, q)
    return float(np.sum(residual * residual))


def gaussian_closed_forms(rho: float) -> tuple[float, float]:
    """Mutual information and squared-loss MI of a bivariate normal pair."""
    if not abs(rho) < 1:
        raise ValueError("correlation must lie strictly inside (-1, 1)")
    mi = -0.5 * math.log1p(-rho * rho)
    smi = rho * rho / (1.0 - rho * rho)
    return mi, smi
