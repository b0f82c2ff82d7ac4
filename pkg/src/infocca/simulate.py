"""Synthetic benchmark sources and genie-aided oracles.

The continuous benchmark is a two-component Gaussian mixture with opposite
component correlations: its marginals are exactly standard normal and its
cross-moment is exactly zero for every dependence level, so estimators must
discover dependence from uncorrelated data.  Genie oracles evaluate
information quantities by Monte-Carlo averaging with full knowledge of the
densities, optionally for sources contaminated by independent Gaussian
noise of known variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .analog import RealPairedSamples
from .discrete import DmcSpec
from .measures import MassFunction


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class GmmSpec:
    """Mixture of zero-mean bivariate normals with unit marginal variances.

    Each component is fully described by its correlation; the mixture
    marginals are standard normal regardless of the weights.
    """

    weights: tuple[float, ...]
    correlations: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        c = tuple(float(v) for v in self.correlations)
        if len(w) != len(c) or not w:
            raise ValueError("weights and correlations must align and be non-empty")
        if any(v <= 0 for v in w) or abs(sum(w) - 1.0) > 1e-12:
            raise ValueError("weights must be positive and sum to one")
        if any(abs(v) >= 1 for v in c):
            raise ValueError("correlations must lie strictly inside (-1, 1)")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "correlations", c)

    @classmethod
    def benchmark(cls, r: float) -> "GmmSpec":
        """Equal mixture of correlations +r and -r (zero cross-moment)."""
        return cls((0.5, 0.5), (float(r), -float(r)))

    @classmethod
    def gaussian(cls, rho: float) -> "GmmSpec":
        """Single bivariate normal component."""
        return cls((1.0,), (float(rho),))

    def joint_density(self, x, y, sigma2: float = 0.0) -> np.ndarray:
        """Mixture density, optionally for noise-contaminated sources."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        v = 1.0 + sigma2
        out = np.zeros(np.broadcast(x, y).shape)
        for w, c in zip(self.weights, self.correlations):
            det = v * v - c * c
            quad = (v * x * x - 2.0 * c * x * y + v * y * y) / det
            out = out + w * np.exp(-0.5 * quad) / (2.0 * np.pi * math.sqrt(det))
        return out

    def marginal_density(self, t, sigma2: float = 0.0) -> np.ndarray:
        """Common marginal density of either source (a centered normal)."""
        t = np.asarray(t, dtype=float)
        v = 1.0 + sigma2
        return np.exp(-0.5 * t * t / v) / math.sqrt(2.0 * np.pi * v)

    def smi_closed_form(self, sigma2: float = 0.0) -> float:
        """Exact squared-loss MI of the (possibly contaminated) mixture.

        Pairwise Gaussian product integrals reduce the density-ratio
        expectation to two-by-two determinants.  Serves as an independent
        cross-check of the Monte-Carlo genie.
        """
        v = 1.0 + sigma2
        eye = np.eye(2)
        total = 0.0
        for wa, ca in zip(self.weights, self.correlations):
            a = np.array([[v, ca], [ca, v]])
            for wb, cb in zip(self.weights, self.correlations):
                b = np.array([[v, cb], [cb, v]])
                m = np.linalg.inv(a) + np.linalg.inv(b) - eye / v
                det_m = float(np.linalg.det(m))
                if det_m <= 0:
                    raise ValueError("density ratio is not square-integrable")
                total += wa * wb * v / math.sqrt(
                    np.linalg.det(a) * np.linalg.det(b) * det_m
                )
        return total - 1.0


def benchmark_r_for_target(target_smi: float, sigma2: float = 0.0) -> float:
    """Dependence parameter of the benchmark mixture with a given SMI.

    Inverts the closed form of the two-component mixture, for which the
    squared-loss MI is ``rho^4 / (1 - rho^4)`` with ``rho = r / (1+sigma2)``.
    """
    if target_smi < 0:
        raise ValueError("target must be non-negative")
    rho = (target_smi / (1.0 + target_smi)) ** 0.25
    r = rho * (1.0 + sigma2)
    if r >= 1:
        raise ValueError("target is unattainable for this contamination")
    return r


def gmm_sample(spec: GmmSpec, n_samples: int, seed) -> RealPairedSamples:
    """Draw aligned pairs from the mixture, deterministically per seed."""
    rng = _as_rng(seed)
    comp = rng.choice(len(spec.weights), size=n_samples, p=spec.weights)
    rho = np.asarray(spec.correlations)[comp]
    z1 = rng.standard_normal(n_samples)
    z2 = rng.standard_normal(n_samples)
    return RealPairedSamples(z1, rho * z1 + np.sqrt(1.0 - rho * rho) * z2)


class MonteCarloValue(NamedTuple):
    value: float
    stderr: float
    n_samples: int


@dataclass(frozen=True)
class GenieConfig:
    """Monte-Carlo settings for oracle evaluation."""

    mc_samples: int = 200_000
    seed: int = 0
    contamination_sigma2: float = 0.0

    def __post_init__(self):
        if self.mc_samples < 1:
            raise ValueError("need at least one Monte-Carlo sample")
        if self.contamination_sigma2 < 0:
            raise ValueError("contamination variance cannot be negative")


def _density_ratio_draws(spec, cfg: GenieConfig) -> np.ndarray:
    rng = _as_rng(cfg.seed)
    s2 = cfg.contamination_sigma2
    if isinstance(spec, GmmSpec):
        pairs = gmm_sample(spec, cfg.mc_samples, rng)
        x, y = pairs.x, pairs.y
        if s2 > 0:
            x = x + math.sqrt(s2) * rng.standard_normal(cfg.mc_samples)
            y = y + math.sqrt(s2) * rng.standard_normal(cfg.mc_samples)
        return spec.joint_density(x, y, s2) / (
            spec.marginal_density(x, s2) * spec.marginal_density(y, s2)
        )
    if isinstance(spec, DmcSpec):
        if s2 != 0:
            raise ValueError("contamination applies to analog sources only")
        joint = spec.joint_mass()
        flat = joint.values.ravel()
        ratio_table = flat / np.outer(
            joint.marginal_x.values, joint.marginal_y.values
        ).ravel()
        idx = rng.choice(flat.size, size=cfg.mc_samples, p=flat)
        return ratio_table[idx]
    raise TypeError(f"no genie for source spec {type(spec).__name__}")


def _mc_value(draws: np.ndarray, offset: float = 0.0) -> MonteCarloValue:
    n = draws.size
    stderr = float(draws.std(ddof=1) / math.sqrt(n)) if n > 1 else float("inf")
    return MonteCarloValue(float(draws.mean()) + offset, stderr, n)


def genie_smi(spec, cfg: GenieConfig) -> MonteCarloValue:
    """Monte-Carlo squared-loss MI under full knowledge of the densities."""
    return _mc_value(_density_ratio_draws(spec, cfg), offset=-1.0)


def genie_mi(spec, cfg: GenieConfig) -> MonteCarloValue:
    """Monte-Carlo Shannon MI under full knowledge of the densities."""
    return _mc_value(np.log(_density_ratio_draws(spec, cfg)))


def random_dmc(
    n_inputs: int, n_outputs: int, seed, dependence: float = 1.0
) -> DmcSpec:
    """Random channel with flat-Dirichlet columns and input mass.

    ``dependence`` blends the drawn channel with its own product channel
    (every column replaced by the output marginal): 1 keeps the raw draw,
    values near 0 give nearly independent input-output pairs while keeping
    the output marginal fixed.  Deterministic given the seed.
    """
    if n_inputs < 2 or n_outputs < 2:
        raise ValueError("alphabets must have at least two symbols")
    if not 0.0 <= dependence <= 1.0:
        raise ValueError("dependence must lie in [0, 1]")
    rng = _as_rng(seed)
    transition = rng.dirichlet(np.ones(n_outputs), size=n_inputs).T
    input_mass = MassFunction(rng.dirichlet(np.ones(n_inputs)))
    if dependence < 1.0:
        marginal = transition @ input_mass.values
        transition = (1.0 - dependence) * np.outer(
            marginal, np.ones(n_inputs)
        ) + dependence * transition
    return DmcSpec(transition, input_mass)
