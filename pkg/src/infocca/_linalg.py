"""Shared linear-algebra helpers for whitening by Hermitian matrices."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

DEFAULT_EIG_FLOOR = 1e-10


class InverseSqrtResult(NamedTuple):
    matrix: np.ndarray
    kept: int
    dropped_trace_fraction: float


def inv_sqrt_hermitian(
    a: np.ndarray, floor: float = DEFAULT_EIG_FLOOR
) -> InverseSqrtResult:
    """Hermitian inverse square root with a relative eigenvalue floor.

    Eigenvalues below ``floor * max_eigenvalue`` are treated as exact zeros,
    which makes this the Moore-Penrose pseudo-inverse square root on the
    retained subspace.  Returns the matrix together with the retained rank
    and the trace fraction that was dropped, so callers can warn about
    ill-conditioned inputs.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return InverseSqrtResult(a.copy(), 0, 0.0)
    w, v = np.linalg.eigh(a)
    w_max = float(w[-1])
    if w_max <= 0.0:
        return InverseSqrtResult(np.zeros_like(a), 0, 1.0)
    keep = w > floor * w_max
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / np.sqrt(w[keep])
    total = float(np.sum(np.abs(w)))
    dropped = float(np.sum(np.abs(w[~keep]))) / total if total > 0 else 0.0
    return InverseSqrtResult((v * inv) @ v.conj().T, int(keep.sum()), dropped)
