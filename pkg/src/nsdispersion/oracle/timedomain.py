"""Single-mode time integration and empirical frequency measurement.

One Fourier mode of the linear system obeys ``dW/dt = M W`` with
``M = -i k A - k**2 B``.  :func:`evolve_mode` integrates it with the classical
fourth-order Runge-Kutta method in energy-scaled coordinates, and
:func:`measure_dispersion` recovers the complex frequencies from the sampled
trajectory by a rank-truncated matrix pencil (exact DMD) on the snapshots.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError, FitDegeneracyWarning, StabilityError
from .system import SystemMatrices, mode_matrix, scaled_mode_matrix

#: Stability bound on ``dt * |M|`` for the explicit integrator.
MAX_STEP_NORM = 0.5
DEGENERACY_CONDITION = 1e8


@dataclass(frozen=True)
class FitResult:
    """Fitted frequencies ``omega`` (sorted by ``|Im|``) and fit quality."""

    omegas: np.ndarray
    residual: float
    condition: float
    rank: int


@dataclass(frozen=True)
class ModeTrace:
    k: float
    times: np.ndarray
    amplitudes: np.ndarray
    fit: Optional[FitResult] = None


def _rk4_step(M, h, Z):
    k1 = M @ Z
    k2 = M @ (Z + 0.5 * h * k1)
    k3 = M @ (Z + 0.5 * h * k2)
    k4 = M @ (Z + h * k3)
    return Z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_norm(mats: SystemMatrices, k: float) -> float:
    """Spectral norm of the energy-scaled mode matrix."""
    return float(np.linalg.norm(scaled_mode_matrix(mats, k), 2))


def evolve_mode(
    mats: SystemMatrices,
    k: float,
    W0,
    t_end: float,
    steps: int,
    sample_every: int = 1,
) -> ModeTrace:
    """Integrate one mode from ``W0`` over ``[0, t_end]`` in ``steps`` RK4 steps.

    Every ``sample_every``-th state is recorded.  The step is checked against
    ``dt * |M| <= 0.5`` with ``|M|`` measured in the energy norm.
    """
    if not t_end > 0:
        raise DomainError(f"t_end must be > 0, got {t_end!r}", "t_end")
    if steps < 1 or sample_every < 1:
        raise DomainError("steps and sample_every must be positive", "steps")
    dt = t_end / steps
    norm = step_norm(mats, k)
    if dt * norm > MAX_STEP_NORM:
        min_steps = math.ceil(t_end * norm / MAX_STEP_NORM)
        raise StabilityError(
            f"dt * |M| = {dt * norm:.3g} exceeds {MAX_STEP_NORM}; use at least {min_steps} steps",
            min_steps,
        )
    L = mats.energy_transform
    L_inv = np.linalg.inv(L)
    M_scaled = scaled_mode_matrix(mats, k)
    # RK4 on a linear autonomous system is a fixed one-step propagator
    propagator = _rk4_step(M_scaled, dt, np.eye(3, dtype=complex))
    W0 = np.asarray(W0, dtype=complex).reshape(3)
    Z = L @ W0
    n_samples = steps // sample_every + 1
    samples = np.empty((n_samples, 3), dtype=complex)
    samples[0] = Z
    for j in range(1, n_samples):
        for _ in range(sample_every):
            Z = propagator @ Z
        samples[j] = Z
    amplitudes = samples @ L_inv.T
    amplitudes[0] = W0
    times = np.arange(n_samples) * (dt * sample_every)
    return ModeTrace(k=float(k), times=times, amplitudes=amplitudes)


def plan_trace(mats: SystemMatrices, k: float, c: float, cfl: float = 0.05, periods: float = 2.0, min_samples: int = 64):
    """``(t_end, steps, sample_every)`` for a trace suited to :func:`measure_dispersion`.

    The sampling interval keeps ``|omega| * interval <= 0.5`` for every mode
    (no aliasing, bounded decay per sample); the window spans ``periods``
    acoustic periods ``2 pi / (k c)`` and at least ``min_samples`` samples.
    """
    norm = step_norm(mats, k)
    sample_every = max(1, math.ceil(0.5 / cfl))
    dt = cfl / norm
    interval = dt * sample_every
    t_end = max(periods * 2.0 * math.pi / (k * c), (min_samples - 1) * interval)
    n_intervals = math.ceil(t_end / interval)
    return n_intervals * interval, n_intervals * sample_every, sample_every


def _block_hankel(data, depth):
    n = data.shape[0] - depth + 1
    return np.concatenate([data[i : i + n].T for i in range(depth)], axis=0)


def measure_dispersion(trace: ModeTrace, n_modes: int = 3, rank_tol: float = 1e-10) -> FitResult:
    """Fit the trace to at most ``n_modes`` complex exponentials ``exp(-i omega t)``.

    Snapshots (delay-embedded when the state has fewer components than
    ``n_modes``) form a matrix pencil whose rank-truncated eigenvalues are
    ``exp(-i omega dt)``.  Amplitudes are then refit by least squares and the
    relative residual reported.  Emits :class:`FitDegeneracyWarning` when the
    pencil eigenbasis is ill-conditioned.
    """
    times = np.asarray(trace.times, dtype=float)
    data = np.asarray(trace.amplitudes, dtype=complex)
    if data.ndim == 1:
        data = data[:, None]
    if len(times) < 2 * n_modes + 1:
        raise DomainError(f"need at least {2 * n_modes + 1} samples, got {len(times)}", "times")
    dt = times[1] - times[0]
    if not np.allclose(np.diff(times), dt, rtol=1e-9, atol=0):
        raise DomainError("measure_dispersion needs uniformly spaced samples", "times")
    depth = max(1, math.ceil(n_modes / data.shape[1]))
    H = _block_hankel(data, depth)
    X, Y = H[:, :-1], H[:, 1:]
    U, s, Vh = np.linalg.svd(X, full_matrices=False)
    rank = int(min(n_modes, np.sum(s > rank_tol * s[0]))) if s[0] > 0 else 0
    if rank == 0:
        return FitResult(np.array([], dtype=complex), 0.0, 1.0, 0)
    U, s, V = U[:, :rank], s[:rank], Vh[:rank].conj().T
    reduced = U.conj().T @ Y @ V / s
    z, vecs = np.linalg.eig(reduced)
    condition = float(np.linalg.cond(vecs))
    if condition > DEGENERACY_CONDITION:
        warnings.warn(
            f"exponential fit is ill-conditioned (eigenbasis condition {condition:.3e}); "
            "frequencies may be nearly degenerate",
            FitDegeneracyWarning,
            stacklevel=2,
        )
    omegas = 1j * np.log(z) / dt
    order = np.argsort(np.abs(omegas.imag), kind="stable")
    omegas = omegas[order]
    z = z[order]
    vandermonde = z[None, :] ** np.arange(len(times))[:, None]
    amps, *_ = np.linalg.lstsq(vandermonde, data, rcond=None)
    residual = float(np.linalg.norm(data - vandermonde @ amps) / np.linalg.norm(data))
    return FitResult(omegas=omegas, residual=residual, condition=condition, rank=rank)


def exact_trajectory(mats: SystemMatrices, k: float, W0, times) -> np.ndarray:
    """``exp(M t) W0`` by eigendecomposition, for integrator error checks."""
    M = mode_matrix(mats, k)
    vals, vecs = np.linalg.eig(M)
    coeffs = np.linalg.solve(vecs, np.asarray(W0, dtype=complex))
    times = np.asarray(times, dtype=float)
    return (vecs[None, :, :] * (coeffs * np.exp(np.outer(times, vals)))[:, None, :]).sum(axis=2)
