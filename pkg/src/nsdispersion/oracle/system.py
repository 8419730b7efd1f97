"""Linearized system ``W_t + A W_x = B W_xx`` for ``W = (rho', u', s')``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..thermo import DerivedCoefficients, FluidState


@dataclass(frozen=True)
class SystemMatrices:
    """Flux matrix ``A``, diffusion matrix ``B`` and the energy transform.

    ``energy_transform`` is the matrix ``L`` with ``|L W|**2`` equal to the
    quadratic energy

        cT**2 rho'**2 / rho + rho u'**2 + rho Cv T'**2 / T,
        T' = (Gamma T / rho) rho' + (T / Cv) s',

    which every solution of the linear system dissipates.  In the
    coordinates ``Z = L W`` the flux part is Hermitian and the diffusion part
    positive semi-definite.
    """

    A: np.ndarray
    B: np.ndarray
    energy_transform: np.ndarray


def build_system_matrices(fluid: FluidState, coeffs: DerivedCoefficients) -> SystemMatrices:
    rho, T, mu, lam, Cv, c = fluid.rho, fluid.T, fluid.mu, fluid.lam, fluid.Cv, fluid.c
    G = coeffs.Gamma
    A = np.array(
        [
            [0.0, rho, 0.0],
            [c * c / rho, 0.0, G * T],
            [0.0, 0.0, 0.0],
        ]
    )
    B = np.array(
        [
            [0.0, 0.0, 0.0],
            [0.0, 4.0 * mu / (3.0 * rho), 0.0],
            [lam * G / rho**2, 0.0, lam / (rho * Cv)],
        ]
    )
    # (rho, u, s) -> (rho, u, T), then weight by the square roots of the energy
    to_temperature = np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [G * T / rho, 0.0, T / Cv],
        ]
    )
    weights = np.sqrt([coeffs.cT**2 / rho, rho, rho * Cv / T])
    return SystemMatrices(A=A, B=B, energy_transform=weights[:, None] * to_temperature)


def mode_matrix(mats: SystemMatrices, k: float) -> np.ndarray:
    """``M = -i k A - k**2 B``: one Fourier mode evolves as ``dW/dt = M W``.

    Frequencies satisfying the dispersion relation are ``omega = i * eig(M)``.
    """
    return -1j * k * mats.A - k * k * mats.B


def energy_norm(mats: SystemMatrices, W) -> np.ndarray:
    """Energy norm of one state (shape ``(3,)``) or of a trajectory (``(n, 3)``)."""
    W = np.asarray(W)
    return np.linalg.norm(W @ mats.energy_transform.T, axis=-1)


def scaled_mode_matrix(mats: SystemMatrices, k: float) -> np.ndarray:
    """``L M L^{-1}``; its Hermitian part is negative semi-definite."""
    L = mats.energy_transform
    return L @ mode_matrix(mats, k) @ np.linalg.inv(L)
