"""Eigenvalues of small dense complex matrices by shifted QR iteration.

This is the verification path for the cubic solver and deliberately uses
nothing from :mod:`nsdispersion.roots`: balancing, Householder reduction to
Hessenberg form, then single-shift complex QR sweeps with Wilkinson shifts
and deflation.  Eigenvectors come from inverse iteration on the original
matrix.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, NumericalError

_EPS = np.finfo(float).eps
MAX_SWEEPS_PER_EIGENVALUE = 60
RESIDUAL_TOLERANCE = 1e-10


def balance(M: np.ndarray) -> np.ndarray:
    """Diagonal similarity by powers of two equalizing row and column norms."""
    H = np.array(M, dtype=complex)
    n = H.shape[0]
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            col = np.sum(np.abs(H[:, i])) - abs(H[i, i])
            row = np.sum(np.abs(H[i, :])) - abs(H[i, i])
            if col == 0 or row == 0:
                continue
            f = 1.0
            s = col + row
            while col < row / 2.0:
                col *= 2.0
                row /= 2.0
                f *= 2.0
            while col >= row * 2.0:
                col /= 2.0
                row *= 2.0
                f /= 2.0
            if col + row < 0.95 * s:
                converged = False
                H[:, i] *= f
                H[i, :] /= f
    return H


def hessenberg(M: np.ndarray) -> np.ndarray:
    """Unitary similarity to upper Hessenberg form (Householder reflections)."""
    H = np.array(M, dtype=complex)
    n = H.shape[0]
    for j in range(n - 2):
        x = H[j + 1 :, j].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0 or np.linalg.norm(x[1:]) == 0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[j + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[j + 1 :, :])
        H[:, j + 1 :] -= 2.0 * np.outer(H[:, j + 1 :] @ v, v.conj())
        H[j + 2 :, j] = 0.0
    return H


def _wilkinson_shift(a, b, c, d):
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b * c + 0j)
    mu1, mu2 = half_tr + disc, half_tr - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_sweep(H, shift):
    m = H.shape[0]
    H = H - shift * np.eye(m)
    rotations = []
    for j in range(m - 1):
        a, b = H[j, j], H[j + 1, j]
        r = np.hypot(abs(a), abs(b))
        if r == 0:
            rotations.append((1.0 + 0j, 0j))
            continue
        alpha, beta = np.conj(a) / r, np.conj(b) / r
        rj, rj1 = H[j, :].copy(), H[j + 1, :].copy()
        H[j, :] = alpha * rj + beta * rj1
        H[j + 1, :] = -np.conj(beta) * rj + np.conj(alpha) * rj1
        rotations.append((alpha, beta))
    for j, (alpha, beta) in enumerate(rotations):
        cj, cj1 = H[:, j].copy(), H[:, j + 1].copy()
        H[:, j] = np.conj(alpha) * cj + np.conj(beta) * cj1
        H[:, j + 1] = -beta * cj + alpha * cj1
    return H + shift * np.eye(m)


def _qr_eigenvalues(H):
    n = H.shape[0]
    eigenvalues = []
    hi = n - 1
    sweeps = 0
    while hi >= 0:
        if hi == 0:
            eigenvalues.append(H[0, 0])
            break
        lo = hi
        while lo > 0:
            if abs(H[lo, lo - 1]) <= _EPS * (abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])):
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigenvalues.append(H[hi, hi])
            hi -= 1
            sweeps = 0
            continue
        sweeps += 1
        if sweeps > MAX_SWEEPS_PER_EIGENVALUE:
            raise NumericalError(
                "QR iteration did not converge",
                {"active_block": (lo, hi), "subdiagonal": abs(H[hi, hi - 1]), "matrix": H.copy()},
            )
        if sweeps % 11 == 0:
            # exceptional shift breaks rare cycling
            shift = H[hi, hi] + 0.75 * abs(H[hi, hi - 1])
        else:
            shift = _wilkinson_shift(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        H[lo : hi + 1, lo : hi + 1] = _qr_sweep(H[lo : hi + 1, lo : hi + 1], shift)
    return np.array(eigenvalues[::-1])


def eigenvector(M: np.ndarray, eigenvalue: complex, iterations: int = 3) -> tuple[np.ndarray, float]:
    """Unit eigenvector by inverse iteration and its residual ``|M v - lam v|``."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    norm = np.linalg.norm(M, 2)
    delta = max(norm, 1.0) * 1e3 * _EPS * (1.0 + 1.0j)
    shifted = M - (eigenvalue + delta) * np.eye(n)
    v = np.ones(n, dtype=complex) / np.sqrt(n)
    for _ in range(iterations):
        try:
            w = np.linalg.solve(shifted, v)
        except np.linalg.LinAlgError:
            w = np.linalg.lstsq(shifted, v, rcond=None)[0]
        wn = np.linalg.norm(w)
        if wn == 0 or not np.isfinite(wn):
            break
        v = w / wn
    return v, float(np.linalg.norm(M @ v - eigenvalue * v))


def eigen3(M) -> np.ndarray:
    """The three eigenvalues of a 3x3 complex matrix.

    Raises :class:`NumericalError` if the iteration stalls or an eigenpair
    residual exceeds ``1e-10 * |M|``.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape != (3, 3):
        raise DomainError(f"eigen3 expects a 3x3 matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NumericalError("matrix has non-finite entries")
    values = _qr_eigenvalues(hessenberg(balance(M)))
    norm = np.linalg.norm(M, 2)
    for lam in values:
        _, residual = eigenvector(M, lam)
        if residual > RESIDUAL_TOLERANCE * max(norm, np.finfo(float).tiny):
            raise NumericalError(
                "eigenpair residual above tolerance",
                {"eigenvalue": lam, "residual": residual, "norm": norm},
            )
    return values
