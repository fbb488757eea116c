"""Eigensolver for small Hermitian matrices: cyclic Jacobi iteration.

Closed forms cover the 2x2 and X-structured 4x4 cases elsewhere in the
package; this module handles general small Hermitian matrices without
calling an external eigensolver, so every library code path stays
self-contained.  numpy's LAPACK routines appear only in the test suite as
an independent reference.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = ["jacobi_eigh", "ConvergenceError"]


class ConvergenceError(RuntimeError):
    """The Jacobi sweep did not reach the requested off-diagonal norm."""


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(np.abs(off) ** 2)))


def jacobi_eigh(matrix, tol: float = 1e-13, max_sweeps: int = 60):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps over every off-diagonal pair (p, q), each time applying the
    complex plane rotation that annihilates that entry, until the
    off-diagonal Frobenius norm is at most ``tol``.  Returns
    ``(w, v)`` with eigenvalues ``w`` ascending and unitary ``v`` whose
    columns are the eigenvectors, so matrix = v @ diag(w) @ v.conj().T.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"need a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.conj().T)) > 1e-10:
        raise DomainError("matrix is not Hermitian")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    converged = n < 2
    for _ in range(max_sweeps):
        if _off_norm(a) <= tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, (a[q, q] - a[p, p]).real)
                c = math.cos(theta)
                s = math.sin(theta)
                # columns: A <- A J with J[p,p]=J[q,q]=c, J[p,q]=s*phase,
                # J[q,p]=-s*conj(phase)
                col_p = a[:, p] * c - a[:, q] * s * phase.conjugate()
                col_q = a[:, p] * s * phase + a[:, q] * c
                a[:, p] = col_p
                a[:, q] = col_q
                # rows: A <- J^dagger A
                row_p = a[p, :] * c - a[q, :] * s * phase
                row_q = a[p, :] * s * phase.conjugate() + a[q, :] * c
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p] * c - v[:, q] * s * phase.conjugate()
                vq = v[:, p] * s * phase + v[:, q] * c
                v[:, p] = vp
                v[:, q] = vq
    else:
        if _off_norm(a) <= tol:
            converged = True
    if not converged:
        raise ConvergenceError(
            f"off-diagonal norm {_off_norm(a):.3e} above {tol:.3e} "
            f"after {max_sweeps} sweeps"
        )
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
