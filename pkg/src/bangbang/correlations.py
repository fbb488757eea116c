"""Correlation measures for two-qubit states.

Von Neumann entropy (base 2 throughout), mutual information, quantum
discord, classical correlation, and Wootters concurrence, in the
{|11>, |10>, |01>, |00>} basis used across the package.

For the symmetric X-state family the discord minimization over projective
measurements reduces to two closed-form candidates: measuring B along z
(branch Q1) and measuring B along the optimal equatorial direction
(branch Q2); the discord is their minimum and the active branch can switch
suddenly as the state evolves.  ``classical_correlation_oracle`` performs
the full brute-force measurement search instead and serves as the
independent check on the closed form through I = C + Q.

Entropy eigenvalues come from closed forms for 2x2 and X-structured
matrices and from the cyclic Jacobi iteration otherwise; eigenvalues below
1e-15 contribute zero (the 0 log 0 convention).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .evolution import XState, validate_state
from .linalg import jacobi_eigh

__all__ = [
    "Branch",
    "CorrelationReport",
    "MeasurementBasis",
    "von_neumann_entropy",
    "mutual_information",
    "discord_x_closed",
    "discord_branches",
    "classical_correlation_oracle",
    "conditional_entropy",
    "concurrence_x",
    "concurrence_general",
    "report_x",
]

_EIG_CUTOFF = 1e-15
_TIE_TOL = 1e-12
_INV_GOLD = (math.sqrt(5.0) - 1.0) / 2.0

_SIGMA_YY = np.array(
    [[0.0, 0.0, 0.0, -1.0],
     [0.0, 0.0, 1.0, 0.0],
     [0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0]]
)

_X_MASK = np.zeros((4, 4), dtype=bool)
for _i, _j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
    _X_MASK[_i, _j] = True


class Branch(enum.Enum):
    """Which closed-form discord candidate attains the minimum."""

    Q1 = "Q1"
    Q2 = "Q2"
    TIE = "Tie"


_BRANCH_BY_CODE = (Branch.Q1, Branch.Q2, Branch.TIE)


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective measurement direction on qubit B, in Bloch angles.

    The measured basis is {|n>, |n_perp>} with
    |n> = cos(theta/2)|1> + e^{i phi} sin(theta/2)|0>.
    """

    theta: float
    phi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and 0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not (math.isfinite(self.phi) and 0.0 <= self.phi < 2.0 * math.pi):
            raise DomainError(f"phi must lie in [0, 2 pi), got {self.phi}")


@dataclass(frozen=True)
class CorrelationReport:
    """All correlation measures of one state at one instant (bits)."""

    mutual_info: float
    classical: float
    discord: float
    branch: Branch
    concurrence: float
    q1: float
    q2: float


def _plogp(p):
    """-p log2 p with 0 log 0 = 0, element-wise; tolerates tiny negatives."""
    arr = np.asarray(p, dtype=float)
    mask = arr > _EIG_CUTOFF
    safe = np.where(mask, arr, 1.0)
    return np.where(mask, -safe * np.log2(safe), 0.0)


def _herm2_eigs(m00, m11, off):
    """Eigenvalues of the Hermitian 2x2 [[m00, off], [off*, m11]] (vectorized)."""
    mean = 0.5 * (m00 + m11)
    root = np.sqrt(np.maximum(0.25 * (m00 - m11) ** 2 + np.abs(off) ** 2, 0.0))
    return mean + root, mean - root


def _is_x(arr: np.ndarray) -> bool:
    return bool(np.max(np.abs(arr[~_X_MASK])) <= 1e-14)


def _partial_traces(arr: np.ndarray):
    t = arr.reshape(2, 2, 2, 2)
    rho_a = np.einsum("ikjk->ij", t)
    rho_b = np.einsum("ikil->kl", t)
    return rho_a, rho_b


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in bits of a 2x2 or 4x4 density matrix.

    Uses closed-form eigenvalues for 2x2 and X-structured 4x4 matrices and
    the cyclic Jacobi iteration for general 4x4 ones.
    """
    arr = np.asarray(rho, dtype=complex)
    if arr.shape == (2, 2):
        if abs(arr[0, 1] - arr[1, 0].conjugate()) > 1e-10:
            raise DomainError("matrix is not Hermitian")
        e1, e2 = _herm2_eigs(arr[0, 0].real, arr[1, 1].real, arr[0, 1])
        eigs = np.array([e1, e2])
    elif arr.shape == (4, 4):
        if np.max(np.abs(arr - arr.conj().T)) > 1e-10:
            raise DomainError("matrix is not Hermitian")
        if _is_x(arr):
            o1, o2 = _herm2_eigs(arr[0, 0].real, arr[3, 3].real, arr[0, 3])
            i1, i2 = _herm2_eigs(arr[1, 1].real, arr[2, 2].real, arr[1, 2])
            eigs = np.array([o1, o2, i1, i2])
        else:
            eigs, _ = jacobi_eigh(arr)
    else:
        raise DomainError(f"need a 2x2 or 4x4 matrix, got shape {arr.shape}")
    tr = float(np.sum(np.real(np.diag(arr))))
    if abs(tr - 1.0) > 1e-9:
        raise DomainError(f"trace must be 1, got {tr}")
    return float(np.sum(_plogp(eigs)))


def mutual_information(rho) -> float:
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
    arr = validate_state(rho)
    rho_a, rho_b = _partial_traces(arr)
    return (
        von_neumann_entropy(rho_a)
        + von_neumann_entropy(rho_b)
        - von_neumann_entropy(arr)
    )


def _x_discord_pieces(a, b, d, z_abs, w_abs):
    """(mutual_info, q1, q2) for symmetric X states, vectorized over entries."""
    pa = a + b  # excited-level probability of either marginal
    pb = b + d
    s_marg = _plogp(pa) + _plogp(pb)
    o1, o2 = _herm2_eigs(a, d, w_abs)
    s_joint = _plogp(o1) + _plogp(o2) + _plogp(b + z_abs) + _plogp(b - z_abs)
    info = 2.0 * s_marg - s_joint
    # B measured along z: conditional entropy of A given the outcome
    cond_z = (_plogp(a) + _plogp(b) - _plogp(pa)) + (
        _plogp(b) + _plogp(d) - _plogp(pb)
    )
    q1 = s_marg - s_joint + cond_z
    # B measured along the best equatorial direction
    root = np.sqrt((a - d) ** 2 + 4.0 * (z_abs + w_abs) ** 2)
    q2 = s_marg - s_joint + _plogp(0.5 * (1.0 + root)) + _plogp(0.5 * (1.0 - root))
    return info, q1, q2


def discord_branches(x: XState) -> tuple[float, float]:
    """The two closed-form discord candidates (Q1, Q2) of a symmetric X state."""
    _, q1, q2 = _x_discord_pieces(
        x.excited, x.single, x.ground, abs(x.inner), abs(x.outer)
    )
    return float(q1), float(q2)


def discord_x_closed(x: XState) -> tuple[float, Branch]:
    """Quantum discord of a symmetric X state and the branch attaining it.

    Q = min{Q1, Q2}; the branch is TIE when |Q1 - Q2| <= 1e-12.
    """
    q1, q2 = discord_branches(x)
    if abs(q1 - q2) <= _TIE_TOL:
        return min(q1, q2), Branch.TIE
    if q1 < q2:
        return q1, Branch.Q1
    return q2, Branch.Q2


def x_report_arrays(a, b, d, z, w):
    """Vectorized correlation measures for symmetric X-state entry arrays.

    Returns a dict of arrays: mutual_info, classical, discord, q1, q2,
    branch_code (0 = Q1, 1 = Q2, 2 = tie), concurrence.
    """
    z_abs = np.abs(z)
    w_abs = np.abs(w)
    info, q1, q2 = _x_discord_pieces(a, b, d, z_abs, w_abs)
    diff = q1 - q2
    discord = np.minimum(q1, q2)
    branch_code = np.where(np.abs(diff) <= _TIE_TOL, 2, np.where(diff < 0.0, 0, 1))
    conc = np.maximum(
        0.0,
        np.maximum(
            2.0 * w_abs - 2.0 * b,
            2.0 * z_abs - 2.0 * np.sqrt(np.maximum(a, 0.0) * np.maximum(d, 0.0)),
        ),
    )
    return {
        "mutual_info": info,
        "classical": info - discord,
        "discord": discord,
        "q1": q1,
        "q2": q2,
        "branch_code": branch_code,
        "concurrence": conc,
    }


def report_x(x: XState) -> CorrelationReport:
    """All correlation measures of a symmetric X state."""
    out = x_report_arrays(
        np.asarray(x.excited), np.asarray(x.single), np.asarray(x.ground),
        np.asarray(x.inner), np.asarray(x.outer),
    )
    return CorrelationReport(
        mutual_info=float(out["mutual_info"]),
        classical=float(out["classical"]),
        discord=float(out["discord"]),
        branch=_BRANCH_BY_CODE[int(out["branch_code"])],
        concurrence=float(out["concurrence"]),
        q1=float(out["q1"]),
        q2=float(out["q2"]),
    )


def _avg_cond(m00, m01, m11):
    """p S(M/p) for an unnormalized conditional 2x2 block M (vectorized)."""
    p = np.real(m00 + m11)
    root = np.sqrt(np.maximum(0.25 * np.real(m00 - m11) ** 2 + np.abs(m01) ** 2, 0.0))
    safe_p = np.where(p > _EIG_CUTOFF, p, 1.0)
    x1 = np.clip((0.5 * p + root) / safe_p, 0.0, 1.0)
    x2 = np.clip((0.5 * p - root) / safe_p, 0.0, 1.0)
    return np.where(p > _EIG_CUTOFF, p * (_plogp(x1) + _plogp(x2)), 0.0)


def _measurement_scan(arr, thetas, phis):
    """Average post-measurement entropy sum_k p_k S(rho_k), vectorized.

    ``thetas``/``phis`` are broadcastable arrays of Bloch angles for the
    projective measurement {|n><n|, I - |n><n|} on qubit B.
    """
    t = arr.reshape(2, 2, 2, 2)
    c = np.cos(0.5 * thetas)
    s = np.sin(0.5 * thetas)
    e = np.exp(1j * phis)
    c2 = c * c
    s2 = s * s
    cs = c * s * e
    rho_a, _ = _partial_traces(arr)

    def entry(i, j):
        # <n|rho|n>_B entry (i, j): n = (cos(theta/2), e^{i phi} sin(theta/2))
        return (
            t[i, 0, j, 0] * c2
            + t[i, 0, j, 1] * cs
            + t[i, 1, j, 0] * np.conj(cs)
            + t[i, 1, j, 1] * s2
        )

    m00 = entry(0, 0)
    m01 = entry(0, 1)
    m11 = entry(1, 1)
    return _avg_cond(m00, m01, m11) + _avg_cond(
        rho_a[0, 0] - m00, rho_a[0, 1] - m01, rho_a[1, 1] - m11
    )


def conditional_entropy(rho, basis: MeasurementBasis) -> float:
    """sum_k p_k S(rho_k) for measuring qubit B along ``basis``."""
    arr = validate_state(rho)
    return float(_measurement_scan(arr, np.asarray(basis.theta), np.asarray(basis.phi)))


def _golden_min(fn, lo, hi, iters=40):
    """Golden-section minimum of ``fn`` on [lo, hi]; fixed iteration count."""
    a, b = lo, hi
    x1 = b - _INV_GOLD * (b - a)
    x2 = a + _INV_GOLD * (b - a)
    f1 = fn(x1)
    f2 = fn(x2)
    for _ in range(iters):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLD * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLD * (b - a)
            f2 = fn(x2)
    return 0.5 * (a + b)


def classical_correlation_oracle(rho, grid_n: int = 64) -> float:
    """Classical correlation by brute-force projective-measurement search.

    C = S(rho_A) - min over bases of sum_k p_k S(rho_k), minimized on a
    grid_n x grid_n (theta, phi) grid and sharpened by coordinate-wise
    golden-section passes around the best grid point.  Fully deterministic
    for a given input.  This is the independent check on the closed-form
    discord through I = C + Q.
    """
    if grid_n < 64:
        raise DomainError(f"grid_n must be at least 64, got {grid_n}")
    arr = validate_state(rho)
    thetas = np.linspace(0.0, math.pi, grid_n)
    phis = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    cond = _measurement_scan(arr, thetas[:, None], phis[None, :])
    flat = int(np.argmin(cond))
    i, j = divmod(flat, grid_n)
    theta = float(thetas[i])
    phi = float(phis[j])
    dth = float(thetas[1] - thetas[0])
    dph = float(phis[1] - phis[0])

    def at(th, ph):
        return float(_measurement_scan(arr, np.asarray(th), np.asarray(ph)))

    for _ in range(3):
        theta = _golden_min(
            lambda th: at(th, phi),
            max(theta - dth, 0.0),
            min(theta + dth, math.pi),
        )
        phi = _golden_min(lambda ph: at(theta, ph), phi - dph, phi + dph)
    rho_a, _ = _partial_traces(arr)
    return von_neumann_entropy(rho_a) - at(theta, phi)


def concurrence_x(x: XState) -> float:
    """Concurrence of a symmetric X state, in closed form.

    C_E = max{0, 2|outer| - 2 single, 2|inner| - 2 sqrt(excited ground)}.
    """
    a = max(x.excited, 0.0)
    d = max(x.ground, 0.0)
    return max(
        0.0,
        2.0 * abs(x.outer) - 2.0 * x.single,
        2.0 * abs(x.inner) - 2.0 * math.sqrt(a * d),
    )


def concurrence_general(rho) -> float:
    """Spin-flip concurrence of an arbitrary two-qubit state.

    C_E = max{0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4)} where the
    mu_i are the decreasing eigenvalues of
    rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y), computed through the
    Hermitian similarity sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho).
    Independent of the X-state closed form; used to cross-check it.
    """
    arr = validate_state(rho)
    w, v = jacobi_eigh(arr)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = _SIGMA_YY @ arr.conj() @ _SIGMA_YY
    mu, _ = jacobi_eigh(root @ flipped @ root)
    lam = np.sqrt(np.clip(mu, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))
