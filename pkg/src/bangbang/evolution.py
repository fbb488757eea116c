"""Two-qubit states and their exact evolution under local amplitude decay.

Basis ordering everywhere is {|11>, |10>, |01>, |00>}: the first label is
qubit A, the second qubit B, and |1> is the excited level.  Each qubit
decays into its own reservoir, so the two-qubit state evolves element-wise
as a function of the single-qubit decoherence value P alone; the time
dependence enters only through P = P(t).

Bell-diagonal initial states (the family every sweep uses) stay in the
X-state class for all P, so their evolution has a five-parameter closed
form (``evolve_bd``) in addition to the general element-wise map
(``evolve``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import jacobi_eigh

__all__ = [
    "BellDiagonalParams",
    "XState",
    "validate_state",
    "bell_diagonal_state",
    "werner_state",
    "evolve",
    "evolve_bd",
]

# A two-qubit state is a plain 4x4 complex ndarray; validate_state is the
# gate every construction and evolution path goes through.
HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = -1e-10


def validate_state(rho, name: str = "rho") -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; return a complex copy.

    Violations raise DomainError (states are rejected, never repaired):
    entry-wise Hermiticity within 1e-12, trace within 1e-12 of 1, and all
    eigenvalues at least -1e-10.
    """
    arr = np.array(rho, dtype=complex)
    if arr.shape != (4, 4):
        raise DomainError(f"{name} must be 4x4, got shape {arr.shape}")
    herm = np.max(np.abs(arr - arr.conj().T))
    if herm > HERM_TOL:
        raise DomainError(f"{name} is not Hermitian: max deviation {herm:.3e}")
    tr = arr.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise DomainError(f"{name} trace must be 1, got {tr}")
    eigvals, _ = jacobi_eigh(arr)
    if eigvals[0] < PSD_TOL:
        raise DomainError(
            f"{name} is not positive semidefinite: min eigenvalue {eigvals[0]:.3e}"
        )
    return arr


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation triple (c1, c2, c3) of a Bell-diagonal state.

    The state is (1/4)[I + sum_i c_i sigma_i x sigma_i].  Each c_i lies in
    [-1, 1], and the triple must give a positive-semidefinite state (the
    eigenvalues are (1 -+ c1 -+ c2 -+ c3)/4 with an even number of minus
    signs); both conditions are enforced here, and invalid triples are
    rejected.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for label, value in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not (math.isfinite(value) and -1.0 <= value <= 1.0):
                raise DomainError(f"{label} must lie in [-1, 1], got {value}")
        # block eigenvalues of the X-structured matrix
        outer = 0.25 * (1.0 + self.c3)
        inner = 0.25 * (1.0 - self.c3)
        w = 0.25 * abs(self.c1 - self.c2)
        z = 0.25 * abs(self.c1 + self.c2)
        smallest = min(outer - w, inner - z)
        if smallest < -1e-12:
            raise DomainError(
                f"(c1, c2, c3) = ({self.c1}, {self.c2}, {self.c3}) does not "
                f"give a positive state: min eigenvalue {smallest:.3e}"
            )

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


def _as_bd(c) -> BellDiagonalParams:
    if isinstance(c, BellDiagonalParams):
        return c
    return BellDiagonalParams(*c)


@dataclass(frozen=True)
class XState:
    """X-structured two-qubit state with equal middle populations.

    Matrix entries in the {|11>, |10>, |01>, |00>} basis::

        [[ excited, 0,       0,       outer  ],
         [ 0,       single,  inner,   0      ],
         [ 0,       inner*,  single,  0      ],
         [ outer*,  0,       0,       ground ]]

    ``excited``, ``single``, ``ground`` are the populations of |11>, of
    each single-excitation level, and of |00>; ``inner`` is the coherence
    <10|rho|01> and ``outer`` the coherence <11|rho|00>.  Validity
    (populations summing to 1, |inner| <= single, |outer| <=
    sqrt(excited * ground)) is enforced on construction.
    """

    excited: float
    single: float
    ground: float
    inner: complex
    outer: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "excited", float(self.excited))
        object.__setattr__(self, "single", float(self.single))
        object.__setattr__(self, "ground", float(self.ground))
        object.__setattr__(self, "inner", complex(self.inner))
        object.__setattr__(self, "outer", complex(self.outer))
        for label, value in (
            ("excited", self.excited),
            ("single", self.single),
            ("ground", self.ground),
        ):
            if value < -1e-12:
                raise DomainError(f"{label} population must be non-negative, got {value}")
        total = self.excited + 2.0 * self.single + self.ground
        if abs(total - 1.0) > 1e-12:
            raise DomainError(f"populations must sum to 1, got {total}")
        if abs(self.inner) > self.single + 1e-12:
            raise DomainError(
                f"|inner| = {abs(self.inner):.6g} exceeds the single-excitation "
                f"population {self.single:.6g}"
            )
        bound = math.sqrt(max(self.excited, 0.0) * max(self.ground, 0.0))
        if abs(self.outer) > bound + 1e-12:
            raise DomainError(
                f"|outer| = {abs(self.outer):.6g} exceeds sqrt(excited*ground) "
                f"= {bound:.6g}"
            )

    def to_matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.excited
        rho[1, 1] = self.single
        rho[2, 2] = self.single
        rho[3, 3] = self.ground
        rho[0, 3] = self.outer
        rho[3, 0] = self.outer.conjugate()
        rho[1, 2] = self.inner
        rho[2, 1] = self.inner.conjugate()
        return rho

    @classmethod
    def from_matrix(cls, rho) -> "XState":
        arr = np.asarray(rho, dtype=complex)
        if arr.shape != (4, 4):
            raise DomainError(f"need a 4x4 matrix, got shape {arr.shape}")
        x_mask = np.zeros((4, 4), dtype=bool)
        for i, j in ((0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)):
            x_mask[i, j] = True
        stray = np.max(np.abs(arr[~x_mask]))
        if stray > 1e-12:
            raise DomainError(f"matrix is not X-structured: stray entry {stray:.3e}")
        if abs(arr[1, 1] - arr[2, 2]) > 1e-12:
            raise DomainError("middle populations differ; not in the symmetric X class")
        return cls(
            excited=arr[0, 0].real,
            single=0.5 * (arr[1, 1].real + arr[2, 2].real),
            ground=arr[3, 3].real,
            inner=arr[1, 2],
            outer=arr[0, 3],
        )


def bell_diagonal_state(c) -> np.ndarray:
    """Density matrix (1/4)[I + sum_i c_i sigma_i x sigma_i].

    Accepts a BellDiagonalParams or a plain (c1, c2, c3) triple; the
    parameters are validated there.  Entries: diagonal
    ((1+c3)/4, (1-c3)/4, (1-c3)/4, (1+c3)/4), anti-diagonal coherences
    (c1 -+ c2)/4.
    """
    params = _as_bd(c)
    outer = 0.25 * (1.0 + params.c3)
    inner = 0.25 * (1.0 - params.c3)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = outer
    rho[1, 1] = rho[2, 2] = inner
    rho[0, 3] = rho[3, 0] = 0.25 * (params.c1 - params.c2)
    rho[1, 2] = rho[2, 1] = 0.25 * (params.c1 + params.c2)
    return rho


def werner_state(r: float) -> np.ndarray:
    """Werner state r |psi-><psi-| + (1 - r)/4 I with the singlet |psi->.

    Equals bell_diagonal_state((-r, -r, -r)); r must lie in [0, 1].
    Entangled iff r > 1/3.
    """
    if not (math.isfinite(r) and 0.0 <= r <= 1.0):
        raise DomainError(f"r must lie in [0, 1], got {r}")
    return bell_diagonal_state(BellDiagonalParams(-r, -r, -r))


def _check_p(p: float) -> float:
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise DomainError(f"decoherence value P must lie in [0, 1], got {p}")
    return float(p)


def evolve(rho0, p: float) -> np.ndarray:
    """Element-wise two-qubit map at decoherence value ``p``.

    ``p`` is the single-qubit excited-state survival probability P(t); the
    caller supplies it from pt_analytic or pt_numeric.  p = 1 is the
    identity; p = 0 sends every state to |00><00|.  Populations cascade
    downward (|11> feeds |10> and |01>, everything feeds |00>), coherences
    shrink by half-integer powers of p:

        rho11' = rho11 p^2
        rho22' = rho22 p + rho11 p(1-p)        (rho33 alike)
        rho44' = 1 - rho11' - rho22' - rho33'
        rho12' = rho12 p^(3/2)                 (rho13 alike)
        rho14' = rho14 p,  rho23' = rho23 p
        rho24' = sqrt(p) [rho24 + rho13 (1-p)]
        rho34' = sqrt(p) [rho34 + rho12 (1-p)]

    and the lower triangle follows by Hermiticity.  This is exactly the
    product of two single-qubit amplitude-decay channels, so it is
    completely positive and composes: evolve(evolve(rho, p1), p2) ==
    evolve(rho, p1*p2) for every state.  (A commonly reprinted variant
    carries an extra factor p on the rho24/rho34 self terms; that variant
    is not a positive map, and the two agree on every X state, where those
    entries vanish.)
    """
    rho = validate_state(rho0)
    p = _check_p(p)
    sq = math.sqrt(p)
    p32 = p * sq
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = rho[0, 0].real * p * p
    out[1, 1] = rho[1, 1].real * p + rho[0, 0].real * p * (1.0 - p)
    out[2, 2] = rho[2, 2].real * p + rho[0, 0].real * p * (1.0 - p)
    out[3, 3] = 1.0 - (out[0, 0].real + out[1, 1].real + out[2, 2].real)
    out[0, 1] = rho[0, 1] * p32
    out[0, 2] = rho[0, 2] * p32
    out[0, 3] = rho[0, 3] * p
    out[1, 2] = rho[1, 2] * p
    out[1, 3] = sq * (rho[1, 3] + rho[0, 2] * (1.0 - p))
    out[2, 3] = sq * (rho[2, 3] + rho[0, 1] * (1.0 - p))
    for i in range(4):
        for j in range(i):
            out[i, j] = out[j, i].conjugate()
    return out


def _evolve_bd_entries(c: BellDiagonalParams, p):
    """Closed-form X-state entries at decoherence value(s) ``p`` (vectorized)."""
    p = np.asarray(p, dtype=float)
    outer0 = 0.25 * (1.0 + c.c3)
    a = outer0 * p**2
    b = 0.5 * p - outer0 * p**2
    d = 1.0 - p + outer0 * p**2
    z = 0.25 * (c.c1 + c.c2) * p
    w = 0.25 * (c.c1 - c.c2) * p
    return a, b, d, z, w


def evolve_bd(c, p: float) -> XState:
    """Closed-form evolution of a Bell-diagonal initial state.

    Returns the X state with excited = (1+c3) p^2 / 4,
    single = p/2 - (1+c3) p^2 / 4, ground = 1 - p + (1+c3) p^2 / 4,
    inner = (c1+c2) p / 4, outer = (c1-c2) p / 4; agrees entry-by-entry
    with evolve(bell_diagonal_state(c), p).
    """
    params = _as_bd(c)
    p = _check_p(p)
    a, b, d, z, w = _evolve_bd_entries(params, p)
    return XState(
        excited=float(a), single=float(b), ground=float(d),
        inner=complex(z), outer=complex(w),
    )
