"""Two-spinor kinematics for massive on-shell momenta.

Conventions, fixed once (see CONVENTIONS.md):

* epsilon_{01} = epsilon^{01} = +1; raising a lower index is xi^A =
  eps^{AB} xi_B, numerically EPSILON @ xi; the contraction a_A b^A equals
  a0*b1 - a1*b0.
* Soldering: p_{AA'} = (E*id + p.sigma)/sqrt(2), so det = m^2/2.
* Spin frames are gauged by the reference spinor o = (1,0) with the
  fallback o' = (0,1) when the momentum is nearly aligned with the primary
  null direction; the non-reference component of pi is kept real positive.
* Spin labels: index 0 is spin "minus", index 1 is spin "plus"; the plus
  bispinor carries Pauli-Lubanski projection +1/2 in this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, logm

from .errors import PreconditionError, ShapeError, UndefinedResidualError, UnsupportedMassError

EPSILON = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)

ON_SHELL_RTOL = 1e-12
FALLBACK_THRESHOLD = 1e-8
SPIN_MINUS = 0
SPIN_PLUS = 1


@dataclass(frozen=True)
class FourMomentum:
    E: float
    px: float
    py: float
    pz: float
    m: float

    def __post_init__(self):
        if self.m < 0:
            raise PreconditionError(f"mass must be nonnegative, got {self.m}")
        expected = np.sqrt(self.m**2 + self.px**2 + self.py**2 + self.pz**2)
        if self.E <= 0 or abs(self.E - expected) > ON_SHELL_RTOL * max(expected, 1.0):
            raise PreconditionError(
                f"momentum off shell: E={self.E}, sqrt(p^2+m^2)={expected}"
            )

    @classmethod
    def at_rest(cls, m: float) -> "FourMomentum":
        return cls(E=m, px=0.0, py=0.0, pz=0.0, m=m)

    @classmethod
    def from_spatial(cls, px: float, py: float, pz: float, m: float) -> "FourMomentum":
        return cls(E=float(np.sqrt(m**2 + px**2 + py**2 + pz**2)), px=px, py=py, pz=pz, m=m)

    @classmethod
    def from_rapidity(cls, eta: float, m: float) -> "FourMomentum":
        """On-shell momentum along +z with rapidity eta."""
        return cls(E=m * float(np.cosh(eta)), px=0.0, py=0.0, pz=m * float(np.sinh(eta)), m=m)

    def spatial(self) -> np.ndarray:
        return np.array([self.px, self.py, self.pz])

    def as_vector(self) -> np.ndarray:
        return np.array([self.E, self.px, self.py, self.pz])

    def dot_point(self, x: np.ndarray) -> float:
        """Minkowski product p.x with signature (+,-,-,-)."""
        return float(self.E * x[0] - self.px * x[1] - self.py * x[2] - self.pz * x[3])


@dataclass(frozen=True)
class TwoSpinor:
    """2-spinor with explicit index type; components are stored as given."""

    c0: complex
    c1: complex
    primed: bool = False
    upper: bool = False

    def array(self) -> np.ndarray:
        return np.array([self.c0, self.c1], dtype=np.complex128)

    def raised(self) -> "TwoSpinor":
        if self.upper:
            raise ShapeError("index already upper")
        v = EPSILON @ self.array()
        return TwoSpinor(complex(v[0]), complex(v[1]), primed=self.primed, upper=True)

    def lowered(self) -> "TwoSpinor":
        if not self.upper:
            raise ShapeError("index already lower")
        v = np.linalg.inv(EPSILON) @ self.array()
        return TwoSpinor(complex(v[0]), complex(v[1]), primed=self.primed, upper=False)

    def conjugated(self) -> "TwoSpinor":
        return TwoSpinor(
            complex(np.conj(self.c0)),
            complex(np.conj(self.c1)),
            primed=not self.primed,
            upper=self.upper,
        )

    def contract(self, other: "TwoSpinor") -> complex:
        """a_A b^A for two lower spinors of the same prime type."""
        if self.upper or other.upper:
            raise ShapeError("contract expects two lower-index spinors")
        if self.primed != other.primed:
            raise ShapeError("cannot contract primed with unprimed")
        return complex(self.c0 * other.c1 - self.c1 * other.c0)


def momentum_to_hermitian(p: FourMomentum) -> np.ndarray:
    """Soldering p -> p_{AA'}, Hermitian with det m^2/2."""
    return point_to_hermitian(p.as_vector())


def point_to_hermitian(x: np.ndarray) -> np.ndarray:
    t, a, b, c = (float(v) for v in x)
    return np.array(
        [[t + c, a - 1j * b], [a + 1j * b, t - c]], dtype=np.complex128
    ) / np.sqrt(2)


def hermitian_to_point(m: np.ndarray) -> np.ndarray:
    rt2 = np.sqrt(2)
    return np.array(
        [
            (m[0, 0] + m[1, 1]).real / rt2,
            (m[0, 1] + m[1, 0]).real / rt2,
            (m[1, 0] - m[0, 1]).imag / rt2,
            (m[0, 0] - m[1, 1]).real / rt2,
        ]
    )


def hermitian_to_momentum(m: np.ndarray, mass: float) -> FourMomentum:
    v = hermitian_to_point(m)
    return FourMomentum(E=float(v[0]), px=float(v[1]), py=float(v[2]), pz=float(v[3]), m=mass)


@dataclass(frozen=True)
class SpinFrame:
    omega: TwoSpinor
    pi: TwoSpinor
    momentum: FourMomentum
    used_fallback: bool

    def omega_array(self) -> np.ndarray:
        return self.omega.array()

    def pi_array(self) -> np.ndarray:
        return self.pi.array()


def build_spin_frame(p: FourMomentum) -> SpinFrame:
    """Frame (omega, pi) with omega_A pi^A = 1 and p = pi pibar + (m^2/2) om ombar.

    pi_A is proportional to p_{AA'} obar^{A'}; the primary reference o = (1,0)
    gives obar^{A'} = (0,-1).  Near the degenerate direction (|p_{AA'}
    obar^{A'}| < 1e-8 E) the reference switches to o' = (0,1).
    """
    if p.m <= 0:
        raise UnsupportedMassError("spin frames implemented for m > 0 only")
    m = momentum_to_hermitian(p)
    t = m @ np.array([0.0, -1.0])
    if np.linalg.norm(t) < FALLBACK_THRESHOLD * p.E:
        sq = np.sqrt(m[0, 0].real)
        pi = np.array([sq, m[1, 0] / sq])
        om = np.array([0.0, -1.0 / sq])
        fallback = True
    else:
        sq = np.sqrt(m[1, 1].real)
        pi = np.array([m[0, 1] / sq, sq])
        om = np.array([1.0 / sq, 0.0])
        fallback = False
    return SpinFrame(
        omega=TwoSpinor(complex(om[0]), complex(om[1])),
        pi=TwoSpinor(complex(pi[0]), complex(pi[1])),
        momentum=p,
        used_fallback=fallback,
    )


def null_vector(xi: np.ndarray) -> np.ndarray:
    """Real null 4-vector of a 2-spinor, from the rank-1 matrix xi xibar."""
    return hermitian_to_point(np.outer(xi, np.conj(xi)))


@dataclass(frozen=True)
class Bispinor:
    """4-component object (unprimed lower 2-spinor stacked over primed lower)."""

    unprimed: np.ndarray
    primed: np.ndarray

    def as4(self) -> np.ndarray:
        return np.concatenate([self.unprimed, self.primed]).astype(np.complex128)


@dataclass(frozen=True)
class BispinorTable:
    """Plane-wave eigen-bispinors indexed by [frequency branch][spin]."""

    pos: tuple[Bispinor, Bispinor]
    neg: tuple[Bispinor, Bispinor]

    def branch(self, frequency_sign: int) -> tuple[Bispinor, Bispinor]:
        if frequency_sign == 1:
            return self.pos
        if frequency_sign == -1:
            return self.neg
        raise ShapeError(f"frequency_sign must be +-1, got {frequency_sign}")


def eigen_bispinors(frame: SpinFrame) -> BispinorTable:
    """The four sign combinations of the plane-wave solutions.

    pos[+] = (+c om, -pibar), pos[-] = (-pi, -c ombar),
    neg[+] = (-c om, -pibar), neg[-] = (-pi, +c ombar), with c = m/sqrt(2).
    """
    om = frame.omega_array()
    pi = frame.pi_array()
    c = frame.momentum.m / np.sqrt(2)
    pos = (
        Bispinor(unprimed=-pi, primed=-c * np.conj(om)),
        Bispinor(unprimed=c * om, primed=-np.conj(pi)),
    )
    neg = (
        Bispinor(unprimed=-pi, primed=c * np.conj(om)),
        Bispinor(unprimed=-c * om, primed=-np.conj(pi)),
    )
    return BispinorTable(pos=pos, neg=neg)


def dirac_matrix(p: FourMomentum, frequency_sign: int) -> np.ndarray:
    """Momentum-space Dirac operator; the matching frequency branch is its kernel.

    The plane-wave substitution maps the gradient to -frequency_sign * p,
    leaving mass terms on the diagonal and the soldered momentum (with one
    index raised by epsilon) in the off-diagonal blocks.
    """
    if frequency_sign not in (1, -1):
        raise ShapeError(f"frequency_sign must be +-1, got {frequency_sign}")
    m = momentum_to_hermitian(p)
    jt = EPSILON.T
    d = np.zeros((4, 4), dtype=np.complex128)
    d[:2, :2] = (p.m / np.sqrt(2)) * np.eye(2)
    d[2:, 2:] = (p.m / np.sqrt(2)) * np.eye(2)
    d[:2, 2:] = -frequency_sign * (m @ jt)
    d[2:, :2] = frequency_sign * (m.T @ jt)
    return d


def dirac_residual(p: FourMomentum, psi: Bispinor, frequency_sign: int) -> float:
    v = psi.as4()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise UndefinedResidualError("residual of the zero bispinor is undefined")
    return float(np.linalg.norm(dirac_matrix(p, frequency_sign) @ v) / norm)


def pauli_lubanski_projection(frame: SpinFrame) -> tuple[np.ndarray, np.ndarray]:
    """Spin projections along the frame direction, unprimed and primed blocks.

    Each block is trace-free and squares to id/4; eigenvalues are +-1/2.
    """
    om = frame.omega_array()
    pi = frame.pi_array()
    s_unprimed = 0.5 * (np.outer(pi, EPSILON @ om) + np.outer(om, EPSILON @ pi))
    s_primed = -np.conj(s_unprimed)
    return s_unprimed, s_primed


def boost_z(eta: float) -> np.ndarray:
    """SL(2,C) element of a boost with rapidity eta along +z."""
    return np.diag([np.exp(eta / 2), np.exp(-eta / 2)]).astype(np.complex128)


def random_sl2c(rng: np.random.Generator, scale: float = 0.7) -> np.ndarray:
    c = (rng.standard_normal(3) + 1j * rng.standard_normal(3)) * scale / 2
    return expm(c[0] * PAULI[0] + c[1] * PAULI[1] + c[2] * PAULI[2])


def bispinor_rep(lam: np.ndarray) -> np.ndarray:
    """Direct-sum action on (unprimed, primed) lower components."""
    out = np.zeros((4, 4), dtype=np.complex128)
    out[:2, :2] = lam
    out[2:, 2:] = np.conj(lam)
    return out


def apply_lorentz(lam: np.ndarray, p: FourMomentum) -> FourMomentum:
    """Active transformation p -> Lambda p via the soldered representative."""
    m = lam @ momentum_to_hermitian(p) @ lam.conj().T
    return hermitian_to_momentum(m, p.m)


def apply_lorentz_to_point(lam: np.ndarray, x: np.ndarray) -> np.ndarray:
    return hermitian_to_point(lam @ point_to_hermitian(x) @ lam.conj().T)


def wigner_matrix(lam: np.ndarray, p: FourMomentum) -> np.ndarray:
    """SU(2) mixing of spin labels under the passive boost action.

    Entries are frame contractions between the frame at p and the
    Lambda-transported frame from Lambda^{-1} p; special-unitarity is a
    theorem, not enforced.
    """
    lam_inv = np.linalg.inv(lam)
    q = apply_lorentz(lam_inv, p)
    frame_p = build_spin_frame(p)
    frame_q = build_spin_frame(q)
    om_p = frame_p.omega_array()
    om_q = lam @ frame_q.omega_array()
    pi_q = lam @ frame_q.pi_array()

    def contract(a, b):
        return a[0] * b[1] - a[1] * b[0]

    z = contract(om_p, pi_q)
    w = contract(om_p, om_q)
    c = p.m / np.sqrt(2)
    return np.array([[z, -c * w], [c * np.conj(w), np.conj(z)]])


def mixing_generator(u: np.ndarray) -> np.ndarray:
    """A with e^A = u, principal branch; valid while u stays away from -id."""
    return logm(u)


def classical_solution(lattice, f: np.ndarray, g: np.ndarray, x: np.ndarray,
                       conjugate: bool = False) -> np.ndarray:
    """Discretized plane-wave synthesis of the classical field at point x.

    psi(x) = sum_i w_i sum_s [ phi_pos[s](p_i) f(i,s) e^{-i p.x}
                               + phi_neg[s](p_i) conj(g(i,-s)) e^{+i p.x} ].
    The conjugate flag swaps the roles of f and g.
    """
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    n = len(lattice.points)
    if f.shape != (n, 2) or g.shape != (n, 2):
        raise ShapeError(f"amplitude tables must have shape ({n}, 2)")
    if conjugate:
        f, g = g, f
    out = np.zeros(4, dtype=np.complex128)
    for i, p in enumerate(lattice.points):
        table = eigen_bispinors(build_spin_frame(p))
        phase = np.exp(-1j * p.dot_point(x))
        for s in (SPIN_MINUS, SPIN_PLUS):
            out = out + lattice.weights[i] * (
                table.pos[s].as4() * f[i, s] * phase
                + table.neg[s].as4() * np.conj(g[i, 1 - s]) * np.conj(phase)
            )
    return out
