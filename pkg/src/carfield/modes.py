"""Momentum lattices and the single-oscillator space.

A lattice is a finite quadrature rule for the invariant measure on the
mass-m hyperboloid.  The single-oscillator Hilbert space is (lattice modes)
x (16-dim register); the internal mode basis is orthonormal, |i> =
sqrt(w_i) |p_i>, so the resolution of unity sum_i w_i |p_i><p_i| = id holds
exactly and every continuum identity discretizes as integral -> sum w_i.

Lattice kinds:

* rapidity1d: p_j = m (cosh j*deta, 0, 0, sinh j*deta), j in [-J, J],
  weight deta per mode.  Closed under boosts by multiples of deta, which is
  what makes lattice-level Lorentz covariance exact.
* grid3d: centered cubic grid with weights delta^3 / ((2 pi)^3 2 E).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import register as reg_mod
from . import sparse, spinors
from .errors import ConfigError, DegenerateVacuumError, ShapeError
from .register import REGISTER_DIM, JWRegister, build_register
from .sparse import SparseOperator
from .spinors import FourMomentum

RAPIDITY_1D = "rapidity1d"
GRID_3D = "grid3d"


@dataclass(frozen=True)
class MomentumLattice:
    mode: str
    points: tuple[FourMomentum, ...]
    weights: np.ndarray
    m: float
    # rapidity metadata, None for grid lattices
    j_values: tuple[int, ...] | None = None
    delta_eta: float | None = None

    @property
    def size(self) -> int:
        return len(self.points)

    def index_of_j(self, j: int) -> int:
        if self.j_values is None:
            raise ConfigError("j-indexing only defined for rapidity lattices")
        return self.j_values.index(j)


def rapidity_lattice(j_max: int, delta_eta: float, m: float) -> MomentumLattice:
    if j_max < 0 or delta_eta <= 0 or m <= 0:
        raise ConfigError(f"invalid rapidity lattice: J={j_max}, deta={delta_eta}, m={m}")
    js = tuple(range(-j_max, j_max + 1))
    points = tuple(FourMomentum.from_rapidity(j * delta_eta, m) for j in js)
    weights = np.full(len(js), delta_eta, dtype=float)
    return MomentumLattice(RAPIDITY_1D, points, weights, m, j_values=js, delta_eta=delta_eta)


def grid_lattice(n: int, spacing: float, m: float) -> MomentumLattice:
    """Cubic n^3 grid centered at the origin."""
    if n <= 0 or spacing <= 0 or m <= 0:
        raise ConfigError(f"invalid grid lattice: n={n}, spacing={spacing}, m={m}")
    offsets = spacing * (np.arange(n) - (n - 1) / 2)
    points = []
    weights = []
    for ax in offsets:
        for ay in offsets:
            for az in offsets:
                p = FourMomentum.from_spatial(float(ax), float(ay), float(az), m)
                points.append(p)
                weights.append(spacing**3 / ((2 * np.pi) ** 3 * 2 * p.E))
    return MomentumLattice(GRID_3D, tuple(points), np.array(weights), m)


def build_lattice(mode: str, m: float, j_max: int = 6, delta_eta: float = 0.4,
                  grid_n: int = 2, grid_spacing: float = 1.0) -> MomentumLattice:
    if mode == RAPIDITY_1D:
        return rapidity_lattice(j_max, delta_eta, m)
    if mode == GRID_3D:
        return grid_lattice(grid_n, grid_spacing, m)
    raise ConfigError(f"unknown lattice mode {mode!r}")


def restricted_lattice(lattice: MomentumLattice, indices: tuple[int, ...]) -> MomentumLattice:
    """Sub-lattice on a subset of modes; rapidity metadata is dropped."""
    if len(indices) == 0 or len(set(indices)) != len(indices):
        raise ConfigError(f"need distinct mode indices, got {indices}")
    points = tuple(lattice.points[i] for i in indices)
    weights = lattice.weights[list(indices)].copy()
    return MomentumLattice("restricted", points, weights, lattice.m)


class SingleOscillatorSpace:
    """Lattice modes tensored with the 16-dim register, dim = 16 M.

    Mode index is the slow index: basis = |i> x |register r|, flattened
    row-major as i * 16 + r.  Bispinor tables per mode are precomputed.
    """

    def __init__(self, lattice: MomentumLattice, register: JWRegister | None = None):
        self.lattice = lattice
        self.register = register if register is not None else build_register()
        self.dim = REGISTER_DIM * lattice.size
        tables = [spinors.eigen_bispinors(spinors.build_spin_frame(p)) for p in lattice.points]
        # [mode, spin, component] for each frequency branch
        self.pos_table = np.array(
            [[t.pos[s].as4() for s in (0, 1)] for t in tables]
        )
        self.neg_table = np.array(
            [[t.neg[s].as4() for s in (0, 1)] for t in tables]
        )

    def mode_matrix(self, i: int, j: int | None = None) -> SparseOperator:
        """|i><j| on the mode factor."""
        m = self.lattice.size
        j = i if j is None else j
        out = np.zeros((m, m), dtype=np.complex128)
        out[i, j] = 1.0
        return sparse.asoperator(out)

    def embed(self, i: int, reg_op: SparseOperator) -> SparseOperator:
        return sparse.tensor_product(self.mode_matrix(i), reg_op)

    def parity(self) -> SparseOperator:
        """Single-oscillator grading sum_i w_i |p_i><p_i| x reg-parity = id x reg-parity."""
        return sparse.tensor_product(sparse.identity(self.lattice.size), self.register.parity)

    def identity(self) -> SparseOperator:
        return sparse.identity(self.dim)


def mode_projector(space: SingleOscillatorSpace, i: int) -> SparseOperator:
    """Central element I_{p_i} = |p_i><p_i| x id = (1/w_i) |i><i| x id."""
    w = space.lattice.weights[i]
    return sparse.prune(space.embed(i, space.register.identity) / w)


def mode_annihilator(space: SingleOscillatorSpace, i: int, spin: int, species: str) -> SparseOperator:
    """c_n(p_i, s) = |p_i><p_i| x c_s, normalized so {c, c'} = delta/w_i I_{p_i}."""
    w = space.lattice.weights[i]
    return sparse.prune(space.embed(i, space.register.ladder(species, spin)) / w)


def smeared_annihilator(space: SingleOscillatorSpace, f: np.ndarray, species: str) -> SparseOperator:
    """c_n(f) = sum_{i,s} w_i conj(f(p_i,s)) c_n(p_i,s); the weights cancel."""
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (space.lattice.size, 2):
        raise ShapeError(f"amplitude table must be ({space.lattice.size}, 2), got {f.shape}")
    out = sparse.zeros(space.dim)
    for i in range(space.lattice.size):
        for s in (0, 1):
            coeff = np.conj(f[i, s])
            if coeff != 0:
                out = out + coeff * space.embed(i, space.register.ladder(species, s))
    return sparse.prune(out)


def plane_wave_unitary(space: SingleOscillatorSpace, x: np.ndarray) -> SparseOperator:
    """Mode-diagonal W(x) with phases e^{-i p_i . x}; exactly unitary."""
    phases = np.array([np.exp(-1j * p.dot_point(x)) for p in space.lattice.points])
    return sparse.asoperator(np.diag(phases))


def field_operator(space: SingleOscillatorSpace, x: np.ndarray, alpha: int,
                   conjugate: bool = False) -> SparseOperator:
    """Component alpha of the field at spacetime point x, as a Fourier sum.

    Psi_alpha(x) = sum_i w_i sum_s [ phi_pos[s](p_i) c(p_i,s) e^{-i p.x}
                                     + phi_neg[s](p_i) c'(p_i,-s)^dag e^{+i p.x} ]
    with (c, c') = (b, d), swapped when conjugate is set.
    """
    if not 0 <= alpha < 4:
        raise ShapeError(f"bispinor component index must be 0..3, got {alpha}")
    ann_species, cre_species = ("d", "b") if conjugate else ("b", "d")
    out = sparse.zeros(space.dim)
    for i, p in enumerate(space.lattice.points):
        phase = np.exp(-1j * p.dot_point(x))
        for s in (0, 1):
            cpos = space.pos_table[i, s, alpha] * phase
            if cpos != 0:
                out = out + cpos * space.embed(i, space.register.ladder(ann_species, s))
            cneg = space.neg_table[i, s, alpha] * np.conj(phase)
            if cneg != 0:
                out = out + cneg * space.embed(
                    i, sparse.adjoint(space.register.ladder(cre_species, 1 - s))
                )
    return sparse.prune(out)


def field_operator_spectral(space: SingleOscillatorSpace, x: np.ndarray, alpha: int,
                            conjugate: bool = False) -> SparseOperator:
    """Same operator assembled from the diagonal W(x) and amplitude multipliers."""
    if not 0 <= alpha < 4:
        raise ShapeError(f"bispinor component index must be 0..3, got {alpha}")
    ann_species, cre_species = ("d", "b") if conjugate else ("b", "d")
    w = plane_wave_unitary(space, x)
    w_dag = sparse.adjoint(w)
    out = sparse.zeros(space.dim)
    for s in (0, 1):
        pos_mult = sparse.asoperator(np.diag(space.pos_table[:, s, alpha]))
        neg_mult = sparse.asoperator(np.diag(space.neg_table[:, s, alpha]))
        out = out + sparse.tensor_product(pos_mult @ w, space.register.ladder(ann_species, s))
        out = out + sparse.tensor_product(
            neg_mult @ w_dag, sparse.adjoint(space.register.ladder(cre_species, 1 - s))
        )
    return sparse.prune(out)


@dataclass(frozen=True)
class VacuumProfile:
    """Per-mode vacuum amplitude O_i, normalized to sum_i w_i |O_i|^2 = 1."""

    values: np.ndarray

    @property
    def z(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def _normalized_profile(lattice: MomentumLattice, raw: np.ndarray) -> VacuumProfile:
    raw = np.asarray(raw, dtype=np.complex128)
    if raw.shape != (lattice.size,):
        raise ShapeError(f"profile needs {lattice.size} values, got shape {raw.shape}")
    norm_sq = float(np.sum(lattice.weights * np.abs(raw) ** 2))
    if norm_sq == 0:
        raise DegenerateVacuumError("vacuum profile is identically zero")
    return VacuumProfile(values=raw / np.sqrt(norm_sq))


def uniform_profile(lattice: MomentumLattice) -> VacuumProfile:
    return _normalized_profile(lattice, np.ones(lattice.size))


def gaussian_profile(lattice: MomentumLattice, width: float = 1.0, center: float = 0.0) -> VacuumProfile:
    """Gaussian in rapidity (rapidity1d) or in |p| (grid3d)."""
    if width <= 0:
        raise ConfigError(f"profile width must be positive, got {width}")
    if lattice.mode == RAPIDITY_1D:
        xs = np.array([j * lattice.delta_eta for j in lattice.j_values])
    else:
        xs = np.array([np.linalg.norm(p.spatial()) for p in lattice.points])
    return _normalized_profile(lattice, np.exp(-((xs - center) ** 2) / (2 * width**2)))


def point_profile(lattice: MomentumLattice, index: int) -> VacuumProfile:
    raw = np.zeros(lattice.size)
    raw[index] = 1.0
    return _normalized_profile(lattice, raw)


def profile_from_values(lattice: MomentumLattice, values: np.ndarray) -> VacuumProfile:
    return _normalized_profile(lattice, values)


def vacuum_vector(space: SingleOscillatorSpace, profile: VacuumProfile) -> np.ndarray:
    """|O> = sum_i sqrt(w_i) O_i |i, register vacuum>."""
    v = np.zeros(space.dim, dtype=np.complex128)
    for i in range(space.lattice.size):
        v[i * REGISTER_DIM + reg_mod.VACUUM_INDEX] = (
            np.sqrt(space.lattice.weights[i]) * profile.values[i]
        )
    return v
