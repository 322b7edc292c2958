"""Poincare, gauge, and spin structure on the single-oscillator space.

Conventions fixed here:

* Noether generators carry lower Lorentz indices, so the four-momentum
  components are (E, -px, -py, -pz) per mode, and contraction with an
  upper-index displacement y gives y.p in the (+,-,-,-) signature.
* The finite translation exp(i y.P) is mode-diagonal with per-register
  phase exp(i theta_i (occ - 2)), occ the number of excited register
  factors; the -2 offset reproduces the unordered (non-normally-ordered)
  generator, which is what makes the vacuum pick up phases.
* Boosts along z act on rapidity lattices by an index shift j -> j + k
  composed with per-mode spin mixing; columns shifted off the lattice are
  dropped, so the unitary is an isometry only on the interior.

Everything here stays at the single-oscillator level (dimension 16 M);
the N-fold extension rules live in the oscillator module: unitaries
extend as tensor powers, generators as untwisted sums.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sparse
from .errors import ConfigError, PreconditionError
from .modes import (
    RAPIDITY_1D,
    MomentumLattice,
    SingleOscillatorSpace,
    VacuumProfile,
    field_operator,
    mode_annihilator,
    vacuum_vector,
)
from .register import (
    REGISTER_DIM,
    VACUUM_INDEX,
    number_operator,
    quadratic_exponential,
)
from .sparse import SparseOperator
from .spinors import (
    apply_lorentz_to_point,
    bispinor_rep,
    boost_z,
    mixing_generator,
    wigner_matrix,
)


def _lower_components(p) -> tuple[float, float, float, float]:
    return (p.E, -p.px, -p.py, -p.pz)


def _register_occupation(space: SingleOscillatorSpace) -> np.ndarray:
    """Diagonal of n_b + n_d on the register: excited-factor count per basis index."""
    reg = space.register
    total = number_operator(reg, "b") + number_operator(reg, "d")
    return np.real(total.diagonal()).round().astype(int)


def _register_charge(space: SingleOscillatorSpace) -> np.ndarray:
    """Diagonal of n_b - n_d on the register."""
    reg = space.register
    diff = number_operator(reg, "b") - number_operator(reg, "d")
    return np.real(diff.diagonal()).round().astype(int)


def four_momentum(space: SingleOscillatorSpace) -> list[SparseOperator]:
    """Lower-index components P_a = sum_i p_{i,a} |i><i| x (n_b + n_d - 2)."""
    reg = space.register
    base = (
        number_operator(reg, "b")
        + number_operator(reg, "d")
        - 2 * sparse.identity(REGISTER_DIM)
    )
    out = []
    for a in range(4):
        mat = sparse.zeros(space.dim)
        for i, p in enumerate(space.lattice.points):
            coeff = _lower_components(p)[a]
            if coeff != 0:
                mat = mat + coeff * space.embed(i, base)
        out.append(sparse.prune(mat))
    return out


def translation_unitary(space: SingleOscillatorSpace, y: np.ndarray) -> SparseOperator:
    """exp(i y.P), assembled directly from its diagonal phases."""
    y = np.asarray(y, dtype=float)
    if y.shape != (4,):
        raise ConfigError(f"displacement must be a 4-vector, got shape {y.shape}")
    thetas = np.array([p.dot_point(y) for p in space.lattice.points])
    occ = _register_occupation(space)
    phases = np.exp(1j * np.outer(thetas, occ - 2)).ravel()
    return sparse.asoperator(np.diag(phases))


@dataclass(frozen=True)
class BoostData:
    """z-boost on a rapidity lattice: shift by `steps` with spin mixing."""

    steps: int
    sl2c: np.ndarray          # 2x2 SL(2,C) element
    wigner: np.ndarray        # (modes, 2, 2) per-mode mixing matrices
    unitary: SparseOperator   # mixing times shift, boundary columns dropped


def boost_unitary(space: SingleOscillatorSpace, steps: int) -> BoostData:
    lattice = space.lattice
    if lattice.mode != RAPIDITY_1D:
        raise PreconditionError("boost steps are only defined on rapidity lattices")
    lam = boost_z(steps * lattice.delta_eta)
    wigner = np.array([wigner_matrix(lam, p) for p in lattice.points])
    mixer = sparse.zeros(space.dim)
    for j in range(lattice.size):
        mixer = mixer + space.embed(j, quadratic_exponential(mixing_generator(wigner[j])))
    shift = np.zeros((lattice.size, lattice.size))
    js = lattice.j_values
    for col, j in enumerate(js):
        if j + steps in js:
            shift[js.index(j + steps), col] = 1.0
    shift_op = sparse.tensor_product(sparse.asoperator(shift), sparse.identity(REGISTER_DIM))
    return BoostData(
        steps=steps,
        sl2c=lam,
        wigner=wigner,
        unitary=sparse.prune(mixer @ shift_op),
    )


def interior_projector(space: SingleOscillatorSpace, steps: int) -> SparseOperator:
    """Projector onto modes |j| <= J - |steps|, where boundary effects cannot reach."""
    lattice = space.lattice
    if lattice.mode != RAPIDITY_1D:
        raise PreconditionError("interior projector is only defined on rapidity lattices")
    j_max = max(lattice.j_values)
    keep = np.array([1.0 if abs(j) <= j_max - abs(steps) else 0.0 for j in lattice.j_values])
    return sparse.tensor_product(sparse.asoperator(np.diag(keep)), sparse.identity(REGISTER_DIM))


def poincare_unitary(space: SingleOscillatorSpace, boost: BoostData,
                     y: np.ndarray) -> SparseOperator:
    """U_{Lambda,y} = U_{1,y} U_{Lambda,0}."""
    return sparse.prune(translation_unitary(space, y) @ boost.unitary)


def boost_mode_residual(space: SingleOscillatorSpace, boost: BoostData) -> float:
    """Residual of U' c(p_j, s) U = sum_s' u_j[s,s'] c(p_{j-k}, s') over valid j."""
    lattice = space.lattice
    js = lattice.j_values
    k = boost.steps
    u = boost.unitary
    u_dag = sparse.adjoint(u)
    worst = 0.0
    for idx, j in enumerate(js):
        if j - k not in js:
            continue
        src = js.index(j - k)
        for species in ("b", "d"):
            for s in (0, 1):
                lhs = u_dag @ mode_annihilator(space, idx, s, species) @ u
                rhs = sparse.zeros(space.dim)
                for sp in (0, 1):
                    rhs = rhs + boost.wigner[idx][s, sp] * mode_annihilator(
                        space, src, sp, species
                    )
                worst = max(worst, sparse.max_abs(lhs - rhs))
    return worst


def grading_invariance_residual(space: SingleOscillatorSpace, boost: BoostData,
                                y: np.ndarray) -> float:
    """The grading commutes with Poincare maps away from the boundary."""
    u = poincare_unitary(space, boost, y)
    proj = interior_projector(space, boost.steps)
    parity = space.parity()
    diff = sparse.adjoint(u) @ parity @ u - parity
    return sparse.max_abs(proj @ diff @ proj)


def field_covariance_residual(space: SingleOscillatorSpace, boost: BoostData,
                              y: np.ndarray, x: np.ndarray,
                              conjugate: bool = False) -> float:
    """Residual of U' Psi_a(x) U = sum_b S[a,b] Psi_b(L^-1 (x - y)), interior part.

    S is the direct-sum bispinor action of the boost; both sides are
    compressed by the interior projector because modes within `steps` of
    the lattice edge are shifted off and carry no covariance statement.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    u = poincare_unitary(space, boost, y)
    u_dag = sparse.adjoint(u)
    proj = interior_projector(space, boost.steps)
    s4 = bispinor_rep(boost.sl2c)
    x_back = apply_lorentz_to_point(np.linalg.inv(boost.sl2c), x - y)
    fields_back = [field_operator(space, x_back, b, conjugate=conjugate) for b in range(4)]
    worst = 0.0
    for a in range(4):
        lhs = u_dag @ field_operator(space, x, a, conjugate=conjugate) @ u
        rhs = sparse.zeros(space.dim)
        for b in range(4):
            if s4[a, b] != 0:
                rhs = rhs + s4[a, b] * fields_back[b]
        worst = max(worst, sparse.max_abs(proj @ (lhs - rhs) @ proj))
    return worst


# ---------------------------------------------------------------------------
# internal symmetries


def charge_operator(space: SingleOscillatorSpace, e0: float = 1.0) -> SparseOperator:
    """Q = e0 sum_i |i><i| x (n_b - n_d + 2); the offset is central."""
    reg = space.register
    base = (
        number_operator(reg, "b")
        - number_operator(reg, "d")
        + 2 * sparse.identity(REGISTER_DIM)
    )
    return sparse.prune(
        e0 * sparse.tensor_product(sparse.identity(space.lattice.size), base)
    )


def gauge_unitary(space: SingleOscillatorSpace, e0: float, phi: float) -> SparseOperator:
    """exp(i phi Q), assembled from its diagonal."""
    charge = _register_charge(space)
    phases = np.exp(1j * phi * e0 * (charge + 2))
    full = np.tile(phases, space.lattice.size)
    return sparse.asoperator(np.diag(full))


@dataclass(frozen=True)
class GaugeReport:
    field_residual: float
    conjugate_residual: float
    grading_residual: float
    commutator_residual: float


def gauge_check(space: SingleOscillatorSpace, e0: float, phi: float,
                x: np.ndarray) -> GaugeReport:
    """Global phase rotations: field picks up e^{+i e0 phi}, conjugate the inverse.

    The commutator normalizations [Q, b'] = +e0 b' and [Q, d'] = -e0 d'
    fix the sign convention; the finite rotation follows from them.
    """
    u = gauge_unitary(space, e0, phi)
    u_dag = sparse.adjoint(u)
    field_res = 0.0
    conj_res = 0.0
    for a in range(4):
        psi = field_operator(space, x, a)
        rotated = u_dag @ psi @ u
        field_res = max(field_res, sparse.max_abs(rotated - np.exp(1j * e0 * phi) * psi))
        psi_c = field_operator(space, x, a, conjugate=True)
        rotated_c = u_dag @ psi_c @ u
        conj_res = max(conj_res, sparse.max_abs(rotated_c - np.exp(-1j * e0 * phi) * psi_c))
    parity = space.parity()
    grading_res = sparse.max_abs(u_dag @ parity @ u - parity)
    q = charge_operator(space, e0)
    comm_res = 0.0
    for i in range(space.lattice.size):
        for s in (0, 1):
            b_dag = sparse.adjoint(mode_annihilator(space, i, s, "b"))
            d_dag = sparse.adjoint(mode_annihilator(space, i, s, "d"))
            comm_res = max(comm_res, sparse.max_abs(sparse.commutator(q, b_dag) - e0 * b_dag))
            comm_res = max(comm_res, sparse.max_abs(sparse.commutator(q, d_dag) + e0 * d_dag))
    return GaugeReport(
        field_residual=field_res,
        conjugate_residual=conj_res,
        grading_residual=grading_res,
        commutator_residual=comm_res,
    )


def spin_operator(space: SingleOscillatorSpace) -> SparseOperator:
    """Third spin component: (1/2) sum over species of (n_plus - n_minus)."""
    reg = space.register
    base = sparse.zeros(REGISTER_DIM)
    for species in ("b", "d"):
        for s, sign in ((0, -1.0), (1, 1.0)):
            ladder = reg.ladder(species, s)
            base = base + sign * (sparse.adjoint(ladder) @ ladder)
    return sparse.prune(
        0.5 * sparse.tensor_product(sparse.identity(space.lattice.size), base)
    )


def spin_commutator_residual(space: SingleOscillatorSpace) -> float:
    """Residual of [S3, c_s'] = (+-1/2) c_s' for both species and spins."""
    s3 = spin_operator(space)
    worst = 0.0
    for i in range(space.lattice.size):
        for species in ("b", "d"):
            for s, sign in ((0, -0.5), (1, 0.5)):
                c_dag = sparse.adjoint(mode_annihilator(space, i, s, species))
                worst = max(
                    worst, sparse.max_abs(sparse.commutator(s3, c_dag) - sign * c_dag)
                )
    return worst


# ---------------------------------------------------------------------------
# vacuum behavior


@dataclass(frozen=True)
class VacuumCovarianceReport:
    residual: float
    phase_removed_residual: float
    norm_deficit: float
    expected_deficit: float


def vacuum_covariance_report(space: SingleOscillatorSpace, profile: VacuumProfile,
                             boost: BoostData, y: np.ndarray) -> VacuumCovarianceReport:
    """Poincare maps send the vacuum to a vacuum with transported profile.

    U_{Lambda,y}|O> carries per-mode phases e^{-2 i y.p_j} and the shifted
    profile O(Lambda^-1 p_j); the phases are removable by a mode-diagonal
    central unitary, after which only the profile shift remains.  Modes
    shifted off the lattice edge are lost, which shows up as a norm
    deficit equal to the dropped profile weight.
    """
    y = np.asarray(y, dtype=float)
    lattice = space.lattice
    js = lattice.j_values
    k = boost.steps
    vac = vacuum_vector(space, profile)
    moved = sparse.apply_operator(poincare_unitary(space, boost, y), vac)

    predicted = np.zeros(space.dim, dtype=np.complex128)
    shifted_raw = np.zeros(lattice.size, dtype=np.complex128)
    for idx, j in enumerate(js):
        if j - k not in js:
            continue
        src = js.index(j - k)
        theta = lattice.points[idx].dot_point(y)
        amp = np.sqrt(lattice.weights[idx]) * profile.values[src]
        shifted_raw[idx] = profile.values[src]
        predicted[idx * REGISTER_DIM + VACUUM_INDEX] = amp * np.exp(-2j * theta)
    residual = float(np.max(np.abs(moved - predicted)))

    thetas = np.array([p.dot_point(y) for p in lattice.points])
    unphased = np.repeat(np.exp(2j * thetas), REGISTER_DIM) * moved
    plain = np.zeros(space.dim, dtype=np.complex128)
    for idx in range(lattice.size):
        plain[idx * REGISTER_DIM + VACUUM_INDEX] = (
            np.sqrt(lattice.weights[idx]) * shifted_raw[idx]
        )
    phase_removed_residual = float(np.max(np.abs(unphased - plain)))

    norm_deficit = 1.0 - float(np.vdot(moved, moved).real)
    dropped = [
        idx for idx, j in enumerate(js) if j + k not in js
    ]
    expected_deficit = float(
        sum(lattice.weights[idx] * profile.z[idx] for idx in dropped)
    )
    return VacuumCovarianceReport(
        residual=residual,
        phase_removed_residual=phase_removed_residual,
        norm_deficit=norm_deficit,
        expected_deficit=expected_deficit,
    )


@dataclass(frozen=True)
class BosonSector:
    """External scalar-sector data entering the vacuum energy balance.

    Z values play the same role as the fermionic profile weight |O|^2 and
    must be a normalized probability against the weights.
    """

    weights: np.ndarray
    omegas: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        om = np.asarray(self.omegas, dtype=float)
        z = np.asarray(self.z, dtype=float)
        if not (w.shape == om.shape == z.shape) or w.ndim != 1 or w.size == 0:
            raise ConfigError("boson sector needs matching 1-d weights, omegas, z")
        if np.any(w <= 0) or np.any(om < 0) or np.any(z < 0):
            raise ConfigError("boson sector needs positive weights, nonnegative omegas and z")
        if abs(float(np.sum(w * z)) - 1.0) > 1e-9:
            raise ConfigError("boson Z must be normalized: sum w z = 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "z", z)


def fermion_vacuum_energy(lattice: MomentumLattice, profile: VacuumProfile,
                          n_species: int = 1) -> float:
    """-2 N_F sum_i w_i E_i Z_i, the unordered Dirac-sea contribution."""
    if n_species < 0:
        raise ConfigError(f"species count must be nonnegative, got {n_species}")
    energies = np.array([p.E for p in lattice.points])
    return -2.0 * n_species * float(np.sum(lattice.weights * energies * profile.z))


def boson_vacuum_energy(sector: BosonSector, n_species: int) -> float:
    if n_species < 0:
        raise ConfigError(f"species count must be nonnegative, got {n_species}")
    return float(n_species * np.sum(sector.weights * sector.omegas * sector.z))


def vacuum_energy(lattice: MomentumLattice, profile: VacuumProfile,
                  n_fermion: int, n_boson: int = 0,
                  boson: BosonSector | None = None) -> float:
    """Total zero-point balance N_B sum w omega Z_B - 2 N_F sum w E Z_F."""
    total = fermion_vacuum_energy(lattice, profile, n_fermion)
    if n_boson:
        if boson is None:
            raise ConfigError("nonzero boson species count needs a boson sector")
        total += boson_vacuum_energy(boson, n_boson)
    return total


def balanced_boson_sector(lattice: MomentumLattice, profile: VacuumProfile,
                          n_fermion: int, n_boson: int) -> BosonSector:
    """Single-line boson sector tuned so the total vacuum energy vanishes."""
    if n_boson <= 0:
        raise ConfigError(f"need a positive boson species count, got {n_boson}")
    deficit = -fermion_vacuum_energy(lattice, profile, n_fermion)
    omega = deficit / n_boson
    if omega < 0:
        raise ConfigError("fermionic vacuum energy must be negative to balance")
    return BosonSector(weights=np.array([1.0]), omegas=np.array([omega]), z=np.array([1.0]))


def vacuum_energy_expectation(space: SingleOscillatorSpace, profile: VacuumProfile,
                              n: int) -> float:
    """<vac_N| extended P_0 |vac_N> via explicit matrices (small N only)."""
    from .noscillator import NRegister, extend_additive, vacuum_state

    nreg = NRegister(space, n)
    p0 = four_momentum(space)[0]
    big = extend_additive(nreg, p0)
    vac = vacuum_state(nreg, profile)
    return float(sparse.inner(vac, sparse.apply_operator(big, vac)).real)
