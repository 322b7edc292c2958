"""N-fold oscillator extension of the single-oscillator CAR representation.

An extended annihilator is the twisted symmetric sum

    ext(a) = (1/sqrt N) sum_k  g^(k-1) x a x id^(N-k)

with g the single-oscillator grading (parity).  The twist makes operators
in different slots anticommute, so the extension preserves the CAR with a
central right-hand side.  Noether generators extend as plain (untwisted)
sums, central elements as untwisted means, unitaries as tensor powers.

Two evaluation paths for vacuum matrix elements of smeared operator
products:

* explicit matrices, capped at total dimension (16 M)^N <= 2^20;
* an occupancy-pattern walk that never forms the N-fold space.  The walk
  tracks, per product vacuum, the multiset of slots whose local state has
  been modified, exploiting that all slots are exchangeable.  It is exact
  up to rounding for any N, and on one-mode lattices it can run in exact
  rational arithmetic (every amplitude float is a dyadic rational), which
  matters because there the finite-N matrix element equals the limiting
  determinant identically and float noise would otherwise mask the
  equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

import numpy as np

from . import sparse
from .errors import (
    ConfigError,
    PreconditionError,
    ResourceLimitError,
    ShapeError,
    SizeCapError,
)
from .modes import (
    MomentumLattice,
    SingleOscillatorSpace,
    VacuumProfile,
    smeared_annihilator,
    vacuum_vector,
)
from .register import REGISTER_DIM, VACUUM_INDEX, build_register
from .sparse import MAX_DIM, SparseOperator

STATE_PATH_MAX_N = 64
STATE_PATH_MAX_MODES = 2
MAX_PRODUCT_OPS = 8
MAX_SLATER_ORDER = 8
PATTERN_CAP = 500_000


@dataclass(frozen=True)
class NRegister:
    space: SingleOscillatorSpace
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ConfigError(f"oscillator count must be >= 1, got {self.n}")

    @property
    def factor_dim(self) -> int:
        return self.space.dim

    @property
    def dim(self) -> int:
        return self.factor_dim**self.n


def _check_matrix_dim(nreg: NRegister) -> None:
    if nreg.dim > MAX_DIM:
        raise SizeCapError(
            f"(16 M)^N = {nreg.dim} exceeds cap {MAX_DIM}; use the state-level path"
        )


def extend_operator(nreg: NRegister, op: SparseOperator,
                    twist: SparseOperator | None = None) -> SparseOperator:
    """(1/sqrt N) sum over slots of twist^(k-1) x op x id^(N-k)."""
    _check_matrix_dim(nreg)
    if op.shape != (nreg.factor_dim, nreg.factor_dim):
        raise ShapeError(f"operator must live on the single-oscillator space, got {op.shape}")
    if twist is None:
        twist = nreg.space.parity()
    ident = sparse.identity(nreg.factor_dim)
    total = sparse.zeros(nreg.dim)
    for k in range(nreg.n):
        factors = [twist] * k + [op] + [ident] * (nreg.n - k - 1)
        total = total + sparse.tensor_many(*factors)
    return sparse.prune(total / np.sqrt(nreg.n))


def extend_additive(nreg: NRegister, op: SparseOperator, mean: bool = False) -> SparseOperator:
    """Untwisted sum over slots; with mean=True, divided by N (central elements)."""
    _check_matrix_dim(nreg)
    ident = sparse.identity(nreg.factor_dim)
    total = sparse.zeros(nreg.dim)
    for k in range(nreg.n):
        factors = [ident] * k + [op] + [ident] * (nreg.n - k - 1)
        total = total + sparse.tensor_many(*factors)
    if mean:
        total = total / nreg.n
    return sparse.prune(total)


def extend_unitary(nreg: NRegister, u: SparseOperator) -> SparseOperator:
    """u acting on every slot: the N-fold tensor power."""
    _check_matrix_dim(nreg)
    return sparse.tensor_many(*([u] * nreg.n))


def vacuum_state(nreg: NRegister, profile: VacuumProfile) -> np.ndarray:
    _check_matrix_dim(nreg)
    factor = vacuum_vector(nreg.space, profile)
    out = np.array([1.0 + 0j])
    for _ in range(nreg.n):
        out = np.kron(out, factor)
    return out


class OpSpec(NamedTuple):
    """One smeared factor in an operator product."""

    amplitude: np.ndarray  # (modes, 2) complex table
    species: str           # "b" or "d"
    dagger: bool


def smeared_matrix(space: SingleOscillatorSpace, spec: OpSpec) -> SparseOperator:
    mat = smeared_annihilator(space, spec.amplitude, spec.species)
    return sparse.adjoint(mat) if spec.dagger else mat


def vacuum_matrix_element_matrix(nreg: NRegister, profile: VacuumProfile,
                                 ops: list[OpSpec]) -> complex:
    """Matrix-path evaluation of <vac_N| op_1 ... op_k |vac_N> (small N only)."""
    _check_matrix_dim(nreg)
    vac = vacuum_state(nreg, profile)
    ket = vac
    for spec in reversed(ops):
        mat = extend_operator(nreg, smeared_matrix(nreg.space, spec))
        ket = sparse.apply_operator(mat, ket)
    return sparse.inner(vac, ket)


def zprod_inner(lattice: MomentumLattice, profile: VacuumProfile,
                f: np.ndarray, g: np.ndarray) -> complex:
    """Z-weighted one-particle scalar product sum_{i,s} w_i Z_i conj(f) g."""
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    if f.shape != (lattice.size, 2) or g.shape != (lattice.size, 2):
        raise ShapeError(f"amplitude tables must be ({lattice.size}, 2)")
    wz = lattice.weights * profile.z
    return complex(np.sum(wz[:, None] * np.conj(f) * g))


def gram_matrix(lattice: MomentumLattice, profile: VacuumProfile,
                fs: list[np.ndarray], gs: list[np.ndarray]) -> np.ndarray:
    if len(fs) != len(gs):
        raise ShapeError(f"need equal list lengths, got {len(fs)} and {len(gs)}")
    m = len(fs)
    out = np.zeros((m, m), dtype=np.complex128)
    for k in range(m):
        for j in range(m):
            out[k, j] = zprod_inner(lattice, profile, fs[k], gs[j])
    return out


def _perm_sign(sigma: tuple[int, ...]) -> int:
    sign = 1
    for a in range(len(sigma)):
        for b in range(a + 1, len(sigma)):
            if sigma[a] > sigma[b]:
                sign = -sign
    return sign


def slater_limit(lattice: MomentumLattice, profile: VacuumProfile,
                 fs: list[np.ndarray], gs: list[np.ndarray]) -> complex:
    """Signed permutation sum over Z-products, i.e. det of the Gram matrix."""
    if len(fs) != len(gs):
        raise ShapeError(f"need equal list lengths, got {len(fs)} and {len(gs)}")
    m = len(fs)
    if not 1 <= m <= MAX_SLATER_ORDER:
        raise PreconditionError(f"permutation sum limited to order {MAX_SLATER_ORDER}")
    gram = gram_matrix(lattice, profile, fs, gs)
    total = 0.0 + 0j
    for sigma in permutations(range(m)):
        term = complex(_perm_sign(sigma))
        for k in range(m):
            term *= gram[k, sigma[k]]
        total += term
    return total


# ---------------------------------------------------------------------------
# occupancy-pattern walk


class _ExactComplex:
    """Complex number over exact rationals; floats convert losslessly."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other):
        return _ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return _ExactComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, int):
            return _ExactComplex(self.re * other, self.im * other)
        return _ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return _ExactComplex(-self.re, -self.im)

    def conjugate(self):
        return _ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def div_int(self, n: int) -> "_ExactComplex":
        return _ExactComplex(self.re / n, self.im / n)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def magnitude(self) -> float:
        return math.hypot(float(self.re), float(self.im))


def _lift_exact(z: complex) -> _ExactComplex:
    return _ExactComplex(Fraction(float(np.real(z))), Fraction(float(np.imag(z))))


def _column_map(mat: SparseOperator) -> dict[int, tuple[int, int]]:
    """{col: (row, sign)} for a matrix with at most one +-1 entry per column."""
    dense = mat.toarray()
    out = {}
    for col in range(dense.shape[1]):
        rows = np.nonzero(dense[:, col])[0]
        if len(rows) == 0:
            continue
        row = int(rows[0])
        out[col] = (row, int(round(dense[row, col].real)))
    return out


def _build_ladder_maps():
    reg = build_register()
    maps = {}
    for species in ("b", "d"):
        for spin in (0, 1):
            mat = reg.ladder(species, spin)
            maps[(species, spin, False)] = _column_map(mat)
            maps[(species, spin, True)] = _column_map(sparse.adjoint(mat))
    parity = {r: (r, int(round(reg.parity[r, r].real))) for r in range(REGISTER_DIM)}
    return maps, parity


_LADDER_MAPS, _PARITY_MAP = _build_ladder_maps()


def _validate_state_path(nreg: NRegister, ops: list[OpSpec]) -> None:
    modes = nreg.space.lattice.size
    if nreg.n > STATE_PATH_MAX_N:
        raise ResourceLimitError(f"state path capped at N = {STATE_PATH_MAX_N}; reduce N")
    if modes > STATE_PATH_MAX_MODES:
        raise ResourceLimitError(
            f"state path capped at {STATE_PATH_MAX_MODES} lattice modes; reduce the lattice"
        )
    if len(ops) > MAX_PRODUCT_OPS:
        raise PreconditionError(f"operator products capped at {MAX_PRODUCT_OPS} factors")
    for spec in ops:
        amp = np.asarray(spec.amplitude)
        if amp.shape != (modes, 2):
            raise ShapeError(f"amplitude table must be ({modes}, 2), got {amp.shape}")
        if spec.species not in ("b", "d"):
            raise ShapeError(f"species must be 'b' or 'd', got {spec.species!r}")


def _state_walk(nreg: NRegister, profile: VacuumProfile | None,
                ops: list[OpSpec], exact: bool):
    """Core pattern walk; returns complex, or _ExactComplex when exact."""
    _validate_state_path(nreg, ops)
    lattice = nreg.space.lattice
    modes = lattice.size
    n = nreg.n

    if exact:
        if modes != 1:
            raise PreconditionError("exact rational path requires a one-mode lattice")
        zero, one = _ExactComplex(0), _ExactComplex(1)
        lift = _lift_exact
        # sqrt(w) O is a pure phase by normalization and cancels between bra
        # and ket, so the per-factor vacuum coefficient is fixed to 1
        root_coeff = [one]
    else:
        if profile is None:
            raise PreconditionError("float path needs a vacuum profile")
        zero, one = 0.0 + 0j, 1.0 + 0j
        lift = complex
        root_coeff = [
            complex(np.sqrt(lattice.weights[i]) * profile.values[i]) for i in range(modes)
        ]

    def is_zero(x) -> bool:
        return x.is_zero() if exact else (x == 0)

    # per op: coefficient tables coeffs[i][s] and register column maps per spin
    op_table = []
    for spec in ops:
        amp = np.asarray(spec.amplitude, dtype=np.complex128)
        coeffs = [
            [lift(amp[i, s]) if spec.dagger else lift(np.conj(amp[i, s])) for s in (0, 1)]
            for i in range(modes)
        ]
        maps = tuple(_LADDER_MAPS[(spec.species, s, spec.dagger)] for s in (0, 1))
        op_table.append((coeffs, maps))

    # local states: sparse {(mode, register_index): amplitude}; id 0 is the
    # per-slot vacuum factor
    root = {(i, VACUUM_INDEX): root_coeff[i] for i in range(modes)}
    states: list[dict] = [root]
    children: dict[tuple, int | None] = {}

    def apply_label(state_id: int, label) -> int | None:
        key = (state_id, label)
        if key in children:
            return children[key]
        vec = states[state_id]
        out: dict = {}
        if label == "twist":
            for (i, r), val in vec.items():
                row, sign = _PARITY_MAP[r]
                out[(i, row)] = val * sign
        else:
            coeffs, maps = op_table[label]
            for (i, r), val in vec.items():
                for s in (0, 1):
                    hit = maps[s].get(r)
                    if hit is None:
                        continue
                    row, sign = hit
                    term = coeffs[i][s] * sign * val
                    acc = out.get((i, row))
                    acc = term if acc is None else acc + term
                    if is_zero(acc):
                        out.pop((i, row), None)
                    else:
                        out[(i, row)] = acc
        if not out:
            children[key] = None
            return None
        states.append(out)
        new_id = len(states) - 1
        children[key] = new_id
        if label == "twist":
            children[(new_id, "twist")] = state_id  # twist is an involution
        return new_id

    def twist_prefix(key: tuple, t: int) -> list | None:
        twisted = []
        for sid in key[:t]:
            tw = apply_label(sid, "twist")
            if tw is None:
                return None
            twisted.append(tw)
        return twisted

    patterns: dict[tuple, object] = {(): one}
    for op_index in reversed(range(len(ops))):
        next_patterns: dict[tuple, object] = {}

        def accumulate(key, value):
            acc = next_patterns.get(key)
            acc = value if acc is None else acc + value
            if is_zero(acc):
                next_patterns.pop(key, None)
            else:
                next_patterns[key] = acc

        for key, amp in patterns.items():
            count = len(key)
            fresh = apply_label(0, op_index)
            for t in range(count + 1):
                # act on an untouched slot inserted at position t
                if fresh is None:
                    break
                twisted = twist_prefix(key, t)
                if twisted is None:
                    continue
                accumulate(tuple(twisted) + (fresh,) + key[t:], amp)
            for t in range(count):
                # act on the already-modified slot at position t
                new_id = apply_label(key[t], op_index)
                if new_id is None:
                    continue
                twisted = twist_prefix(key, t)
                if twisted is None:
                    continue
                accumulate(tuple(twisted) + (new_id,) + key[t + 1:], amp)
        patterns = next_patterns
        if len(patterns) > PATTERN_CAP or len(states) > PATTERN_CAP:
            raise ResourceLimitError(
                "state path exceeded the pattern budget; reduce the order M or the copy number N"
            )

    def contract_with_root(state_id: int):
        vec = states[state_id]
        total = zero
        for i in range(modes):
            val = vec.get((i, VACUUM_INDEX))
            if val is None:
                continue
            if exact:
                total = total + root_coeff[i].conjugate() * val
            else:
                total = total + np.conj(root_coeff[i]) * val
        return total

    total = zero
    for key, amp in patterns.items():
        count = len(key)
        if count > n:
            continue  # more modified slots than available factors
        term = amp * math.comb(n, count)
        for sid in key:
            if is_zero(term):
                break
            term = term * contract_with_root(sid)
        total = total + term

    # deferred 1/sqrt(N) normalizations, one per operator factor
    nops = len(ops)
    half, odd = divmod(nops, 2)
    if exact:
        if odd and not total.is_zero():
            # register parity forces odd products to vanish on the vacuum
            raise PreconditionError("odd operator product gave a nonzero exact value")
        return total.div_int(n**half) if half else total
    scale = 1.0 / n**half
    if odd:
        scale /= math.sqrt(n)
    return total * scale


def vacuum_matrix_element(nreg: NRegister, profile: VacuumProfile,
                          ops: list[OpSpec], exact: bool = False) -> complex:
    """<vac_N| product of smeared extended operators |vac_N>, written left to right.

    State-level evaluation: the product vacuum is exchange-symmetric, so a
    partially applied state is a combination of "patterns", multisets of
    modified per-slot local states with an amplitude each.  Applying one
    extended operator branches every pattern into (insert at a fresh slot,
    grading applied to all slots left of it) and (update a modified slot,
    ditto); the 1/sqrt(N) normalizations are deferred and applied once at
    the end.  Local states are memoized, so cost is independent of N.
    """
    value = _state_walk(nreg, profile, ops, exact)
    return value.to_complex() if exact else complex(value)


def _gram_exact(fs: list[np.ndarray], gs: list[np.ndarray]) -> list[list[_ExactComplex]]:
    """Gram matrix on a normalized one-mode lattice, where w Z = 1 exactly."""
    m = len(fs)
    out = []
    for k in range(m):
        row = []
        fk = np.asarray(fs[k], dtype=np.complex128)
        for j in range(m):
            gj = np.asarray(gs[j], dtype=np.complex128)
            acc = _ExactComplex(0)
            for s in (0, 1):
                acc = acc + _lift_exact(fk[0, s]).conjugate() * _lift_exact(gj[0, s])
            row.append(acc)
        out.append(row)
    return out


def _slater_exact(fs: list[np.ndarray], gs: list[np.ndarray]) -> _ExactComplex:
    m = len(fs)
    gram = _gram_exact(fs, gs)
    total = _ExactComplex(0)
    for sigma in permutations(range(m)):
        term = _ExactComplex(_perm_sign(sigma))
        for k in range(m):
            term = term * gram[k][sigma[k]]
        total = total + term
    return total


def overlap_product_ops(fs: list[np.ndarray], gs: list[np.ndarray],
                         species: str = "b") -> list[OpSpec]:
    """Operator product whose vacuum expectation converges to det(Gram).

    Annihilators are applied in reversed index order against the creators,
    pairing f_k with g_k without a residual permutation sign.
    """
    if len(fs) != len(gs):
        raise ShapeError(f"need equal list lengths, got {len(fs)} and {len(gs)}")
    ann = [OpSpec(np.asarray(fs[k]), species, False) for k in reversed(range(len(fs)))]
    cre = [OpSpec(np.asarray(gs[k]), species, True) for k in range(len(gs))]
    return ann + cre


@dataclass(frozen=True)
class ConvergenceRecord:
    m: int
    n: int
    lhs: complex
    limit: complex
    deviation: float


@dataclass(frozen=True)
class ConvergenceReport:
    m: int
    limit: complex
    records: tuple[ConvergenceRecord, ...]
    monotone: bool
    final_ratio: float | None
    decay_ok: bool
    exact: bool

    def deviations(self) -> list[float]:
        return [r.deviation for r in self.records]


DECAY_CONSTANT = 4.0


def determinant_limit_convergence(space: SingleOscillatorSpace, profile: VacuumProfile,
                         fs: list[np.ndarray], gs: list[np.ndarray],
                         n_list: list[int], exact: bool | None = None) -> ConvergenceReport:
    """Finite-N matrix elements against the determinant limit, per N.

    On one-mode lattices the evaluation runs in exact rational arithmetic
    (both the matrix element and the determinant): there the central term
    is a scalar, the smeared operators satisfy the canonical relations on
    the nose, and the two sides coincide identically at every finite N, so
    float noise would otherwise produce spurious non-monotone deviation
    sequences.
    """
    if len(fs) != len(gs):
        raise ShapeError(f"need equal list lengths, got {len(fs)} and {len(gs)}")
    m = len(fs)
    if not 1 <= m <= 4:
        raise PreconditionError(f"convergence reports limited to order 1..4, got {m}")
    if list(n_list) != sorted(n_list) or len(n_list) == 0 or n_list[0] < 1:
        raise ConfigError("n_list must be a nonempty ascending list of positive integers")
    lattice = space.lattice
    if exact is None:
        exact = lattice.size == 1
    ops = overlap_product_ops(fs, gs)

    if exact:
        limit_value = _slater_exact(fs, gs)
        limit = limit_value.to_complex()
    else:
        limit = slater_limit(lattice, profile, fs, gs)

    records = []
    for n in n_list:
        nreg = NRegister(space, n)
        if exact:
            lhs_value = _state_walk(nreg, None, ops, exact=True)
            deviation = (lhs_value - limit_value).magnitude()
            lhs = lhs_value.to_complex()
        else:
            lhs = vacuum_matrix_element(nreg, profile, ops)
            deviation = abs(lhs - limit)
        records.append(ConvergenceRecord(m=m, n=n, lhs=lhs, limit=limit, deviation=deviation))

    devs = [r.deviation for r in records]
    monotone = all(devs[i + 1] <= devs[i] for i in range(len(devs) - 1))
    final_ratio = devs[-1] / devs[0] if devs[0] != 0 else None
    decay_ok = devs[-1] <= DECAY_CONSTANT / n_list[-1] * devs[0]
    return ConvergenceReport(
        m=m,
        limit=limit,
        records=tuple(records),
        monotone=monotone,
        final_ratio=final_ratio,
        decay_ok=decay_ok,
        exact=exact,
    )
