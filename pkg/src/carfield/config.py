"""Run configuration: plain dataclasses with strict JSON round-tripping."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .errors import ConfigError
from .modes import (
    GRID_3D,
    RAPIDITY_1D,
    MomentumLattice,
    VacuumProfile,
    build_lattice,
    gaussian_profile,
    point_profile,
    uniform_profile,
)

PROFILE_KINDS = ("uniform", "gaussian", "point")


@dataclass(frozen=True)
class LatticeConfig:
    mode: str = RAPIDITY_1D
    m: float = 1.0
    j_max: int = 6
    delta_eta: float = 0.4
    grid_n: int = 2
    grid_spacing: float = 1.0

    def __post_init__(self):
        if self.mode not in (RAPIDITY_1D, GRID_3D):
            raise ConfigError(f"lattice mode must be one of {RAPIDITY_1D!r}, {GRID_3D!r}")
        if self.m <= 0:
            raise ConfigError(f"mass must be positive, got {self.m}")

    def build(self) -> MomentumLattice:
        return build_lattice(
            self.mode,
            self.m,
            j_max=self.j_max,
            delta_eta=self.delta_eta,
            grid_n=self.grid_n,
            grid_spacing=self.grid_spacing,
        )


@dataclass(frozen=True)
class ProfileConfig:
    kind: str = "gaussian"
    width: float = 1.0
    center: float = 0.0
    index: int = 0

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ConfigError(f"profile kind must be one of {PROFILE_KINDS}")
        if self.width <= 0:
            raise ConfigError(f"profile width must be positive, got {self.width}")

    def build(self, lattice: MomentumLattice) -> VacuumProfile:
        if self.kind == "uniform":
            return uniform_profile(lattice)
        if self.kind == "gaussian":
            return gaussian_profile(lattice, width=self.width, center=self.center)
        return point_profile(lattice, self.index)


@dataclass(frozen=True)
class RunConfig:
    lattice: LatticeConfig = field(default_factory=LatticeConfig)
    profile: ProfileConfig = field(default_factory=ProfileConfig)
    seed: int = 7
    e0: float = 1.0
    boost_steps: int = 1
    displacement: tuple[float, float, float, float] = (0.3, 0.05, -0.1, 0.2)
    field_point: tuple[float, float, float, float] = (0.15, -0.3, 0.2, 0.4)
    n_values_single: tuple[int, ...] = (2, 4, 8, 16, 32, 64)
    n_values_double: tuple[int, ...] = (2, 4, 8)
    matrix_check_n: int = 2

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if self.boost_steps == 0:
            raise ConfigError("boost steps must be nonzero")
        for name in ("displacement", "field_point"):
            value = tuple(getattr(self, name))
            if len(value) != 4:
                raise ConfigError(f"{name} must be a 4-vector, got {value}")
            object.__setattr__(self, name, tuple(float(v) for v in value))
        for name in ("n_values_single", "n_values_double"):
            value = tuple(int(v) for v in getattr(self, name))
            if len(value) == 0 or value[0] < 1 or list(value) != sorted(value):
                raise ConfigError(f"{name} must be ascending positive integers, got {value}")
            object.__setattr__(self, name, value)
        if self.matrix_check_n < 1:
            raise ConfigError(f"matrix_check_n must be >= 1, got {self.matrix_check_n}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["displacement"] = list(self.displacement)
        out["field_point"] = list(self.field_point)
        out["n_values_single"] = list(self.n_values_single)
        out["n_values_double"] = list(self.n_values_double)
        return out


def _from_mapping(cls, data: dict, where: str):
    allowed = {f.name for f in fields(cls)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")
    return cls(**data)


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config must be a mapping, got {type(data).__name__}")
    data = dict(data)
    lattice = _from_mapping(LatticeConfig, dict(data.pop("lattice", {})), "lattice")
    profile = _from_mapping(ProfileConfig, dict(data.pop("profile", {})), "profile")
    for name in ("displacement", "field_point", "n_values_single", "n_values_double"):
        if name in data:
            data[name] = tuple(data[name])
    allowed = {f.name for f in fields(RunConfig)} - {"lattice", "profile"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return RunConfig(lattice=lattice, profile=profile, **data)


def load_config(path: str | Path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def default_config() -> RunConfig:
    return RunConfig()
