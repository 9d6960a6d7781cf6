"""Scenario configuration: flat key/value sections, SI units in files.

An empty file (or a missing --config flag) yields the full default
scenario: a K impurity in a Rb gas with n01 = 7 um^-1, a3 = 100 a0 and
transverse trapping at 2 pi x 34 kHz.  Unknown sections or keys are
rejected; every value is validated field by field.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, fields

from .constants import BOHR_RADIUS
from .params import CondensateParams, ImpurityParams


class ConfigError(ValueError):
    """Configuration file problem, with section/key context."""


@dataclass(frozen=True)
class RunConfig:
    """Run block: grids, tolerances, initial variances, output location."""

    dimensions: tuple[int, ...] = (1, 2, 3)
    temperature_K: float = 0.0
    t_max_omega0: float = 200.0
    t_points: int = 200
    t_spacing: str = "lin"          # lin | log
    eta_min: float = 0.05
    eta_max: float = 10.0
    eta_points: int = 400
    T_scaled_min: float = 0.1
    T_scaled_max: float = 10.0
    T_points: int = 25
    gamma_over_omega: float = 10.0
    x2_0_m2: float = 0.0
    v2_0_m2_s2: float = 0.0
    horizon_periods: float = 20.0
    rel_tolerance: float = 1e-8
    out_dir: str = "out"

    def __post_init__(self) -> None:
        if not self.dimensions or any(d not in (1, 2, 3) for d in self.dimensions):
            raise ConfigError(f"run.dimensions must be a subset of 1,2,3, got {self.dimensions!r}")
        if self.temperature_K < 0:
            raise ConfigError("run.temperature_K must be >= 0")
        if self.t_max_omega0 <= 0 or self.t_points < 2:
            raise ConfigError("run time grid needs t_max_omega0 > 0 and t_points >= 2")
        if self.t_spacing not in ("lin", "log"):
            raise ConfigError(f"run.t_spacing must be 'lin' or 'log', got {self.t_spacing!r}")
        if not (0 <= self.eta_min < self.eta_max) or self.eta_points < 2:
            raise ConfigError("run eta grid needs 0 <= eta_min < eta_max and eta_points >= 2")
        if not (0 <= self.T_scaled_min < self.T_scaled_max) or self.T_points < 2:
            raise ConfigError("run temperature grid needs 0 <= T_scaled_min < T_scaled_max")
        if self.gamma_over_omega <= 0:
            raise ConfigError("run.gamma_over_omega must be > 0")
        if self.x2_0_m2 < 0 or self.v2_0_m2_s2 < 0:
            raise ConfigError("initial variances must be >= 0")
        if self.horizon_periods <= 0:
            raise ConfigError("run.horizon_periods must be > 0")
        if self.rel_tolerance <= 0:
            raise ConfigError("run.rel_tolerance must be > 0")


@dataclass(frozen=True)
class ScenarioConfig:
    condensate: CondensateParams
    impurity: ImpurityParams
    run: RunConfig


DEFAULT_CONDENSATE = CondensateParams(
    m_B=1.4192261e-25,
    a3=100.0 * BOHR_RADIUS,
    n01=7e6,
    omega_perp=2.0 * math.pi * 34e3,
    omega_z=2.0 * math.pi * 34e3,
)

DEFAULT_IMPURITY = ImpurityParams(m_I=6.4924249e-26, Omega=0.0, eta=1.0)


def default_config() -> ScenarioConfig:
    return ScenarioConfig(condensate=DEFAULT_CONDENSATE,
                          impurity=DEFAULT_IMPURITY,
                          run=RunConfig())


_CONDENSATE_KEYS = {
    "m_B_kg": "m_B",
    "a3_m": "a3",
    "n01_per_m": "n01",
    "omega_perp_rad_s": "omega_perp",
    "omega_z_rad_s": "omega_z",
}
_IMPURITY_KEYS = {
    "m_I_kg": "m_I",
    "omega_rad_s": "Omega",
    "eta": "eta",
}
_RUN_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _parse_float(section: str, key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] {key}: not a number: {raw!r}") from exc


def _parse_dimensions(raw: str) -> tuple[int, ...]:
    if raw.strip().lower() == "all":
        return (1, 2, 3)
    try:
        dims = tuple(int(part) for part in raw.replace(" ", "").split(",") if part)
    except ValueError as exc:
        raise ConfigError(f"[run] dimensions: expected integers, got {raw!r}") from exc
    return dims


def load_config(path: str) -> ScenarioConfig:
    """Parse a scenario file; defaults fill every omitted key."""
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keys are case-sensitive as documented
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except FileNotFoundError:
        raise
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc

    known = {"condensate", "impurity", "run"}
    unknown = set(parser.sections()) - known
    if unknown:
        raise ConfigError(f"unknown section(s): {sorted(unknown)}")

    cond_kwargs = {}
    for key, value in parser.items("condensate") if parser.has_section("condensate") else []:
        if key not in _CONDENSATE_KEYS:
            raise ConfigError(f"[condensate] unknown key {key!r}")
        cond_kwargs[_CONDENSATE_KEYS[key]] = _parse_float("condensate", key, value)

    imp_kwargs = {}
    for key, value in parser.items("impurity") if parser.has_section("impurity") else []:
        if key not in _IMPURITY_KEYS:
            raise ConfigError(f"[impurity] unknown key {key!r}")
        imp_kwargs[_IMPURITY_KEYS[key]] = _parse_float("impurity", key, value)

    run_kwargs: dict = {}
    for key, value in parser.items("run") if parser.has_section("run") else []:
        if key not in _RUN_FIELD_TYPES:
            raise ConfigError(f"[run] unknown key {key!r}")
        if key == "dimensions":
            run_kwargs[key] = _parse_dimensions(value)
        elif key == "t_spacing":
            run_kwargs[key] = value.strip()
        elif key == "out_dir":
            run_kwargs[key] = value.strip()
        elif key in ("t_points", "eta_points", "T_points"):
            try:
                run_kwargs[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"[run] {key}: not an integer: {value!r}") from exc
        else:
            run_kwargs[key] = _parse_float("run", key, value)

    base_c = DEFAULT_CONDENSATE
    base_i = DEFAULT_IMPURITY
    try:
        cond = CondensateParams(**{**_as_dict_cond(base_c), **cond_kwargs})
    except ValueError as exc:
        raise ConfigError(f"[condensate] {exc}") from exc
    try:
        imp = ImpurityParams(**{**_as_dict_imp(base_i), **imp_kwargs})
    except ValueError as exc:
        raise ConfigError(f"[impurity] {exc}") from exc
    run = RunConfig(**run_kwargs)
    return ScenarioConfig(condensate=cond, impurity=imp, run=run)


def _as_dict_cond(c: CondensateParams) -> dict:
    return {"m_B": c.m_B, "a3": c.a3, "n01": c.n01,
            "omega_perp": c.omega_perp, "omega_z": c.omega_z}


def _as_dict_imp(i: ImpurityParams) -> dict:
    return {"m_I": i.m_I, "Omega": i.Omega, "eta": i.eta}


def write_config(cfg: ScenarioConfig, path: str) -> None:
    """Serialise a scenario so that load_config round-trips it exactly."""
    lines = ["[condensate]"]
    cd = _as_dict_cond(cfg.condensate)
    for key, attr in _CONDENSATE_KEYS.items():
        lines.append(f"{key} = {cd[attr]!r}")
    lines.append("")
    lines.append("[impurity]")
    idd = _as_dict_imp(cfg.impurity)
    for key, attr in _IMPURITY_KEYS.items():
        lines.append(f"{key} = {idd[attr]!r}")
    lines.append("")
    lines.append("[run]")
    for f in fields(RunConfig):
        value = getattr(cfg.run, f.name)
        if f.name == "dimensions":
            value = ",".join(str(d) for d in value)
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{f.name} = {value}")
    lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
