"""Run configuration: INI files with material / geometry / run sections.

Kept deliberately flat so a config written by hand, by serialize(), or by
another tool parses identically; parse(serialize(cfg)) is semantically the
identity (tested).
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

from .dielectric import DielectricModel, PermittivityMode
from .precision import DEFAULT_DPS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    material: DielectricModel
    separation_um: float = 1.0
    # either an explicit list...
    temperatures: tuple = ()
    # ...or a log grid
    t_min: float | None = None
    t_max: float | None = None
    points_per_decade: int = 25
    polarization: str = "both"       # tm | te | both
    precision: int = DEFAULT_DPS
    out: str | None = None
    format: str = "csv"              # csv | json

    @property
    def separation_m(self) -> float:
        return self.separation_um * 1e-6

    def grid(self) -> list:
        from .diagnostics import log_grid
        if self.temperatures:
            ts = sorted(float(T) for T in self.temperatures)
            if any(T <= 0 for T in ts):
                raise ConfigError("temperatures must be positive")
            return ts
        if self.t_min is None or self.t_max is None:
            raise ConfigError("config needs either temperatures or t_min/t_max")
        return log_grid(self.t_min, self.t_max, self.points_per_decade)


PRESETS = {
    # the weakly conducting silicon-like configuration used in the studies
    "si-paper": RunConfig(
        material=DielectricModel(eps_bar=11.67, omega0=8e15, four_pi_sigma=1e12),
        separation_um=1.0, t_min=0.02, t_max=1.0),
    # same but with the static dielectric response switched off
    "si-fig2": RunConfig(
        material=DielectricModel(eps_bar=1.0, omega0=8e15, four_pi_sigma=1e12),
        separation_um=1.0, t_min=0.02, t_max=1.0),
    # perfectly reflecting plates; for checking against the ideal result
    "ideal-metal-check": RunConfig(
        material=DielectricModel(eps_bar=1.0, omega0=1.0, four_pi_sigma=0.0,
                                 mode=PermittivityMode.IDEAL_METAL),
        separation_um=1.0, temperatures=(1.0,)),
}


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"bad config syntax: {exc}") from exc
    try:
        mat_mode = PermittivityMode(cp.get("material", "model", fallback="full"))
        if mat_mode is PermittivityMode.IDEAL_METAL:
            material = DielectricModel(1.0, 1.0, 0.0, mode=mat_mode)
        else:
            material = DielectricModel(
                eps_bar=cp.getfloat("material", "eps_bar", fallback=1.0),
                omega0=cp.getfloat("material", "omega0", fallback=8e15),
                four_pi_sigma=cp.getfloat("material", "sigma_over_eps0", fallback=0.0),
                mode=mat_mode)
        temps = tuple(float(v) for v in
                      cp.get("run", "temperatures", fallback="").split())
        t_min = cp.getfloat("run", "t_min", fallback=None)
        t_max = cp.getfloat("run", "t_max", fallback=None)
        cfg = RunConfig(
            material=material,
            separation_um=cp.getfloat("geometry", "separation_um", fallback=1.0),
            temperatures=temps, t_min=t_min, t_max=t_max,
            points_per_decade=cp.getint("run", "points_per_decade", fallback=25),
            polarization=cp.get("run", "polarization", fallback="both").lower(),
            precision=cp.getint("run", "precision", fallback=DEFAULT_DPS),
            out=cp.get("run", "out", fallback=None),
            format=cp.get("run", "format", fallback="csv").lower())
    except (ValueError, configparser.Error) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc
    if cfg.polarization not in ("tm", "te", "both"):
        raise ConfigError(f"polarization must be tm/te/both, got {cfg.polarization!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    if cfg.separation_um <= 0:
        raise ConfigError("separation must be positive")
    if cfg.precision < 15:
        raise ConfigError("precision must be >= 15 digits")
    return cfg


def serialize_config(cfg: RunConfig) -> str:
    cp = configparser.ConfigParser()
    cp["material"] = {"model": cfg.material.mode.value}
    if cfg.material.mode is not PermittivityMode.IDEAL_METAL:
        cp["material"].update({
            "eps_bar": repr(cfg.material.eps_bar),
            "omega0": repr(cfg.material.omega0),
            "sigma_over_eps0": repr(cfg.material.four_pi_sigma)})
    cp["geometry"] = {"separation_um": repr(cfg.separation_um)}
    run: dict = {"polarization": cfg.polarization, "precision": str(cfg.precision),
                 "format": cfg.format, "points_per_decade": str(cfg.points_per_decade)}
    if cfg.temperatures:
        run["temperatures"] = " ".join(repr(t) for t in cfg.temperatures)
    if cfg.t_min is not None:
        run["t_min"] = repr(cfg.t_min)
    if cfg.t_max is not None:
        run["t_max"] = repr(cfg.t_max)
    if cfg.out:
        run["out"] = cfg.out
    cp["run"] = run
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
