"""Command-line surface.

Subcommands:
    energy            free energy at each configured temperature
    sweep             full sweep records (free energy + corrections)
    asymptotics       closed-form correction terms and values
    verify-constants  cross-check the endpoint-series constants three ways
    anomaly           sigma = 0 linear term and residual entropy
    rdiag             R diagnostic curve; --assert enforces thresholds

Exit codes: 0 success, 1 assertion/tolerance failure, 2 usage or config
error, 3 numerical failure.  Output is reproducible: identical config ->
byte-identical file, modulo the timestamp line (suppress with
--no-timestamp).
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime
import json
import os
import sys

import mpmath
from mpmath import mpf

from . import asymptotics, diagnostics
from .config import PRESETS, ConfigError, RunConfig, load_config
from .constants import alpha_param
from .dielectric import PermittivityMode
from .lifshitz import (PlateSystem, Polarization, PrecisionError, free_energy,
                       zero_temperature_energy)
from .precision import default_dps, set_precision
from .special import (half_power_series_terms, levin_u_sum, log_power_series_terms,
                      phi_constant, psi_constant, psi_from_borel)

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def fmt(x) -> str:
    """17 significant digits: lossless for any double-representable value."""
    if x is None:
        return ""
    return mpmath.nstr(mpf(x), 17, strip_zeros=False)


class Output:
    def __init__(self, path: str | None, timestamp: bool):
        self.path = path
        self.lines: list[str] = []
        if timestamp:
            self.lines.append(f"# generated {datetime.datetime.now(datetime.timezone.utc).isoformat()}")

    def emit(self, line: str) -> None:
        self.lines.append(line)

    def close(self) -> None:
        text = "\n".join(self.lines) + "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _resolve_config(args) -> RunConfig:
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        try:
            cfg = PRESETS[args.preset]
        except KeyError:
            raise ConfigError(f"unknown preset {args.preset!r}; "
                              f"choose from {', '.join(sorted(PRESETS))}") from None
    else:
        raise ConfigError("a --config file or --preset is required")
    updates = {}
    if args.pol:
        updates["polarization"] = args.pol
    if args.out:
        updates["out"] = args.out
    if args.format:
        updates["format"] = args.format
    if args.precision:
        updates["precision"] = args.precision
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _system(cfg: RunConfig, T: float) -> PlateSystem:
    return PlateSystem(separation_a=cfg.separation_m, temperature_T=T,
                       material=cfg.material,
                       polarization=Polarization(cfg.polarization))


def cmd_energy(cfg: RunConfig, out: Output) -> int:
    rows = []
    for T in cfg.grid():
        res = free_energy(_system(cfg, T))
        rows.append({"T_K": float(T),
                     **{f"F_{p}": float(v) for p, v in res.per_mode.items()},
                     "F_total": float(res.total),
                     "m_truncation": res.m_truncation,
                     "est_error": float(res.est_error)})
    if cfg.format == "json":
        out.emit(json.dumps(rows, indent=2))
    else:
        pols = Polarization(cfg.polarization).modes()
        out.emit("T_K," + ",".join(f"F_{p}" for p in pols) + ",F_total,m_truncation")
        for r in rows:
            out.emit(",".join([fmt(r["T_K"])] + [fmt(r[f"F_{p}"]) for p in pols]
                              + [fmt(r["F_total"]), str(r["m_truncation"])]))
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, out: Output) -> int:
    records = []
    for pol in Polarization(cfg.polarization).modes():
        template = _system(cfg, 1.0)
        records.extend(diagnostics.r_curve(template, cfg.grid(), pol))
    _emit_records(records, cfg, out)
    return EXIT_OK


def _emit_records(records, cfg: RunConfig, out: Output) -> None:
    if cfg.format == "json":
        out.emit(json.dumps([
            {"T_K": float(r.T), "F_num": float(r.F_num), "F_asym": float(r.F_asym),
             "dF_num": float(r.dF_num), "dF_th": float(r.dF_th),
             "R": None if r.R is None else float(r.R), "pol": r.pol}
            for r in records], indent=2))
        return
    out.emit("T_K,F_num,F_asym,dF_num,dF_th,R,pol")
    for r in records:
        out.emit(",".join([fmt(r.T), fmt(r.F_num), fmt(r.F_asym), fmt(r.dF_num),
                           fmt(r.dF_th), "" if r.R is None else fmt(r.R), r.pol]))


def cmd_asymptotics(cfg: RunConfig, out: Output) -> int:
    mat = cfg.material
    if mat.mode is PermittivityMode.IDEAL_METAL:
        raise ConfigError("asymptotics need a finite material, not the ideal metal")
    payload = {}
    pols = Polarization(cfg.polarization).modes()
    if "tm" in pols:
        if mat.four_pi_sigma <= 0:
            raise ConfigError("TM asymptotics require sigma>0")
        tm = asymptotics.delta_f_tm(mat.four_pi_sigma, cfg.separation_m, 0.0)
        payload["tm"] = {"terms": tm.as_records(),
                         "values": {fmt(T): float(tm.evaluate(T)) for T in cfg.grid()}}
        corr = asymptotics.delta_f_tm_correction(0.0)
        payload["tm"]["t3_correction"] = corr.as_records()
        payload["tm"]["t3_correction_ratio"] = float(
            asymptotics.tm_correction_ratio(mat.four_pi_sigma, cfg.separation_m))
    if "te" in pols:
        te = asymptotics.delta_f_te(mat.four_pi_sigma, cfg.separation_m, 0.0,
                                    eps_bar=mat.eps_bar)
        payload["te"] = {"terms": te.as_records(),
                         "values": {fmt(T): float(te.evaluate(T)) for T in cfg.grid()}}
    if cfg.format == "json":
        out.emit(json.dumps(payload, indent=2))
    else:
        out.emit("pol,power_of_T,coefficient")
        for pol, data in payload.items():
            for term in data["terms"]:
                out.emit(f"{pol},{term['power_of_T']},{fmt(term['coefficient'])}")
        out.emit("pol,T_K,dF_th")
        for pol, data in payload.items():
            for tk, v in data["values"].items():
                out.emit(f"{pol},{tk},{fmt(v)}")
    return EXIT_OK


def cmd_verify_constants(out: Output) -> int:
    psi_closed = psi_constant()
    psi_levin = levin_u_sum(log_power_series_terms(16)).value
    psi_borel = psi_from_borel()
    phi_closed = phi_constant()
    phi_levin = levin_u_sum(half_power_series_terms(16)).value
    pairs = [
        ("Psi closed-form", psi_closed, "Psi Levin", psi_levin),
        ("Psi closed-form", psi_closed, "Psi Borel", psi_borel),
        ("Psi Levin", psi_levin, "Psi Borel", psi_borel),
        ("Phi closed-form", phi_closed, "Phi Levin", phi_levin),
    ]
    ok = True
    out.emit(f"Psi closed-form : {fmt(psi_closed)}")
    out.emit(f"Psi Levin       : {fmt(psi_levin)}")
    out.emit(f"Psi Borel       : {fmt(psi_borel)}")
    out.emit(f"Phi closed-form : {fmt(phi_closed)}")
    out.emit(f"Phi Levin       : {fmt(phi_levin)}")
    for na, a, nb, b in pairs:
        diff = abs(a - b)
        ok = ok and diff < mpf("1e-9")
        out.emit(f"|{na} - {nb}| = {mpmath.nstr(diff, 3)}")
    out.emit("status: " + ("OK" if ok else "FAIL (tolerance 1e-9)"))
    return EXIT_OK if ok else EXIT_ASSERT


def cmd_anomaly(cfg: RunConfig, out: Output) -> int:
    mat = cfg.material
    if mat.mode is PermittivityMode.IDEAL_METAL:
        raise ConfigError("anomaly analysis needs a dielectric (sigma = 0) material")
    grid = cfg.grid() if (cfg.temperatures or cfg.t_min is not None) else [1.0]
    res = asymptotics.linear_anomaly(mat.eps_bar, cfg.separation_m, grid[0])
    out.emit(f"eps_bar                 : {fmt(mat.eps_bar)}")
    out.emit(f"A0                      : {fmt(res['a0'])}")
    out.emit(f"linear F at T={grid[0]} K : {fmt(res['free_energy'])} J/m^2")
    out.emit(f"entropy S(T=0)          : {fmt(res['entropy'])} J/(K m^2)")
    anomalous = abs(res["entropy"]) > 0
    out.emit("residual entropy is " + ("NONZERO: thermodynamic anomaly present"
                                       if anomalous else "zero"))
    return EXIT_OK


def cmd_rdiag(cfg: RunConfig, out: Output, check: bool) -> int:
    records = []
    failures = []
    for pol in Polarization(cfg.polarization).modes():
        if pol == "te":
            alpha = alpha_param(cfg.separation_m, cfg.material.four_pi_sigma) \
                if cfg.material.four_pi_sigma > 0 else 0
            if alpha < mpf("0.05"):
                print("warning: TE R-diagnostic unfeasible at small alpha "
                      "(correction terms nearly degenerate); data emitted anyway",
                      file=sys.stderr)
        template = _system(cfg, 1.0)
        curve = diagnostics.r_curve(template, cfg.grid(), pol)
        records.extend(curve)
        if check and pol == "tm":
            r0 = curve[0].R
            slope = diagnostics.r_slope(curve)
            if abs(r0) >= mpf("0.05"):
                failures.append(f"tm: |R({fmt(curve[0].T)})| = {mpmath.nstr(abs(r0), 4)} >= 0.05")
            if abs(slope) >= mpf("0.5"):
                failures.append(f"tm: |dR/dT| = {mpmath.nstr(abs(slope), 4)} >= 0.5 /K")
    _emit_records(records, cfg, out)
    if failures:
        for f in failures:
            print(f"assertion failed: {f}", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="casimir-lowt",
                                description="Free energy of weakly conducting plates: "
                                            "numerics, closed-form corrections, diagnostics")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("energy", "free energy at configured temperatures"),
                        ("sweep", "full sweep: F, corrections, R"),
                        ("asymptotics", "closed-form correction coefficients"),
                        ("verify-constants", "cross-check endpoint-series constants"),
                        ("anomaly", "sigma=0 linear term and residual entropy"),
                        ("rdiag", "R diagnostic curve")]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", metavar="PATH")
        sp.add_argument("--preset", choices=sorted(PRESETS))
        sp.add_argument("--out", metavar="PATH")
        sp.add_argument("--format", choices=["csv", "json"])
        sp.add_argument("--pol", choices=["tm", "te", "both"])
        sp.add_argument("--precision", type=int, metavar="DIGITS")
        sp.add_argument("--no-timestamp", action="store_true")
        if name == "rdiag":
            sp.add_argument("--assert", dest="check", action="store_true",
                            help="exit 1 unless the diagnostic meets thresholds")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify-constants":
            set_precision(args.precision or default_dps())
            out = Output(args.out, timestamp=not args.no_timestamp)
            code = cmd_verify_constants(out)
            out.close()
            return code
        cfg = _resolve_config(args)
        # precedence: --precision, then CASIMIR_PRECISION, then the config file
        if args.precision:
            set_precision(args.precision)
        elif os.environ.get("CASIMIR_PRECISION"):
            set_precision(default_dps())
        else:
            set_precision(cfg.precision)
        out = Output(args.out or cfg.out, timestamp=not args.no_timestamp)
        if args.command == "energy":
            code = cmd_energy(cfg, out)
        elif args.command == "sweep":
            code = cmd_sweep(cfg, out)
        elif args.command == "asymptotics":
            code = cmd_asymptotics(cfg, out)
        elif args.command == "anomaly":
            code = cmd_anomaly(cfg, out)
        elif args.command == "rdiag":
            code = cmd_rdiag(cfg, out, check=getattr(args, "check", False))
        else:  # pragma: no cover
            raise ConfigError(f"unknown command {args.command!r}")
        out.close()
        return code
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PrecisionError, ArithmeticError, diagnostics.FitError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
