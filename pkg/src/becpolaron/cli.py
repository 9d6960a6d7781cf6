"""Command-line orchestration: scenario loading, sweeps, CSV/manifest output.

Commands: propagators, msd, diffusion-sweep, energy, squeezing, non-markov,
j-distance, validate.  One CSV per (command, dimension) plus a JSON run
manifest.  Exit codes: 0 success, 2 regime warnings (Froehlich bound or
high-temperature threshold violated, unstable renormalisation margin),
1 numeric failure.  POLARON_THREADS caps worker-pool parallelism; outputs
are byte-identical for any thread count.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import math
import os
import sys
import time
import warnings

import numpy as np

from .config import ConfigError, ScenarioConfig, default_config, load_config
from .constants import HBAR, K_B
from .free_dynamics import (InitialState, RegimeWarning, energy,
                            superdiffusion_coefficient, msd_numeric)
from .non_markov import j_distance, non_markovianity_measure
from .output import write_manifest, write_rows
from .params import (DerivedBath, ImpurityParams, check_frohlich,
                     check_high_temperature, derive_bath,
                     high_temperature_threshold)
from .propagators import propagators_asymptotic_free, propagators_zakian, stability_probe
from .steady_state import squeezing_profile

COMMANDS = ("propagators", "msd", "diffusion-sweep", "energy", "squeezing",
            "non-markov", "j-distance", "validate")

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_REGIME = 2


def thread_count() -> int:
    raw = os.environ.get("POLARON_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"POLARON_THREADS must be an integer, got {raw!r}")
    return min(8, os.cpu_count() or 1)


def _pool_map(fn, items):
    """Ordered parallel map; results are independent of scheduling."""
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _time_grid(cfg: ScenarioConfig, omega0: float) -> np.ndarray:
    run = cfg.run
    t_max = run.t_max_omega0 / omega0
    if run.t_spacing == "log":
        return np.geomspace(t_max * 1e-4, t_max, run.t_points)
    return np.linspace(t_max / run.t_points, t_max, run.t_points)


def _eta_grid(cfg: ScenarioConfig) -> np.ndarray:
    run = cfg.run
    lo = max(run.eta_min, 1e-6)
    return np.linspace(lo, run.eta_max, run.eta_points)


def _temperature_grid(cfg: ScenarioConfig, Omega: float) -> np.ndarray:
    run = cfg.run
    scale = HBAR * Omega / K_B
    return np.linspace(run.T_scaled_min, run.T_scaled_max, run.T_points) * scale


class RunContext:
    """Holds per-run state: config, baths, collected warnings, manifest."""

    def __init__(self, cfg: ScenarioConfig, dims: tuple[int, ...], out_dir: str,
                 force: bool) -> None:
        self.cfg = cfg
        self.dims = dims
        self.out_dir = out_dir
        self.force = force
        self.warnings: list[str] = []
        self.files: dict[str, str] = {}
        self.baths: dict[int, DerivedBath] = {
            d: derive_bath(cfg.condensate, cfg.impurity, d) for d in dims}
        self.all_baths: dict[int, DerivedBath] = {
            d: derive_bath(cfg.condensate, cfg.impurity, d) for d in (1, 2, 3)}

    def warn(self, message: str) -> None:
        if message not in self.warnings:
            self.warnings.append(message)

    def check_frohlich_gate(self) -> None:
        """Record bound violations; abort unless forced."""
        for d, bath in self.baths.items():
            chk = check_frohlich(bath.eta, bath.eta_c)
            if not chk.ok:
                self.warn(f"Froehlich bound exceeded for d={d}: "
                          f"eta={bath.eta} >= eta_c={bath.eta_c:.4f}")
                if not self.force:
                    raise RegimeAbort(self.warnings[-1])

    def path(self, name: str) -> str:
        return os.path.join(self.out_dir, name)

    def record(self, key: str, path: str) -> None:
        self.files[key] = os.path.basename(path)

    def manifest(self, command: str, wall_time: float, extra: dict | None = None) -> dict:
        cfg = self.cfg
        derived = {}
        for d, b in sorted(self.all_baths.items()):
            derived[str(d)] = {
                "g_Bd": b.g_Bd, "n0d": b.n0d, "Lambda_d": b.Lambda_d,
                "tau_d_pow_d": b.tau_d_pow_d, "alpha_d": b.alpha_d,
                "beta_d": b.beta_d, "eta_c": b.eta_c, "xi": b.xi,
                "c_sound": b.c_sound, "omega0": b.omega0, "x_zpf": b.x_zpf,
            }
        frohlich = {
            str(d): {"eta": b.eta, "eta_c": b.eta_c,
                     "ok": bool(check_frohlich(b.eta, b.eta_c).ok)}
            for d, b in sorted(self.all_baths.items())}
        baths = list(self.all_baths.values())
        payload = {
            "command": command,
            "dimensions": list(self.dims),
            "condensate": {"m_B_kg": cfg.condensate.m_B, "a3_m": cfg.condensate.a3,
                           "n01_per_m": cfg.condensate.n01,
                           "omega_perp_rad_s": cfg.condensate.omega_perp,
                           "omega_z_rad_s": cfg.condensate.omega_z},
            "impurity": {"m_I_kg": cfg.impurity.m_I, "omega_rad_s": cfg.impurity.Omega,
                         "eta": cfg.impurity.eta},
            "run": {"temperature_K": cfg.run.temperature_K,
                    "rel_tolerance": cfg.run.rel_tolerance,
                    "gamma_over_omega": cfg.run.gamma_over_omega,
                    "horizon_periods": cfg.run.horizon_periods},
            "derived": derived,
            "frohlich": frohlich,
            "high_temperature": {
                "T_K": cfg.run.temperature_K,
                "threshold_K": high_temperature_threshold(
                    [self.baths[d] for d in self.dims]),
                "ok": bool(check_high_temperature(
                    cfg.run.temperature_K, [self.baths[d] for d in self.dims])),
            },
            "warnings": self.warnings,
            "files": self.files,
            "wall_time_s": wall_time,
        }
        if extra:
            payload.update(extra)
        return payload


class RegimeAbort(RuntimeError):
    """Out-of-regime run refused (re-run with --force-out-of-regime)."""


def cmd_validate(ctx: RunContext) -> None:
    for d, bath in sorted(ctx.baths.items()):
        chk = check_frohlich(bath.eta, bath.eta_c)
        if not chk.ok:
            ctx.warn(f"Froehlich bound exceeded for d={d}: "
                     f"eta={bath.eta} >= eta_c={bath.eta_c:.4f}")
        rows = [
            ("g_Bd", bath.g_Bd), ("n0d", bath.n0d), ("Lambda_d", bath.Lambda_d),
            ("tau_d_pow_d", bath.tau_d_pow_d), ("alpha_d", bath.alpha_d),
            ("beta_d", bath.beta_d), ("eta_c", bath.eta_c), ("xi", bath.xi),
            ("c_sound", bath.c_sound), ("omega0", bath.omega0),
            ("frohlich_ok", int(chk.ok)),
        ]
        path = ctx.path(f"validate_d{d}.csv")
        write_rows(path, ("quantity", "value"), rows)
        ctx.record(f"validate_d{d}", path)


def cmd_propagators(ctx: RunContext) -> None:
    ctx.check_frohlich_gate()
    for d, bath in sorted(ctx.baths.items()):
        t = _time_grid(ctx.cfg, bath.omega0)
        zak = propagators_zakian(bath, t)
        rows = [(float(ti), float(ti * bath.omega0), float(g1), float(g2), "zakian")
                for ti, g1, g2 in zip(zak.t, zak.G1, zak.G2)]
        if bath.Omega == 0:
            asym = propagators_asymptotic_free(bath, t)
            rows += [(float(ti), float(ti * bath.omega0), float(g1), float(g2), "asymptotic")
                     for ti, g1, g2 in zip(asym.t, asym.G1, asym.G2)]
        else:
            report = stability_probe(bath, float(t[-1]))
            if not report.margin_ok:
                ctx.warn(f"renormalisation margin negative for d={d}: "
                         f"Omega^2 - Gamma(0) = {report.margin:.4e}")
        path = ctx.path(f"propagators_d{d}.csv")
        write_rows(path, ("t_s", "t_omega0", "G1", "G2", "method"), rows)
        ctx.record(f"propagators_d{d}", path)


def cmd_msd(ctx: RunContext) -> None:
    ctx.check_frohlich_gate()
    cfg = ctx.cfg
    init = InitialState(x2_0=cfg.run.x2_0_m2, v2_0=cfg.run.v2_0_m2_s2)
    for d, bath in sorted(ctx.baths.items()):
        if bath.Omega != 0:
            raise ConfigError("msd requires an untrapped impurity (omega_rad_s = 0)")
        t = _time_grid(cfg, bath.omega0)
        chunks = np.array_split(np.arange(len(t)), min(len(t), 16))
        parts = _pool_map(
            lambda idx: msd_numeric(bath, init, t[idx], cfg.run.temperature_K).values,
            [c for c in chunks if len(c)])
        series = np.concatenate(parts)
        path = ctx.path(f"msd_d{d}.csv")
        write_rows(path, ("t_s", "msd_m2"), zip(t.tolist(), series.tolist()))
        ctx.record(f"msd_d{d}", path)


def cmd_diffusion_sweep(ctx: RunContext) -> None:
    ctx.check_frohlich_gate()
    cfg = ctx.cfg
    T = cfg.run.temperature_K
    regime = "HT" if T > 0 else "LT"
    if regime == "HT":
        baths = list(ctx.baths.values())
        if not check_high_temperature(T, baths):
            msg = (f"high-temperature condition violated: T={T} K below "
                   f"threshold {high_temperature_threshold(baths):.4e} K")
            ctx.warn(msg)
            if not ctx.force:
                raise RegimeAbort(msg)
    etas = _eta_grid(cfg)
    for d in sorted(ctx.dims):
        def point(eta: float, d=d) -> float:
            imp = ImpurityParams(m_I=cfg.impurity.m_I, Omega=0.0, eta=float(eta))
            b = derive_bath(cfg.condensate, imp, d)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RegimeWarning)
                return superdiffusion_coefficient(b, regime, T)
        ds = _pool_map(point, list(etas))
        path = ctx.path(f"diffusion-sweep_d{d}.csv")
        write_rows(path, ("eta", "D_m2_per_s2", "regime"),
                   [(float(e), float(v), regime) for e, v in zip(etas, ds)])
        ctx.record(f"diffusion-sweep_d{d}", path)


def cmd_energy(ctx: RunContext) -> None:
    ctx.check_frohlich_gate()
    cfg = ctx.cfg
    T = cfg.run.temperature_K
    init = InitialState(x2_0=cfg.run.x2_0_m2, v2_0=cfg.run.v2_0_m2_s2)
    method = "closed_T0" if T == 0 else "numeric"
    for d, bath in sorted(ctx.baths.items()):
        if bath.Omega != 0:
            raise ConfigError("energy requires an untrapped impurity (omega_rad_s = 0)")
        t = _time_grid(cfg, bath.omega0)
        series = energy(bath, init, t, T, method=method)
        path = ctx.path(f"energy_d{d}.csv")
        write_rows(path, ("t_s", "E_J"), zip(t.tolist(), series.values.tolist()))
        ctx.record(f"energy_d{d}", path)


def _require_trapped(ctx: RunContext) -> None:
    if ctx.cfg.impurity.Omega <= 0:
        raise ConfigError("this command requires a trapped impurity; "
                          "set [impurity] omega_rad_s > 0 (e.g. 6283.185307179586)")


def _probe_stability(ctx: RunContext) -> None:
    for d, bath in sorted(ctx.baths.items()):
        report = stability_probe(bath, 2.0 * 2.0 * math.pi / bath.Omega)
        if not report.margin_ok:
            ctx.warn(f"renormalisation margin negative for d={d}: "
                     f"Omega^2 - Gamma(0) = {report.margin:.4e}")


def cmd_squeezing(ctx: RunContext) -> None:
    _require_trapped(ctx)
    ctx.check_frohlich_gate()
    _probe_stability(ctx)
    for d, bath in sorted(ctx.baths.items()):
        Ts = _temperature_grid(ctx.cfg, bath.Omega)
        points = _pool_map(lambda T, b=bath: squeezing_profile(b, [T])[0], list(Ts))
        rows = [(p.T, p.T_scaled, p.dx_scaled, p.dp_scaled, p.equipartition_ref)
                for p in points]
        path = ctx.path(f"squeezing_d{d}.csv")
        write_rows(path, ("T_K", "T_scaled", "dx_scaled", "dp_scaled",
                          "equipartition_ref"), rows)
        ctx.record(f"squeezing_d{d}", path)


def cmd_non_markov(ctx: RunContext) -> None:
    _require_trapped(ctx)
    cfg = ctx.cfg
    etas = _eta_grid(cfg)
    horizon = cfg.run.horizon_periods * 2.0 * math.pi / cfg.impurity.Omega
    for d in sorted(ctx.dims):
        eta_c = ctx.all_baths[d].eta_c
        kept = [float(e) for e in etas if e < eta_c]
        if not kept:
            raise ConfigError(f"no eta grid point lies inside the Froehlich bound for d={d}")
        def point(eta: float, d=d) -> float:
            imp = ImpurityParams(m_I=cfg.impurity.m_I, Omega=cfg.impurity.Omega,
                                 eta=eta)
            b = derive_bath(cfg.condensate, imp, d)
            return non_markovianity_measure(b, cfg.run.temperature_K,
                                            horizon=horizon).N_scaled
        ns = _pool_map(point, kept)
        path = ctx.path(f"non-markov_d{d}.csv")
        write_rows(path, ("eta", "N_scaled"), zip(kept, ns))
        ctx.record(f"non-markov_d{d}", path)


def cmd_j_distance(ctx: RunContext) -> None:
    _require_trapped(ctx)
    ctx.check_frohlich_gate()
    cfg = ctx.cfg
    gamma = cfg.run.gamma_over_omega * cfg.impurity.Omega
    for d, bath in sorted(ctx.baths.items()):
        Ts = _temperature_grid(cfg, bath.Omega)
        jds = _pool_map(lambda T, b=bath: j_distance(b, float(T), gamma), list(Ts))
        scale = K_B / (HBAR * bath.Omega)
        path = ctx.path(f"j-distance_d{d}.csv")
        write_rows(path, ("T_scaled", "JD"),
                   [(float(T * scale), float(v)) for T, v in zip(Ts, jds)])
        ctx.record(f"j-distance_d{d}", path)


_DISPATCH = {
    "validate": cmd_validate,
    "propagators": cmd_propagators,
    "msd": cmd_msd,
    "diffusion-sweep": cmd_diffusion_sweep,
    "energy": cmd_energy,
    "squeezing": cmd_squeezing,
    "non-markov": cmd_non_markov,
    "j-distance": cmd_j_distance,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="becpolaron",
        description="Impurity-in-BEC open-system dynamics: sweeps and tables.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="PATH", default=None,
                        help="scenario file (omit for the built-in defaults)")
    parser.add_argument("--dim", default="all", choices=("1", "2", "3", "all"),
                        help="restrict to one dimension")
    parser.add_argument("--out", metavar="DIR", default=None,
                        help="output directory (overrides run.out_dir)")
    parser.add_argument("--tolerance", type=float, default=None, metavar="REL",
                        help="override run.rel_tolerance")
    parser.add_argument("--force-out-of-regime", action="store_true",
                        help="compute even when a validity bound is violated")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        cfg = load_config(args.config) if args.config else default_config()
        if args.tolerance is not None:
            run = cfg.run.__class__(**{**cfg.run.__dict__, "rel_tolerance": args.tolerance})
            cfg = ScenarioConfig(cfg.condensate, cfg.impurity, run)
        if args.dim == "all":
            dims = cfg.run.dimensions
            if args.command == "non-markov":
                # headline comparison is d = 1 vs d = 2; ask for --dim 3 explicitly
                dims = tuple(d for d in dims if d != 3) or dims
        else:
            dims = (int(args.dim),)
        out_dir = args.out or cfg.run.out_dir
        ctx = RunContext(cfg, dims, out_dir, args.force_out_of_regime)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RegimeWarning)
            _DISPATCH[args.command](ctx)
        for w in caught:
            if issubclass(w.category, RegimeWarning):
                ctx.warn(str(w.message))
    except RegimeAbort as exc:
        print(f"out of regime: {exc} (use --force-out-of-regime to compute anyway)",
              file=sys.stderr)
        return EXIT_REGIME
    except (ConfigError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except Exception as exc:  # noqa: BLE001 - numeric failures map to exit 1
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    wall = time.monotonic() - started
    write_manifest(os.path.join(ctx.out_dir, "run_manifest.json"),
                   ctx.manifest(args.command, wall))
    if ctx.warnings:
        for message in ctx.warnings:
            print(f"warning: {message}", file=sys.stderr)
        return EXIT_REGIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
