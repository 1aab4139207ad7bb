"""Command-line interface: solve, sweep, w-solve, evolve, rearrange, verify.

Configuration is plain key = value text with sections; every value,
including defaults, is echoed into the run manifest so a run can be
reproduced from the manifest alone.  Exit codes are a stable contract:
0 success, 2 validation, 3 I/O, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import artifacts
from .errors import (BlowUpError, NlskdvError, ValidationError)
from .evolve import (evolve, perturbed_solitary_initial, solitary_initial)
from .functionals import PhysParams, parse_odd_denominator
from .grid import Grid1D, make_grid
from .minimize import (MinimizeOptions, el_residual, minimize_I, minimize_W)
from .verify import (CheckRow, rows_to_table, run_functional_checks,
                     run_grid_checks, run_rearrange_suite, run_subadd_probes)

OUTPUT_ROOT_ENV = "NLSKDV_OUTPUT_ROOT"

_DEFAULTS = {
    "physics": {"alpha": "1.0", "tau1": "1.0", "tau2": "1.0",
                "p": "1", "q": "1.0"},
    "grid": {"half_length": "40.0", "points": "1024"},
    "solver": {"tol": "1e-8", "max_iter": "200000",
               "continuation_step": "0.25", "stabilize_iters": "300",
               "max_boundary_leak": "1e-6"},
    "problem": {"s": "1.0", "t": "1.0"},
    "sweep": {"s_values": "1.0", "t_values": "1.0", "workers": "2"},
    "evolve": {"dt": "0.001", "duration": "20.0", "sample_every": "100",
               "seed": "1234", "epsilon": "0.0", "wavespeed": "auto"},
    "verify": {"subadd_count": "2", "seed": "7", "pairs": "20",
               "garrisi_cases": "5"},
    "output": {"directory": "runs"},
}


@dataclass
class RunConfig:
    """Validated configuration for one CLI invocation."""

    alpha: float
    tau1: float
    tau2: float
    p: Fraction
    q: float
    half_length: float
    points: int
    tol: float
    max_iter: int
    continuation_step: float
    stabilize_iters: int
    max_boundary_leak: float
    s: float
    t: float
    s_values: list
    t_values: list
    workers: int
    dt: float
    duration: float
    sample_every: int
    seed: int
    epsilon: float
    wavespeed: Optional[float]
    subadd_count: int
    verify_seed: int
    verify_pairs: int
    garrisi_cases: int
    directory: str

    @staticmethod
    def from_file(path: Optional[str],
                  overrides: Optional[list] = None) -> "RunConfig":
        parser = configparser.ConfigParser()
        parser.read_dict(_DEFAULTS)
        if path is not None:
            if not os.path.exists(path):
                raise FileNotFoundError(f"config file not found: {path}")
            read = parser.read(path)
            if not read:
                raise FileNotFoundError(f"cannot read config: {path}")
        for item in overrides or []:
            if "=" not in item or "." not in item.split("=", 1)[0]:
                raise ValidationError(
                    f"override must look like section.key=value, got {item!r}")
            dotted, value = item.split("=", 1)
            section, key = dotted.strip().split(".", 1)
            parser.setdefault(section, {})
            parser[section][key.strip()] = value.strip()
        for section in parser.sections():
            if section not in _DEFAULTS:
                raise ValidationError(f"unknown config section [{section}]")
            for key in parser[section]:
                if key not in _DEFAULTS[section]:
                    raise ValidationError(
                        f"unknown config key {key!r} in [{section}]")

        def fget(sec, key):
            try:
                return float(parser[sec][key])
            except ValueError as exc:
                raise ValidationError(
                    f"[{sec}] {key} = {parser[sec][key]!r}: {exc}") from exc

        def iget(sec, key):
            try:
                return int(parser[sec][key])
            except ValueError as exc:
                raise ValidationError(
                    f"[{sec}] {key} = {parser[sec][key]!r}: {exc}") from exc

        def flist(sec, key):
            raw = parser[sec][key]
            return [float(tok) for tok in raw.replace(",", " ").split()]

        wavespeed_raw = parser["evolve"]["wavespeed"].strip().lower()
        wavespeed = None if wavespeed_raw == "auto" else float(wavespeed_raw)

        return RunConfig(
            alpha=fget("physics", "alpha"), tau1=fget("physics", "tau1"),
            tau2=fget("physics", "tau2"),
            p=parse_odd_denominator(parser["physics"]["p"]),
            q=fget("physics", "q"),
            half_length=fget("grid", "half_length"),
            points=iget("grid", "points"),
            tol=fget("solver", "tol"), max_iter=iget("solver", "max_iter"),
            continuation_step=fget("solver", "continuation_step"),
            stabilize_iters=iget("solver", "stabilize_iters"),
            max_boundary_leak=fget("solver", "max_boundary_leak"),
            s=fget("problem", "s"), t=fget("problem", "t"),
            s_values=flist("sweep", "s_values"),
            t_values=flist("sweep", "t_values"),
            workers=iget("sweep", "workers"),
            dt=fget("evolve", "dt"), duration=fget("evolve", "duration"),
            sample_every=iget("evolve", "sample_every"),
            seed=iget("evolve", "seed"), epsilon=fget("evolve", "epsilon"),
            wavespeed=wavespeed,
            subadd_count=iget("verify", "subadd_count"),
            verify_seed=iget("verify", "seed"),
            verify_pairs=iget("verify", "pairs"),
            garrisi_cases=iget("verify", "garrisi_cases"),
            directory=parser["output"]["directory"],
        )

    def phys_params(self) -> PhysParams:
        return PhysParams(alpha=self.alpha, tau1=self.tau1, tau2=self.tau2,
                          p=self.p, q=self.q)

    def grid(self) -> Grid1D:
        return make_grid(self.half_length, self.points)

    def solver_opts(self) -> MinimizeOptions:
        return MinimizeOptions(
            tol=self.tol, max_iter=self.max_iter,
            continuation_step=self.continuation_step,
            stabilize_iters=self.stabilize_iters,
            max_boundary_leak=self.max_boundary_leak)

    def outdir(self, sub: str) -> str:
        base = self.directory
        root = os.environ.get(OUTPUT_ROOT_ENV)
        if root and not os.path.isabs(base):
            base = os.path.join(root, base)
        path = os.path.join(base, sub)
        os.makedirs(path, exist_ok=True)
        return path

    def manifest(self) -> dict:
        doc = {
            "physics": self.phys_params().to_dict(),
            "grid": {"L": self.half_length, "n": self.points},
            "solver": {"tol": self.tol, "max_iter": self.max_iter,
                       "continuation_step": self.continuation_step,
                       "stabilize_iters": self.stabilize_iters,
                       "max_boundary_leak": self.max_boundary_leak},
            "problem": {"s": self.s, "t": self.t},
            "sweep": {"s_values": self.s_values,
                      "t_values": self.t_values, "workers": self.workers},
            "evolve": {"dt": self.dt, "duration": self.duration,
                       "sample_every": self.sample_every, "seed": self.seed,
                       "epsilon": self.epsilon,
                       "wavespeed": self.wavespeed},
            "verify": {"subadd_count": self.subadd_count,
                       "seed": self.verify_seed,
                       "pairs": self.verify_pairs,
                       "garrisi_cases": self.garrisi_cases},
            "output": {"directory": self.directory},
            "outside_theorem": not (self.phys_params().stability_regime()
                                    and self.alpha > 0),
        }
        return doc


def _pair_row(s, t, pair, report, prm):
    res_phi, res_psi = el_residual(pair, prm)
    return {
        "s": s, "t": t, "I": pair.energy_value,
        "sigma": pair.sigma, "c": pair.c,
        "residual_phi": res_phi if math.isfinite(res_phi) else math.nan,
        "residual_psi": res_psi if math.isfinite(res_psi) else math.nan,
        "iterations": report.iterations,
    }


def cmd_solve(cfg: RunConfig) -> int:
    prm = cfg.phys_params()
    grid = cfg.grid()
    pair, report = minimize_I(cfg.s, cfg.t, prm, grid, cfg.solver_opts())
    out = cfg.outdir("solve")
    artifacts.save_pair(pair, out)
    artifacts.write_json(os.path.join(out, "report.json"), {
        "iterations": report.iterations,
        "termination": report.termination,
        "I_value": report.I_value,
        "pg_norm": report.pg_norm,
        "final_step": report.final_step,
        "stages": report.stages,
    })
    artifacts.write_json(os.path.join(out, "manifest.json"), cfg.manifest())
    artifacts.atomic_write_text(
        os.path.join(out, "profile.csv"),
        artifacts.profile_csv(grid, {
            "phi": np.real(pair.phi.values), "psi": pair.psi.values}))
    print(f"solved (s={cfg.s}, t={cfg.t}): I={pair.energy_value:.10g} "
          f"sigma={pair.sigma:.6g} c={pair.c:.6g} -> {out}")
    return 0


def _sweep_point(args):
    s, t, cfg_blob = args
    cfg = RunConfig(**cfg_blob)
    prm = cfg.phys_params()
    grid = cfg.grid()
    pair, report = minimize_I(s, t, prm, grid, cfg.solver_opts())
    return _pair_row(s, t, pair, report, prm)


def cmd_sweep(cfg: RunConfig) -> int:
    points = [(s, t) for s in cfg.s_values for t in cfg.t_values]
    blob = dict(cfg.__dict__)
    jobs = [(s, t, blob) for s, t in points]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_sweep_point, jobs))
    else:
        rows = [_sweep_point(j) for j in jobs]
    rows.sort(key=lambda r: (r["s"], r["t"]))
    out = cfg.outdir("sweep")
    artifacts.atomic_write_text(os.path.join(out, "sweep.csv"),
                                artifacts.sweep_rows_csv(rows))
    artifacts.write_json(os.path.join(out, "manifest.json"), cfg.manifest())
    print(f"swept {len(rows)} points -> {out}")
    return 0


def cmd_wsolve(cfg: RunConfig) -> int:
    prm = cfg.phys_params()
    grid = cfg.grid()
    sol = minimize_W(cfg.s, cfg.t, prm, grid, cfg.solver_opts())
    out = cfg.outdir("wsolve")
    artifacts.save_wsolution(sol, out)
    artifacts.write_json(os.path.join(out, "manifest.json"), cfg.manifest())
    print(f"w-solved (s={cfg.s}, t={cfg.t}): W={sol.W_value:.10g} "
          f"a*={sol.a_star:.6g} b={sol.b:.6g} -> {out}")
    return 0


def cmd_evolve(cfg: RunConfig, init_path: str) -> int:
    prm = cfg.phys_params()
    pair = artifacts.load_pair(init_path)
    if pair.grid != cfg.grid():
        raise ValidationError(
            "init artifact grid does not match the configured grid")
    c = cfg.wavespeed
    if c is None:
        c = pair.c if math.isfinite(pair.c) else 0.0
    if cfg.epsilon > 0.0:
        state, eps_abs, _ = perturbed_solitary_initial(
            pair, cfg.epsilon, cfg.seed, prm, wavespeed=c)
    else:
        state, eps_abs = solitary_initial(pair, c, prm=prm), 0.0
    out = cfg.outdir("evolve")
    manifest = cfg.manifest()
    manifest["epsilon_abs"] = eps_abs
    manifest["wavespeed_used"] = c
    try:
        trace = evolve(state, cfg.duration, cfg.dt,
                       sample_every=cfg.sample_every, reference=pair,
                       wavespeed=c, seed=cfg.seed)
    except BlowUpError as exc:
        if exc.trace is not None:
            artifacts.save_trace(exc.trace, out, manifest)
        print(json.dumps({"error": str(exc), "partial_trace": out}))
        return 4
    artifacts.save_trace(trace, out, manifest)
    print(f"evolved T={cfg.duration} dt={cfg.dt}: "
          f"|dE|={trace.drift('E'):.3e} |dG|={trace.drift('G'):.3e} "
          f"|dH|={trace.drift('H'):.3e} -> {out}")
    return 0


def cmd_rearrange(cfg: RunConfig) -> int:
    grid = cfg.grid()
    prm = cfg.phys_params()
    rows = run_rearrange_suite(grid, prm, seed=cfg.verify_seed,
                               n_pairs=cfg.verify_pairs,
                               n_garrisi=cfg.garrisi_cases)
    out = cfg.outdir("rearrange")
    artifacts.write_json(os.path.join(out, "rearrange.json"),
                         [r.to_dict() for r in rows])
    artifacts.write_json(os.path.join(out, "manifest.json"), cfg.manifest())
    sys.stdout.write(rows_to_table(rows))
    return 0 if all(r.status != "fail" for r in rows) else 4


def cmd_verify(cfg: RunConfig) -> int:
    grid = cfg.grid()
    prm = cfg.phys_params()
    rows: list[CheckRow] = []
    rows += run_grid_checks(grid, seed=cfg.verify_seed)
    rows += run_functional_checks(grid, prm, seed=cfg.verify_seed + 1)
    rows += run_rearrange_suite(grid, prm, seed=cfg.verify_seed + 2,
                                n_pairs=cfg.verify_pairs,
                                n_garrisi=cfg.garrisi_cases)
    rows += run_subadd_probes(prm, grid, cfg.solver_opts(),
                              count=cfg.subadd_count, seed=cfg.verify_seed)
    out = cfg.outdir("verify")
    artifacts.write_json(os.path.join(out, "verify.json"),
                         [r.to_dict() for r in rows])
    artifacts.write_json(os.path.join(out, "manifest.json"), cfg.manifest())
    sys.stdout.write(rows_to_table(rows))
    failures = [r.name for r in rows if r.status == "fail"]
    if failures:
        print(json.dumps({"failed": failures}))
        return 4
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlskdv",
        description="solitary-wave laboratory for the coupled NLS-KdV system")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_txt in [
            ("solve", "constrained minimization at one (s, t)"),
            ("sweep", "minimization over an (s, t) lattice"),
            ("w-solve", "mass-momentum constrained minimization"),
            ("evolve", "time integration from a solved pair"),
            ("rearrange", "rearrangement inequality suite"),
            ("verify", "full invariant suite")]:
        p = sub.add_parser(name, help=help_txt)
        p.add_argument("--config", default=None,
                       help="key = value config file (defaults used if absent)")
        p.add_argument("--set", dest="overrides", action="append",
                       default=[], metavar="SECTION.KEY=VALUE",
                       help="override any config field, repeatable")
        if name == "evolve":
            p.add_argument("--init", required=True,
                           help="directory holding a saved pair")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config, args.overrides)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "w-solve":
            return cmd_wsolve(cfg)
        if args.command == "evolve":
            return cmd_evolve(cfg, args.init)
        if args.command == "rearrange":
            return cmd_rearrange(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        raise ValidationError(f"unknown command {args.command}")
    except ValidationError as exc:
        print(json.dumps({"error": str(exc), "code": 2}))
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}", "code": 3}))
        return 3
    except NlskdvError as exc:
        print(json.dumps({"error": str(exc), "code": 4}))
        return 4


if __name__ == "__main__":
    sys.exit(main())
