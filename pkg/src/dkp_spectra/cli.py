"""Command-line front end: dkp-spectra.

Subcommands
    energies      spectrum table over n and J for one screening value
    table2        all 72 reference energies side by side with computed ones
    wavefunction  sampled spinor components of one level
    verify        closed forms against the ODE oracle, JSON report
    approx        screened Coulomb potential against its solvable surrogate

Configuration precedence is flag > config file > built-in default.
The config file is plain ``key=value`` lines with ``#`` comments; the
environment variable DKP_SPECTRA_CONFIG names a default file.  Exit
codes: 0 success, 1 physics failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import dkp_yukawa, oracle
from .dkp_yukawa import (
    NaturalParams,
    PhysicalParams,
    QuantumNumbers,
    natural_units,
)
from .errors import NoBoundState, SpectraError, SupercriticalCoupling
from .nu_engine import Branch
from .oracle import OracleConfig, Variant
from .reference import REFERENCE_EIGENVALUES, REFERENCE_SCREENINGS_INV_FM, SUSPECT_ENTRIES

EXIT_OK = 0
EXIT_PHYSICS = 1
EXIT_USAGE = 2

_BRANCHES = {"paper": Branch.TWO, "physical": Branch.ONE}

_DEFAULTS = {
    "mass_mev": 938.0,
    "u0_mev_fm": 67.54,
    "a_inv_fm": 0.005,
    "hbar_c": dkp_yukawa.HBARC_MEV_FM,
    "n_max": 5,
    "j_max": 5,
    "branch": "paper",
    "format": "csv",
    "tolerance": None,
}

_CONFIG_TYPES = {
    "mass_mev": float,
    "u0_mev_fm": float,
    "a_inv_fm": float,
    "hbar_c": float,
    "n_max": int,
    "j_max": int,
    "branch": str,
    "format": str,
    "tolerance": float,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mass_mev: float
    u0_mev_fm: float
    a_inv_fm: float
    hbar_c: float
    n_max: int
    j_max: int
    branch: str
    format: str
    tolerance: float | None
    output: str | None
    exact_oracle: bool

    def physical(self) -> PhysicalParams:
        try:
            return PhysicalParams(
                mass=self.mass_mev,
                coupling=self.u0_mev_fm,
                screening=self.a_inv_fm,
                hbar_c=self.hbar_c,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc

    def natural(self) -> NaturalParams:
        return natural_units(self.physical())


def _load_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                key = key.strip()
                value = value.strip()
                if key not in _CONFIG_TYPES:
                    raise UsageError(f"{path}:{lineno}: unknown key '{key}'")
                try:
                    values[key] = _CONFIG_TYPES[key](value)
                except ValueError as exc:
                    raise UsageError(f"{path}:{lineno}: bad value for '{key}'") from exc
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _merge_config(args: argparse.Namespace) -> RunConfig:
    values = dict(_DEFAULTS)
    config_path = args.config or os.environ.get("DKP_SPECTRA_CONFIG") or None
    if config_path:
        values.update(_load_config_file(config_path))
    flag_map = {
        "mass_mev": args.mass_mev,
        "u0_mev_fm": args.u0,
        "a_inv_fm": args.a,
        "hbar_c": args.hbar_c,
        "n_max": args.n_max,
        "j_max": args.j_max,
        "branch": args.branch,
        "format": args.format,
        "tolerance": args.tolerance,
    }
    for key, flag in flag_map.items():
        if flag is not None:
            values[key] = flag
    if values["branch"] not in ("paper", "physical", "both"):
        raise UsageError(f"branch must be paper, physical or both, not '{values['branch']}'")
    if values["format"] not in ("csv", "json"):
        raise UsageError(f"format must be csv or json, not '{values['format']}'")
    if values["n_max"] < 0 or values["j_max"] < 0:
        raise UsageError("n-max and j-max must be non-negative")
    return RunConfig(
        mass_mev=values["mass_mev"],
        u0_mev_fm=values["u0_mev_fm"],
        a_inv_fm=values["a_inv_fm"],
        hbar_c=values["hbar_c"],
        n_max=values["n_max"],
        j_max=values["j_max"],
        branch=values["branch"],
        format=values["format"],
        tolerance=values["tolerance"],
        output=args.output,
        exact_oracle=getattr(args, "exact_oracle", "on") != "off",
    )


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fmt_energy(value: float) -> str:
    return f"{value:.10g}"


def _csv_text(header, rows, preamble: str | None = None) -> str:
    buf = io.StringIO()
    if preamble is not None:
        buf.write(preamble + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _level_cells(natural: NaturalParams, n: int, J: int, branch: Branch):
    """(E, eps, residual, status) with None fields when no state exists."""
    try:
        level = dkp_yukawa._closed_level(natural, QuantumNumbers(n=n, J=J), branch)
        return level.E, level.epsilon, level.residual, "ok"
    except SupercriticalCoupling:
        return None, None, None, "supercritical"
    except NoBoundState:
        return None, None, None, "no_bound_state"


def cmd_energies(cfg: RunConfig) -> int:
    natural = cfg.natural()
    branches = ["paper", "physical"] if cfg.branch == "both" else [cfg.branch]
    header = ["n", "J", "a_inv_fm", "branch", "E_MeV", "epsilon_MeV", "residual", "status"]
    rows = []
    payload = []
    for name in branches:
        branch = _BRANCHES[name]
        for n in range(cfg.n_max + 1):
            for J in range(cfg.j_max + 1):
                E, eps, res, status = _level_cells(natural, n, J, branch)
                rows.append([
                    n, J, f"{cfg.a_inv_fm:.10g}", name,
                    _fmt_energy(E) if E is not None else "",
                    _fmt_energy(eps) if eps is not None else "",
                    f"{res:.3e}" if res is not None else "",
                    status,
                ])
                payload.append({
                    "n": n, "J": J, "a_inv_fm": cfg.a_inv_fm, "branch": name,
                    "E_MeV": E, "epsilon_MeV": eps, "residual": res, "status": status,
                })
    if cfg.format == "json":
        _emit(_json_text({"rows": payload}), cfg.output)
    else:
        _emit(_csv_text(header, rows), cfg.output)
    return EXIT_OK


def cmd_table2(cfg: RunConfig) -> int:
    bound = cfg.tolerance if cfg.tolerance is not None else 1e-3
    screenings = (cfg.a_inv_fm, 3.0 * cfg.a_inv_fm)
    header = ["n", "J", "a_inv_fm", "E_reference_MeV", "E_computed_MeV",
              "relative_deviation", "flag"]
    rows = []
    payload = []
    worst = 0.0
    for col, a_fm in enumerate(screenings):
        natural = natural_units(PhysicalParams(
            mass=cfg.mass_mev, coupling=cfg.u0_mev_fm, screening=a_fm, hbar_c=cfg.hbar_c))
        for (n, J), refs in sorted(REFERENCE_EIGENVALUES.items()):
            ref = refs[col]
            level = dkp_yukawa.energy_paper(natural, QuantumNumbers(n=n, J=J))
            dev = abs(level.E - ref) / abs(ref)
            flagged = (n, J, col) in SUSPECT_ENTRIES
            if not flagged:
                worst = max(worst, dev)
            label = "suspect_reference" if flagged else ""
            rows.append([
                n, J, f"{REFERENCE_SCREENINGS_INV_FM[col]:.10g}",
                _fmt_energy(ref), _fmt_energy(level.E), f"{dev:.3e}", label,
            ])
            payload.append({
                "n": n, "J": J, "a_inv_fm": REFERENCE_SCREENINGS_INV_FM[col],
                "E_reference_MeV": ref, "E_computed_MeV": level.E,
                "relative_deviation": dev, "flag": label,
            })
    passed = worst <= bound
    if cfg.format == "json":
        _emit(_json_text({
            "rows": payload,
            "max_relative_deviation": worst,
            "tolerance": bound,
            "pass": passed,
            "excluded": [{"n": n, "J": J, "column": c} for (n, J, c) in sorted(SUSPECT_ENTRIES)],
        }), cfg.output)
    else:
        _emit(_csv_text(header, rows), cfg.output)
        print(f"max relative deviation {worst:.3e} against bound {bound:.3e}: "
              f"{'pass' if passed else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_PHYSICS


def cmd_wavefunction(cfg: RunConfig, n: int, J: int, components: list[str],
                     r_max_fm: float | None, samples: int) -> int:
    if cfg.branch == "both":
        raise UsageError("wavefunction needs a single branch, paper or physical")
    natural = cfg.natural()
    branch = _BRANCHES[cfg.branch]
    level = dkp_yukawa._closed_level(natural, QuantumNumbers(n=n, J=J), branch)
    spinor_set = dkp_yukawa.spinors(level, natural)
    if r_max_fm is None:
        r_max_fm = (27.7 / level.epsilon) * cfg.hbar_c
    if samples < 2:
        raise UsageError("samples must be at least 2")

    evaluators = {
        "F": spinor_set.F,
        "G": spinor_set.G,
        "H_plus": spinor_set.H_plus,
        "H_minus": spinor_set.H_minus,
    }
    for name in components:
        if name not in evaluators:
            raise UsageError(f"unknown component '{name}'")

    step = r_max_fm / samples
    grid_fm = [step * (i + 1) for i in range(samples)]
    rows = []
    payload_rows = []
    for r_fm in grid_fm:
        r_nat = r_fm / cfg.hbar_c
        cells = [evaluators[name](r_nat) for name in components]
        rows.append([f"{r_fm:.10g}"] + [_fmt_energy(v) for v in cells])
        payload_rows.append({"r_fm": r_fm, **{name: v for name, v in zip(components, cells)}})

    meta = {
        "branch": cfg.branch,
        "E_MeV": level.E,
        "norm_constant": spinor_set.norm_constant,
        "n": n,
        "J": J,
    }
    if cfg.format == "json":
        _emit(_json_text({**meta, "samples": payload_rows}), cfg.output)
    else:
        preamble = (f"# branch={cfg.branch} E_MeV={_fmt_energy(level.E)} "
                    f"norm_constant={_fmt_energy(spinor_set.norm_constant)} n={n} J={J}")
        _emit(_csv_text(["r_fm"] + components, rows, preamble=preamble), cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, n: int, J: int) -> int:
    natural = cfg.natural()
    qn = QuantumNumbers(n=n, J=J)
    tol_energy = cfg.tolerance if cfg.tolerance is not None else 1e-6
    tol_defect = 1e-8

    if natural.g == 0.0:
        _emit(_json_text({"status": "no bound states", "reason": "zero coupling"}), cfg.output)
        return EXIT_OK

    report: dict = {"n": n, "J": J, "params": {
        "mass_mev": cfg.mass_mev, "u0_mev_fm": cfg.u0_mev_fm, "a_inv_fm": cfg.a_inv_fm,
        "hbar_c": cfg.hbar_c, "m": natural.m, "a": natural.a, "g": natural.g,
    }}

    levels = {}
    for name, branch in _BRANCHES.items():
        try:
            lv = dkp_yukawa._closed_level(natural, qn, branch)
            levels[name] = lv
            report[name] = {
                "E_MeV": lv.E, "epsilon_MeV": lv.epsilon, "nu": lv.nu,
                "delta": lv.delta, "residual": lv.residual, "status": "ok",
            }
        except (NoBoundState, SupercriticalCoupling) as exc:
            report[name] = {"status": type(exc).__name__}

    if "physical" not in levels and "paper" not in levels:
        report["status"] = "no bound states"
        _emit(_json_text(report), cfg.output)
        return EXIT_OK

    cfg_oracle = OracleConfig()
    try:
        e_approx = oracle.find_level(Variant.APPROX, natural, qn, cfg_oracle)
    except NoBoundState:
        e_approx = None
    e_exact = None
    if cfg.exact_oracle:
        try:
            e_exact = oracle.find_level(Variant.EXACT, natural, qn, cfg_oracle)
        except NoBoundState:
            e_exact = None

    checks = {}
    oracle_block = {"approx_E_MeV": e_approx, "exact_E_MeV": e_exact}
    if e_approx is not None and "physical" in levels:
        gap = abs(e_approx - levels["physical"].E) / natural.m
        oracle_block["physical_minus_approx_over_m"] = gap
        checks["physical_matches_oracle"] = gap <= tol_energy
    if e_approx is not None and "paper" in levels:
        oracle_block["paper_in_normalizable_spectrum"] = (
            abs(e_approx - levels["paper"].E) / natural.m <= tol_energy
        )
    if e_exact is not None and e_approx is not None:
        oracle_block["exact_minus_approx_MeV"] = e_exact - e_approx
    report["oracle"] = oracle_block

    defects = {}
    grids = {}
    for name, lv in levels.items():
        wave = dkp_yukawa.radial_F(lv, natural)
        lo, hi = 0.01 / lv.epsilon, 10.0 / lv.epsilon
        grid = [lo * (hi / lo) ** (i / 199.0) for i in range(200)]
        grids[name] = grid
        defects[f"{name}_vs_approx"] = oracle.ode_residual(
            Variant.APPROX, wave, natural, J, lv.E, grid)
    report["ode_residual"] = defects
    if "physical" in levels:
        checks["ode_defect_ok"] = defects["physical_vs_approx"] <= tol_defect
        spinor_set = dkp_yukawa.spinors(levels["physical"], natural)
        report["system_residual"] = {
            "physical": oracle.system_residual(
                spinor_set, natural, J, levels["physical"].E, grids["physical"])
        }

    report["tolerances"] = {"energy_rel": tol_energy, "ode_defect": tol_defect}
    report["checks"] = checks
    report["pass"] = all(checks.values()) if checks else False
    _emit(_json_text(report), cfg.output)
    return EXIT_OK if report["pass"] else EXIT_PHYSICS


def cmd_approx(cfg: RunConfig, r_max_fm: float | None, samples: int) -> int:
    if samples < 2:
        raise UsageError("samples must be at least 2")
    natural = cfg.natural()
    if r_max_fm is None:
        r_max_fm = 0.1 / cfg.a_inv_fm
    if r_max_fm <= 0.0:
        raise UsageError("r-max must be positive")
    step = r_max_fm / samples
    header = ["r_fm", "V_yukawa_MeV", "V_approx_MeV", "relative_deviation"]
    rows = []
    payload = []
    for i in range(samples):
        r_fm = step * (i + 1)
        r_nat = r_fm / cfg.hbar_c
        vy = dkp_yukawa.potential_yukawa(natural, r_nat)
        va = dkp_yukawa.potential_approx(natural, r_nat)
        dev = abs(1.0 - va / vy)
        rows.append([f"{r_fm:.10g}", _fmt_energy(vy), _fmt_energy(va), f"{dev:.6e}"])
        payload.append({"r_fm": r_fm, "V_yukawa_MeV": vy, "V_approx_MeV": va,
                        "relative_deviation": dev})
    if cfg.format == "json":
        _emit(_json_text({"rows": payload}), cfg.output)
    else:
        _emit(_csv_text(header, rows), cfg.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--mass-mev", dest="mass_mev", type=float, default=None,
                        help="particle mass in MeV")
    shared.add_argument("--u0", dest="u0", type=float, default=None,
                        help="potential strength in MeV*fm")
    shared.add_argument("--a", dest="a", type=float, default=None,
                        help="screening parameter in 1/fm")
    shared.add_argument("--hbar-c", dest="hbar_c", type=float, default=None,
                        help="conversion constant in MeV*fm")
    shared.add_argument("--n-max", dest="n_max", type=int, default=None)
    shared.add_argument("--j-max", dest="j_max", type=int, default=None)
    shared.add_argument("--branch", choices=["paper", "physical", "both"], default=None)
    shared.add_argument("--format", choices=["csv", "json"], default=None)
    shared.add_argument("--output", default=None, help="output path, default stdout")
    shared.add_argument("--config", default=None, help="key=value config file")
    shared.add_argument("--tolerance", type=float, default=None,
                        help="deviation bound (table2) or relative energy bound (verify)")

    parser = argparse.ArgumentParser(
        prog="dkp-spectra",
        description="Bound-state spectra of a spin-0 relativistic particle "
                    "in a screened Coulomb vector potential.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("energies", parents=[shared],
                   help="closed-form spectrum over n and J")

    sub.add_parser("table2", parents=[shared],
                   help="compare against the built-in reference eigenvalue table")

    p_wf = sub.add_parser("wavefunction", parents=[shared],
                          help="sample the spinor components of one level")
    p_wf.add_argument("n", type=int)
    p_wf.add_argument("J", type=int)
    p_wf.add_argument("--components", default="F,G,H_plus,H_minus",
                      help="comma list out of F,G,H_plus,H_minus")
    p_wf.add_argument("--r-max", dest="r_max", type=float, default=None,
                      help="sampling range in fm")
    p_wf.add_argument("--samples", type=int, default=200)

    p_ver = sub.add_parser("verify", parents=[shared],
                           help="closed forms against the shooting oracle")
    p_ver.add_argument("n", type=int)
    p_ver.add_argument("J", type=int)
    p_ver.add_argument("--exact-oracle", dest="exact_oracle", choices=["on", "off"],
                       default="on", help="also locate the level of the unapproximated equation")

    p_ap = sub.add_parser("approx", parents=[shared],
                          help="potential against its solvable surrogate")
    p_ap.add_argument("--r-max", dest="r_max", type=float, default=None,
                      help="sampling range in fm")
    p_ap.add_argument("--samples", type=int, default=200)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command == "energies":
            return cmd_energies(cfg)
        if args.command == "table2":
            return cmd_table2(cfg)
        if args.command == "wavefunction":
            components = [c.strip() for c in args.components.split(",") if c.strip()]
            return cmd_wavefunction(cfg, args.n, args.J, components, args.r_max, args.samples)
        if args.command == "verify":
            return cmd_verify(cfg, args.n, args.J)
        if args.command == "approx":
            return cmd_approx(cfg, args.r_max, args.samples)
        raise UsageError(f"unknown command {args.command}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NoBoundState, SupercriticalCoupling) as exc:
        print(f"no state: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except SpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
