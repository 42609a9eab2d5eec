"""Command-line front end.

A job is a JSON document (file path argument, or '-' for stdin) with
fields:

    coefficients    list of [re, im] pairs, C_0..C_N   (required)
    mode            compile | rwa | full | lindblad | sweep
    g_over_chi      drive amplitude in units of chi (all modes but sweep)
    guard           extra Fock levels beyond N (default 10)
    renormalize     accept unnormalized coefficients (default false)
    sweep_ratios    list of g/chi values (sweep mode)
    kappa_over_chi  photon loss rate in units of chi (lindblad mode)
    steps_per_pulse fixed-step resolution for lindblad (default 4000)

Flags override the corresponding document fields.  Outputs land in --out
(default '.'): report.json always, sweep.csv additionally in sweep mode.

Exit codes: 0 ok, 2 parse error, 3 normalization error, 4 numerical
contract violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report as report_mod
from .compiler import TargetState, compile_sequence
from .errors import (
    JobSpecError,
    KerrPulseError,
    NormalizationError,
)
from .lindblad import LossConfig, evolve_lindblad_sequence, mean_photon_number
from .simulate import SimConfig, evolve_full_sequence, evolve_rwa_sequence, rwa_error_sweep

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NORMALIZATION = 3
EXIT_NUMERICAL = 4

MODES = ("compile", "rwa", "full", "lindblad", "sweep")


@dataclass(frozen=True)
class JobSpec:
    coefficients: tuple[complex, ...]
    mode: str
    g_over_chi: float | None = None
    guard: int = 10
    renormalize: bool = False
    sweep_ratios: tuple[float, ...] | None = None
    kappa_over_chi: float | None = None
    steps_per_pulse: int = 4000


def _require(cond: bool, message: str):
    if not cond:
        raise JobSpecError(message)


def parse_jobspec(text: str, overrides: dict | None = None) -> JobSpec:
    """Parse and validate a JSON jobspec document.

    `overrides` carries command-line flag values that replace the
    corresponding document fields before validation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobSpecError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    _require(isinstance(doc, dict), "jobspec must be a JSON object")
    if overrides:
        doc = {**doc, **overrides}

    known = {"coefficients", "mode", "g_over_chi", "guard", "renormalize",
             "sweep_ratios", "kappa_over_chi", "steps_per_pulse"}
    for key in doc:
        _require(key in known, f"unknown field {key!r}")

    raw = doc.get("coefficients")
    _require(isinstance(raw, list) and len(raw) > 0,
             "field 'coefficients' must be a nonempty list of [re, im] pairs")
    coeffs = []
    for k, pair in enumerate(raw):
        _require(isinstance(pair, list) and len(pair) == 2
                 and all(isinstance(x, (int, float)) for x in pair),
                 f"coefficients[{k}] must be an [re, im] pair")
        coeffs.append(complex(pair[0], pair[1]))

    mode = doc.get("mode", "compile")
    _require(mode in MODES, f"field 'mode' must be one of {MODES}, got {mode!r}")

    g = doc.get("g_over_chi")
    if g is not None:
        _require(isinstance(g, (int, float)) and g > 0,
                 "field 'g_over_chi' must be a positive number")
    _require(mode == "sweep" or g is not None,
             f"mode {mode!r} requires field 'g_over_chi'")

    guard = doc.get("guard", 10)
    _require(isinstance(guard, int) and guard >= 0,
             "field 'guard' must be a nonnegative integer")

    renorm = doc.get("renormalize", False)
    _require(isinstance(renorm, bool), "field 'renormalize' must be a boolean")

    ratios = doc.get("sweep_ratios")
    if mode == "sweep":
        _require(isinstance(ratios, list) and len(ratios) > 0
                 and all(isinstance(r, (int, float)) and r > 0 for r in ratios),
                 "mode 'sweep' requires 'sweep_ratios', a nonempty list of positive numbers")
        ratios = tuple(float(r) for r in ratios)
    else:
        ratios = None

    kappa = doc.get("kappa_over_chi")
    if mode == "lindblad":
        _require(isinstance(kappa, (int, float)) and kappa >= 0,
                 "mode 'lindblad' requires 'kappa_over_chi' >= 0")
        kappa = float(kappa)
    else:
        kappa = None

    steps = doc.get("steps_per_pulse", 4000)
    _require(isinstance(steps, int) and steps >= 10,
             "field 'steps_per_pulse' must be an integer >= 10")

    spec = JobSpec(coefficients=tuple(coeffs), mode=mode,
                   g_over_chi=None if g is None else float(g),
                   guard=guard, renormalize=renorm, sweep_ratios=ratios,
                   kappa_over_chi=kappa, steps_per_pulse=steps)
    # Target construction enforces the normalization contract up front.
    _target_of(spec)
    return spec


def _target_of(spec: JobSpec) -> TargetState:
    return TargetState.from_coefficients(spec.coefficients,
                                         renormalize=spec.renormalize)


def _job_echo(spec: JobSpec) -> dict:
    echo = {
        "coefficients": [[c.real, c.imag] for c in spec.coefficients],
        "mode": spec.mode,
        "guard": spec.guard,
        "renormalize": spec.renormalize,
    }
    if spec.g_over_chi is not None:
        echo["g_over_chi"] = spec.g_over_chi
    if spec.sweep_ratios is not None:
        echo["sweep_ratios"] = list(spec.sweep_ratios)
    if spec.kappa_over_chi is not None:
        echo["kappa_over_chi"] = spec.kappa_over_chi
        echo["steps_per_pulse"] = spec.steps_per_pulse
    return echo


def run_job(spec: JobSpec, out_dir: str | Path = ".") -> dict:
    """Execute one job and write its report files; returns the report dict."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    target = _target_of(spec)
    config = SimConfig(guard=spec.guard)
    report: dict = {"job": _job_echo(spec), "target_n_max": target.n_max}

    if spec.mode == "sweep":
        rows = rwa_error_sweep(target, list(spec.sweep_ratios), config)
        report["sweep"] = [
            {"ratio": r, "infidelity": i, "leakage": l} for r, i, l in rows
        ]
        (out / "sweep.csv").write_text(report_mod.render_sweep_csv(rows))
    else:
        seq = compile_sequence(target, g=spec.g_over_chi, kerr=1.0)
        report["pulses"] = report_mod.pulse_table(seq)
        report["compile_log"] = report_mod.compile_log_table(seq)
        if spec.mode == "rwa":
            psi = evolve_rwa_sequence(seq, target.n_max + 1)
            report["metrics"] = {
                "fidelity_vs_target": _rwa_fidelity(psi, target),
                "final_amplitudes": [[a.real, a.imag] for a in psi],
            }
        elif spec.mode == "full":
            sim = evolve_full_sequence(seq, config, target)
            report["metrics"] = {
                "fidelity_vs_target": sim.fidelity_vs_target,
                "infidelity": 1.0 - sim.fidelity_vs_target,
                "leakage": sim.leakage,
                "per_pulse_fidelity": list(sim.per_pulse_fidelity),
                "truncation_warning": sim.truncation_warning,
                "final_amplitudes": [[a.real, a.imag] for a in sim.final_state],
            }
        elif spec.mode == "lindblad":
            loss = LossConfig(kappa=spec.kappa_over_chi,
                              steps_per_pulse=spec.steps_per_pulse)
            sim = evolve_lindblad_sequence(seq, config, loss, target)
            report["metrics"] = {
                "fidelity_vs_target": sim.fidelity_vs_target,
                "leakage": sim.leakage,
                "per_pulse_fidelity": list(sim.per_pulse_fidelity),
                "trace_drift": sim.trace_drift,
                "mean_photon_number": mean_photon_number(sim.final_state),
            }

    (out / "report.json").write_text(report_mod.render_report(report))
    return report


def _rwa_fidelity(psi, target: TargetState) -> float:
    from .fock import fidelity
    return fidelity(psi, target.as_array())


def _flag_overrides(args) -> dict:
    overrides: dict = {}
    if args.mode is not None:
        overrides["mode"] = args.mode
    if args.guard is not None:
        overrides["guard"] = args.guard
    if args.renormalize:
        overrides["renormalize"] = True
    if args.sweep_ratios is not None:
        try:
            overrides["sweep_ratios"] = [float(r) for r in args.sweep_ratios.split(",")]
        except ValueError as exc:
            raise JobSpecError(f"bad --sweep-ratios value: {exc}") from exc
    if args.kappa is not None:
        overrides["kappa_over_chi"] = args.kappa
    return overrides


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kerrpulse",
        description="Compile and verify Fock-superposition pulse sequences "
                    "for a Kerr-nonlinear cavity.")
    parser.add_argument("jobspec", help="path to a JSON jobspec, or '-' for stdin")
    parser.add_argument("--mode", choices=MODES, default=None)
    parser.add_argument("--guard", type=int, default=None)
    parser.add_argument("--renormalize", action="store_true")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--sweep-ratios", default=None,
                        help="comma-separated g/chi values")
    parser.add_argument("--kappa", type=float, default=None,
                        help="photon loss rate in units of chi")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.jobspec == "-":
            text = sys.stdin.read()
        else:
            path = Path(args.jobspec)
            if not path.exists():
                raise JobSpecError(f"jobspec file not found: {path}")
            text = path.read_text()
        spec = parse_jobspec(text, overrides=_flag_overrides(args))
        run_job(spec, args.out)
    except JobSpecError as exc:
        print(f"kerrpulse: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NormalizationError as exc:
        print(f"kerrpulse: normalization error: {exc}", file=sys.stderr)
        return EXIT_NORMALIZATION
    except KerrPulseError as exc:
        print(f"kerrpulse: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
