"""Deterministic job reports: a JSON document per job plus a flat CSV for sweeps.

All numbers are plain Python floats serialized with shortest round-trip
formatting, so identical inputs yield byte-identical output.
"""

from __future__ import annotations

import json

import numpy as np

from .compiler import CompileLog, Pulse, PulseRecord, PulseSequence

SWEEP_CSV_HEADER = "ratio,infidelity,leakage"


def _plain(value):
    """Recursively convert numpy scalars/arrays and complex to JSON-safe types."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def pulse_table(seq: PulseSequence) -> list[dict]:
    """One row per pulse, everything in units of 1/chi or chi."""
    chi = seq.kerr
    return [
        {
            "index": p.index,
            "detuning_over_chi": p.detuning / chi,
            "g_over_chi": p.amplitude / chi,
            "phase_rad": p.phase,
            "duration_chi": p.duration * chi,
        }
        for p in seq.pulses
    ]


def compile_log_table(seq: PulseSequence) -> dict:
    return {
        "global_phase": seq.compile_log.global_phase,
        "per_pulse": [
            {"residual": r.residual, "accumulated_phase": r.accumulated_phase}
            for r in seq.compile_log.records
        ],
    }


def read_pulse_sequence(report: dict, kerr: float = 1.0) -> PulseSequence:
    """Rebuild a PulseSequence from an emitted report document."""
    pulses = tuple(
        Pulse(
            index=int(row["index"]),
            detuning=float(row["detuning_over_chi"]) * kerr,
            amplitude=float(row["g_over_chi"]) * kerr,
            phase=float(row["phase_rad"]),
            duration=float(row["duration_chi"]) / kerr,
        )
        for row in report["pulses"]
    )
    log = report.get("compile_log", {})
    records = tuple(
        PulseRecord(residual=float(r["residual"]),
                    accumulated_phase=float(r["accumulated_phase"]))
        for r in log.get("per_pulse", [])
    )
    return PulseSequence(
        pulses=pulses, kerr=kerr,
        compile_log=CompileLog(global_phase=float(log.get("global_phase", 0.0)),
                               records=records))


def render_report(report: dict) -> str:
    return json.dumps(_plain(report), indent=2, sort_keys=True) + "\n"


def render_sweep_csv(rows) -> str:
    lines = [SWEEP_CSV_HEADER]
    for ratio, infidelity, leakage in rows:
        lines.append(f"{ratio:.17g},{infidelity:.17g},{leakage:.17g}")
    return "\n".join(lines) + "\n"
