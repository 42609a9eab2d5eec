"""Sequence simulators: idealized rotating-wave dynamics and the full
driven-Kerr Hamiltonian in a truncated Fock space.

The full simulation runs each pulse in its own drive frame (constant H,
one matrix exponential per pulse) and chains frames with the diagonal
Kerr phase compensation, so the final amplitudes are directly comparable
with the compiler's interaction-picture coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import compiler
from .compiler import PulseSequence, TargetState, Pulse
from .errors import InvalidDimensionError
from .fock import (
    fidelity,
    kerr_phase_compensation,
    propagate_const,
    pulse_frame_hamiltonian,
    vacuum_state,
)

LEAKAGE_WARNING_THRESHOLD = 0.01


@dataclass(frozen=True)
class SimConfig:
    """Simulation knobs shared by the full and open-system runs."""

    guard: int = 10              # extra Fock levels beyond N
    kerr: float = 1.0
    record_trajectory: bool = False
    trajectory_samples: int = 2  # time points per pulse when recording

    def __post_init__(self):
        if self.guard < 0:
            raise ValueError(f"guard must be >= 0, got {self.guard}")
        if self.record_trajectory and self.trajectory_samples < 2:
            raise ValueError("trajectory_samples must be >= 2 when recording")


@dataclass(frozen=True)
class SimReport:
    final_state: np.ndarray
    fidelity_vs_target: float
    leakage: float               # population above level N
    per_pulse_fidelity: tuple[float, ...]
    trajectory: tuple[tuple[float, np.ndarray], ...] | None = None
    truncation_warning: bool = False
    trace_drift: float = 0.0     # only populated by the open-system run

    def __post_init__(self):
        assert -1e-12 <= self.fidelity_vs_target <= 1.0 + 1e-12
        assert -1e-12 <= self.leakage <= 1.0 + 1e-12


def evolve_rwa_pulse(state: np.ndarray, pulse: Pulse) -> np.ndarray:
    """Exact two-level rotation on the (|i>, |i+1>) subspace.

    Implements exp(-i*H*tau) for the effective coupling
    Omega*(e^{i phi}|i+1><i| + h.c.); all other amplitudes untouched.
    """
    i = pulse.index
    if state.size < i + 2:
        raise InvalidDimensionError(
            f"state dim {state.size} too small for pulse index {i}")
    angle = pulse.rotation_angle
    c, s = np.cos(angle), np.sin(angle)
    # RABI_PHASE_SIGN = -1 reproduces the -i*e^{i phi}*sin convention of
    # exp(-i*H*tau); the compiler shares the constant.
    j = compiler.RABI_PHASE_SIGN * 1j
    out = np.array(state, dtype=complex)
    a, b = out[i], out[i + 1]
    out[i] = c * a + j * np.exp(-1j * pulse.phase) * s * b
    out[i + 1] = j * np.exp(1j * pulse.phase) * s * a + c * b
    return out


def evolve_rwa_sequence(seq: PulseSequence, dim: int) -> np.ndarray:
    """Fold evolve_rwa_pulse over the sequence starting from vacuum."""
    if dim < len(seq.pulses) + 1:
        raise InvalidDimensionError(
            f"dim {dim} < N+1 = {len(seq.pulses) + 1}")
    psi = vacuum_state(dim)
    for pulse in seq.pulses:
        psi = evolve_rwa_pulse(psi, pulse)
    return psi


def rwa_prefix_states(seq: PulseSequence, dim: int) -> list[np.ndarray]:
    """Ideal state after each pulse (closed-form recursion), embedded in dim."""
    psi = vacuum_state(dim)
    states = []
    for pulse in seq.pulses:
        psi = evolve_rwa_pulse(psi, pulse)
        states.append(psi)
    return states


def evolve_full_sequence(seq: PulseSequence, config: SimConfig,
                         target: TargetState) -> SimReport:
    """Propagate the sequence under the full driven-Kerr Hamiltonian.

    Dimension is N+1+guard; leakage is the final population in the guard
    levels above N.  Per-pulse fidelities compare pulse-boundary states
    against the ideal rotating-wave intermediates.
    """
    n = target.n_max
    dim = n + 1 + config.guard
    chi = config.kerr
    ideal = rwa_prefix_states(seq, dim)

    psi = vacuum_state(dim)
    per_pulse = []
    trajectory = [] if config.record_trajectory else None
    t = 0.0
    for k, pulse in enumerate(seq.pulses):
        h = pulse_frame_hamiltonian(pulse.index, chi, pulse.amplitude,
                                    pulse.phase, dim)
        if trajectory is not None:
            for frac in np.linspace(0.0, 1.0, config.trajectory_samples)[1:]:
                tau = frac * pulse.duration
                sampled = propagate_const(psi, h, tau)
                sampled *= kerr_phase_compensation(pulse.index, chi, tau, dim)
                trajectory.append((t + tau, sampled))
        psi = propagate_const(psi, h, pulse.duration)
        psi = kerr_phase_compensation(pulse.index, chi, pulse.duration, dim) * psi
        t += pulse.duration
        per_pulse.append(fidelity(psi, ideal[k]))

    tvec = target.as_array(dim)
    fid = fidelity(psi, tvec)
    leakage = float(np.sum(np.abs(psi[n + 1:]) ** 2))
    return SimReport(
        final_state=psi,
        fidelity_vs_target=fid,
        leakage=leakage,
        per_pulse_fidelity=tuple(per_pulse),
        trajectory=tuple(trajectory) if trajectory is not None else None,
        truncation_warning=leakage > LEAKAGE_WARNING_THRESHOLD,
    )


def rwa_error_sweep(target: TargetState, ratios, config: SimConfig):
    """Recompile and fully simulate the target at each g/chi ratio.

    Returns a list of (ratio, infidelity, leakage) rows, ascending in ratio.
    """
    ratios = list(ratios)
    if any(r <= 0 for r in ratios):
        raise ValueError("g/chi ratios must be positive")
    if ratios != sorted(ratios):
        raise ValueError("g/chi ratios must be sorted ascending")
    rows = []
    for ratio in ratios:
        seq = compiler.compile_sequence(target, g=ratio * config.kerr,
                                        kerr=config.kerr)
        report = evolve_full_sequence(seq, config, target)
        rows.append((ratio, 1.0 - report.fidelity_vs_target, report.leakage))
    return rows
