"""Pulse-sequence compiler.

Turns a normalized target superposition sum_n C_n |n> into the N-pulse
ladder sequence: pulse m drives the |m> -> |m+1> transition (detuning
2*m*chi) and deposits coefficient C_m by choosing cos(Omega_m tau_m) =
|C_m| / r_m, where r_m is the population still riding on level m and
Omega_m = g*sqrt(m+1).

Phase bookkeeping: evolving exp(-i*H*tau) under the two-level coupling
puts a factor (-i)*exp(i*phi_m) on the newly reached level, so the phase
of the top coefficient after pulse m is
    Theta_{m+1} = Theta_m + RABI_PHASE_SIGN*pi/2 + phi_m,  Theta_0 = 0,
and phi_m is chosen so that Theta_{m+1} = arg(C_{m+1}).  The sign constant
is shared with the rotating-wave simulator; flipping it in both places
leaves every fidelity unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalConsistencyError, NormalizationError

# Sign of the quarter-turn phase a pulse imprints on the level it populates.
# -1 matches exp(-i*H*tau) time evolution of the two-level coupling.
RABI_PHASE_SIGN = -1.0

NORMALIZATION_TOL = 1e-9
RESIDUAL_TOL = 1e-12


def _wrap_angle(phi: float) -> float:
    """Map an angle into [-pi, pi)."""
    return float((phi + np.pi) % (2.0 * np.pi) - np.pi)


@dataclass(frozen=True)
class TargetState:
    """Normalized coefficients C_0..C_N of the goal superposition.

    Trailing zero coefficients are stripped; the highest kept index is N.
    """

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        if not coeffs:
            raise NormalizationError("target needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        norm_sq = sum(abs(c) ** 2 for c in coeffs)
        if abs(norm_sq - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"coefficients are not normalized: sum |C_n|^2 = {norm_sq!r} "
                f"(deviation {norm_sq - 1.0!r})")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_coefficients(cls, coefficients, renormalize: bool = False) -> "TargetState":
        coeffs = [complex(c) for c in coefficients]
        if renormalize:
            norm = np.sqrt(sum(abs(c) ** 2 for c in coeffs))
            if norm == 0:
                raise NormalizationError("cannot renormalize all-zero coefficients")
            coeffs = [c / norm for c in coeffs]
        return cls(tuple(coeffs))

    @property
    def n_max(self) -> int:
        """Highest occupied Fock index N."""
        return len(self.coefficients) - 1

    def as_array(self, dim: int | None = None) -> np.ndarray:
        vec = np.array(self.coefficients, dtype=complex)
        if dim is not None:
            if dim < vec.size:
                raise ValueError(f"dim {dim} < N+1 = {vec.size}")
            vec = np.pad(vec, (0, dim - vec.size))
        return vec


@dataclass(frozen=True)
class Pulse:
    """One rectangular laser pulse addressing |index> -> |index+1>."""

    index: int
    detuning: float   # 2*index*kerr by construction
    amplitude: float  # g > 0
    phase: float      # rad, in [-pi, pi)
    duration: float   # >= 0

    @property
    def rabi_frequency(self) -> float:
        return self.amplitude * np.sqrt(self.index + 1.0)

    @property
    def rotation_angle(self) -> float:
        """Omega_m * tau_m, in [0, pi/2] for compiled pulses."""
        return self.rabi_frequency * self.duration


@dataclass(frozen=True)
class PulseRecord:
    """Compiler bookkeeping for one pulse: state just before it fires."""

    residual: float           # r_m = sqrt(1 - sum_{l<m} |C_l|^2)
    accumulated_phase: float  # Theta_m, phase of the top coefficient


@dataclass(frozen=True)
class CompileLog:
    global_phase: float = 0.0  # factored-out phase of the first nonzero C
    records: tuple[PulseRecord, ...] = ()


@dataclass(frozen=True)
class PulseSequence:
    pulses: tuple[Pulse, ...]
    kerr: float
    compile_log: CompileLog = field(default_factory=CompileLog)

    def __len__(self) -> int:
        return len(self.pulses)


def compile_sequence(target: TargetState, g: float, kerr: float = 1.0) -> PulseSequence:
    """Compile a target superposition into its N-pulse sequence.

    g is the single drive amplitude shared by all pulses (durations carry
    all the freedom); the caller is responsible for g << kerr, the
    simulator measures the consequences.
    """
    if g <= 0:
        raise ValueError(f"drive amplitude g must be > 0, got {g}")
    if kerr <= 0:
        raise ValueError(f"kerr must be > 0, got {kerr}")

    coeffs = np.array(target.coefficients, dtype=complex)
    first = int(np.flatnonzero(np.abs(coeffs) > 0)[0])
    global_phase = float(np.angle(coeffs[first]))
    coeffs = coeffs * np.exp(-1j * global_phase)

    n = target.n_max
    pulses = []
    records = []
    residual = 1.0
    theta = 0.0
    for m in range(n):
        if residual < RESIDUAL_TOL:
            raise InternalConsistencyError(
                f"residual exhausted at pulse {m} before reaching N={n}")
        ratio = abs(coeffs[m]) / residual
        if ratio > 1.0 + 1e-12:
            raise InternalConsistencyError(
                f"|C_{m}|/r_{m} = {ratio} > 1; input state corrupt")
        angle = np.arccos(min(ratio, 1.0))
        omega = g * np.sqrt(m + 1.0)
        if coeffs[m + 1] == 0:
            phi = 0.0
        else:
            phi = _wrap_angle(np.angle(coeffs[m + 1]) - theta
                              - RABI_PHASE_SIGN * np.pi / 2.0)
        records.append(PulseRecord(residual=float(residual),
                                   accumulated_phase=float(theta)))
        pulses.append(Pulse(index=m, detuning=2.0 * m * kerr, amplitude=g,
                            phase=phi, duration=float(angle / omega)))
        residual = residual * float(np.sin(angle))
        theta = _wrap_angle(theta + RABI_PHASE_SIGN * np.pi / 2.0 + phi)

    return PulseSequence(pulses=tuple(pulses), kerr=kerr,
                         compile_log=CompileLog(global_phase=global_phase,
                                                records=tuple(records)))


def decompile_check(seq: PulseSequence) -> TargetState:
    """Closed-form forward evaluation of the recursion, no simulation.

    Replays the per-pulse cos/sin split and phase bookkeeping to predict
    the state the sequence produces, re-applying the global phase recorded
    at compile time.  Round trip with compile_sequence reproduces the
    original target coefficient by coefficient.
    """
    n = len(seq.pulses)
    coeffs = np.zeros(n + 1, dtype=complex)
    residual = 1.0
    theta = 0.0
    for pulse in seq.pulses:
        angle = pulse.rotation_angle
        coeffs[pulse.index] = residual * np.cos(angle) * np.exp(1j * theta)
        residual = residual * np.sin(angle)
        theta = _wrap_angle(theta + RABI_PHASE_SIGN * np.pi / 2.0 + pulse.phase)
    coeffs[n] = residual * np.exp(1j * theta)
    coeffs *= np.exp(1j * seq.compile_log.global_phase)
    return TargetState.from_coefficients(coeffs, renormalize=True)
