"""Open-system verification: photon loss at rate kappa during the sequence.

Master equation drho/dt = -i[H, rho] + kappa*(a rho a+ - 1/2 {a+a, rho})
with the pulse's constant drive-frame Hamiltonian.  Integration is
fixed-step classical 4th order: for a constant linear generator the RK4
step equals the degree-4 Taylor polynomial of exp(h*L), so the per-pulse
propagator is that one-step matrix raised to steps_per_pulse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .compiler import PulseSequence, TargetState
from .errors import IntegrationResolutionError
from .fock import kerr_phase_compensation, lowering_operator, pulse_frame_hamiltonian
from .simulate import SimConfig, SimReport, rwa_prefix_states

TRACE_DRIFT_TOL = 1e-6


@dataclass(frozen=True)
class LossConfig:
    kappa: float                 # cavity energy decay rate, units of chi
    steps_per_pulse: int = 4000  # fixed-step integration resolution

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.steps_per_pulse < 10:
            raise ValueError(
                f"steps_per_pulse must be >= 10, got {self.steps_per_pulse}")


def pure_density(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def mean_photon_number(rho: np.ndarray) -> float:
    return float(np.real(np.sum(np.arange(rho.shape[0]) * np.diag(rho))))


def _liouvillian(h: np.ndarray, kappa: float) -> np.ndarray:
    """Superoperator matrix acting on row-major vec(rho)."""
    d = h.shape[0]
    eye = np.eye(d)
    lv = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    if kappa > 0:
        a = lowering_operator(d)
        n_op = a.conj().T @ a
        lv += kappa * (np.kron(a, a.conj())
                       - 0.5 * (np.kron(n_op, eye) + np.kron(eye, n_op.T)))
    return lv


def lindblad_propagator(h: np.ndarray, kappa: float, duration: float,
                        steps: int) -> np.ndarray:
    """Fixed-step 4th-order propagator for one constant-H interval."""
    hl = _liouvillian(h, kappa) * (duration / steps)
    d2 = hl.shape[0]
    step = np.eye(d2, dtype=complex)
    term = np.eye(d2, dtype=complex)
    for k in range(1, 5):
        term = term @ hl / k
        step = step + term
    return np.linalg.matrix_power(step, steps)


def _apply(superop: np.ndarray, rho: np.ndarray) -> np.ndarray:
    d = rho.shape[0]
    return (superop @ rho.reshape(-1)).reshape(d, d)


def _check_integrity(rho: np.ndarray, steps: int) -> float:
    drift = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)
    purity = float(np.real(np.trace(rho @ rho)))
    if not np.isfinite(rho).all() or drift > TRACE_DRIFT_TOL or purity > 1.0 + 1e-6:
        raise IntegrationResolutionError(
            f"integration lost accuracy (trace drift {drift:.3e}, purity "
            f"{purity:.6f}); increase steps_per_pulse above {steps}")
    return drift


def evolve_lindblad_free(rho: np.ndarray, kappa: float, duration: float,
                         steps: int, hamiltonian: np.ndarray | None = None) -> np.ndarray:
    """Free evolution of a density matrix under loss (and optional H)."""
    d = rho.shape[0]
    h = np.zeros((d, d), dtype=complex) if hamiltonian is None else hamiltonian
    if duration == 0:
        return np.array(rho, dtype=complex)
    out = _apply(lindblad_propagator(h, kappa, duration, steps), np.asarray(rho, complex))
    _check_integrity(out, steps)
    return out


def evolve_lindblad_sequence(seq: PulseSequence, config: SimConfig,
                             loss: LossConfig, target: TargetState) -> SimReport:
    """Run the compiled sequence with photon loss; final state is a density matrix.

    Pulses are back-to-back (no free-decay gaps); the Kerr phase
    compensation is applied as a diagonal sandwich after each pulse.
    """
    n = target.n_max
    dim = n + 1 + config.guard
    chi = config.kerr
    ideal = rwa_prefix_states(seq, dim)

    rho = pure_density(np.eye(dim, dtype=complex)[:, 0])
    per_pulse = []
    max_drift = 0.0
    for k, pulse in enumerate(seq.pulses):
        h = pulse_frame_hamiltonian(pulse.index, chi, pulse.amplitude,
                                    pulse.phase, dim)
        prop = lindblad_propagator(h, loss.kappa, pulse.duration,
                                   loss.steps_per_pulse)
        rho = _apply(prop, rho)
        comp = kerr_phase_compensation(pulse.index, chi, pulse.duration, dim)
        rho = comp[:, None] * rho * comp.conj()[None, :]
        max_drift = max(max_drift, _check_integrity(rho, loss.steps_per_pulse))
        per_pulse.append(float(np.real(ideal[k].conj() @ rho @ ideal[k])))

    tvec = target.as_array(dim)
    fid = float(np.real(tvec.conj() @ rho @ tvec))
    leakage = float(np.real(np.sum(np.diag(rho)[n + 1:])))
    return SimReport(
        final_state=rho,
        fidelity_vs_target=min(max(fid, 0.0), 1.0),
        leakage=min(max(leakage, 0.0), 1.0),
        per_pulse_fidelity=tuple(per_pulse),
        truncation_warning=leakage > 0.01,
        trace_drift=max_drift,
    )
