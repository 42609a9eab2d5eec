"""Truncated-Fock-space numerics.

States are plain 1-D complex numpy arrays indexed by photon number n;
Hamiltonians are dense Hermitian matrices.  The time unit is fixed by the
Kerr strength chi (chi = 1 by convention), so every rate in this package
is dimensionless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ContractViolationError, InvalidDimensionError, InvalidStateError

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class HamiltonianParams:
    """Parameters of the driven-Kerr cavity Hamiltonian.

    detuning: laser-cavity detuning (rad/time), enters the diagonal as detuning*n.
    kerr: Kerr nonlinearity chi > 0 (rad/time).
    amplitude: drive amplitude g >= 0 (rad/time).
    phase: drive phase (rad).
    dim: Fock-space truncation D.
    """

    detuning: float
    kerr: float
    amplitude: float
    phase: float
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise InvalidDimensionError(f"dim must be >= 1, got {self.dim}")
        if self.kerr <= 0:
            raise ValueError(f"kerr must be > 0, got {self.kerr}")
        if self.amplitude < 0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")
        if self.amplitude > 0 and self.dim < 2:
            raise InvalidDimensionError("dim must be >= 2 when amplitude > 0")


def fock_state(n: int, dim: int) -> np.ndarray:
    """Basis state |n> in a D-dimensional truncated Fock space."""
    if not 0 <= n < dim:
        raise InvalidDimensionError(f"level {n} does not fit in dim {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[n] = 1.0
    return psi


def vacuum_state(dim: int) -> np.ndarray:
    return fock_state(0, dim)


def lowering_operator(dim: int) -> np.ndarray:
    """Annihilation operator a on the truncated space."""
    a = np.zeros((dim, dim), dtype=complex)
    n = np.arange(dim - 1)
    a[n, n + 1] = np.sqrt(n + 1)
    return a


def build_hamiltonian(params: HamiltonianParams) -> np.ndarray:
    """Dense driven-Kerr Hamiltonian.

    H[n,n]   = detuning*n + kerr*n*(n-1)
    H[n+1,n] = amplitude*exp(i*phase)*sqrt(n+1), H[n,n+1] its conjugate.
    Hermitian by construction.
    """
    d = params.dim
    n = np.arange(d)
    h = np.zeros((d, d), dtype=complex)
    h[n, n] = params.detuning * n + params.kerr * n * (n - 1)
    if d > 1:
        off = params.amplitude * np.exp(1j * params.phase) * np.sqrt(n[:-1] + 1.0)
        h[n[:-1] + 1, n[:-1]] = off
        h[n[:-1], n[:-1] + 1] = off.conj()
    return h


def pulse_frame_hamiltonian(index: int, kerr: float, amplitude: float,
                            phase: float, dim: int) -> np.ndarray:
    """Hamiltonian of pulse `index` in its own drive frame.

    The laser addressing the |i> -> |i+1> transition is detuned by 2*i*kerr;
    in the frame rotating with that drive the diagonal becomes
    kerr*(n-i)*(n-i-1), which vanishes on the two resonant levels.  Built
    from build_hamiltonian plus the constant kerr*i*(i+1) that restores the
    exact resonant form.
    """
    h = build_hamiltonian(HamiltonianParams(
        detuning=-2.0 * index * kerr, kerr=kerr,
        amplitude=amplitude, phase=phase, dim=dim))
    h[np.diag_indices(dim)] += kerr * index * (index + 1)
    return h


def propagate_const(state: np.ndarray, hamiltonian: np.ndarray,
                    duration: float) -> np.ndarray:
    """Evolve a state under a constant Hamiltonian: exp(-i*H*t) @ state.

    Uses dense scaling-and-squaring; exact up to floating point for the
    piecewise-constant pulses used throughout.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    if duration < 0:
        raise ContractViolationError(f"duration must be >= 0, got {duration}")
    if np.max(np.abs(h - h.conj().T)) > HERMITICITY_TOL:
        raise ContractViolationError("Hamiltonian is not Hermitian within 1e-12")
    if duration == 0:
        return np.array(state, dtype=complex)
    return expm(-1j * h * duration) @ np.asarray(state, dtype=complex)


def kerr_phase_compensation(pulse_index: int, kerr: float, duration: float,
                            dim: int) -> np.ndarray:
    """Diagonal unitary undoing the Kerr phases accumulated during a pulse.

    Entry n is exp(+i*kerr*(n-i)*(n-i-1)*duration); exactly 1 on the two
    resonant levels n = i and n = i+1.
    """
    if pulse_index < 0:
        raise ValueError(f"pulse_index must be >= 0, got {pulse_index}")
    if duration < 0:
        raise ContractViolationError(f"duration must be >= 0, got {duration}")
    n = np.arange(dim)
    return np.exp(1j * kerr * (n - pulse_index) * (n - pulse_index - 1) * duration)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2, invariant under a global phase on either argument.

    States of unequal dimension are compared by zero-padding the shorter.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise InvalidStateError("fidelity of a zero-norm state is undefined")
    d = max(a.size, b.size)
    if a.size < d:
        a = np.pad(a, (0, d - a.size))
    if b.size < d:
        b = np.pad(b, (0, d - b.size))
    return float(np.abs(np.vdot(a, b)) ** 2 / (na * nb) ** 2)
