"""Per-gate transfer matrices for the four gate types.

Gate matrices map input-mode amplitudes to output-mode amplitudes
(column index = input mode, row index = output mode).  The two lossy
mixer variants are 4x4: rows/columns 0-1 are the observed modes, 2-3
are the unobserved loss modes that the circuit assembler allocates.
"""

import enum
import math

import numpy as np


class GateType(enum.Enum):
    """Gate vocabulary; values are the names used in circuit documents."""

    PHASE = "P"
    MIXER = "MG"
    MIXER_LOSSY_UNCORRELATED = "MGL1"
    MIXER_LOSSY_CORRELATED = "MGL2"

    @property
    def n_modes(self) -> int:
        """Observed modes the gate acts on."""
        return 1 if self is GateType.PHASE else 2

    @property
    def n_loss_modes(self) -> int:
        """Private unobserved modes the gate introduces."""
        return 2 if self in (GateType.MIXER_LOSSY_UNCORRELATED,
                             GateType.MIXER_LOSSY_CORRELATED) else 0

    @property
    def param_names(self) -> tuple[str, ...]:
        return _PARAM_NAMES[self]


_PARAM_NAMES = {
    GateType.PHASE: ("phi",),
    GateType.MIXER: ("theta", "phi"),
    GateType.MIXER_LOSSY_UNCORRELATED: ("theta", "phi", "eta1", "eta2"),
    GateType.MIXER_LOSSY_CORRELATED: ("theta", "phi", "eta"),
}


def _check_finite(**params: float) -> None:
    for name, value in params.items():
        if not math.isfinite(value):
            raise ValueError(f"gate parameter {name} must be finite, got {value}")


def _check_transmissivity(**etas: float) -> None:
    _check_finite(**etas)
    for name, value in etas.items():
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"transmissivity {name} must lie in [0, 1], got {value}")


def gate_phase(phi: float) -> np.ndarray:
    """1x1 phase-shifter matrix [e^{i phi}]."""
    _check_finite(phi=phi)
    return np.array([[np.exp(1j * phi)]], dtype=complex)


def gate_mixer(theta: float, phi: float) -> np.ndarray:
    """2x2 mixer (beam-splitter) matrix.

    Transmission amplitude t = cos(theta), reflection amplitude
    r = e^{-i phi} sin(theta), arranged as [[t, r], [-r*, t]].
    """
    _check_finite(theta=theta, phi=phi)
    t = math.cos(theta)
    r = np.exp(-1j * phi) * math.sin(theta)
    return np.array([[t, r], [-np.conj(r), t]], dtype=complex)


def _loss_coupler(eta: float, observed: int, loss: int) -> np.ndarray:
    """4x4 identity with a real beam splitter on (observed, loss)."""
    a = math.sqrt(eta)
    b = math.sqrt(1.0 - eta)
    u = np.eye(4, dtype=complex)
    u[observed, observed] = a
    u[observed, loss] = b
    u[loss, observed] = -b
    u[loss, loss] = a
    return u


def gate_mixer_lossy_uncorrelated(theta: float, phi: float,
                                  eta1: float, eta2: float) -> np.ndarray:
    """4x4 mixer with independent per-arm loss.

    Each observed arm passes through its own loss coupler before the
    ideal mixer: arm 0 couples to loss mode 2 with transmissivity eta1,
    arm 1 to loss mode 3 with eta2.  The result is
    blockdiag(M, I_2) . L1 . L2, unitary for any parameters in range.
    """
    _check_finite(theta=theta, phi=phi)
    _check_transmissivity(eta1=eta1, eta2=eta2)
    mixer = np.eye(4, dtype=complex)
    mixer[:2, :2] = gate_mixer(theta, phi)
    return mixer @ _loss_coupler(eta1, 0, 2) @ _loss_coupler(eta2, 1, 3)


def gate_mixer_lossy_correlated(theta: float, phi: float, eta: float) -> np.ndarray:
    """4x4 mixer whose two arms lose photons through one shared process.

    Block form [[a M, b M], [-b M, a M]] with a = sqrt(eta),
    b = sqrt(1 - eta) and M the ideal mixer: the surviving and lost
    light both pass through the same mixing process, so the loss is
    maximally correlated between the arms.  Unitary because
    a^2 + b^2 = 1 and M is unitary.
    """
    _check_finite(theta=theta, phi=phi)
    _check_transmissivity(eta=eta)
    m = gate_mixer(theta, phi)
    a = math.sqrt(eta)
    b = math.sqrt(1.0 - eta)
    return np.block([[a * m, b * m], [-b * m, a * m]])


def gate_matrix(gate_type: GateType, params: tuple[float, ...]) -> np.ndarray:
    """Build the matrix for `gate_type` from its parameter list."""
    expected = len(gate_type.param_names)
    if len(params) != expected:
        raise ValueError(
            f"{gate_type.value} takes {expected} parameters "
            f"({', '.join(gate_type.param_names)}), got {len(params)}")
    builder = {
        GateType.PHASE: gate_phase,
        GateType.MIXER: gate_mixer,
        GateType.MIXER_LOSSY_UNCORRELATED: gate_mixer_lossy_uncorrelated,
        GateType.MIXER_LOSSY_CORRELATED: gate_mixer_lossy_correlated,
    }[gate_type]
    return builder(*params)
