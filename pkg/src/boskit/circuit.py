"""Circuits: gate placement, static well-formedness checks, transfer matrix.

A Circuit is an ordered list of gates on a fixed number of observed
modes; list order is temporal order (the first gate acts first).  Lossy
gates each own two private loss modes, allocated in gate order after the
observed modes, so the assembled transfer matrix acts on
n_modes + 2 * (number of lossy gates) modes in a reproducible layout.

Circuits are plain data and may be constructed in malformed states;
`check_static` is the validator and returns diagnostics instead of
raising.  Operations that need a well-formed circuit raise
`StaticSemanticsError` carrying those diagnostics.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gates import GateType, gate_matrix


@dataclass(frozen=True)
class GateSpec:
    """A gate type with its observed-mode positions and parameter values."""

    gate_type: GateType
    modes: tuple[int, ...]
    params: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))


@dataclass(frozen=True)
class Circuit:
    n_modes: int
    gates: tuple[GateSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def n_loss_modes(self) -> int:
        return sum(g.gate_type.n_loss_modes for g in self.gates)

    @property
    def n_total_modes(self) -> int:
        return self.n_modes + self.n_loss_modes


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    gate_index: int = -1  # -1 when the violation is not tied to one gate

    def __str__(self):
        where = f" (gate {self.gate_index})" if self.gate_index >= 0 else ""
        return f"{self.rule}{where}: {self.message}"


@dataclass(frozen=True)
class StaticDiagnostics:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


class StaticSemanticsError(ValueError):
    """Raised by operations whose meaning is undefined on malformed circuits."""

    def __init__(self, diagnostics: StaticDiagnostics):
        self.diagnostics = diagnostics
        lines = "; ".join(str(v) for v in diagnostics.violations)
        super().__init__(f"static semantics violated: {lines}")


def _structural_violations(circuit: Circuit) -> list[Violation]:
    found: list[Violation] = []
    if circuit.n_modes < 1:
        found.append(Violation(
            "R3", f"circuit must have at least one mode, got {circuit.n_modes}"))
    for i, gate in enumerate(circuit.gates):
        arity = gate.gate_type.n_modes
        if len(gate.modes) != arity or len(set(gate.modes)) != len(gate.modes):
            found.append(Violation(
                "R2",
                f"{gate.gate_type.value} must act on exactly {arity} distinct "
                f"mode(s), got {list(gate.modes)}", i))
        for m in gate.modes:
            if not 0 <= m < circuit.n_modes:
                found.append(Violation(
                    "R3",
                    f"mode index {m} out of range for {circuit.n_modes} modes", i))
        names = gate.gate_type.param_names
        if len(gate.params) != len(names):
            found.append(Violation(
                "R4",
                f"{gate.gate_type.value} takes {len(names)} parameter(s) "
                f"({', '.join(names)}), got {len(gate.params)}", i))
        else:
            for name, value in zip(names, gate.params):
                if not math.isfinite(value):
                    found.append(Violation(
                        "R4", f"parameter {name} must be finite, got {value}", i))
                elif name.startswith("eta") and not 0.0 <= value <= 1.0:
                    found.append(Violation(
                        "R4",
                        f"transmissivity {name} must lie in [0, 1], got {value}", i))
    return found


def check_static(circuit: Circuit, input_state: Sequence[int]) -> StaticDiagnostics:
    """Run all static well-formedness rules; never raises.

    Rules: R1 input length equals the mode count; R2 gates act on the
    right number of distinct modes; R3 mode indices in range; R4
    parameter arity/finiteness/ranges per gate type; R5 input
    occupations are non-negative integers.
    """
    found = _structural_violations(circuit)
    if len(input_state) != circuit.n_modes:
        found.append(Violation(
            "R1",
            f"input has {len(input_state)} mode(s) but the circuit has "
            f"{circuit.n_modes}"))
    for m, n in enumerate(input_state):
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
            found.append(Violation(
                "R5",
                f"input occupation for mode {m} must be a non-negative "
                f"integer, got {n!r}"))
    return StaticDiagnostics(tuple(found))


def check_structure(circuit: Circuit) -> StaticDiagnostics:
    """Input-independent subset of `check_static` (rules R2-R4)."""
    return StaticDiagnostics(tuple(_structural_violations(circuit)))


def embed(gate: np.ndarray, target_modes: Sequence[int], total_modes: int) -> np.ndarray:
    """Place `gate` on `target_modes` of a `total_modes`-mode identity."""
    gate = np.asarray(gate, dtype=complex)
    k = len(target_modes)
    if gate.shape != (k, k):
        raise ValueError(
            f"gate is {gate.shape} but {k} target modes were given")
    if len(set(target_modes)) != k:
        raise ValueError(f"target modes must be distinct, got {list(target_modes)}")
    for m in target_modes:
        if not 0 <= m < total_modes:
            raise ValueError(f"target mode {m} out of range for {total_modes} modes")
    out = np.eye(total_modes, dtype=complex)
    idx = np.asarray(target_modes)
    out[np.ix_(idx, idx)] = gate
    return out


def loss_mode_layout(circuit: Circuit) -> list[tuple[int, ...]]:
    """Loss-mode indices per gate, allocated in gate order after the observed modes."""
    layout = []
    next_free = circuit.n_modes
    for gate in circuit.gates:
        k = gate.gate_type.n_loss_modes
        layout.append(tuple(range(next_free, next_free + k)))
        next_free += k
    return layout


def assemble_transfer_matrix(circuit: Circuit) -> np.ndarray:
    """Compose the embedded gate matrices into the circuit transfer matrix.

    Returns an M x M unitary with M = n_modes + 2 * (lossy gate count);
    gates compose right-to-left so the first listed gate acts first.
    Raises StaticSemanticsError if the circuit is malformed.
    """
    diagnostics = check_structure(circuit)
    if not diagnostics.ok:
        raise StaticSemanticsError(diagnostics)
    total = circuit.n_total_modes
    u = np.eye(total, dtype=complex)
    for gate, loss_modes in zip(circuit.gates, loss_mode_layout(circuit)):
        matrix = gate_matrix(gate.gate_type, gate.params)
        u = embed(matrix, gate.modes + loss_modes, total) @ u
    return u
