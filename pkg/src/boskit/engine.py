"""Exact output distributions for photons through a circuit.

The probability of seeing output pattern S given input pattern T through
an M-mode transfer matrix U is |Perm(U_{S,T})|^2 / (prod_i s_i! prod_j t_j!)
where U_{S,T} repeats row i of U s_i times and column j t_j times.  The
pmf enumerates every output pattern with the input's photon total over
the extended (observed + loss) modes, then marginalises the loss modes
by summing probabilities over their occupations.
"""

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, StaticSemanticsError, assemble_transfer_matrix, check_static
from .fock import (DEFAULT_ENUMERATION_CAP, FockState, Pmf, as_fock_state,
                   enumerate_fock_states, fock_total)

# Permanents are O(2^n * n); anything larger than this is intractable here.
MAX_PERMANENT_SIZE = 30


class PermanentSizeError(ValueError):
    """The matrix is too large for exact permanent evaluation."""


_FACTORIALS = tuple(math.factorial(n) for n in range(21))


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation knobs: probability threshold and enumeration cap.

    Entries below `threshold` are dropped from the returned pmf after
    the full computation; the remaining entries are not renormalised.
    """

    threshold: float = 0.0
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self):
        if not 0.0 <= self.threshold < 1.0:
            raise ValueError(f"threshold must lie in [0, 1), got {self.threshold}")
        if self.enumeration_cap < 1:
            raise ValueError("enumeration_cap must be positive")


def permanent(matrix: np.ndarray) -> complex:
    """Matrix permanent via Ryser's formula with Gray-code subset updates.

    Runs in O(2^n * n); the permanent of the empty 0x0 matrix is 1.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {matrix.shape}")
    n = matrix.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise PermanentSizeError(
            f"matrix of size {n} exceeds the {MAX_PERMANENT_SIZE} limit")
    if n == 0:
        return 1 + 0j
    # perm(A) = sum over non-empty column subsets S of
    # (-1)^(n - |S|) prod_i sum_{j in S} a_ij; the Gray code changes one
    # column per step so the row sums update in O(n).
    row_sums = np.zeros(n, dtype=complex)
    total = 0 + 0j
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        changed = new_gray ^ gray
        j = changed.bit_length() - 1
        if new_gray & changed:
            row_sums += matrix[:, j]
        else:
            row_sums -= matrix[:, j]
        gray = new_gray
        sign = 1 if (gray.bit_count() & 1) == (n & 1) else -1
        total += sign * np.prod(row_sums)
    return complex(total)


def _mode_repeats(state: FockState) -> list[int]:
    """[0,2,1] -> [1,1,2]: one index per photon."""
    idx: list[int] = []
    for mode, n in enumerate(state):
        idx.extend([mode] * n)
    return idx


def _factorial_norm(*states: FockState) -> float:
    prod = 1
    for state in states:
        for n in state:
            prod *= _FACTORIALS[n] if n < len(_FACTORIALS) else math.factorial(n)
    return math.sqrt(prod)


def output_amplitude(u: np.ndarray, input_state: FockState,
                     output_state: FockState) -> complex:
    """Transition amplitude from `input_state` to `output_state` through `u`."""
    u = np.asarray(u, dtype=complex)
    input_state = as_fock_state(input_state)
    output_state = as_fock_state(output_state)
    if len(input_state) != u.shape[0] or len(output_state) != u.shape[0]:
        raise ValueError(
            f"states of lengths {len(input_state)}/{len(output_state)} do not "
            f"match a {u.shape[0]}-mode matrix")
    if fock_total(input_state) != fock_total(output_state):
        raise ValueError(
            f"photon totals differ: {fock_total(input_state)} in, "
            f"{fock_total(output_state)} out")
    rows = _mode_repeats(output_state)
    cols = _mode_repeats(input_state)
    if not rows:
        return 1 + 0j  # vacuum in, vacuum out
    sub = u[np.ix_(rows, cols)]
    return permanent(sub) / _factorial_norm(input_state, output_state)


def prob_fn(circuit: Circuit, input_state, options: EvalOptions | None = None) -> Pmf:
    """Exact output pmf of `input_state` through `circuit`.

    The input is extended with vacuum on the loss modes, every extended
    output pattern with the same photon total is evaluated, and loss
    modes are marginalised away, so the keys are observed-mode patterns
    whose totals may fall below the input total when photons are lost.
    Without thresholding the probabilities sum to 1.

    Raises StaticSemanticsError on a malformed circuit/input pair and
    EnumerationCapError when the output basis is too large.
    """
    if options is None:
        options = EvalOptions()
    diagnostics = check_static(circuit, tuple(input_state))
    if not diagnostics.ok:
        raise StaticSemanticsError(diagnostics)
    input_state = as_fock_state(input_state)

    u = assemble_transfer_matrix(circuit)
    extended_input = input_state + (0,) * circuit.n_loss_modes
    n_photons = fock_total(input_state)

    pmf: Pmf = {}
    for extended_output in enumerate_fock_states(
            n_photons, circuit.n_total_modes, cap=options.enumeration_cap):
        amp = output_amplitude(u, extended_input, extended_output)
        observed = extended_output[:circuit.n_modes]
        pmf[observed] = pmf.get(observed, 0.0) + abs(amp) ** 2
    if options.threshold > 0.0:
        pmf = {state: p for state, p in pmf.items() if p >= options.threshold}
    return pmf


def pmf_mass(pmf: Pmf) -> float:
    """Total retained probability mass."""
    return float(sum(pmf.values()))


def distance_tv(p: Pmf, q: Pmf) -> float:
    """Total variation distance between two pmfs over the same mode count."""
    _check_same_mode_count(p, q)
    states = set(p) | set(q)
    return 0.5 * sum(abs(p.get(s, 0.0) - q.get(s, 0.0)) for s in states)


def distance_l2(p: Pmf, q: Pmf) -> float:
    """Euclidean distance between two pmfs over the same mode count."""
    _check_same_mode_count(p, q)
    states = set(p) | set(q)
    return math.sqrt(sum((p.get(s, 0.0) - q.get(s, 0.0)) ** 2 for s in states))


def _check_same_mode_count(p: Pmf, q: Pmf) -> None:
    lengths = {len(s) for s in p} | {len(s) for s in q}
    if len(lengths) > 1:
        raise ValueError(f"pmfs are keyed over different mode counts: {sorted(lengths)}")
