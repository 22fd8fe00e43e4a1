"""Independent reference implementations the tests check the package against.

Everything here is deliberately naive (Laplace expansion, direct
recursion, explicit amplitude sums) and shares no code with the package
paths it verifies.
"""

import math

import numpy as np

from boskit.circuit import Circuit, GateSpec
from boskit.gates import GateType
from boskit.sampler import rng_from_seed


def naive_permanent(matrix: np.ndarray) -> complex:
    """Permanent by Laplace expansion along the first row, O(n! * n)."""
    matrix = np.asarray(matrix, dtype=complex)
    n = matrix.shape[0]
    if n == 0:
        return 1 + 0j
    if n == 1:
        return complex(matrix[0, 0])
    total = 0 + 0j
    rest = matrix[1:, :]
    for j in range(n):
        minor = np.delete(rest, j, axis=1)
        total += matrix[0, j] * naive_permanent(minor)
    return total


def count_states(n_photons: int, n_modes: int) -> int:
    """Number of ways to put n photons in m modes, by direct recursion."""
    if n_modes == 1:
        return 1
    return sum(count_states(n_photons - k, n_modes - 1)
               for k in range(n_photons + 1))


def brute_force_pmf(u: np.ndarray, input_state: tuple[int, ...],
                    n_observed: int) -> dict[tuple[int, ...], float]:
    """Output pmf via explicit amplitude sums with the naive permanent.

    Enumerates output patterns over all of u's modes by nested recursion,
    computes each |amplitude|^2 from first principles, and folds the
    loss-mode occupations away.
    """
    u = np.asarray(u, dtype=complex)
    m = u.shape[0]
    n = sum(input_state)
    cols = [j for j, t in enumerate(input_state) for _ in range(t)]

    def patterns(remaining: int, modes_left: int):
        if modes_left == 1:
            yield (remaining,)
            return
        for k in range(remaining + 1):
            for rest in patterns(remaining - k, modes_left - 1):
                yield (k,) + rest

    pmf: dict[tuple[int, ...], float] = {}
    for output in patterns(n, m):
        rows = [i for i, s in enumerate(output) for _ in range(s)]
        norm = math.sqrt(math.prod(math.factorial(k) for k in input_state) *
                         math.prod(math.factorial(k) for k in output))
        amp = naive_permanent(u[np.ix_(rows, cols)]) / norm
        key = output[:n_observed]
        pmf[key] = pmf.get(key, 0.0) + abs(amp) ** 2
    return pmf


LOSSLESS_TYPES = (GateType.PHASE, GateType.MIXER)
ALL_TYPES = tuple(GateType)


def random_circuit(rng: np.random.Generator, n_modes: int, n_gates: int,
                   gate_types=ALL_TYPES) -> Circuit:
    """A random well-formed circuit for corpus tests."""
    if n_modes < 2:
        gate_types = tuple(t for t in gate_types if t.n_modes == 1)
    gates = []
    for _ in range(n_gates):
        gate_type = gate_types[rng.integers(len(gate_types))]
        if gate_type.n_modes == 1:
            modes = (int(rng.integers(n_modes)),)
        else:
            modes = tuple(int(m) for m in
                          rng.choice(n_modes, size=2, replace=False))
        params = []
        for name in gate_type.param_names:
            if name.startswith("eta"):
                params.append(float(rng.random()))
            else:
                params.append(float(rng.random() * 2 * math.pi))
        gates.append(GateSpec(gate_type, modes, tuple(params)))
    return Circuit(n_modes, tuple(gates))


def circuit_corpus(seed: int, count: int, max_modes: int, max_gates: int,
                   gate_types=ALL_TYPES, min_modes: int = 2) -> list[Circuit]:
    rng = rng_from_seed(seed)
    return [random_circuit(rng,
                           int(rng.integers(min_modes, max_modes + 1)),
                           int(rng.integers(0, max_gates + 1)),
                           gate_types)
            for _ in range(count)]
