"""Derivative-free training of circuit parameters toward target pmfs.

The loop treats the pmf evaluation as a black box: estimate the gradient
of the summed pmf distance by central finite differences, take a fixed
step, and keep the step only when it does not worsen the objective, so
the recorded loss history never increases and the returned parameters
are the best seen.  Several (input, target) pairs may share one
parameter set, which trains the circuit as a classifier.
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circuit import Circuit, GateSpec, StaticSemanticsError, check_static
from .engine import EvalOptions, distance_l2, distance_tv, prob_fn
from .fock import FockState, Pmf
from .gates import GateType
from .sampler import rng_from_seed

FD_STEP = 1e-4
STOP_LOSS = 1e-6

OBJECTIVES: dict[str, Callable[[Pmf, Pmf], float]] = {
    "tv": distance_tv,
    "l2": distance_l2,
}


class NonFiniteObjectiveError(ArithmeticError):
    """The training objective evaluated to NaN or infinity."""


@dataclass(frozen=True)
class OptProblem:
    """A circuit template (gate types/positions fixed) plus training pairs."""

    circuit_template: Circuit
    pairs: tuple[tuple[FockState, Pmf], ...]
    n_train: int = 200
    step_size: float = 0.25
    seed: int = 0
    objective: str = "tv"

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("at least one (input, target) pair is required")
        if self.n_train < 1:
            raise ValueError("n_train must be positive")
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.objective not in OBJECTIVES:
            raise ValueError(
                f"objective must be one of {sorted(OBJECTIVES)}, got {self.objective!r}")


@dataclass(frozen=True)
class OptResult:
    config: Circuit
    loss_history: tuple[float, ...]
    final_loss: float


def _param_bounds(circuit: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """Per-parameter (lower, upper); angles are unbounded, etas live in [0, 1]."""
    lower, upper = [], []
    for gate in circuit.gates:
        for name in gate.gate_type.param_names:
            if name.startswith("eta"):
                lower.append(0.0)
                upper.append(1.0)
            else:
                lower.append(-np.inf)
                upper.append(np.inf)
    return np.array(lower), np.array(upper)


def _with_params(template: Circuit, values: np.ndarray) -> Circuit:
    gates = []
    at = 0
    for gate in template.gates:
        k = len(gate.params)
        gates.append(GateSpec(gate.gate_type, gate.modes,
                              tuple(values[at:at + k])))
        at += k
    return Circuit(template.n_modes, tuple(gates))


def _random_params(template: Circuit, rng: np.random.Generator) -> np.ndarray:
    values = []
    for gate in template.gates:
        for name in gate.gate_type.param_names:
            u = rng.random()
            values.append(u if name.startswith("eta") else 2.0 * math.pi * u)
    return np.array(values, dtype=float)


def fd_gradient(fn: Callable[[np.ndarray], float], x: np.ndarray,
                h: float = FD_STEP,
                lower: np.ndarray | None = None,
                upper: np.ndarray | None = None) -> np.ndarray:
    """Central-difference gradient estimate, clipping probes into bounds.

    Interior parameters get exact central differences with step `h`;
    at a bound the probe is clipped and the difference quotient uses
    the actual probe separation.
    """
    grad = np.zeros_like(x)
    for i in range(len(x)):
        lo = -np.inf if lower is None else lower[i]
        hi = np.inf if upper is None else upper[i]
        x_plus, x_minus = x.copy(), x.copy()
        x_plus[i] = min(x[i] + h, hi)
        x_minus[i] = max(x[i] - h, lo)
        span = x_plus[i] - x_minus[i]
        if span == 0.0:
            continue
        grad[i] = (fn(x_plus) - fn(x_minus)) / span
    return grad


def _make_objective(problem: OptProblem,
                    options: EvalOptions) -> Callable[[np.ndarray], float]:
    distance = OBJECTIVES[problem.objective]

    def objective(values: np.ndarray) -> float:
        circuit = _with_params(problem.circuit_template, values)
        loss = sum(distance(prob_fn(circuit, inp, options), target)
                   for inp, target in problem.pairs)
        if not math.isfinite(loss):
            raise NonFiniteObjectiveError(f"objective evaluated to {loss}")
        return float(loss)

    return objective


def opt_config(problem: OptProblem,
               init_params: Sequence[float] | None = None,
               options: EvalOptions | None = None) -> OptResult:
    """Learn gate parameters for the template that reproduce the target pmfs.

    Parameters start uniformly at random (angles over [0, 2pi), etas
    over [0, 1]) from the problem seed unless `init_params` pins them.
    Each iteration records the current loss and stops early once it
    falls below 1e-6; `final_loss` is the last recorded entry and equals
    the objective of the returned configuration.
    """
    if options is None:
        options = EvalOptions()
    for inp, target in problem.pairs:
        diagnostics = check_static(problem.circuit_template, tuple(inp))
        if not diagnostics.ok:
            raise StaticSemanticsError(diagnostics)
        for state in target:
            if len(state) != problem.circuit_template.n_modes:
                raise ValueError(
                    f"target state {list(state)} does not match the "
                    f"{problem.circuit_template.n_modes}-mode template")

    objective = _make_objective(problem, options)
    lower, upper = _param_bounds(problem.circuit_template)
    if init_params is not None:
        params = np.array(init_params, dtype=float)
        if params.shape != lower.shape:
            raise ValueError(
                f"expected {len(lower)} parameters, got {len(params)}")
    else:
        params = _random_params(problem.circuit_template,
                                rng_from_seed(problem.seed))

    loss = objective(params)
    history = [loss]
    for _ in range(problem.n_train - 1):
        if loss < STOP_LOSS or len(params) == 0:
            break
        grad = fd_gradient(objective, params, lower=lower, upper=upper)
        candidate = np.clip(params - problem.step_size * grad, lower, upper)
        candidate_loss = objective(candidate)
        if candidate_loss <= loss:  # keep best-seen parameters
            params, loss = candidate, candidate_loss
        history.append(loss)
    return OptResult(config=_with_params(problem.circuit_template, params),
                     loss_history=tuple(history),
                     final_loss=history[-1])


def _random_structure(n_modes: int, n_gates_max: int,
                      rng: np.random.Generator) -> Circuit:
    """Uniform random gate count, types, and mode placements; zero params."""
    def pick(n: int) -> int:
        return min(int(rng.random() * n), n - 1)

    gate_types = list(GateType)
    n_gates = pick(n_gates_max + 1)
    gates = []
    for _ in range(n_gates):
        gate_type = gate_types[pick(len(gate_types))]
        modes = [pick(n_modes)]
        if gate_type.n_modes == 2:
            second = pick(n_modes - 1)
            modes.append(second if second < modes[0] else second + 1)
        gates.append(GateSpec(gate_type, tuple(modes),
                              (0.0,) * len(gate_type.param_names)))
    return Circuit(n_modes, tuple(gates))


def opt_structure(n_modes: int, n_gates_max: int,
                  pairs: Sequence[tuple[FockState, Pmf]],
                  n_restarts: int = 8, seed: int = 0,
                  n_train: int = 150, step_size: float = 0.25,
                  objective: str = "tv") -> OptResult:
    """Random-restart search over gate counts and placements.

    Each restart draws a candidate structure from its own (seed, restart)
    stream and trains it with `opt_config`; the best trained result wins.
    Restart streams are independent of `n_restarts`, so enlarging the
    budget can only improve the returned loss.
    """
    if n_modes < 2:
        raise ValueError(f"structure search needs at least 2 modes, got {n_modes}")
    if n_gates_max < 0:
        raise ValueError("n_gates_max must be non-negative")
    if n_restarts < 1:
        raise ValueError("n_restarts must be positive")
    best: OptResult | None = None
    for restart in range(n_restarts):
        rng = rng_from_seed(seed, stream=restart + 1)
        template = _random_structure(n_modes, n_gates_max, rng)
        problem = OptProblem(circuit_template=template, pairs=tuple(pairs),
                             n_train=n_train, step_size=step_size,
                             seed=(seed + restart) % 2 ** 64, objective=objective)
        result = opt_config(problem)
        if best is None or result.final_loss < best.final_loss:
            best = result
    return best
