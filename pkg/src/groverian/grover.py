"""The search iterate for qudit registers and success-probability accounting.

One iterate is the composition of two reflections on the register: a phase
flip of the marked basis states, then the reflection I - 2|eta><eta| about
the uniform state.  The latter equals the layered form V (I - 2|0><0|) V+
for any local layer V with V_j|0> the uniform single-site state (the
discrete Fourier gate is the canonical choice, reducing to the Hadamard for
qubits); the rank-one form used here is that composition evaluated exactly,
global sign included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, TooLarge
from .product_opt import OptimizerConfig, pmax_overlap
from .statevector import (
    LocalUnitaryLayer,
    StateVector,
    SystemShape,
    _check_same_shape,
    apply_local,
    fourier_gate,
    uniform_state,
)

# Largest register simulated by the full marked-position average.
DEFAULT_SIMULATION_CAP = 256


@dataclass(frozen=True)
class OracleSpec:
    """Marked basis indices; the oracle flips their amplitude sign."""

    shape: SystemShape
    marked: tuple[int, ...]

    def __init__(self, shape: SystemShape, marked):
        marked = tuple(sorted(int(x) for x in marked))
        if not marked:
            raise DimensionMismatch("oracle needs at least one marked index")
        if len(set(marked)) != len(marked):
            raise DimensionMismatch("duplicate marked indices")
        if marked[0] < 0 or marked[-1] >= shape.total:
            raise DimensionMismatch(
                f"marked indices must lie in 0..{shape.total - 1}"
            )
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "marked", marked)

    @property
    def count(self) -> int:
        return len(self.marked)


@dataclass(frozen=True, eq=False)
class GroverRun:
    """Iteration count, success probability after each step, final state."""

    iterations: int
    prob_curve: tuple[float, ...]  # P(k) for k = 0..iterations
    final_state: StateVector


def success_probability(oracle: OracleSpec, state: StateVector) -> float:
    return float(np.sum(np.abs(state.amps[list(oracle.marked)]) ** 2))


def oracle_phase(oracle: OracleSpec, state: StateVector) -> StateVector:
    """Negate the amplitude of every marked basis state."""
    _check_same_shape(oracle, state)
    amps = state.amps.copy()
    amps[list(oracle.marked)] *= -1.0
    return StateVector(state.shape, amps)


def diffusion(state: StateVector) -> StateVector:
    """Reflection about the uniform state: psi -> psi - 2<eta|psi> eta.

    Exactly the layered composition V (I - 2|0><0|) V+ with Fourier gates,
    including its global sign (eta maps to -eta).
    """
    total = state.shape.total
    mean = np.sum(state.amps) / total  # <eta|psi> / sqrt(N)
    return StateVector(state.shape, state.amps - 2.0 * mean)


def diffusion_layer(shape: SystemShape) -> LocalUnitaryLayer:
    """The Fourier layer whose conjugation of I - 2|0><0| is the diffusion."""
    return LocalUnitaryLayer(shape, tuple(fourier_gate(d) for d in shape.dims))


def grover_iterate(oracle: OracleSpec, state: StateVector) -> StateVector:
    """One search step: oracle phase flip, then diffusion."""
    return diffusion(oracle_phase(oracle, state))


def iteration_bound(total: int, r: int) -> int:
    """Upper bound ceil(pi/4 * sqrt(N/r)) on the optimal iteration count."""
    return math.ceil(math.pi / 4.0 * math.sqrt(total / r))


def optimal_iterations(shape: SystemShape, oracle: OracleSpec) -> int:
    """Iteration count maximizing success probability from the uniform state.

    Scans the simulated curve P(k) for k up to the ceil(pi/4 sqrt(N/r))
    bound; ties break toward the smallest k.
    """
    bound = iteration_bound(shape.total, oracle.count)
    state = uniform_state(shape)
    best_k, best_p = 0, success_probability(oracle, state)
    for k in range(1, bound + 1):
        state = grover_iterate(oracle, state)
        p = success_probability(oracle, state)
        if p > best_p:
            best_k, best_p = k, p
    return best_k


def run_grover(initial: StateVector, oracle: OracleSpec, iterations: int) -> GroverRun:
    """Apply the iterate ``iterations`` times, recording P(k) at every step."""
    _check_same_shape(oracle, initial)
    if iterations < 0:
        raise DimensionMismatch("iteration count must be >= 0")
    state = initial
    curve = [success_probability(oracle, state)]
    for _ in range(iterations):
        state = grover_iterate(oracle, state)
        curve.append(success_probability(oracle, state))
    return GroverRun(iterations, tuple(curve), state)


def run_modified(
    initial: StateVector,
    layer: LocalUnitaryLayer,
    oracle: OracleSpec,
    iterations: int,
) -> GroverRun:
    """Search preceded by a local-unitary preprocessing layer."""
    return run_grover(apply_local(layer, initial), oracle, iterations)


def _basis_completion(v: np.ndarray) -> np.ndarray:
    """Unitary whose first column is exactly v."""
    d = v.size
    pivot = int(np.argmax(np.abs(v)))
    # [v, e_j for j != pivot] is always full rank (det = +/- v[pivot] != 0)
    cols = np.zeros((d, d), dtype=np.complex128)
    cols[:, 0] = v
    k = 1
    for j in range(d):
        if j != pivot:
            cols[j, k] = 1.0
            k += 1
    q, _ = np.linalg.qr(cols)
    # QR returns the first column as v up to a unit phase; undo it.
    q[:, 0] *= complex(np.vdot(q[:, 0], v))
    return q


def alignment_layer(product, shape: SystemShape) -> LocalUnitaryLayer:
    """Per-site unitaries mapping each given factor to the uniform site state."""
    gates = []
    for factor, d in zip(product.factors, shape.dims):
        gates.append(fourier_gate(d) @ _basis_completion(factor).conj().T)
    return LocalUnitaryLayer(shape, tuple(gates))


def pmax_simulated(
    initial: StateVector,
    cfg: OptimizerConfig | None = None,
    simulation_cap: int = DEFAULT_SIMULATION_CAP,
) -> float:
    """Best achievable search success probability, averaged over the target.

    The preprocessing layer rotates each factor of the maximizing product
    state onto the uniform site state; the result is the mean final success
    probability over all N possible single marked positions, enumerated
    exactly.  Intended for small registers; raises TooLarge beyond the cap.
    """
    shape = initial.shape
    total = shape.total
    if total > simulation_cap:
        raise TooLarge(f"N={total} exceeds the simulation cap {simulation_cap}")
    cfg = cfg or OptimizerConfig()
    best = pmax_overlap(initial, cfg)
    layer = alignment_layer(best.argmax, shape)
    prepared = apply_local(layer, initial)
    iterations = optimal_iterations(shape, OracleSpec(shape, (0,)))
    acc = 0.0
    for s in range(total):
        run = run_grover(prepared, OracleSpec(shape, (s,)), iterations)
        acc += run.prob_curve[-1]
    return acc / total
