"""Entanglement measures built on the maximal product overlap.

For a pure state, the measure is sqrt(1 - P) where P is the maximal squared
overlap with product states; it vanishes exactly on product states, is
invariant under local unitaries, and cannot increase under LOCC.  The
linear extension to density operators is also provided; it is explicitly
NOT an entanglement monotone (separable mixtures can score the maximal
value) and is exposed for study of exactly that failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDensity, InvalidDistribution, OutOfRange, WrongShape
from .product_opt import (
    OptimizerConfig,
    PmaxResult,
    pmax_bipartite,
    pmax_mixed,
    pmax_overlap,
)
from .statevector import DensityMatrix, StateVector, reduced_density

PROBABILITY_SUM_TOL = 1e-9
PROBABILITY_NEG_TOL = 1e-12


@dataclass(frozen=True)
class MeasureReport:
    """Product-overlap maximum and the measures derived from it.

    groverian = sqrt(1 - pmax); vedral_e = 2 - 2 sqrt(pmax).  ``method``
    records which route produced pmax: alternating, bipartite-closed-form,
    grid, or mixed.
    """

    pmax: float
    groverian: float
    vedral_e: float
    method: str
    restarts_used: int = 0
    sweeps: int = 0
    converged: bool = True

    def as_record(self) -> dict:
        return {
            "pmax": self.pmax,
            "groverian": self.groverian,
            "vedral_e": self.vedral_e,
            "method": self.method,
            "restarts_used": self.restarts_used,
            "sweeps": self.sweeps,
            "converged": self.converged,
        }


def _report(pmax: float, method: str, opt: PmaxResult | None = None) -> MeasureReport:
    g = math.sqrt(max(0.0, 1.0 - pmax))
    e = 2.0 - 2.0 * math.sqrt(max(0.0, pmax))
    if opt is None:
        return MeasureReport(pmax, g, e, method)
    return MeasureReport(
        pmax, g, e, method, opt.restarts_used, opt.sweeps, opt.converged
    )


def groverian(state: StateVector, cfg: OptimizerConfig | None = None) -> MeasureReport:
    """Entanglement of a pure state via the alternating product-overlap maximizer."""
    opt = pmax_overlap(state, cfg)
    return _report(opt.value, "alternating", opt)


def groverian_bipartite(state: StateVector, split) -> MeasureReport:
    """Exact closed form across a bipartition: sqrt(1 - top Schmidt coeff^2)."""
    return _report(pmax_bipartite(state, split), "bipartite-closed-form")


def groverian_mixed(
    rho: DensityMatrix, cfg: OptimizerConfig | None = None
) -> MeasureReport:
    """Linear extension sqrt(1 - max <e|rho|e>) over product states.

    Agrees with the pure-state measure on projectors but is not an
    entanglement monotone: e.g. the two-qubit maximally mixed state is
    separable yet scores sqrt(1 - 1/4).
    """
    opt = pmax_mixed(rho, cfg)
    return _report(opt.value, "mixed", opt)


def groverian_product_mixed(local_densities) -> float:
    """sqrt(1 - prod_j lambda_j) for a tensor product of per-site densities,
    lambda_j the largest eigenvalue of the j-th factor."""
    prod = 1.0
    for j, rho in enumerate(local_densities, start=1):
        m = np.asarray(rho, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidDensity(f"local density {j} is not square")
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise InvalidDensity(f"local density {j} is not Hermitian")
        evals = np.linalg.eigvalsh(m)
        if float(evals.min()) < -1e-10:
            raise InvalidDensity(f"local density {j} has a negative eigenvalue")
        if abs(float(evals.sum()) - 1.0) > 1e-10:
            raise InvalidDensity(f"local density {j} does not have unit trace")
        prod *= float(evals.max())
    return math.sqrt(max(0.0, 1.0 - prod))


def bures_distance(fidelity: float) -> float:
    """sqrt(1 - f^2) for a fidelity value f in [0, 1]."""
    if not 0.0 <= fidelity <= 1.0:
        raise OutOfRange(f"fidelity {fidelity!r} outside [0, 1]")
    return math.sqrt(max(0.0, 1.0 - fidelity * fidelity))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2(1-x), continuous at 0 and 1."""
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"argument {x!r} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def entropy_check(state: StateVector) -> tuple[float, float]:
    """Von Neumann entropy of one qubit vs the binary entropy of the squared
    measure, for a two-qubit pure state; the two agree analytically."""
    if state.shape.dims != (2, 2):
        raise WrongShape("entropy relation is defined for two qubits")
    evals = np.linalg.eigvalsh(reduced_density(state, [1]).entries)
    evals = np.clip(evals.real, 0.0, 1.0)
    entropy = float(-(evals[evals > 0] * np.log2(evals[evals > 0])).sum())
    g = groverian_bipartite(state, [1])
    return entropy, binary_entropy(min(1.0, g.groverian**2))


@dataclass(frozen=True)
class MonotoneVerdict:
    """Outcome of a bipartite majorization monotonicity check."""

    applicable: bool  # target spectrum majorizes source spectrum
    monotone_ok: bool  # g_source >= g_target - 1e-12
    g_source: float
    g_target: float


def _validated_spectrum(p, name: str) -> np.ndarray:
    v = np.asarray(p, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise InvalidDistribution(f"{name} must be a nonempty vector")
    if float(v.min()) < -PROBABILITY_NEG_TOL:
        raise InvalidDistribution(f"{name} has a negative entry")
    if abs(float(v.sum()) - 1.0) > PROBABILITY_SUM_TOL:
        raise InvalidDistribution(f"{name} does not sum to 1")
    return np.clip(v, 0.0, None)


def majorizes(target, source) -> bool:
    """True when sorted partial sums of target dominate those of source."""
    t = np.sort(np.asarray(target, dtype=np.float64))[::-1]
    s = np.sort(np.asarray(source, dtype=np.float64))[::-1]
    size = max(t.size, s.size)
    t = np.pad(t, (0, size - t.size))
    s = np.pad(s, (0, size - s.size))
    return bool(np.all(np.cumsum(t) >= np.cumsum(s)))


def monotone_check_bipartite(source_p, target_p) -> MonotoneVerdict:
    """Check the LOCC-monotonicity consequence on a pair of Schmidt spectra.

    Majorization of the source spectrum by the target is the deterministic
    LOCC-reachability condition for bipartite pure states; whenever it
    holds, the measure computed from the closed form sqrt(1 - max p) must
    not increase from source to target.
    """
    s = _validated_spectrum(source_p, "source")
    t = _validated_spectrum(target_p, "target")
    applicable = majorizes(t, s)
    g_source = math.sqrt(max(0.0, 1.0 - float(s.max())))
    g_target = math.sqrt(max(0.0, 1.0 - float(t.max())))
    return MonotoneVerdict(
        applicable=applicable,
        monotone_ok=g_source >= g_target - 1e-12,
        g_source=g_source,
        g_target=g_target,
    )
