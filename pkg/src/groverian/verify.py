"""Verification suites behind the ``verify`` CLI command.

Each check compares a computed quantity against an independent reference
(closed forms, exhaustive enumeration, or the exact grid oracle) at a fixed
tolerance and reports one pass/fail line.  All randomness is derived from
the suite seed, so a run is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .families import bell, ghz, w_state
from .grover import (
    OracleSpec,
    diffusion,
    diffusion_layer,
    grover_iterate,
    iteration_bound,
    optimal_iterations,
    pmax_simulated,
    run_grover,
)
from .measures import (
    bures_distance,
    entropy_check,
    groverian,
    groverian_bipartite,
    groverian_mixed,
    groverian_product_mixed,
    majorizes,
    monotone_check_bipartite,
)
from .product_opt import (
    OptimizerConfig,
    pmax_bipartite,
    pmax_grid_oracle,
    pmax_overlap,
)
from .statevector import (
    DensityMatrix,
    ProductState,
    StateVector,
    SystemShape,
    apply_local,
    basis_state,
    inner,
    make_state,
    partial_contract,
    product_to_state,
    random_local_layer,
    random_product,
    random_state,
    reduced_density,
    schmidt,
    schmidt_reconstruction_error,
    uniform_state,
)

SQRT_HALF = math.sqrt(0.5)
G_BELL = math.sqrt(0.5)  # pmax 1/2
G_W3 = math.sqrt(5.0 / 9.0)  # pmax 4/9
G_MAX_N4 = math.sqrt(3.0) / 2.0  # sqrt(1 - 1/4)
# sin^2(5 asin(1/3)): peak success probability for two qutrits, r=1, m=2.
QUTRIT_PAIR_PEAK = math.sin(5.0 * math.asin(1.0 / 3.0)) ** 2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    observed: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        text = f"{tag}  {self.name:<42} observed={self.observed:.3e} tolerance={self.tolerance:.3e}"
        if self.detail:
            text += f"  ({self.detail})"
        return text


def _case_seed(seed: int, check_id: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence((seed & ((1 << 64) - 1), check_id, index))


def _cfg(seed: int, check_id: int, index: int) -> OptimizerConfig:
    entropy = np.random.SeedSequence((seed & ((1 << 64) - 1), check_id, index))
    return OptimizerConfig(seed=int(entropy.generate_state(1, np.uint64)[0]))


def _qubit_shape(n: int) -> SystemShape:
    return SystemShape([2] * n)


def _phase_free_residual(target_amp: complex) -> float:
    """min over global phase of || e^{ia} psi - |s> || given <s|psi>."""
    return math.sqrt(max(0.0, 2.0 - 2.0 * abs(target_amp)))


# ---------------------------------------------------------------------------
# grover suite


def check_sine_formula(seed: int) -> list[CheckResult]:
    """Success curve from the uniform state matches sin^2((2k+1) asin(1/sqrt N))."""
    worst_curve = 0.0
    worst_peak_deficit = -1.0
    for n in (4, 6, 8, 10):
        shape = _qubit_shape(n)
        total = shape.total
        oracle = OracleSpec(shape, (1,))
        bound = iteration_bound(total, 1)
        run = run_grover(uniform_state(shape), oracle, bound)
        theta = math.asin(1.0 / math.sqrt(total))
        for k, p in enumerate(run.prob_curve):
            worst_curve = max(worst_curve, abs(p - math.sin((2 * k + 1) * theta) ** 2))
        m = optimal_iterations(shape, oracle)
        worst_peak_deficit = max(
            worst_peak_deficit, (1.0 - 1.0 / total) - run.prob_curve[m]
        )
    return [
        CheckResult(
            "grover/sine-formula-match", worst_curve <= 1e-10, worst_curve, 1e-10,
            "N in {16,64,256,1024}, all k up to ceil(pi/4 sqrt(N))",
        ),
        CheckResult(
            "grover/peak-success-floor",
            worst_peak_deficit <= 0.0,
            worst_peak_deficit,
            0.0,
            "P(m) >= 1 - 1/N at the selected m",
        ),
    ]


def check_exact_n4(seed: int) -> list[CheckResult]:
    """One iteration on N=4 finds any single marked state with certainty."""
    shape = _qubit_shape(2)
    worst = 0.0
    for s in range(4):
        run = run_grover(uniform_state(shape), OracleSpec(shape, (s,)), 1)
        worst = max(worst, abs(run.prob_curve[1] - 1.0))
    return [CheckResult("grover/exact-n4-single-step", worst <= 1e-12, worst, 1e-12)]


def check_target_residual(seed: int) -> list[CheckResult]:
    """Iterating from uniform lands within 2/sqrt(N) of the marked state
    (global phase factored out; the layered composition flips sign on odd m)."""
    worst_excess = -1.0
    for n in (4, 6, 8, 10):
        shape = _qubit_shape(n)
        total = shape.total
        m = optimal_iterations(shape, OracleSpec(shape, (0,)))
        if total <= 64:
            targets = range(total)
        else:
            rng = np.random.default_rng(_case_seed(seed, 20, n))
            targets = sorted(int(x) for x in rng.choice(total, size=8, replace=False))
        for s in targets:
            run = run_grover(uniform_state(shape), OracleSpec(shape, (s,)), m)
            residual = _phase_free_residual(run.final_state.amps[s])
            worst_excess = max(worst_excess, residual - 2.0 / math.sqrt(total))
    return [
        CheckResult(
            "grover/target-residual", worst_excess <= 0.0, worst_excess, 0.0,
            "residual minus 2/sqrt(N), every s for N<=64, 8 sampled above",
        )
    ]


def check_qudit_pair(seed: int) -> list[CheckResult]:
    """Two qutrits: curve matches sin^2((2k+1) asin(1/3)); m=2 peaks at 0.98361."""
    shape = SystemShape([3, 3])
    oracle = OracleSpec(shape, (4,))
    bound = iteration_bound(9, 1)
    run = run_grover(uniform_state(shape), oracle, bound)
    theta = math.asin(1.0 / 3.0)
    worst = max(
        abs(p - math.sin((2 * k + 1) * theta) ** 2)
        for k, p in enumerate(run.prob_curve)
    )
    m = optimal_iterations(shape, oracle)
    peak_err = abs(run.prob_curve[2] - QUTRIT_PAIR_PEAK)
    return [
        CheckResult("grover/qutrit-sine-formula", worst <= 1e-10, worst, 1e-10),
        CheckResult(
            "grover/qutrit-peak",
            m == 2 and peak_err <= 1e-10,
            peak_err,
            1e-10,
            f"m={m} expected 2, peak {QUTRIT_PAIR_PEAK:.10f}",
        ),
    ]


def check_marked_symmetry(seed: int) -> list[CheckResult]:
    """The success curve does not depend on which singleton is marked."""
    shape = _qubit_shape(4)
    bound = iteration_bound(16, 1)
    reference = run_grover(uniform_state(shape), OracleSpec(shape, (0,)), bound)
    worst = 0.0
    for s in range(1, 16):
        run = run_grover(uniform_state(shape), OracleSpec(shape, (s,)), bound)
        worst = max(
            worst,
            max(abs(a - b) for a, b in zip(run.prob_curve, reference.prob_curve)),
        )
    return [CheckResult("grover/marked-position-symmetry", worst <= 1e-12, worst, 1e-12)]


def check_iteration_bound(seed: int) -> list[CheckResult]:
    """Selected iteration count never exceeds ceil(pi/4 sqrt(N/r))."""
    worst = -math.inf
    cases = [
        (_qubit_shape(2), (0, 1, 2, 3)),
        (_qubit_shape(4), (3,)),
        (_qubit_shape(4), (1, 6)),
        (_qubit_shape(6), (0, 7, 21)),
        (SystemShape([3, 3]), (2,)),
        (SystemShape([3, 3]), (0, 4, 8)),
    ]
    for shape, marked in cases:
        oracle = OracleSpec(shape, marked)
        m = optimal_iterations(shape, oracle)
        worst = max(worst, m - iteration_bound(shape.total, oracle.count))
    return [CheckResult("grover/iteration-bound", worst <= 0, float(worst), 0.0)]


def check_diffusion_composition(seed: int) -> list[CheckResult]:
    """Rank-one diffusion equals the layered Fourier composition V I0 V+."""
    worst = 0.0
    for i, dims in enumerate(([2, 2, 2], [3, 2], [5], [4, 3])):
        shape = SystemShape(dims)
        layer = diffusion_layer(shape)
        for j in range(3):
            state = random_state(shape, _case_seed(seed, 21, 10 * i + j))
            direct = diffusion(state)
            step = apply_local(layer.adjoint(), state)
            amps = step.amps.copy()
            amps[0] *= -1.0
            composed = apply_local(layer, StateVector(shape, amps))
            worst = max(worst, float(np.abs(direct.amps - composed.amps).max()))
    return [CheckResult("grover/diffusion-composition", worst <= 1e-12, worst, 1e-12)]


def check_unitarity_drift(seed: int) -> list[CheckResult]:
    """Norm stays within 1e-12 of 1 across many iterations."""
    shape = _qubit_shape(6)
    state = random_state(shape, _case_seed(seed, 22, 0))
    oracle = OracleSpec(shape, (17,))
    worst = 0.0
    for _ in range(100):
        state = grover_iterate(oracle, state)
        worst = max(worst, abs(state.norm - 1.0))
    return [CheckResult("grover/unitarity-drift", worst <= 1e-12, worst, 1e-12)]


def check_invariant_complement(seed: int) -> list[CheckResult]:
    """A state orthogonal to both the uniform and marked states is frozen."""
    shape = _qubit_shape(2)
    amps = np.zeros(4, dtype=np.complex128)
    amps[1] = SQRT_HALF
    amps[2] = -SQRT_HALF
    run = run_grover(make_state(shape, amps), OracleSpec(shape, (0,)), 5)
    worst = max(abs(p) for p in run.prob_curve)
    return [
        CheckResult(
            "grover/invariant-complement", worst <= 1e-15, worst, 1e-15,
            "P(k) stays 0 for (|1>-|2>)/sqrt2 with target 0",
        )
    ]


# ---------------------------------------------------------------------------
# pmax suite


def check_named_pmax(seed: int) -> list[CheckResult]:
    """Optimizer reproduces closed-form overlaps for the standard families."""
    shape3 = _qubit_shape(3)
    cases = [
        ("bell", bell(), 0.5),
        ("ghz3", ghz(3), 0.5),
        ("w3", w_state(3), 4.0 / 9.0),
        ("basis", basis_state(_qubit_shape(4), 5), 1.0),
        ("product", product_to_state(random_product(shape3, _case_seed(seed, 30, 0))), 1.0),
    ]
    worst = 0.0
    for i, (_, state, expect) in enumerate(cases):
        result = pmax_overlap(state, _cfg(seed, 30, i + 1))
        worst = max(worst, abs(result.value - expect))
    return [CheckResult("pmax/named-values", worst <= 1e-9, worst, 1e-9)]


def check_average_vs_overlap(seed: int) -> list[CheckResult]:
    """Full target-averaged search probability tracks the product overlap
    within 5/sqrt(N) on random two- and three-qubit states."""
    worst_excess = -math.inf
    worst_gap = 0.0
    for n, count in ((2, 50), (3, 50)):
        shape = _qubit_shape(n)
        bound = 5.0 / math.sqrt(shape.total)
        for i in range(count):
            state = random_state(shape, _case_seed(seed, 31, 100 * n + i))
            cfg = _cfg(seed, 31, 100 * n + i)
            gap = abs(pmax_simulated(state, cfg) - pmax_overlap(state, cfg).value)
            worst_gap = max(worst_gap, gap)
            worst_excess = max(worst_excess, gap - bound)
    return [
        CheckResult(
            "pmax/search-average-vs-overlap",
            worst_excess <= 0.0,
            worst_excess,
            0.0,
            f"gap minus 5/sqrt(N); worst gap {worst_gap:.3e}",
        )
    ]


def check_bipartite_agreement(seed: int) -> list[CheckResult]:
    """Alternating optimizer matches the Schmidt closed form on bipartite states."""
    worst = 0.0
    dims_cycle = [(d1, d2) for d1 in range(2, 9) for d2 in range(2, 9)]
    for i in range(100):
        d1, d2 = dims_cycle[i % len(dims_cycle)]
        shape = SystemShape([d1, d2])
        state = random_state(shape, _case_seed(seed, 32, i))
        value = pmax_overlap(state, _cfg(seed, 32, i)).value
        worst = max(worst, abs(value - pmax_bipartite(state, [1])))
    return [CheckResult("pmax/bipartite-agreement", worst <= 1e-9, worst, 1e-9)]


def check_grid_agreement(seed: int) -> list[CheckResult]:
    """Optimizer dominates the exact grid value and stays within its coarseness."""
    worst_under = -math.inf  # grid - overlap must stay <= 1e-9
    worst_over = -math.inf  # overlap - grid must stay <= 5e-3
    shape = _qubit_shape(3)
    for i in range(50):
        state = random_state(shape, _case_seed(seed, 33, i))
        value = pmax_overlap(state, _cfg(seed, 33, i)).value
        grid = pmax_grid_oracle(state, 64)
        worst_under = max(worst_under, grid - value)
        worst_over = max(worst_over, value - grid)
    return [
        CheckResult("pmax/grid-lower-bound", worst_under <= 1e-9, worst_under, 1e-9),
        CheckResult("pmax/grid-coarseness", worst_over <= 5e-3, worst_over, 5e-3),
    ]


def check_ascent(seed: int) -> list[CheckResult]:
    """Alternating single-site updates never decrease the overlap objective."""
    worst_drop = 0.0
    for i, dims in enumerate(([2, 2, 2], [3, 2], [2, 2, 2, 2])):
        shape = SystemShape(dims)
        state = random_state(shape, _case_seed(seed, 34, 2 * i))
        factors = list(random_product(shape, _case_seed(seed, 34, 2 * i + 1)).factors)
        prev = -math.inf
        for _ in range(25):
            for site in range(1, shape.n + 1):
                env = partial_contract(state, ProductState(shape, tuple(factors)), site)
                norm = float(np.linalg.norm(env))
                if norm < 1e-14:
                    break
                factors[site - 1] = env / norm
                objective = norm * norm
                if prev > -math.inf:
                    worst_drop = max(worst_drop, prev - objective)
                prev = objective
    return [CheckResult("pmax/ascent", worst_drop <= 1e-14, worst_drop, 1e-14)]


def check_lower_bound_and_range(seed: int) -> list[CheckResult]:
    """value >= max_x |amp_x|^2 >= 1/N, and value <= 1."""
    worst_floor = -math.inf
    worst_range = -math.inf
    for i, dims in enumerate(([2, 2], [3, 3], [2, 3, 2], [2, 2, 2, 2])):
        shape = SystemShape(dims)
        for j in range(5):
            state = random_state(shape, _case_seed(seed, 35, 10 * i + j))
            value = pmax_overlap(state, _cfg(seed, 35, 10 * i + j)).value
            floor = float(state.probabilities().max())
            worst_floor = max(worst_floor, floor - value)
            worst_range = max(
                worst_range, max(1.0 / shape.total - value, value - 1.0)
            )
    return [
        CheckResult(
            "pmax/basis-lower-bound", worst_floor <= 1e-12, worst_floor, 1e-12
        ),
        CheckResult("pmax/value-range", worst_range <= 1e-12, worst_range, 1e-12),
    ]


def check_feasibility(seed: int) -> list[CheckResult]:
    """Recomputing |<argmax|psi>|^2 reproduces the reported value."""
    worst = 0.0
    for i in range(10):
        shape = SystemShape([2, 3, 2] if i % 2 else [2, 2, 2])
        state = random_state(shape, _case_seed(seed, 36, i))
        result = pmax_overlap(state, _cfg(seed, 36, i))
        recomputed = abs(inner(product_to_state(result.argmax), state)) ** 2
        worst = max(worst, abs(recomputed - result.value))
    return [CheckResult("pmax/feasibility-recompute", worst <= 1e-12, worst, 1e-12)]


def check_pmax_lu_invariance(seed: int) -> list[CheckResult]:
    """The product-overlap maximum is invariant under local unitaries."""
    shape = _qubit_shape(3)
    worst = 0.0
    for i in range(20):
        state = random_state(shape, _case_seed(seed, 37, 2 * i))
        layer = random_local_layer(shape, _case_seed(seed, 37, 2 * i + 1))
        cfg = _cfg(seed, 37, i)
        a = pmax_overlap(state, cfg).value
        b = pmax_overlap(apply_local(layer, state), cfg).value
        worst = max(worst, abs(a - b))
    return [CheckResult("pmax/lu-invariance", worst <= 1e-8, worst, 1e-8)]


def check_grid_known_values(seed: int) -> list[CheckResult]:
    """Grid oracle sanity: Bell value, pole exactness, refinement monotonicity."""
    bell_err = abs(pmax_grid_oracle(bell(), 64) - 0.5)
    pole = pmax_grid_oracle(basis_state(_qubit_shape(3), 0), 64)
    pole_err = abs(pole - 1.0)
    worst_refine = -math.inf
    for i in range(5):
        state = random_state(_qubit_shape(3), _case_seed(seed, 38, i))
        worst_refine = max(
            worst_refine,
            pmax_grid_oracle(state, 64) - pmax_grid_oracle(state, 128),
        )
    return [
        CheckResult("pmax/grid-bell", bell_err <= 2e-3, bell_err, 2e-3),
        CheckResult("pmax/grid-pole-exact", pole_err == 0.0, pole_err, 0.0),
        CheckResult(
            "pmax/grid-refinement-monotone",
            worst_refine <= 1e-12,
            worst_refine,
            1e-12,
            "value(64) - value(128) on nested grids",
        ),
    ]


# ---------------------------------------------------------------------------
# measures suite


def check_named_measures(seed: int) -> list[CheckResult]:
    """G(Bell), G(GHZ3), G(W3) at their closed-form values; products at 0."""
    worst = 0.0
    unconverged = 0
    names = []
    for i, (state, expect) in enumerate(
        [(bell(), G_BELL), (ghz(3), G_BELL), (w_state(3), G_W3)]
    ):
        report = groverian(state, _cfg(seed, 40, i))
        worst = max(worst, abs(report.groverian - expect))
        names.append(f"{report.groverian:.7f}")
        unconverged += not report.converged
    product = product_to_state(random_product(_qubit_shape(3), _case_seed(seed, 40, 9)))
    prod_report = groverian(product, _cfg(seed, 40, 10))
    unconverged += not prod_report.converged
    worst = max(worst, prod_report.groverian)
    return [
        CheckResult(
            "measures/named-values",
            worst <= 1e-6 and unconverged == 0,
            worst,
            1e-6,
            "bell,ghz3,w3=" + ",".join(names)
            + f"; product={prod_report.groverian:.2e}; {unconverged} unconverged",
        )
    ]


def check_measure_lu_invariance(seed: int) -> list[CheckResult]:
    """|G(L psi) - G(psi)| <= 1e-8 over 100 random state/layer pairs."""
    shape = _qubit_shape(3)
    worst = 0.0
    unconverged = 0
    for i in range(100):
        state = random_state(shape, _case_seed(seed, 41, 2 * i))
        layer = random_local_layer(shape, _case_seed(seed, 41, 2 * i + 1))
        cfg = _cfg(seed, 41, i)
        a = groverian(state, cfg)
        b = groverian(apply_local(layer, state), cfg)
        unconverged += (not a.converged) + (not b.converged)
        worst = max(worst, abs(a.groverian - b.groverian))
    return [
        CheckResult(
            "measures/lu-invariance",
            worst <= 1e-8 and unconverged == 0,
            worst,
            1e-8,
            f"{unconverged} unconverged reports",
        )
    ]


def check_majorization_monotone(seed: int) -> list[CheckResult]:
    """Whenever the target spectrum majorizes the source, G cannot increase."""
    rng = np.random.default_rng(_case_seed(seed, 42, 0))
    failures = 0
    applicable_total = 0
    for outcomes in (2, 3):
        applicable = 0
        while applicable < 5000:
            source = rng.dirichlet(np.ones(outcomes))
            target = rng.dirichlet(np.ones(outcomes))
            if not majorizes(target, source):
                continue
            applicable += 1
            verdict = monotone_check_bipartite(source, target)
            if not (verdict.applicable and verdict.monotone_ok):
                failures += 1
        applicable_total += applicable
    return [
        CheckResult(
            "measures/majorization-monotone",
            failures == 0,
            float(failures),
            0.0,
            f"{applicable_total} applicable spectrum pairs",
        )
    ]


def check_entropy_relation(seed: int) -> list[CheckResult]:
    """Reduced-state entropy equals h(G^2) for two-qubit pure states."""
    worst = 0.0
    for i in range(100):
        state = random_state(_qubit_shape(2), _case_seed(seed, 43, i))
        s, h_g2 = entropy_check(state)
        worst = max(worst, abs(s - h_g2))
    return [CheckResult("measures/entropy-relation", worst <= 1e-9, worst, 1e-9)]


def check_mixed_extension(seed: int) -> list[CheckResult]:
    """Linear extension values: maximally mixed pair, and product densities."""
    mm = DensityMatrix(_qubit_shape(2), np.eye(4) / 4.0)
    g_mm = groverian_mixed(mm, _cfg(seed, 44, 0)).groverian
    mm_err = abs(g_mm - G_MAX_N4)

    worst = 0.0
    rng = np.random.default_rng(_case_seed(seed, 44, 1))
    for i in range(50):
        n_sites = 2 if i < 25 else 3
        locals_ = []
        for _ in range(n_sites):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            m = a @ a.conj().T
            locals_.append(m / np.trace(m).real)
        joint = locals_[0]
        for m in locals_[1:]:
            joint = np.kron(joint, m)
        rho = DensityMatrix(_qubit_shape(n_sites), joint)
        expected = groverian_product_mixed(locals_)
        got = groverian_mixed(rho, _cfg(seed, 44, i + 2)).groverian
        worst = max(worst, abs(got - expected))
    return [
        CheckResult(
            "measures/maximally-mixed-value", mm_err <= 1e-9, mm_err, 1e-9,
            f"G={g_mm:.10f}, positive on a separable state: not a monotone",
        ),
        CheckResult(
            "measures/product-density-formula", worst <= 1e-9, worst, 1e-9,
            "linear extension vs sqrt(1 - prod of top eigenvalues)",
        ),
    ]


def check_definitional_identities(seed: int) -> list[CheckResult]:
    """G^2 + pmax = 1 and E = 2 - 2 sqrt(pmax) on every report."""
    worst = 0.0
    reports = [groverian_bipartite(bell(), [1])]
    for i in range(10):
        state = random_state(_qubit_shape(2), _case_seed(seed, 45, i))
        reports.append(groverian_bipartite(state, [1]))
    for i in range(5):
        state = random_state(_qubit_shape(3), _case_seed(seed, 45, 100 + i))
        reports.append(groverian(state, _cfg(seed, 45, i)))
    for rep in reports:
        worst = max(worst, abs(rep.groverian**2 + rep.pmax - 1.0))
        worst = max(worst, abs(rep.vedral_e - (2.0 - 2.0 * math.sqrt(rep.pmax))))
    return [CheckResult("measures/definitional-identities", worst <= 1e-14, worst, 1e-14)]


def check_vedral_rank_order(seed: int) -> list[CheckResult]:
    """Ranking states by G equals ranking by the 2-2 sqrt(pmax) measure."""
    gs, es = [], []
    for i in range(20):
        state = random_state(_qubit_shape(3), _case_seed(seed, 46, i))
        rep = groverian(state, _cfg(seed, 46, i))
        gs.append(rep.groverian)
        es.append(rep.vedral_e)
    mismatches = int(
        (np.argsort(np.asarray(gs)) != np.argsort(np.asarray(es))).sum()
    )
    return [
        CheckResult(
            "measures/vedral-rank-order", mismatches == 0, float(mismatches), 0.0
        )
    ]


def check_zero_iff_product(seed: int) -> list[CheckResult]:
    """G vanishes on products and is large on the maximally entangled pair."""
    product = product_to_state(random_product(SystemShape([2, 3, 2]), _case_seed(seed, 47, 0)))
    g_prod = groverian(product, _cfg(seed, 47, 0)).groverian
    g_bell = groverian(bell(), _cfg(seed, 47, 1)).groverian
    bell_deficit = (0.7071 - 1e-6) - g_bell
    worst = max(g_prod, bell_deficit)
    return [
        CheckResult(
            "measures/zero-iff-product", worst <= 1e-6, worst, 1e-6,
            f"G(product)={g_prod:.2e}, G(bell)={g_bell:.7f}",
        )
    ]


def check_bures_chain(seed: int) -> list[CheckResult]:
    """Bures distance endpoints and the fidelity chain through pmax."""
    worst = max(abs(bures_distance(1.0)), abs(bures_distance(0.0) - 1.0))
    rep = groverian_bipartite(bell(), [1])
    worst = max(worst, abs(bures_distance(math.sqrt(rep.pmax)) - rep.groverian))
    return [CheckResult("measures/bures-distance-chain", worst <= 1e-12, worst, 1e-12)]


def check_schmidt_infrastructure(seed: int) -> list[CheckResult]:
    """Schmidt reconstruction and reduced-density spectra on random states."""
    worst_recon = 0.0
    worst_spec = 0.0
    for i, (dims, left) in enumerate(
        [([2, 2], [1]), ([4, 4], [1]), ([2, 2, 2, 2], [1, 3]), ([4, 4, 4, 4], [1, 2]), ([3, 3, 3], [2])]
    ):
        shape = SystemShape(dims)
        state = random_state(shape, _case_seed(seed, 48, i))
        dec = schmidt(state, left)
        worst_recon = max(worst_recon, schmidt_reconstruction_error(state, dec))
        evals = np.sort(
            np.linalg.eigvalsh(reduced_density(state, left).entries)
        )[::-1]
        k = dec.coeffs.size
        worst_spec = max(
            worst_spec, float(np.abs(evals[:k] - dec.probabilities).max())
        )
    return [
        CheckResult(
            "measures/schmidt-reconstruction", worst_recon <= 1e-10, worst_recon, 1e-10
        ),
        CheckResult(
            "measures/schmidt-vs-reduced-spectrum", worst_spec <= 1e-9, worst_spec, 1e-9
        ),
    ]


GROVER_CHECKS = [
    check_sine_formula,
    check_exact_n4,
    check_target_residual,
    check_qudit_pair,
    check_marked_symmetry,
    check_iteration_bound,
    check_diffusion_composition,
    check_unitarity_drift,
    check_invariant_complement,
]

PMAX_CHECKS = [
    check_named_pmax,
    check_average_vs_overlap,
    check_bipartite_agreement,
    check_grid_agreement,
    check_ascent,
    check_lower_bound_and_range,
    check_feasibility,
    check_pmax_lu_invariance,
    check_grid_known_values,
]

MEASURES_CHECKS = [
    check_named_measures,
    check_measure_lu_invariance,
    check_majorization_monotone,
    check_entropy_relation,
    check_mixed_extension,
    check_definitional_identities,
    check_vedral_rank_order,
    check_zero_iff_product,
    check_bures_chain,
    check_schmidt_infrastructure,
]

SUITES = {
    "grover": GROVER_CHECKS,
    "pmax": PMAX_CHECKS,
    "measures": MEASURES_CHECKS,
    "all": GROVER_CHECKS + PMAX_CHECKS + MEASURES_CHECKS,
}


def run_suite(name: str, seed: int) -> list[CheckResult]:
    """Run every check in the named suite with seeds derived from ``seed``."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    results: list[CheckResult] = []
    for check in SUITES[name]:
        results.extend(check(seed))
    return results
