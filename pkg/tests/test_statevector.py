import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groverian import (
    BadSiteIndex,
    BadSplit,
    BadSubset,
    DensityMatrix,
    DimensionMismatch,
    InvalidDensity,
    LocalUnitaryLayer,
    NotNormalized,
    ProductState,
    SystemShape,
    ZeroVector,
    apply_local,
    basis_state,
    fourier_gate,
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
from groverian.statevector import haar_unitary

SQRT_HALF = math.sqrt(0.5)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) * SQRT_HALF


def bell_state():
    return make_state(SystemShape([2, 2]), [SQRT_HALF, 0, 0, SQRT_HALF])


class TestSystemShape:
    def test_basic(self):
        shape = SystemShape([2, 3, 4])
        assert shape.n == 3
        assert shape.total == 24

    @pytest.mark.parametrize("dims", [[], [1], [2, 1], [0, 2], [2, -3]])
    def test_invalid_dims(self, dims):
        with pytest.raises(DimensionMismatch):
            SystemShape(dims)

    def test_overflow_guarded(self):
        with pytest.raises(DimensionMismatch):
            SystemShape([2] * 80)

    def test_big_endian_indexing(self):
        shape = SystemShape([2, 3])
        # site 1 is most significant: (x1, x2) -> 3*x1 + x2
        assert shape.index_of((1, 2)) == 5
        assert shape.digits_of(5) == (1, 2)

    @given(st.lists(st.integers(min_value=2, max_value=5), min_size=1, max_size=6))
    @settings(max_examples=50, derandomize=True)
    def test_index_roundtrip(self, dims):
        shape = SystemShape(dims)
        for x in (0, shape.total // 2, shape.total - 1):
            assert shape.index_of(shape.digits_of(x)) == x


class TestMakeState:
    def test_basis_qubit(self):
        state = make_state(SystemShape([2]), [1, 0])
        assert np.array_equal(state.amps, np.array([1, 0], dtype=complex))

    def test_bell_norm(self):
        assert abs(bell_state().norm - 1.0) < 1e-15

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            make_state(SystemShape([2]), [1, 1])

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            make_state(SystemShape([2]), [0, 0])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            make_state(SystemShape([2, 2]), [1, 0])

    def test_renormalizes_within_window(self):
        state = make_state(SystemShape([2]), [1 + 5e-9, 0])
        assert abs(state.norm - 1.0) < 1e-15

    def test_amps_read_only(self):
        state = bell_state()
        with pytest.raises(ValueError):
            state.amps[0] = 1.0

    @given(st.floats(min_value=1e-11, max_value=0.5))
    @settings(max_examples=30, derandomize=True)
    def test_rejects_outside_window(self, off):
        if off <= 1e-8:
            make_state(SystemShape([2]), [1 + off, 0])
        else:
            with pytest.raises(NotNormalized):
                make_state(SystemShape([2]), [1 + off, 0])


class TestUniformState:
    @pytest.mark.parametrize(
        "dims,expected",
        [([2, 2], 0.5), ([3], 1 / math.sqrt(3)), ([2] * 10, 1 / 32)],
    )
    def test_amplitudes(self, dims, expected):
        state = uniform_state(SystemShape(dims))
        assert np.allclose(state.amps, expected, atol=1e-15)


class TestApplyLocal:
    def test_identity(self, three_qubits):
        state = random_state(three_qubits, 3)
        layer = LocalUnitaryLayer(three_qubits, tuple(np.eye(2) for _ in range(3)))
        out = apply_local(layer, state)
        assert np.allclose(out.amps, state.amps, atol=1e-15)

    def test_hadamard_on_zero(self):
        shape = SystemShape([2])
        out = apply_local(
            LocalUnitaryLayer(shape, (HADAMARD,)), basis_state(shape, 0)
        )
        assert np.allclose(out.amps, [SQRT_HALF, SQRT_HALF], atol=1e-15)

    def test_hh_gives_uniform(self, two_qubits):
        layer = LocalUnitaryLayer(two_qubits, (HADAMARD, HADAMARD))
        out = apply_local(layer, basis_state(two_qubits, 0))
        assert np.allclose(out.amps, uniform_state(two_qubits).amps, atol=1e-15)

    def test_norm_preserved_random(self):
        shape = SystemShape([3, 2, 4])
        for i in range(5):
            state = random_state(shape, 10 + i)
            layer = random_local_layer(shape, 20 + i)
            assert abs(apply_local(layer, state).norm - 1.0) <= 1e-12

    def test_shape_mismatch(self, two_qubits, three_qubits):
        layer = LocalUnitaryLayer(two_qubits, (HADAMARD, HADAMARD))
        with pytest.raises(DimensionMismatch):
            apply_local(layer, random_state(three_qubits, 0))

    def test_rejects_nonunitary_gate(self, two_qubits):
        with pytest.raises(NotNormalized):
            LocalUnitaryLayer(two_qubits, (np.eye(2) * 2, np.eye(2)))


class TestInner:
    def test_self_overlap(self, three_qubits):
        state = random_state(three_qubits, 5)
        assert abs(inner(state, state) - 1.0) < 1e-14

    def test_orthogonal_basis(self):
        shape = SystemShape([2])
        assert inner(basis_state(shape, 0), basis_state(shape, 1)) == 0

    def test_uniform_bell_overlap(self, two_qubits):
        # direct four-term sum: (1/2)(1/sqrt2) + 0 + 0 + (1/2)(1/sqrt2)
        value = inner(uniform_state(two_qubits), bell_state())
        assert abs(value - SQRT_HALF) < 1e-15


class TestProductToState:
    def test_basis_product(self, two_qubits):
        p = ProductState(two_qubits, (np.array([1, 0]), np.array([0, 1])))
        state = product_to_state(p)
        assert np.allclose(state.amps, [0, 1, 0, 0], atol=1e-15)

    def test_uniform_product(self, two_qubits):
        plus = np.array([SQRT_HALF, SQRT_HALF])
        state = product_to_state(ProductState(two_qubits, (plus, plus)))
        assert np.allclose(state.amps, uniform_state(two_qubits).amps, atol=1e-15)

    def test_complex_factor_expansion(self, two_qubits):
        # [(|0>+i|1>)/sqrt2, |0>] -> [1/sqrt2, 0, i/sqrt2, 0], up to the
        # canonical phase applied at construction (here: none, first entry real)
        f1 = np.array([SQRT_HALF, 1j * SQRT_HALF])
        f2 = np.array([1.0, 0.0])
        state = product_to_state(ProductState(two_qubits, (f1, f2)))
        assert np.allclose(state.amps, [SQRT_HALF, 0, 1j * SQRT_HALF, 0], atol=1e-15)

    def test_factor_validation(self, two_qubits):
        with pytest.raises(NotNormalized):
            ProductState(two_qubits, (np.array([1.0, 1.0]), np.array([1.0, 0.0])))
        with pytest.raises(DimensionMismatch):
            ProductState(two_qubits, (np.array([1.0, 0.0]),))

    def test_canonical_phase_applied(self, two_qubits):
        f = np.array([0.0, 1j])  # largest-modulus entry must become real >= 0
        p = ProductState(two_qubits, (f, np.array([1.0, 0.0])))
        assert p.factors[0][1] == pytest.approx(1.0)


class TestPartialContract:
    def test_basis_readout(self, two_qubits):
        state = basis_state(two_qubits, 1)  # |01>
        p = ProductState(two_qubits, (np.array([1, 0]), np.array([1, 0])))
        v = partial_contract(state, p, 2)
        assert np.allclose(v, [0, 1], atol=1e-15)

    def test_bell_contraction(self, two_qubits):
        p = ProductState(two_qubits, (np.array([1, 0]), np.array([1, 0])))
        v = partial_contract(bell_state(), p, 1)
        assert np.allclose(v, [SQRT_HALF, 0], atol=1e-15)

    def test_identity_on_random_inputs(self):
        shape = SystemShape([2, 3, 2])
        for i in range(10):
            state = random_state(shape, 100 + i)
            p = random_product(shape, 200 + i)
            full = inner(product_to_state(p), state)
            for site in range(1, 4):
                v = partial_contract(state, p, site)
                contracted = complex(np.vdot(p.factors[site - 1], v))
                assert abs(contracted - full) <= 1e-12

    def test_bad_site(self, two_qubits):
        p = random_product(two_qubits, 0)
        state = random_state(two_qubits, 0)
        for site in (0, 3):
            with pytest.raises(BadSiteIndex):
                partial_contract(state, p, site)

    def test_shape_mismatch(self, two_qubits, three_qubits):
        with pytest.raises(DimensionMismatch):
            partial_contract(random_state(three_qubits, 0), random_product(two_qubits, 0), 1)


class TestSchmidt:
    def test_product_single_coeff(self, two_qubits):
        dec = schmidt(basis_state(two_qubits, 0), [1])
        assert abs(dec.coeffs[0] - 1.0) < 1e-12
        assert np.all(dec.coeffs[1:] < 1e-12)

    def test_bell(self, two_qubits):
        dec = schmidt(bell_state(), [1])
        assert np.allclose(dec.coeffs, [SQRT_HALF, SQRT_HALF], atol=1e-12)

    def test_ghz3_split(self):
        shape = SystemShape([2, 2, 2])
        amps = np.zeros(8, dtype=complex)
        amps[0] = amps[7] = SQRT_HALF
        dec = schmidt(make_state(shape, amps), [1])
        assert np.allclose(dec.coeffs, [SQRT_HALF, SQRT_HALF], atol=1e-12)

    def test_reconstruction_upto_256(self):
        for dims, left in [([16, 16], [1]), ([4, 4, 4, 4], [2, 4]), ([2] * 8, [1, 2, 3])]:
            shape = SystemShape(dims)
            state = random_state(shape, 7)
            dec = schmidt(state, left)
            assert schmidt_reconstruction_error(state, dec) <= 1e-10

    def test_orthonormal_vectors(self):
        state = random_state(SystemShape([4, 6]), 11)
        dec = schmidt(state, [1])
        k = dec.coeffs.size
        assert np.abs(dec.left_vectors.conj().T @ dec.left_vectors - np.eye(k)).max() <= 1e-10
        assert np.abs(dec.right_vectors.conj().T @ dec.right_vectors - np.eye(k)).max() <= 1e-10
        assert abs(dec.probabilities.sum() - 1.0) <= 1e-10
        assert np.all(np.diff(dec.coeffs) <= 1e-15)

    def test_spectrum_matches_reduced_density(self):
        shape = SystemShape([2, 3, 2])
        state = random_state(shape, 13)
        dec = schmidt(state, [1, 3])
        evals = np.sort(np.linalg.eigvalsh(reduced_density(state, [1, 3]).entries))[::-1]
        assert np.abs(evals[: dec.coeffs.size] - dec.probabilities).max() <= 1e-9

    def test_product_state_single_coeff_roundtrip(self):
        shape = SystemShape([2, 2, 3])
        state = product_to_state(random_product(shape, 21))
        dec = schmidt(state, [2])
        assert abs(dec.coeffs[0] - 1.0) <= 1e-10
        assert np.all(dec.coeffs[1:] <= 1e-10)

    @pytest.mark.parametrize("left", [[], [1, 2], [0], [3]])
    def test_bad_split(self, two_qubits, left):
        with pytest.raises(BadSplit):
            schmidt(random_state(two_qubits, 0), left)


class TestReducedDensity:
    def test_product(self, two_qubits):
        rho = reduced_density(basis_state(two_qubits, 0), [1])
        assert np.allclose(rho.entries, [[1, 0], [0, 0]], atol=1e-15)

    def test_bell_maximally_mixed(self, two_qubits):
        rho = reduced_density(bell_state(), [1])
        assert np.allclose(rho.entries, np.eye(2) / 2, atol=1e-15)

    def test_bad_subset(self, two_qubits):
        state = random_state(two_qubits, 0)
        for keep in ([], [1, 2], [5]):
            with pytest.raises(BadSubset):
                reduced_density(state, keep)


class TestDensityMatrix:
    def test_validation(self, two_qubits):
        with pytest.raises(InvalidDensity):
            DensityMatrix(two_qubits, np.eye(4))  # trace 4
        bad = np.eye(4) / 4
        bad[0, 1] = 0.5
        with pytest.raises(InvalidDensity):
            DensityMatrix(two_qubits, bad)  # not Hermitian
        neg = np.diag([0.7, 0.5, -0.1, -0.1])
        with pytest.raises(InvalidDensity):
            DensityMatrix(two_qubits, neg)


class TestRandomGeneration:
    def test_deterministic(self, two_qubits):
        a = random_state(two_qubits, 42)
        b = random_state(two_qubits, 42)
        assert np.array_equal(a.amps, b.amps)
        la = random_local_layer(two_qubits, 42)
        lb = random_local_layer(two_qubits, 42)
        assert all(np.array_equal(x, y) for x, y in zip(la.gates, lb.gates))
        pa = random_product(two_qubits, 42)
        pb = random_product(two_qubits, 42)
        assert all(np.array_equal(x, y) for x, y in zip(pa.factors, pb.factors))

    def test_norms(self, two_qubits):
        assert abs(random_state(two_qubits, 1).norm - 1.0) <= 1e-12
        for f in random_product(two_qubits, 1).factors:
            assert abs(np.linalg.norm(f) - 1.0) <= 1e-12

    def test_haar_unitary_is_unitary(self):
        rng = np.random.default_rng(5)
        for d in (2, 3, 5):
            u = haar_unitary(d, rng)
            assert np.abs(u.conj().T @ u - np.eye(d)).max() <= 1e-12

    def test_haar_first_moment(self, two_qubits):
        # E |<0|psi>|^2 = 1/N for Haar states; Monte Carlo at 1e4 draws
        total = 0.0
        draws = 10_000
        for i in range(draws):
            total += abs(random_state(two_qubits, np.random.SeedSequence((99, i))).amps[0]) ** 2
        assert abs(total / draws - 0.25) < 0.02


class TestFourierGate:
    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_unitary_and_uniform_column(self, d):
        v = fourier_gate(d)
        assert np.abs(v.conj().T @ v - np.eye(d)).max() <= 1e-12
        assert np.allclose(v[:, 0], np.full(d, 1 / math.sqrt(d)), atol=1e-15)

    def test_qubit_case_is_hadamard(self):
        assert np.allclose(fourier_gate(2), HADAMARD, atol=1e-15)
