"""Dense multi-qudit state vectors and the tensor operations on them.

Conventions used across the package:

* A register of n sites with per-site dimensions (d_1, ..., d_n) is indexed
  big-endian: basis index x = sum_j x_j * prod_{k>j} d_k, so site 1 is the
  most significant digit.  For qubits, x_1 is the leading bit of x.
* Sites are numbered 1..n in all public APIs.
* All value types are immutable after construction (arrays are read-only)
  and all operations are pure functions, so values can be shared freely
  between threads.  Random generation takes explicit seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadSiteIndex,
    BadSplit,
    BadSubset,
    DimensionMismatch,
    InvalidDensity,
    NotNormalized,
    ZeroVector,
)

# Construction accepts hand-typed input within 1e-8 of unit norm and
# renormalizes; unitary operations must preserve norm to 1e-12.
CONSTRUCT_TOL = 1e-8
NORM_DRIFT_TOL = 1e-12
ZERO_NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
DENSITY_TOL = 1e-10

# Largest representable joint dimension; protects basis-index arithmetic.
MAX_TOTAL_DIM = 2**62


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a complex vector so its first largest-modulus entry is real >= 0."""
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    if abs(pivot) == 0.0:
        return v.copy()
    return v * (abs(pivot) / pivot)


@dataclass(frozen=True)
class SystemShape:
    """Per-site dimensions of a register; total dimension N = prod(dims)."""

    dims: tuple[int, ...]

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if len(dims) < 1:
            raise DimensionMismatch("register needs at least one site")
        if any(d < 2 for d in dims):
            raise DimensionMismatch(f"every site dimension must be >= 2, got {dims}")
        total = 1
        for d in dims:
            total *= d
            if total > MAX_TOTAL_DIM:
                raise DimensionMismatch(
                    f"total dimension of {dims} overflows the index range"
                )
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def site_dim(self, site: int) -> int:
        self.check_site(site)
        return self.dims[site - 1]

    def check_site(self, site: int) -> None:
        if not 1 <= site <= self.n:
            raise BadSiteIndex(f"site {site} outside 1..{self.n}")

    def index_of(self, digits) -> int:
        """Basis index of per-site digits (x_1, ..., x_n), site 1 most significant."""
        return int(np.ravel_multi_index(tuple(digits), self.dims))

    def digits_of(self, index: int) -> tuple[int, ...]:
        """Per-site digits of a basis index, inverse of index_of."""
        return tuple(int(d) for d in np.unravel_index(index, self.dims))


def _check_same_shape(a, b) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape.dims} vs {b.shape.dims}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitudes over the joint computational basis."""

    shape: SystemShape
    amps: np.ndarray

    def __post_init__(self):
        amps = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != self.shape.total:
            raise DimensionMismatch(
                f"expected {self.shape.total} amplitudes, got {amps.size}"
            )
        norm = float(np.linalg.norm(amps))
        if norm < ZERO_NORM_TOL:
            raise ZeroVector("state vector has zero norm")
        if abs(norm - 1.0) > CONSTRUCT_TOL:
            raise NotNormalized(f"state norm {norm!r} deviates from 1 beyond 1e-8")
        object.__setattr__(self, "amps", _readonly(amps))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per site (read-only view)."""
        return self.amps.reshape(self.shape.dims)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True, eq=False)
class ProductState:
    """One unit vector per site; represents their tensor product.

    Each factor is stored in canonical phase: the first component of largest
    modulus is real and non-negative, so optimizer outputs are comparable
    across runs.
    """

    shape: SystemShape
    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.factors) != self.shape.n:
            raise DimensionMismatch(
                f"expected {self.shape.n} factors, got {len(self.factors)}"
            )
        fixed = []
        for j, (f, d) in enumerate(zip(self.factors, self.shape.dims), start=1):
            f = np.ascontiguousarray(f, dtype=np.complex128)
            if f.ndim != 1 or f.size != d:
                raise DimensionMismatch(f"factor {j} must have length {d}")
            if abs(float(np.linalg.norm(f)) - 1.0) > NORM_DRIFT_TOL:
                raise NotNormalized(f"factor {j} is not a unit vector")
            fixed.append(_readonly(canonical_phase(f)))
        object.__setattr__(self, "factors", tuple(fixed))


@dataclass(frozen=True, eq=False)
class LocalUnitaryLayer:
    """One unitary per site, applied as U_1 (x) ... (x) U_n."""

    shape: SystemShape
    gates: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.gates) != self.shape.n:
            raise DimensionMismatch(
                f"expected {self.shape.n} gates, got {len(self.gates)}"
            )
        fixed = []
        for j, (g, d) in enumerate(zip(self.gates, self.shape.dims), start=1):
            g = np.ascontiguousarray(g, dtype=np.complex128)
            if g.shape != (d, d):
                raise DimensionMismatch(f"gate {j} must be {d}x{d}")
            defect = np.abs(g.conj().T @ g - np.eye(d)).max()
            if defect > UNITARY_TOL:
                raise NotNormalized(f"gate {j} is not unitary (defect {defect:.2e})")
            fixed.append(_readonly(g))
        object.__setattr__(self, "gates", tuple(fixed))

    def adjoint(self) -> "LocalUnitaryLayer":
        return LocalUnitaryLayer(self.shape, tuple(g.conj().T for g in self.gates))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite operator on the register."""

    shape: SystemShape
    entries: np.ndarray

    def __post_init__(self):
        total = self.shape.total
        m = np.ascontiguousarray(self.entries, dtype=np.complex128)
        if m.shape != (total, total):
            raise DimensionMismatch(f"density matrix must be {total}x{total}")
        if np.abs(m - m.conj().T).max() > DENSITY_TOL:
            raise InvalidDensity("matrix is not Hermitian")
        trace = complex(np.trace(m))
        if abs(trace.real - 1.0) > DENSITY_TOL or abs(trace.imag) > DENSITY_TOL:
            raise InvalidDensity("trace differs from 1")
        if float(np.linalg.eigvalsh(m).min()) < -DENSITY_TOL:
            raise InvalidDensity("matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", _readonly(m))

    def tensor(self) -> np.ndarray:
        """Entries reshaped to (d_1..d_n, d_1..d_n), ket axes then bra axes."""
        return self.entries.reshape(self.shape.dims + self.shape.dims)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """Bipartite decomposition psi = sum_i c_i |u_i>|v_i| with c_i >= 0 sorted."""

    coeffs: np.ndarray
    left_vectors: np.ndarray  # columns u_i, dimension = prod of left sites
    right_vectors: np.ndarray  # columns v_i
    left_sites: tuple[int, ...] = field(default=())
    right_sites: tuple[int, ...] = field(default=())

    @property
    def probabilities(self) -> np.ndarray:
        return self.coeffs**2

    @property
    def p_max(self) -> float:
        return float(self.coeffs[0] ** 2)


def make_state(shape: SystemShape, amps) -> StateVector:
    """Build a normalized StateVector, renormalizing input within the 1e-8 window."""
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    if amps.ndim != 1 or amps.size != shape.total:
        raise DimensionMismatch(f"expected {shape.total} amplitudes, got {amps.size}")
    norm = float(np.linalg.norm(amps))
    if norm < ZERO_NORM_TOL:
        raise ZeroVector("cannot normalize a zero vector")
    if abs(norm - 1.0) > CONSTRUCT_TOL:
        raise NotNormalized(f"norm {norm!r} deviates from 1 by more than 1e-8")
    return StateVector(shape, amps / norm)


def basis_state(shape: SystemShape, index: int) -> StateVector:
    """Computational basis state |index> in big-endian order."""
    if not 0 <= index < shape.total:
        raise DimensionMismatch(f"basis index {index} outside 0..{shape.total - 1}")
    amps = np.zeros(shape.total, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(shape, amps)


def uniform_state(shape: SystemShape) -> StateVector:
    """The equal superposition of all basis states, amplitude 1/sqrt(N) each."""
    total = shape.total
    return StateVector(shape, np.full(total, 1.0 / math.sqrt(total), dtype=np.complex128))


def uniform_factor(dim: int) -> np.ndarray:
    return np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128)


def uniform_product(shape: SystemShape) -> ProductState:
    return ProductState(shape, tuple(uniform_factor(d) for d in shape.dims))


def apply_local(layer: LocalUnitaryLayer, state: StateVector) -> StateVector:
    """Apply a product of per-site unitaries without forming the NxN matrix."""
    _check_same_shape(layer, state)
    t = state.tensor()
    for j, gate in enumerate(layer.gates):
        t = np.moveaxis(np.tensordot(gate, t, axes=([1], [j])), 0, j)
    return StateVector(state.shape, np.ascontiguousarray(t).reshape(-1))


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugating a."""
    _check_same_shape(a, b)
    return complex(np.vdot(a.amps, b.amps))


def product_to_state(p: ProductState) -> StateVector:
    """Expand a product state into joint amplitudes; amp[x] = prod_j factor_j[x_j]."""
    amps = p.factors[0]
    for f in p.factors[1:]:
        amps = np.kron(amps, f)
    return StateVector(p.shape, amps)


def product_amps(factors) -> np.ndarray:
    """Joint amplitudes of raw per-site vectors (no normalization checks)."""
    amps = np.asarray(factors[0], dtype=np.complex128)
    for f in factors[1:]:
        amps = np.kron(amps, f)
    return amps


def _contract_all_but(tensor: np.ndarray, factors, skip_axis: int) -> np.ndarray:
    """Contract conj(factors[j]) onto every axis except skip_axis."""
    t = tensor
    for axis in range(tensor.ndim - 1, -1, -1):
        if axis == skip_axis:
            continue
        t = np.tensordot(t, np.conj(factors[axis]), axes=([axis], [0]))
    return t


def partial_contract(state: StateVector, p: ProductState, skip: int) -> np.ndarray:
    """Overlap of the state with the product of all factors except site ``skip``.

    Returns v with v[k] = <e_1,...,e_{skip-1}, k, e_{skip+1},...,e_n | state>,
    so <e_skip|v> equals the full product overlap <e_1..e_n|state>.
    """
    _check_same_shape(p, state)
    state.shape.check_site(skip)
    return _contract_all_but(state.tensor(), p.factors, skip - 1)


def _split_sites(shape: SystemShape, left) -> tuple[tuple[int, ...], tuple[int, ...]]:
    left = tuple(sorted(int(s) for s in left))
    if len(set(left)) != len(left):
        raise BadSplit(f"duplicate sites in split {left}")
    if any(not 1 <= s <= shape.n for s in left):
        raise BadSplit(f"split {left} references sites outside 1..{shape.n}")
    right = tuple(s for s in range(1, shape.n + 1) if s not in left)
    if not left or not right:
        raise BadSplit("split must be a nonempty proper bipartition")
    return left, right


def split_matrix(state: StateVector, left) -> tuple[np.ndarray, tuple, tuple]:
    """Amplitudes as a (left-group x right-group) matrix for a bipartition."""
    left, right = _split_sites(state.shape, left)
    perm = [s - 1 for s in left] + [s - 1 for s in right]
    d_left = int(np.prod([state.shape.dims[s - 1] for s in left]))
    t = state.tensor().transpose(perm).reshape(d_left, -1)
    return t, left, right


def schmidt(state: StateVector, left) -> SchmidtDecomposition:
    """Schmidt decomposition of the state across the bipartition (left | rest).

    ``left`` is the set of 1-based sites forming the first group.  Returned
    coefficients are non-negative, sorted non-increasing; vectors are
    orthonormal columns, each left vector in canonical phase.
    """
    m, left, right = split_matrix(state, left)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    v = vh.conj().T
    for i in range(s.size):
        col = u[:, i]
        pivot = col[int(np.argmax(np.abs(col)))]
        if abs(pivot) > 0:
            # The term is s_i u_i v_i+; rotating both vectors by the same
            # unit phase leaves it unchanged while canonicalizing u_i.
            phase = abs(pivot) / pivot
            u[:, i] = col * phase
            v[:, i] = v[:, i] * phase
    return SchmidtDecomposition(
        coeffs=_readonly(s),
        left_vectors=_readonly(u),
        right_vectors=_readonly(v),
        left_sites=left,
        right_sites=right,
    )


def schmidt_reconstruction_error(state: StateVector, dec: SchmidtDecomposition) -> float:
    """Norm of psi minus sum_i c_i u_i (x) v_i, in the original site order."""
    m = dec.left_vectors @ np.diag(dec.coeffs) @ dec.right_vectors.conj().T
    perm = [s - 1 for s in dec.left_sites] + [s - 1 for s in dec.right_sites]
    dims_perm = [state.shape.dims[i] for i in perm]
    inverse = np.argsort(perm)
    rebuilt = m.reshape(dims_perm).transpose(inverse).reshape(-1)
    return float(np.linalg.norm(state.amps - rebuilt))


def reduced_density(state: StateVector, keep) -> DensityMatrix:
    """Partial trace onto the given 1-based sites (ascending order)."""
    keep = tuple(sorted(int(s) for s in keep))
    if len(set(keep)) != len(keep) or not keep:
        raise BadSubset(f"invalid site subset {keep}")
    if any(not 1 <= s <= state.shape.n for s in keep):
        raise BadSubset(f"subset {keep} references sites outside 1..{state.shape.n}")
    if len(keep) == state.shape.n:
        raise BadSubset("subset must be proper; use an outer product instead")
    m, left, _right = split_matrix(state, keep)
    rho = m @ m.conj().T
    kept_shape = SystemShape([state.shape.dims[s - 1] for s in left])
    return DensityMatrix(kept_shape, rho)


def random_state(shape: SystemShape, seed) -> StateVector:
    """Haar-random pure state: normalized complex Gaussian amplitudes."""
    rng = _rng(seed)
    z = rng.standard_normal(shape.total) + 1j * rng.standard_normal(shape.total)
    return StateVector(shape, z / np.linalg.norm(z))


def random_product(shape: SystemShape, seed) -> ProductState:
    """Product of independent Haar-random single-site states."""
    rng = _rng(seed)
    factors = []
    for d in shape.dims:
        z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        factors.append(z / np.linalg.norm(z))
    return ProductState(shape, tuple(factors))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix.

    Columns are rescaled so the R-diagonal is real non-negative, which makes
    the distribution exactly Haar rather than QR-convention dependent.
    """
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return q * phases


def random_local_layer(shape: SystemShape, seed) -> LocalUnitaryLayer:
    """Independent Haar-random unitary on each site."""
    rng = _rng(seed)
    return LocalUnitaryLayer(shape, tuple(haar_unitary(d, rng) for d in shape.dims))


def fourier_gate(dim: int) -> np.ndarray:
    """Discrete Fourier transform over Z_dim; equals the Hadamard for dim 2.

    Column 0 is the uniform single-site state, the property the diffusion
    construction relies on.
    """
    scale = 1.0 / math.sqrt(dim)
    k = np.arange(dim)
    return np.exp(2j * math.pi * np.outer(k, k) / dim) * scale
