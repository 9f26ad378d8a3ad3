"""Named state families used by the CLI and the verification suites.

Family strings use colon syntax: ``bell``, ``ghz:3``, ``w:4``,
``uniform:2,3``, ``basis:2,2:1``, ``random:2,2,2:42``,
``product-random:2,2:7``; density families: ``maximally-mixed:2,2``.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, GroverianError
from .statevector import (
    DensityMatrix,
    StateVector,
    SystemShape,
    basis_state,
    product_to_state,
    random_product,
    random_state,
    uniform_state,
)


class UnknownFamily(GroverianError):
    """State spec string is neither a known family nor a readable file."""


def ghz(n: int) -> StateVector:
    """(|0...0> + |1...1>)/sqrt(2) on n qubits."""
    if n < 2:
        raise DimensionMismatch("ghz needs at least 2 sites")
    shape = SystemShape([2] * n)
    amps = np.zeros(shape.total, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(shape, amps)


def w_state(n: int) -> StateVector:
    """Equal superposition of the n weight-one bit strings."""
    if n < 2:
        raise DimensionMismatch("w needs at least 2 sites")
    shape = SystemShape([2] * n)
    amps = np.zeros(shape.total, dtype=np.complex128)
    for j in range(n):
        amps[1 << j] = 1.0 / math.sqrt(n)
    return StateVector(shape, amps)


def bell() -> StateVector:
    return ghz(2)


def maximally_mixed(dims) -> DensityMatrix:
    shape = SystemShape(dims)
    return DensityMatrix(shape, np.eye(shape.total) / shape.total)


def _parse_dims(text: str) -> list[int]:
    try:
        dims = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise UnknownFamily(f"bad dimension list {text!r}") from exc
    return dims


def expand_state_family(spec: str) -> StateVector | None:
    """Expand a family string to a state, or None when it names no family."""
    name, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "bell" and not args:
            return bell()
        if name == "ghz" and len(args) == 1:
            return ghz(int(args[0]))
        if name == "w" and len(args) == 1:
            return w_state(int(args[0]))
        if name == "uniform" and len(args) == 1:
            return uniform_state(SystemShape(_parse_dims(args[0])))
        if name == "basis" and len(args) == 2:
            return basis_state(SystemShape(_parse_dims(args[0])), int(args[1]))
        if name == "random" and len(args) == 2:
            return random_state(SystemShape(_parse_dims(args[0])), int(args[1]))
        if name == "product-random" and len(args) == 2:
            shape = SystemShape(_parse_dims(args[0]))
            return product_to_state(random_product(shape, int(args[1])))
    except ValueError as exc:
        raise UnknownFamily(f"bad arguments in state spec {spec!r}") from exc
    return None


def expand_density_family(spec: str) -> DensityMatrix | None:
    """Expand a density family string, or None when it names no family."""
    name, _, rest = spec.partition(":")
    args = rest.split(":") if rest else []
    try:
        if name == "maximally-mixed" and len(args) == 1:
            return maximally_mixed(_parse_dims(args[0]))
        if name == "pure" and len(args) >= 1:
            state = expand_state_family(rest)
            if state is not None:
                return DensityMatrix(
                    state.shape, np.outer(state.amps, state.amps.conj())
                )
    except ValueError as exc:
        raise UnknownFamily(f"bad arguments in density spec {spec!r}") from exc
    return None
