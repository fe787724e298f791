"""Born-rule probabilities, support tables and common eigenbases.

Support membership is a theorem-grade verdict, so it is decided at the
operator level with exact arithmetic: an outcome tuple is possible iff the
product of its spectral projections is a nonzero operator, independently
of any state.  States themselves may carry floating entries; whenever a
state is exact (as all built-in preparations are), probabilities come out
as exact Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import graph as ks_graph
from .exact import ComplexMatrix
from .pauli import PauliString, spectral_projection

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10
EIGENSTATE_TOL = 1e-10


class DensityOperator:
    """A quantum state; keeps an exact matrix alongside floats when known."""

    __slots__ = ("matrix", "exact")

    def __init__(self, matrix: np.ndarray, exact: ComplexMatrix | None = None):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("density operator must be a square matrix")
        if not np.allclose(matrix, matrix.conj().T, atol=HERMITICITY_TOL):
            raise ValueError("density operator must be hermitian")
        if abs(np.trace(matrix) - 1.0) > HERMITICITY_TOL:
            raise ValueError("density operator must have unit trace")
        eigenvalues = np.linalg.eigvalsh(matrix)
        if eigenvalues.min() < -PSD_TOL:
            raise ValueError(
                f"density operator not positive semidefinite (min eigenvalue {eigenvalues.min():.3g})"
            )
        self.matrix = matrix
        self.exact = exact

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_exact(cls, exact: ComplexMatrix) -> "DensityOperator":
        return cls(exact.to_numpy(), exact=exact)

    @classmethod
    def from_state_vector(cls, amplitudes: Sequence[complex]) -> "DensityOperator":
        vec = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(vec)
        if norm < 1e-12:
            raise ValueError("state vector must be nonzero")
        vec = vec / norm
        return cls(np.outer(vec, vec.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityOperator":
        exact = ComplexMatrix.identity(dim).scale(Fraction(1, dim))
        return cls.from_exact(exact)

    @classmethod
    def from_projection(cls, projection: ComplexMatrix) -> "DensityOperator":
        """Normalize an exact orthogonal projection into a state."""
        rank = projection.trace()
        if not rank.is_real() or rank.re <= 0:
            raise ValueError("projection must have positive integer rank")
        return cls.from_exact(projection.scale(Fraction(1) / rank.re))


def _check_observable(p: PauliString, dim: int):
    if not p.is_hermitian or p.is_identity_word:
        raise ValueError(f"{p} is not a two-valued hermitian observable")
    if 2**p.n_qubits != dim:
        raise ValueError(f"dimension mismatch: state dim {dim}, operator dim {2**p.n_qubits}")


def born_probability(rho: DensityOperator, p: PauliString, eigenvalue: int):
    """Tr(rho * P_eigenvalue); a Fraction when the state is exact."""
    _check_observable(p, rho.dim)
    projection = spectral_projection(p, eigenvalue)
    if rho.exact is not None:
        value = rho.exact.trace_product(projection)
        if not value.is_real():
            raise ValueError("trace of a hermitian pair came out complex")
        return value.re
    return float(np.trace(rho.matrix @ projection.to_numpy()).real)


@lru_cache(maxsize=None)
def joint_projection(
    ops: tuple[PauliString, ...], outcomes: tuple[int, ...]
) -> ComplexMatrix:
    """Exact product of the spectral projections of commuting operators."""
    if len(ops) != len(outcomes):
        raise ValueError("one outcome per operator required")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not ops[i].commutes(ops[j]):
                raise ValueError(f"{ops[i]} and {ops[j]} do not commute")
    result = spectral_projection(ops[0], outcomes[0])
    for op, outcome in zip(ops[1:], outcomes[1:]):
        result = result @ spectral_projection(op, outcome)
    return result


def joint_born_probability(
    rho: DensityOperator,
    ops: Sequence[PauliString],
    outcomes: Sequence[int],
):
    """Tr(rho * prod_i P_i^{outcome_i}) for mutually commuting operators."""
    ops = tuple(ops)
    outcomes = tuple(outcomes)
    for op in ops:
        _check_observable(op, rho.dim)
    projection = joint_projection(ops, outcomes)
    if rho.exact is not None:
        value = rho.exact.trace_product(projection)
        if not value.is_real():
            raise ValueError("trace of a hermitian pair came out complex")
        return value.re
    return float(np.trace(rho.matrix @ projection.to_numpy()).real)


@dataclass(frozen=True)
class SupportTable:
    """Per edge, the outcome tuples whose joint projection is nonzero."""

    per_edge: tuple[tuple[tuple[int, ...], ...], ...]

    def tuples_for(self, edge_index: int) -> tuple[tuple[int, ...], ...]:
        return self.per_edge[edge_index]

    def allows(self, edge_index: int, outcomes: tuple[int, ...]) -> bool:
        return outcomes in self.per_edge[edge_index]


@lru_cache(maxsize=64)
def support_table(graph: ks_graph.KSGraph) -> SupportTable:
    """State-independent support of every edge, decided exactly.

    For a valid hyperedge this equals the admissible tuples: the joint
    projection of a tuple vanishes identically iff the tuple's product
    disagrees with the edge sign.
    """
    from itertools import product

    per_edge = []
    for e_idx in range(len(graph.hyperedges)):
        ops = graph.edge_operators(e_idx)
        allowed = []
        for combo in product((1, -1), repeat=len(ops)):
            if not joint_projection(ops, combo).is_zero():
                allowed.append(combo)
        per_edge.append(tuple(allowed))
    return SupportTable(per_edge=tuple(per_edge))


def common_eigenbasis(
    ops: Sequence[PauliString],
) -> list[tuple[np.ndarray, tuple[int, ...]]]:
    """Orthonormal simultaneous eigenvectors with their eigenvalue tuples.

    Works by projection refinement: the space is split by each operator's
    ±1 projections in turn, keeping the nonzero intersections.  The joint
    projections (and hence the surviving tuples and multiplicities) are
    exact; only the final orthonormal vectors are floating point.
    """
    ops = tuple(ops)
    if not ops:
        raise ValueError("need at least one operator")
    # mutual commutation is what makes the refinement products projections
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not ops[i].commutes(ops[j]):
                raise ValueError(f"{ops[i]} and {ops[j]} do not commute")
    dim = 2 ** ops[0].n_qubits
    branches: list[tuple[ComplexMatrix, tuple[int, ...]]] = [
        (ComplexMatrix.identity(dim), ())
    ]
    for op in ops:
        _check_observable(op, dim)
        refined = []
        for projection, outcomes in branches:
            for eigenvalue in (1, -1):
                candidate = projection @ spectral_projection(op, eigenvalue)
                if not candidate.is_zero():
                    refined.append((candidate, outcomes + (eigenvalue,)))
        branches = refined

    basis: list[tuple[np.ndarray, tuple[int, ...]]] = []
    for projection, outcomes in branches:
        rank_exact = projection.trace()
        rank = int(rank_exact.re)
        if rank_exact.im != 0 or Fraction(rank) != rank_exact.re:
            raise ValueError("projection rank is not an integer; inputs not commuting?")
        eigenvalues, eigenvectors = np.linalg.eigh(projection.to_numpy())
        # eigh sorts ascending; the range of the projection is the tail
        for column in range(dim - rank, dim):
            vector = eigenvectors[:, column]
            basis.append((vector, outcomes))
    return basis


def is_operational_eigenstate(
    rho: DensityOperator,
    ops: Sequence[PauliString],
    tol: float = EIGENSTATE_TOL,
) -> bool:
    """True iff every joint outcome probability is 0 or 1 within tol."""
    from itertools import product

    ops = tuple(ops)
    for combo in product((1, -1), repeat=len(ops)):
        p = joint_born_probability(rho, ops, combo)
        if min(abs(p), abs(p - 1)) > tol:
            return False
    return True
