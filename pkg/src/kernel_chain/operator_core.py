"""
Exact matrix model of the composition operator C_τ f = f∘τ on a finite space.

The matrix of C_τ has entry (x, y) = 1 iff τ(x) = y, so applying it to the
coefficient vector of f gives the vector of f∘τ. Kernel and range chains of its
powers are computed exactly and serve as the oracle for the measure-theoretic
characterisations in `chain_analysis`.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Tuple, Union

import numpy as np

from kernel_chain import exact_linalg
from kernel_chain.errors import (
    DecompositionFailure,
    InconsistencyFound,
    NonsingularityViolated,
)
from kernel_chain.measure_space import (
    DiscreteMeasureSpace,
    Transformation,
    is_nonsingular,
    iterate,
    new_space,
    rn_derivative,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, float, Fraction]


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    space: DiscreteMeasureSpace
    entries: np.ndarray

    @property
    def n(self) -> int:
        return len(self.space)

    def power(self, k: int) -> np.ndarray:
        return np.linalg.matrix_power(self.entries, k)

    def rows(self, k: int = 1) -> List[List[int]]:
        return self.power(k).tolist()


@dataclass(frozen=True)
class ChainDims:
    """Nullity and rank of M^k for k = 0..kmax"""

    nullities: Tuple[int, ...]
    ranks: Tuple[int, ...]

    @property
    def kmax(self) -> int:
        return len(self.ranks) - 1


@dataclass(frozen=True)
class RieszDecomposition:
    p: int
    kernel_basis: List[List[Fraction]]
    range_basis: List[List[Fraction]]


def matrix_of(tau: Transformation) -> OperatorMatrix:
    n = len(tau.space)
    entries = np.zeros((n, n), dtype=np.int64)
    entries[np.arange(n), np.array(tau.images, dtype=np.intp)] = 1
    return OperatorMatrix(tau.space, entries)


def reduced_map(tau: Transformation) -> Transformation:
    """
    Restriction of τ to the positive-weight atoms.

    Functions equal μ-a.e. are identified, so only positive atoms carry
    coordinates. Nonsingularity makes τ map positive atoms to positive atoms.
    """
    if not is_nonsingular(tau):
        raise NonsingularityViolated("The a.e. quotient needs a nonsingular map")
    space = tau.space
    keep = [i for i, w in enumerate(space.weights) if w > 0]
    position = {i: j for j, i in enumerate(keep)}
    reduced_space = new_space(
        [space.points[i] for i in keep], [space.weights[i] for i in keep]
    )
    images = tuple(position[tau.images[i]] for i in keep)
    return Transformation(reduced_space, images)


def reduced_matrix(tau: Transformation) -> OperatorMatrix:
    """Matrix of C_τ on the a.e. quotient"""
    return matrix_of(reduced_map(tau))


def chain_dims(m: OperatorMatrix, kmax: Optional[int] = None) -> ChainDims:
    kmax = m.n if kmax is None else kmax
    if kmax < 1:
        raise ValueError(f"kmax must be at least 1, got {kmax}")
    nullities, ranks = [], []
    power = np.eye(m.n, dtype=np.int64)
    for k in range(kmax + 1):
        if k > 0:
            power = power @ m.entries
        r = exact_linalg.rank(power.tolist())
        ranks.append(r)
        nullities.append(m.n - r)
        logger.debug(f"k={k}: rank={r}")
    return ChainDims(tuple(nullities), tuple(ranks))


def _first_stable(values: Tuple[int, ...]) -> Optional[int]:
    for k in range(1, len(values) - 1):
        if values[k] == values[k + 1]:
            return k
    return None


def _oracle_dims(m: OperatorMatrix, dims: Optional[ChainDims]) -> ChainDims:
    # stabilisation happens by k = n, so k = n + 1 must be present
    needed = max(m.n, 1) + 1
    if dims is None or dims.kmax < needed:
        dims = chain_dims(m, needed)
    return dims


def ascent_oracle(m: OperatorMatrix, dims: Optional[ChainDims] = None) -> int:
    """Smallest k >= 1 with N(M^k) = N(M^{k+1})"""
    k = _first_stable(_oracle_dims(m, dims).nullities)
    if k is None:
        raise InconsistencyFound(
            "kernel chain stabilisation", None, f"k <= {m.n}", "none"
        )
    return k


def descent_oracle(m: OperatorMatrix, dims: Optional[ChainDims] = None) -> int:
    """Smallest k >= 1 with R(M^k) = R(M^{k+1})"""
    k = _first_stable(_oracle_dims(m, dims).ranks)
    if k is None:
        raise InconsistencyFound(
            "range chain stabilisation", None, f"k <= {m.n}", "none"
        )
    return k


def riesz_decomposition(
    m: OperatorMatrix, dims: Optional[ChainDims] = None
) -> RieszDecomposition:
    """
    Split the space into N(M^p) ⊕ R(M^p) with p the common ascent and descent.

    Checks that the sum is direct, that M is nilpotent of index <= p on the
    kernel part and that M is invertible on the range part.
    """
    dims = _oracle_dims(m, dims)
    p = ascent_oracle(m, dims)
    q = descent_oracle(m, dims)
    if p != q:
        raise DecompositionFailure(f"Ascent {p} and descent {q} differ")
    m_rows = m.rows(1)
    m_p = m.rows(p)
    kernel_basis = exact_linalg.nullspace_basis(m_p)
    range_basis = exact_linalg.column_space_basis(m_p)

    if len(kernel_basis) + len(range_basis) != m.n:
        raise DecompositionFailure(
            f"dim N + dim R = {len(kernel_basis) + len(range_basis)} != {m.n}"
        )
    joint_basis = exact_linalg.transpose(kernel_basis + range_basis)
    if m.n and exact_linalg.rank(joint_basis) != m.n:
        raise DecompositionFailure("N(M^p) and R(M^p) do not form a direct sum")

    for v in kernel_basis:
        w = v
        for _ in range(p):
            w = exact_linalg.mat_vec(m_rows, w)
        if not exact_linalg.is_zero(w):
            raise DecompositionFailure("M is not nilpotent on N(M^p)")

    if range_basis:
        images = [exact_linalg.mat_vec(m_rows, w) for w in range_basis]
        if exact_linalg.rank(exact_linalg.transpose(images)) != len(range_basis):
            raise DecompositionFailure("M is not invertible on R(M^p)")
        # M maps R(M^p) into itself
        joint = exact_linalg.transpose(range_basis + images)
        if exact_linalg.rank(joint) != len(range_basis):
            raise DecompositionFailure("R(M^p) is not invariant under M")

    logger.debug(
        f"Riesz decomposition: p={p}, "
        f"dim N={len(kernel_basis)}, dim R={len(range_basis)}"
    )
    return RieszDecomposition(p, kernel_basis, range_basis)


def boundedness_constant(tau: Transformation) -> Fraction:
    """Least K with μ(τ^{-1}A) <= K μ(A): the largest value of f_τ on positive atoms"""
    f_tau = rn_derivative(tau, 1)
    values = [v for v, w in zip(f_tau.values, tau.space.weights) if w > 0]
    return max(values, default=Fraction(0))


def kernel_membership(tau: Transformation, k: int, f: Mapping[str, Scalar]) -> bool:
    """
    Whether f lies in N(C_τ^k), i.e. vanishes a.e. outside Ω_k = {f_{τ^k} = 0}.

    The answer is cross-checked against M^k f = 0 on positive-weight atoms.
    """
    space = tau.space
    f_k = rn_derivative(tau, k)
    vanishes_off_zero_set = all(
        f.get(p, 0) == 0
        for p, w, d in zip(space.points, space.weights, f_k.values)
        if w > 0 and d > 0
    )
    tau_k = iterate(tau, k)
    composed = [f.get(space.points[j], 0) for j in tau_k.images]
    matrix_zero = all(
        value == 0 for value, w in zip(composed, space.weights) if w > 0
    )
    if vanishes_off_zero_set != matrix_zero:
        raise InconsistencyFound(
            "kernel membership", k, matrix_zero, vanishes_off_zero_set
        )
    return vanishes_off_zero_set
