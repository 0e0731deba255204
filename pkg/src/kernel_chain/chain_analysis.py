"""
Ascent and descent of C_τ from measure-theoretic data, reconciled with the
exact matrix oracle.

The ascent is read off the pushforward chain μ_k = μ∘τ^{-k}: it is the first
k >= 1 for which μ_k and μ_{k+1} are equivalent. On spaces without null atoms
the descent is read off the first N for which τ is one-one on R(τ^N).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from kernel_chain import exact_linalg, functional_graph
from kernel_chain.errors import (
    CorollaryViolation,
    InconsistencyFound,
    KernelChainError,
    NonsingularityViolated,
    PositiveWeightRequired,
)
from kernel_chain.measure_space import (
    Transformation,
    chain_rule_holds,
    image,
    is_measure_preserving,
    is_nonsingular,
    is_surjective,
    iterate,
    measures_equivalent,
    pushforward,
    rn_derivative,
)
from kernel_chain.operator_core import (
    ChainDims,
    ascent_oracle,
    chain_dims,
    descent_oracle,
    matrix_of,
    reduced_map,
    reduced_matrix,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, float, Fraction]


@dataclass(frozen=True)
class Finite:
    value: int

    def __str__(self) -> str:
        return f"Finite({self.value})"


@dataclass(frozen=True)
class Undetermined:
    """No stabilisation up to `kmax`; evidence, never a proof, of an infinite index"""

    kmax: int

    def __str__(self) -> str:
        return f"Undetermined({self.kmax})"


Verdict = Union[Finite, Undetermined]


@dataclass(frozen=True)
class KernelSupport:
    k: int
    zero_set: FrozenSet[str]


@dataclass(frozen=True)
class ChainRecord:
    k: int
    zero_set: FrozenSet[str]
    image: FrozenSet[str]
    support: FrozenSet[str]
    nullity: int
    rank: int


@dataclass(frozen=True)
class AscentHypotheses:
    """Atom-wise standing hypotheses of the infinite-ascent characterisation"""

    nonsingular: bool
    surjective: bool
    positive_preimages: bool

    @property
    def all_hold(self) -> bool:
        return self.nonsingular and self.surjective and self.positive_preimages


@dataclass(frozen=True)
class DescentResult:
    n_injective: Union[int, Undetermined]
    descent: Verdict


@dataclass(frozen=True)
class CorollaryReport:
    measure_preserving: bool
    expanding_surjective: bool
    ascent: Verdict

    @property
    def applicable(self) -> bool:
        return self.measure_preserving or self.expanding_surjective

    def describe(self) -> str:
        branches = []
        if self.measure_preserving:
            branches.append("measure preserving")
        if self.expanding_surjective:
            branches.append("surjective with μ(τ^-1{x}) >= μ{x}")
        if not branches:
            return "no corollary applicable"
        return f"{' and '.join(branches)}: ascent {self.ascent} confirmed"


@dataclass(frozen=True)
class RangeGap:
    x1: str
    x2: str
    f: Dict[str, int]


@dataclass(frozen=True)
class ChainReport:
    tau: Transformation
    kmax: int
    records: Tuple[ChainRecord, ...]
    hypotheses: AscentHypotheses
    ascent_theorem: Verdict
    descent: Optional[DescentResult]
    ascent_oracle: int
    descent_oracle: int
    tail_height: int
    chain_rule: Optional[bool]
    failures: Tuple[InconsistencyFound, ...]
    oracle_dims: ChainDims

    @property
    def consistency(self) -> bool:
        return not self.failures

    def raise_for_inconsistency(self) -> None:
        if self.failures:
            raise self.failures[0]


def _require_nonsingular(tau: Transformation) -> None:
    if not is_nonsingular(tau):
        raise NonsingularityViolated(
            "τ maps a set of positive measure onto a null set"
        )


def _default_kmax(tau: Transformation) -> int:
    return max(len(tau.space), 1)


def kernel_support(tau: Transformation, k: int) -> KernelSupport:
    return KernelSupport(k, rn_derivative(tau, k).zero_set())


def ascent_via_measures(tau: Transformation, kmax: Optional[int] = None) -> Verdict:
    """Smallest k in [1, kmax] with μ_k and μ_{k+1} equivalent"""
    _require_nonsingular(tau)
    kmax = _default_kmax(tau) if kmax is None else kmax
    current = pushforward(tau, 1)
    for k in range(1, kmax + 1):
        following = pushforward(tau, k + 1)
        if measures_equivalent(current, following):
            return Finite(k)
        current = following
    return Undetermined(kmax)


def _injective_on(tau: Transformation, subset: FrozenSet[str]) -> bool:
    return len({tau(x) for x in subset}) == len(subset)


def descent_via_injectivity(
    tau: Transformation, kmax: Optional[int] = None
) -> DescentResult:
    """
    Smallest N in [0, kmax] with τ one-one on R(τ^N), and the descent max(N, 1).

    Needs every atom to carry positive weight.
    """
    if tau.space.null_points():
        raise PositiveWeightRequired(
            f"Null atom(s) {sorted(tau.space.null_points())}: the injectivity "
            "characterisation needs every atom to have positive weight"
        )
    kmax = _default_kmax(tau) if kmax is None else kmax
    for n in range(kmax + 1):
        r = image(tau, n)
        invariant = all(tau(x) in r for x in r)
        if invariant and _injective_on(tau, r):
            logger.debug(f"τ is one-one on R(τ^{n})")
            return DescentResult(n, Finite(max(n, 1)))
    return DescentResult(Undetermined(kmax), Undetermined(kmax))


def ascent_hypotheses(tau: Transformation) -> AscentHypotheses:
    masses = pushforward(tau, 1).masses
    positive_preimages = all(
        m > 0 for w, m in zip(tau.space.weights, masses) if w > 0
    )
    return AscentHypotheses(
        is_nonsingular(tau), is_surjective(tau), positive_preimages
    )


def corollary_checks(tau: Transformation) -> CorollaryReport:
    """
    Confirm ascent 1 for measure preserving maps and for surjective maps with
    μ(τ^{-1}{x}) >= μ{x} on every atom.
    """
    _require_nonsingular(tau)
    ascent = ascent_via_measures(tau)
    preserving = is_measure_preserving(tau)
    masses = pushforward(tau, 1).masses
    expanding = is_surjective(tau) and all(
        m >= w for w, m in zip(tau.space.weights, masses)
    )
    if (preserving or expanding) and ascent != Finite(1):
        raise CorollaryViolation(
            f"Corollary hypotheses hold but the ascent is {ascent}"
        )
    return CorollaryReport(preserving, expanding, ascent)


def kernel_witness(tau: Transformation, k: int) -> Optional[FrozenSet[str]]:
    """
    Positive-weight set W ⊆ Ω_k \\ Ω_{k-1}, so χ_W lies in N(C^k) but not N(C^{k-1}).

    None when the two kernels agree.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    previous = rn_derivative(tau, k - 1).zero_set()
    current = rn_derivative(tau, k).zero_set()
    witness = (current - previous) & tau.space.positive_points()
    return witness or None


def range_gap_witness(tau: Transformation, k: int) -> Optional[RangeGap]:
    """
    A function in R(C^k) \\ R(C^{k+1}) when τ is not one-one on R(τ^k).

    With x1 != x2 in R(τ^k) and τ(x1) = τ(x2), the difference of the indicators
    of τ^{-k}{x1} and τ^{-k}{x2} is such a function. The claim is verified
    against the column spaces of M^k and M^{k+1}.
    """
    space = tau.space
    seen: Dict[str, str] = {}
    pair = None
    for x in space.ordered(image(tau, k)):
        y = tau(x)
        if y in seen:
            pair = (seen[y], x)
            break
        seen[y] = x
    if pair is None:
        return None
    x1, x2 = pair
    tau_k = iterate(tau, k)
    f = {}
    for p in space.points:
        target = tau_k(p)
        f[p] = 1 if target == x1 else -1 if target == x2 else 0
    m = matrix_of(tau)
    vector = [f[p] for p in space.points]
    in_k = exact_linalg.in_column_space(m.rows(k), vector)
    in_next = exact_linalg.in_column_space(m.rows(k + 1), vector)
    if not in_k or in_next:
        raise InconsistencyFound(
            "range gap witness", k, (True, False), (in_k, in_next)
        )
    return RangeGap(x1, x2, f)


def range_lift(
    tau: Transformation, n: int, g: Mapping[str, Scalar]
) -> Dict[str, Scalar]:
    """
    h with h(τ(y)) = g(y) on R(τ^N) and 0 elsewhere, so C^{N+1} h = C^N g.

    τ must be one-one on R(τ^N).
    """
    r = image(tau, n)
    if not _injective_on(tau, r):
        raise KernelChainError(f"τ is not one-one on R(τ^{n})")
    h: Dict[str, Scalar] = {p: 0 for p in tau.space.points}
    for y in r:
        h[tau(y)] = g.get(y, 0)
    return h


def _matches(verdict: Verdict, oracle: int) -> bool:
    if isinstance(verdict, Finite):
        return verdict.value == oracle
    return oracle > verdict.kmax


def consistency_report(
    tau: Transformation, kmax: Optional[int] = None
) -> ChainReport:
    """
    Collect the per-k chain data, both routes to ascent and descent, and the
    checks that tie them together.

    Oracles run on the a.e. quotient so that null atoms do not add spurious
    kernel directions.
    """
    _require_nonsingular(tau)
    space = tau.space
    kmax = _default_kmax(tau) if kmax is None else kmax
    if kmax < 1:
        raise ValueError(f"kmax must be at least 1, got {kmax}")
    positive = space.positive_points()

    reduced = reduced_matrix(tau)
    reduced_dims = chain_dims(reduced, max(kmax, reduced.n + 1))
    if space.null_points():
        full = matrix_of(tau)
        full_dims = chain_dims(full, max(kmax, full.n + 1))
    else:
        full_dims = reduced_dims

    records: List[ChainRecord] = []
    for k in range(kmax + 1):
        records.append(
            ChainRecord(
                k,
                rn_derivative(tau, k).zero_set(),
                image(tau, k),
                pushforward(tau, k).support(),
                full_dims.nullities[k],
                full_dims.ranks[k],
            )
        )

    ascent_theorem = ascent_via_measures(tau, kmax)
    descent = None if space.null_points() else descent_via_injectivity(tau, kmax)
    a_oracle = ascent_oracle(reduced, reduced_dims)
    d_oracle = descent_oracle(reduced, reduced_dims)
    height = functional_graph.tail_height(reduced_map(tau))
    chain_rule = (
        chain_rule_holds(tau, ascent_theorem.value)
        if isinstance(ascent_theorem, Finite)
        else None
    )

    failures: List[InconsistencyFound] = []

    def check(name: str, k: Optional[int], expected: Any, actual: Any) -> None:
        if expected != actual:
            failures.append(InconsistencyFound(name, k, expected, actual))

    if not _matches(ascent_theorem, a_oracle):
        failures.append(
            InconsistencyFound("ascent via measures", None, a_oracle, ascent_theorem)
        )
    if descent is not None and not _matches(descent.descent, d_oracle):
        failures.append(
            InconsistencyFound(
                "descent via injectivity", None, d_oracle, descent.descent
            )
        )
    check("ascent equals descent", None, a_oracle, d_oracle)
    check("tail height", None, max(1, height), a_oracle)
    if chain_rule is False and isinstance(ascent_theorem, Finite):
        failures.append(
            InconsistencyFound("chain rule", ascent_theorem.value, True, False)
        )
    for record in records:
        k = record.k
        check("zero set complement", k, record.support, positive - record.zero_set)
        check(
            "kernel dimension",
            k,
            len(record.zero_set & positive),
            reduced_dims.nullities[k],
        )
        if not space.null_points():
            check("support equals image", k, record.image, record.support)
        if k > 0:
            previous = records[k - 1].zero_set
            if not previous <= record.zero_set:
                failures.append(
                    InconsistencyFound(
                        "zero set monotonicity", k, previous, record.zero_set
                    )
                )

    report = ChainReport(
        tau=tau,
        kmax=kmax,
        records=tuple(records),
        hypotheses=ascent_hypotheses(tau),
        ascent_theorem=ascent_theorem,
        descent=descent,
        ascent_oracle=a_oracle,
        descent_oracle=d_oracle,
        tail_height=height,
        chain_rule=chain_rule,
        failures=tuple(failures),
        oracle_dims=reduced_dims,
    )
    if failures:
        logger.warning(f"{len(failures)} inconsistencies, first: {failures[0]}")
    logger.info(
        f"Chain report on {len(space)} atoms: ascent {ascent_theorem}, "
        f"oracle {a_oracle}/{d_oracle}, consistent={report.consistency}"
    )
    return report
