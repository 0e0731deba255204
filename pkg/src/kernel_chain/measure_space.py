"""
Discrete (atomic) measure spaces and the self-maps acting on them.

Every subset of the point set is measurable, so a total assignment is always a
measurable transformation. Weights are exact rationals because supports and
Radon-Nikodym identities are compared exactly.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Sequence,
    Tuple,
    Union,
)

from kernel_chain.errors import (
    DuplicatePoint,
    ImageOutOfSpace,
    LengthMismatch,
    MissingPoint,
    NegativeWeight,
    NonsingularityViolated,
    SpaceMismatch,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str]


@dataclass(frozen=True)
class DiscreteMeasureSpace:
    """Finite set of atoms with nonnegative exact weights; atom order is the basis order"""

    points: Tuple[str, ...]
    weights: Tuple[Fraction, ...]
    index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[str]:
        return iter(self.points)

    def weight(self, point: str) -> Fraction:
        return self.weights[self.index[point]]

    def total_measure(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def measure(self, subset: Iterable[str]) -> Fraction:
        return sum((self.weight(p) for p in set(subset)), Fraction(0))

    def null_points(self) -> FrozenSet[str]:
        return frozenset(p for p, w in zip(self.points, self.weights) if w == 0)

    def positive_points(self) -> FrozenSet[str]:
        return frozenset(p for p, w in zip(self.points, self.weights) if w > 0)

    def ordered(self, subset: Iterable[str]) -> List[str]:
        """Points of `subset` in atom order"""
        return sorted(set(subset), key=self.index.__getitem__)


@dataclass(frozen=True)
class Transformation:
    """Total self-map of a space, stored as image indices in atom order"""

    space: DiscreteMeasureSpace
    images: Tuple[int, ...]

    def __call__(self, point: str) -> str:
        return self.space.points[self.images[self.space.index[point]]]

    def assignment(self) -> Dict[str, str]:
        return {p: self.space.points[j] for p, j in zip(self.space.points, self.images)}

    def preimage(self, point: str) -> FrozenSet[str]:
        target = self.space.index[point]
        return frozenset(
            p for p, j in zip(self.space.points, self.images) if j == target
        )


@dataclass(frozen=True)
class AtomicMeasure:
    """Measure on a discrete space given by its atom masses"""

    space: DiscreteMeasureSpace
    masses: Tuple[Fraction, ...]

    def mass(self, point: str) -> Fraction:
        return self.masses[self.space.index[point]]

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(zip(self.space.points, self.masses))

    def support(self) -> FrozenSet[str]:
        return frozenset(p for p, m in zip(self.space.points, self.masses) if m > 0)

    def total(self) -> Fraction:
        return sum(self.masses, Fraction(0))


@dataclass(frozen=True)
class WeightFunction:
    """Nonnegative density on a discrete space (a Radon-Nikodym derivative)"""

    space: DiscreteMeasureSpace
    values: Tuple[Fraction, ...]

    def value(self, point: str) -> Fraction:
        return self.values[self.space.index[point]]

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(zip(self.space.points, self.values))

    def support(self) -> FrozenSet[str]:
        return frozenset(p for p, v in zip(self.space.points, self.values) if v > 0)

    def zero_set(self) -> FrozenSet[str]:
        return frozenset(p for p, v in zip(self.space.points, self.values) if v == 0)


def new_space(
    points: Sequence[str], weights: Sequence[Rational]
) -> DiscreteMeasureSpace:
    """Validate atoms and weights and build a space; atom order is kept as given"""
    if len(points) != len(weights):
        raise LengthMismatch(
            f"{len(points)} points but {len(weights)} weights were given"
        )
    seen = set()
    for p in points:
        if p in seen:
            raise DuplicatePoint(f"Point '{p}' occurs more than once")
        seen.add(p)
    exact = []
    for i, w in enumerate(weights):
        value = Fraction(w)
        if value < 0:
            raise NegativeWeight(
                f"Weight {value} of point '{points[i]}' (index {i}) is negative"
            )
        exact.append(value)
    return DiscreteMeasureSpace(tuple(str(p) for p in points), tuple(exact))


def new_map(
    space: DiscreteMeasureSpace, assignment: Mapping[str, str]
) -> Transformation:
    images = []
    for p in space.points:
        if p not in assignment:
            raise MissingPoint(f"Point '{p}' has no image")
        target = assignment[p]
        if target not in space.index:
            raise ImageOutOfSpace(
                f"Image '{target}' of point '{p}' is not a point of the space"
            )
        images.append(space.index[target])
    extra = set(assignment) - set(space.points)
    if extra:
        raise ImageOutOfSpace(f"Assignment for unknown point(s): {sorted(extra)}")
    return Transformation(space, tuple(images))


def identity_map(space: DiscreteMeasureSpace) -> Transformation:
    return Transformation(space, tuple(range(len(space))))


def iterate(tau: Transformation, k: int) -> Transformation:
    """k-fold composition of `tau`; k=0 is the identity"""
    if k < 0:
        raise ValueError(f"Iterate index must be nonnegative, got {k}")
    images = list(range(len(tau.space)))
    for _ in range(k):
        images = [tau.images[j] for j in images]
    return Transformation(tau.space, tuple(images))


def compose(outer: Transformation, inner: Transformation) -> Transformation:
    """outer ∘ inner"""
    if outer.space != inner.space:
        raise SpaceMismatch("Cannot compose maps on different spaces")
    return Transformation(outer.space, tuple(outer.images[j] for j in inner.images))


def _preimage_masses(tau: Transformation) -> List[Fraction]:
    masses = [Fraction(0)] * len(tau.space)
    for w, j in zip(tau.space.weights, tau.images):
        masses[j] += w
    return masses


def is_nonsingular(tau: Transformation) -> bool:
    """Preimages of null atoms are null"""
    masses = _preimage_masses(tau)
    return all(m == 0 for w, m in zip(tau.space.weights, masses) if w == 0)


def is_measure_preserving(tau: Transformation) -> bool:
    return _preimage_masses(tau) == list(tau.space.weights)


def is_surjective(tau: Transformation) -> bool:
    return len(set(tau.images)) == len(tau.space)


def pushforward(tau: Transformation, k: int) -> AtomicMeasure:
    """The measure μ∘τ^{-k}"""
    return AtomicMeasure(tau.space, tuple(_preimage_masses(iterate(tau, k))))


def rn_derivative(tau: Transformation, k: int) -> WeightFunction:
    """
    Density f_{τ^k} of μ∘τ^{-k} with respect to μ.

    On an atom x it is the mass ratio μ_k{x}/μ{x}. Null atoms get the value 0.
    """
    mu_k = pushforward(tau, k)
    values = []
    for p, w, m in zip(tau.space.points, tau.space.weights, mu_k.masses):
        if w > 0:
            values.append(m / w)
        elif m > 0:
            raise NonsingularityViolated(
                f"τ^{k} carries mass {m} onto the null atom '{p}'"
            )
        else:
            values.append(Fraction(0))
    return WeightFunction(tau.space, tuple(values))


def image(tau: Transformation, k: int) -> FrozenSet[str]:
    """R(τ^k)"""
    tau_k = iterate(tau, k)
    return frozenset(tau.space.points[j] for j in tau_k.images)


def absolutely_continuous(m1: AtomicMeasure, m2: AtomicMeasure) -> bool:
    """m1 ≪ m2"""
    if m1.space != m2.space:
        raise SpaceMismatch("Measures live on different spaces")
    return m1.support() <= m2.support()


def measures_equivalent(m1: AtomicMeasure, m2: AtomicMeasure) -> bool:
    # mutual absolute continuity is equality of supports on atoms
    if m1.space != m2.space:
        raise SpaceMismatch("Measures live on different spaces")
    return m1.support() == m2.support()


def chain_rule_holds(tau: Transformation, k: int) -> bool:
    """
    Exact check of the Radon-Nikodym chain rule between μ_k and μ_{k+1}.

    When the two measures are equivalent, on their common support
    f_{τ^k} = (dμ_k/dμ_{k+1})·f_{τ^{k+1}} and f_{τ^{k+1}} = (dμ_{k+1}/dμ_k)·f_{τ^k}.
    Returns False when the measures are not equivalent.
    """
    mu_k = pushforward(tau, k)
    mu_k1 = pushforward(tau, k + 1)
    if not measures_equivalent(mu_k, mu_k1):
        return False
    f_k = rn_derivative(tau, k)
    f_k1 = rn_derivative(tau, k + 1)
    for i, p in enumerate(tau.space.points):
        if f_k1.values[i] == 0:
            continue
        forward = mu_k.masses[i] / mu_k1.masses[i]
        backward = mu_k1.masses[i] / mu_k.masses[i]
        if f_k.values[i] != forward * f_k1.values[i]:
            logger.debug(f"Chain rule fails at '{p}' for k={k}")
            return False
        if f_k1.values[i] != backward * f_k.values[i]:
            logger.debug(f"Reverse chain rule fails at '{p}' for k={k}")
            return False
    return True
