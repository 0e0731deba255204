"""
Finitely presented self-maps of ℕ = {1, 2, ...} with counting measure.

A map is an affine rule n -> a·n + b, optionally overridden on {1..m} by a
finite exception table. Range membership is decided exactly by solving
backwards, which is what the witness search for infinite ascent needs.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple, Union

from kernel_chain.errors import InvalidParameter, ParseError, WitnessVerificationError
from kernel_chain.measure_space import Transformation, new_map, new_space
from kernel_chain.operator_core import OperatorMatrix, matrix_of

logger = logging.getLogger(__name__)

SINK = "sink"
SEARCH_SLACK = 64

_AFFINE = re.compile(r"^affine:(\d+):(\d+)$")
_TABLE = re.compile(r"^table:\{([^}]*)\};(affine:\d+:\d+)$")
_TABLE_ENTRY = re.compile(r"^(\d+)->(\d+)$")


@dataclass(frozen=True)
class AffineRule:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 0:
            raise InvalidParameter(
                f"Affine rule needs a >= 1 and b >= 0, got a={self.a}, b={self.b}"
            )
        if self.a + self.b < 2 and (self.a, self.b) != (1, 0):
            raise InvalidParameter(f"Affine rule ({self.a}, {self.b}) is degenerate")

    def __call__(self, n: int) -> int:
        return self.a * n + self.b

    def preimage(self, m: int) -> Optional[int]:
        q, r = divmod(m - self.b, self.a)
        return q if r == 0 and q >= 1 else None


@dataclass(frozen=True)
class SymbolicMap:
    """Affine tail with exceptions on {1..m}; the table is stored as sorted pairs"""

    tail: AffineRule
    table: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        keys = [i for i, _ in self.table]
        if keys != list(range(1, len(keys) + 1)):
            raise InvalidParameter(
                f"Exception table must cover exactly 1..{len(keys)}, got {keys}"
            )
        bad = [j for _, j in self.table if j < 1]
        if bad:
            raise InvalidParameter(f"Table values must be positive, got {bad}")

    @property
    def exceptions(self) -> Dict[int, int]:
        return dict(self.table)

    def __call__(self, n: int) -> int:
        if n < 1:
            raise InvalidParameter(f"Symbolic maps act on n >= 1, got {n}")
        if n <= len(self.table):
            return self.table[n - 1][1]
        return self.tail(n)


@dataclass(frozen=True)
class WitnessSequence:
    entries: Tuple[Tuple[int, int], ...]

    @property
    def depth(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class NotFound:
    k: int


def new_symbolic_map(
    a: int, b: int, table: Optional[Dict[int, int]] = None
) -> SymbolicMap:
    return SymbolicMap(AffineRule(a, b), tuple(sorted((table or {}).items())))


def apply(sigma: SymbolicMap, n: int) -> int:
    return sigma(n)


def preimages(sigma: SymbolicMap, m: int) -> List[int]:
    """All n >= 1 with σ(n) = m"""
    found = [i for i, j in sigma.table if j == m]
    n = sigma.tail.preimage(m)
    if n is not None and n > len(sigma.table):
        found.append(n)
    return found


def in_range(sigma: SymbolicMap, k: int, n: int) -> bool:
    """Exact decision of n ∈ R(σ^k) by solving backwards k times"""
    if k < 0 or n < 1:
        raise InvalidParameter(f"Need k >= 0 and n >= 1, got k={k}, n={n}")
    frontier: Set[int] = {n}
    for _ in range(k):
        frontier = {p for m in frontier for p in preimages(sigma, m)}
        if not frontier:
            return False
    return True


def default_search_bound(sigma: SymbolicMap, k: int) -> int:
    return sigma.tail.a * k + sigma.tail.b + SEARCH_SLACK


def witness_sequence(
    sigma: SymbolicMap, depth: int, search_bound: Optional[int] = None
) -> Union[WitnessSequence, NotFound]:
    """
    Distinct n_k with n_k ∈ R(σ^{k-1}) \\ R(σ^k) for k = 1..depth.

    Each n_k is the smallest candidate up to the search bound. The returned
    sequence is re-verified before it is handed out.
    """
    if depth < 1:
        raise InvalidParameter(f"Witness depth must be at least 1, got {depth}")
    entries: List[Tuple[int, int]] = []
    used: Set[int] = set()
    for k in range(1, depth + 1):
        bound = default_search_bound(sigma, k) if search_bound is None else search_bound
        pick = next(
            (
                n
                for n in range(1, bound + 1)
                if n not in used
                and in_range(sigma, k - 1, n)
                and not in_range(sigma, k, n)
            ),
            None,
        )
        if pick is None:
            logger.info(f"No witness for k={k} below {bound}")
            return NotFound(k)
        entries.append((k, pick))
        used.add(pick)
    witness = WitnessSequence(tuple(entries))
    verify_witness(sigma, witness)
    return witness


def verify_witness(sigma: SymbolicMap, witness: WitnessSequence) -> None:
    values = [n for _, n in witness.entries]
    if len(set(values)) != len(values):
        raise WitnessVerificationError(f"Witness entries repeat: {values}")
    for k, n in witness.entries:
        if not in_range(sigma, k - 1, n) or in_range(sigma, k, n):
            raise WitnessVerificationError(
                f"n_{k} = {n} does not lie in R(σ^{k - 1}) \\ R(σ^{k})"
            )


def onto_evidence(sigma: SymbolicMap, bound: int) -> bool:
    """Whether every n <= bound has a preimage; evidence of surjectivity only"""
    return all(preimages(sigma, n) for n in range(1, bound + 1))


def truncated_map(sigma: SymbolicMap, n: int) -> Transformation:
    """
    σ on {1..n} with an absorbing sink for images beyond n, unit weights.

    The chain dimensions of the truncation approximate those of the operator
    on ℓ^p(ℕ) and need not equal them.
    """
    if n < 1:
        raise InvalidParameter(f"Truncation size must be at least 1, got {n}")
    points = [str(i) for i in range(1, n + 1)] + [SINK]
    assignment = {SINK: SINK}
    for i in range(1, n + 1):
        target = sigma(i)
        assignment[str(i)] = str(target) if target <= n else SINK
    return new_map(new_space(points, [1] * len(points)), assignment)


def truncated_matrix(sigma: SymbolicMap, n: int) -> OperatorMatrix:
    return matrix_of(truncated_map(sigma, n))


def parse_rule(text: str) -> SymbolicMap:
    """Parse `affine:<a>:<b>` or `table:{i->j,...};affine:<a>:<b>`"""
    text = re.sub(r"\s+", "", text)
    table: Dict[int, int] = {}
    match = _TABLE.match(text)
    if match:
        body, text = match.groups()
        for entry in filter(None, body.split(",")):
            pair = _TABLE_ENTRY.match(entry)
            if pair is None:
                raise ParseError(f"Bad table entry '{entry}'", field="map")
            i, j = (int(x) for x in pair.groups())
            if i in table:
                raise ParseError(f"Table entry for {i} given twice", field="map")
            table[i] = j
    match = _AFFINE.match(text)
    if match is None:
        raise ParseError(
            f"Unknown rule '{text}'. Use affine:<a>:<b> or "
            "table:{i->j,...};affine:<a>:<b>",
            field="map",
        )
    a, b = (int(x) for x in match.groups())
    try:
        return new_symbolic_map(a, b, table)
    except InvalidParameter as e:
        raise ParseError(str(e), field="map") from e


def format_rule(sigma: SymbolicMap) -> str:
    affine = f"affine:{sigma.tail.a}:{sigma.tail.b}"
    if not sigma.table:
        return affine
    entries = ",".join(f"{i}->{j}" for i, j in sigma.table)
    return f"table:{{{entries}}};{affine}"
