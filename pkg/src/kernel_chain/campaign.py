"""
Seeded property campaign over random functional graphs.

Every graph gets a full consistency report and a Riesz decomposition check;
every permutation gets the corollary checks. The generator draws the graph
size first and then the images, so a seed fixes the whole run.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
from tqdm import tqdm

from kernel_chain.chain_analysis import Finite, consistency_report, corollary_checks
from kernel_chain.errors import CorollaryViolation, DecompositionFailure
from kernel_chain.functional_graph import random_functional_graph, random_permutation
from kernel_chain.measure_space import Transformation
from kernel_chain.operator_core import reduced_matrix, riesz_decomposition

logger = logging.getLogger(__name__)


@dataclass
class CampaignResult:
    count: int
    permutations: int
    records: List[Dict[str, Any]] = field(default_factory=list)
    permutation_records: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def n_consistent(self) -> int:
        return sum(1 for r in self.records if r["consistent"])

    @property
    def n_corollary_confirmed(self) -> int:
        return sum(1 for r in self.permutation_records if r["confirmed"])

    @property
    def all_pass(self) -> bool:
        return (
            self.n_consistent == self.count
            and self.n_corollary_confirmed == self.permutations
        )

    def summary(self) -> str:
        lines = [f"{self.n_consistent}/{self.count} consistent"]
        if self.permutations:
            lines.append(
                f"{self.n_corollary_confirmed}/{self.permutations} permutations "
                "with ascent 1"
            )
        return "\n".join(lines)


def _check_graph(index: int, tau: Transformation) -> Dict[str, Any]:
    report = consistency_report(tau)
    problems = [str(f) for f in report.failures]
    try:
        decomposition = riesz_decomposition(reduced_matrix(tau), report.oracle_dims)
        riesz_p = decomposition.p
    except DecompositionFailure as e:
        problems.append(f"riesz decomposition: {e}")
        riesz_p = None
    ascent = report.ascent_theorem
    descent = report.descent.descent if report.descent is not None else None
    return {
        "index": index,
        "n": len(tau.space),
        "map": " ".join(str(j + 1) for j in tau.images),
        "ascent_theorem": ascent.value if isinstance(ascent, Finite) else None,
        "descent_theorem": descent.value if isinstance(descent, Finite) else None,
        "ascent_oracle": report.ascent_oracle,
        "descent_oracle": report.descent_oracle,
        "tail_height": report.tail_height,
        "riesz_p": riesz_p,
        "chain_rule": report.chain_rule,
        "consistent": not problems,
        "first_failure": problems[0] if problems else None,
    }


def _check_permutation(index: int, tau: Transformation) -> Dict[str, Any]:
    try:
        corollary = corollary_checks(tau)
        confirmed = corollary.measure_preserving and corollary.ascent == Finite(1)
        failure = None if confirmed else corollary.describe()
    except CorollaryViolation as e:
        confirmed, failure = False, str(e)
    return {
        "index": index,
        "n": len(tau.space),
        "confirmed": confirmed,
        "first_failure": failure,
    }


def run_campaign(
    max_n: int,
    count: int,
    seed: int,
    permutations: int = 0,
    progress: bool = False,
) -> CampaignResult:
    """
    Check `count` random functional graphs with sizes uniform in 1..max_n and
    `permutations` random permutations of the same sizes.
    """
    if max_n < 1 or count < 0 or permutations < 0:
        raise ValueError(
            f"Need max_n >= 1 and nonnegative counts, got {max_n}, {count}, "
            f"{permutations}"
        )
    rng = np.random.default_rng(seed)
    result = CampaignResult(count, permutations)
    for index in tqdm(range(count), desc="graphs", disable=not progress):
        n = int(rng.integers(1, max_n + 1))
        record = _check_graph(index, random_functional_graph(n, rng))
        if not record["consistent"]:
            logger.warning(f"Graph {index}: {record['first_failure']}")
        result.records.append(record)
    for index in tqdm(range(permutations), desc="permutations", disable=not progress):
        n = int(rng.integers(1, max_n + 1))
        result.permutation_records.append(
            _check_permutation(index, random_permutation(n, rng))
        )
    logger.info(
        f"Campaign seed={seed}: {result.n_consistent}/{count} consistent, "
        f"{result.n_corollary_confirmed}/{permutations} permutations confirmed"
    )
    return result
