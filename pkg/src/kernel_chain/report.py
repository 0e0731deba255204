"""
Plain-text rendering of analysis results.

Every report has human-readable sections followed by a `key=value` trailer with
one line per verdict. Sets are printed in atom order and numbers with fixed
formatting, so identical inputs give byte-identical reports.
"""

from typing import Iterable, List, Optional, Sequence, Tuple, Union

from kernel_chain.chain_analysis import (
    ChainReport,
    CorollaryReport,
    Finite,
    Verdict,
)
from kernel_chain.measure_space import DiscreteMeasureSpace, Transformation
from kernel_chain.norms import Delta2Result
from kernel_chain.operator_core import ChainDims, RieszDecomposition
from kernel_chain.symbolic_space import (
    NotFound,
    SymbolicMap,
    WitnessSequence,
    format_rule,
)

TRAILER = "== Trailer =="


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _set(space: DiscreteMeasureSpace, subset: Iterable[str]) -> str:
    return "{" + ",".join(space.ordered(subset)) + "}"


def _verdict_value(verdict: Verdict) -> str:
    if isinstance(verdict, Finite):
        return str(verdict.value)
    return f"undetermined<={verdict.kmax}"


def _trailer(pairs: Sequence[Tuple[str, object]]) -> List[str]:
    lines = [TRAILER]
    for key, value in pairs:
        if isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key}={value}")
    return lines


def _space_section(tau: Transformation) -> List[str]:
    space = tau.space
    lines = ["== Space =="]
    lines.append(
        f"atoms: {len(space)} (positive: {len(space.positive_points())}, "
        f"null: {len(space.null_points())})"
    )
    lines.append(
        "weights: " + ", ".join(f"{p}:{w}" for p, w in zip(space.points, space.weights))
    )
    lines.append(
        "map: " + ", ".join(f"{p}->{q}" for p, q in tau.assignment().items())
    )
    return lines


def _chain_table(tau: Transformation, report: ChainReport) -> List[str]:
    space = tau.space
    rows = [("k", "zero_set", "image", "support", "nullity", "rank")]
    for r in report.records:
        rows.append(
            (
                str(r.k),
                _set(space, r.zero_set),
                _set(space, r.image),
                _set(space, r.support),
                str(r.nullity),
                str(r.rank),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]


def render_chain_report(
    report: ChainReport, corollary: Optional[CorollaryReport] = None
) -> str:
    tau = report.tau
    lines = _space_section(tau)
    lines.append("")
    lines.append(f"== Chains (k = 0..{report.kmax}) ==")
    lines.extend(_chain_table(tau, report))
    lines.append("")

    h = report.hypotheses
    lines.append("== Hypotheses ==")
    lines.append(f"nonsingular: {_yes_no(h.nonsingular)}")
    lines.append(f"surjective: {_yes_no(h.surjective)}")
    lines.append(
        f"positive preimages of positive atoms: {_yes_no(h.positive_preimages)}"
    )
    lines.append("")

    lines.append("== Verdicts ==")
    lines.append(f"ascent via measures: {report.ascent_theorem}")
    if report.descent is None:
        lines.append("descent via injectivity: not applicable (null atoms)")
    else:
        lines.append(
            f"descent via injectivity: N_inj={report.descent.n_injective}, "
            f"descent {report.descent.descent}"
        )
    lines.append(f"ascent oracle: {report.ascent_oracle}")
    lines.append(f"descent oracle: {report.descent_oracle}")
    lines.append(f"tail height: {report.tail_height}")
    if report.chain_rule is not None and isinstance(report.ascent_theorem, Finite):
        lines.append(
            f"chain rule at k={report.ascent_theorem.value}: "
            f"{'holds' if report.chain_rule else 'fails'}"
        )
    lines.append("")

    if corollary is not None:
        lines.append("== Corollaries ==")
        lines.append(corollary.describe())
        lines.append("")

    lines.append("== Consistency ==")
    if report.consistency:
        lines.append("consistent")
    else:
        lines.append(f"INCONSISTENT ({len(report.failures)} failed checks)")
        lines.extend(f"- {failure}" for failure in report.failures)
    lines.append("")

    descent = report.descent
    pairs: List[Tuple[str, object]] = [
        ("ascent_theorem", _verdict_value(report.ascent_theorem)),
        (
            "descent_theorem",
            "n/a" if descent is None else _verdict_value(descent.descent),
        ),
        (
            "n_injective",
            "n/a"
            if descent is None
            else descent.n_injective
            if isinstance(descent.n_injective, int)
            else _verdict_value(descent.n_injective),
        ),
        ("ascent_oracle", report.ascent_oracle),
        ("descent_oracle", report.descent_oracle),
        ("tail_height", report.tail_height),
        ("hypotheses", h.all_hold),
        ("consistency", report.consistency),
    ]
    lines.extend(_trailer(pairs))
    return "\n".join(lines) + "\n"


def render_oracle_report(
    tau: Transformation,
    dims: ChainDims,
    ascent: int,
    descent: int,
    decomposition: RieszDecomposition,
) -> str:
    lines = _space_section(tau)
    lines.append("")
    lines.append(f"== Chains (k = 0..{dims.kmax}) ==")
    lines.append("nullity: " + " ".join(str(x) for x in dims.nullities))
    lines.append("rank: " + " ".join(str(x) for x in dims.ranks))
    lines.append("")
    lines.append("== Riesz decomposition ==")
    lines.append(f"p: {decomposition.p}")
    lines.append(f"dim N(M^p): {len(decomposition.kernel_basis)}")
    lines.append(f"dim R(M^p): {len(decomposition.range_basis)}")
    lines.append("direct sum, nilpotent on N(M^p), invertible on R(M^p): verified")
    lines.append("")
    lines.extend(
        _trailer(
            [
                ("ascent_oracle", ascent),
                ("descent_oracle", descent),
                ("riesz_p", decomposition.p),
                ("dim_kernel", len(decomposition.kernel_basis)),
                ("dim_range", len(decomposition.range_basis)),
            ]
        )
    )
    return "\n".join(lines) + "\n"


def render_norm_report(
    phi_spec: str,
    modular: float,
    luxemburg: float,
    amemiya: float,
    delta2: Delta2Result,
) -> str:
    lines = ["== Orlicz function =="]
    lines.append(f"phi: {phi_spec}")
    if delta2.holds and delta2.constant is not None:
        lines.append(f"delta2: holds (K ≈ {delta2.constant:.12g})")
    elif delta2.holds:
        lines.append("delta2: holds")
    else:
        lines.append(f"delta2: fails (witness x ≈ {delta2.witness:.12g})")
    lines.append("")
    lines.append("== Norms ==")
    lines.append(f"modular: {modular:.12g}")
    lines.append(f"luxemburg: {luxemburg:.12g}")
    lines.append(f"amemiya: {amemiya:.12g}")
    lines.append("")
    lines.extend(
        _trailer(
            [
                ("modular", f"{modular:.12g}"),
                ("luxemburg", f"{luxemburg:.12g}"),
                ("amemiya", f"{amemiya:.12g}"),
                ("delta2", delta2.holds),
            ]
        )
    )
    return "\n".join(lines) + "\n"


def render_witness_report(
    sigma: SymbolicMap,
    result: Union[WitnessSequence, NotFound],
    depth: int,
    onto: bool,
    onto_bound: int,
) -> str:
    lines = ["== Symbolic map =="]
    lines.append(f"rule: {format_rule(sigma)}")
    lines.append(f"onto up to {onto_bound}: {_yes_no(onto)}")
    lines.append("")
    lines.append("== Witnesses ==")
    if isinstance(result, WitnessSequence):
        for k, n in result.entries:
            lines.append(f"n_{k} = {n}")
        lines.append(f"evidence of infinite ascent up to depth {depth}")
        found, stopped = result.depth, "none"
    else:
        lines.append(f"no witness found at k={result.k}")
        found, stopped = result.k - 1, str(result.k)
    if not onto:
        lines.append(
            "note: the map is not onto, the witness characterisation is evidence only"
        )
    lines.append("")
    lines.extend(
        _trailer(
            [
                ("rule", format_rule(sigma)),
                ("depth", depth),
                ("found", found),
                ("not_found_at", stopped),
                ("onto", onto),
            ]
        )
    )
    return "\n".join(lines) + "\n"
