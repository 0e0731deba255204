import argparse
import logging
import os
import sys
import time

from datetime import datetime
from typing import List, Optional, Tuple

from kernel_chain import norms, report, utils
from kernel_chain.campaign import run_campaign
from kernel_chain.chain_analysis import consistency_report, corollary_checks
from kernel_chain.cli.space_file import load_space_file
from kernel_chain.errors import (
    CorollaryViolation,
    DecompositionFailure,
    InconsistencyFound,
    KernelChainError,
    ParseError,
    WitnessVerificationError,
)
from kernel_chain.operator_core import (
    ascent_oracle,
    chain_dims,
    descent_oracle,
    matrix_of,
    riesz_decomposition,
)
from kernel_chain.orlicz.registry import parse_phi_spec
from kernel_chain.symbolic_space import onto_evidence, parse_rule, witness_sequence

# Reset existing logging configuration
for handler in logging.root.handlers[:]:
    logging.root.removeHandler(handler)

logger = logging.getLogger(__name__)
logging.basicConfig(
    filename="kernel-chain.log",
    level=logging.INFO,
    format="%(asctime)s - %(levelname)s - %(name)s: %(message)s",
)

logger.setLevel(logging.INFO)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

SEED_ENV = "KCL_SEED"

# errors that report a failed check rather than bad input
VIOLATIONS = (
    InconsistencyFound,
    CorollaryViolation,
    DecompositionFailure,
    WitnessVerificationError,
)


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def parse_arguments(arguments: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Ascent and descent of composition operators on discrete Orlicz spaces. Every command prints a deterministic report ending in a key=value trailer. Exit codes: 0 success, 1 a consistency or property check failed, 2 input error."
    )
    parser.add_argument(
        "-o",
        "--output",
        help="Also write the report to this file. Its directory is created if it does not exist.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser(
        "analyze",
        help="Full chain report: measure-theoretic verdicts, matrix oracle and their consistency.",
    )
    analyze.add_argument("--space", required=True, help="Path to the space file (JSON).")
    analyze.add_argument(
        "--max-k",
        type=positive_int,
        help="Largest power to examine (default: number of atoms).",
    )

    oracle = subparsers.add_parser(
        "oracle", help="Exact kernel and range chains and the Riesz decomposition."
    )
    oracle.add_argument("--space", required=True, help="Path to the space file (JSON).")
    oracle.add_argument(
        "--max-k",
        type=positive_int,
        help="Largest power to list (at least number of atoms + 1 is always computed).",
    )

    norm = subparsers.add_parser(
        "norm", help="Modular, Luxemburg and Amemiya norm of a function on the space."
    )
    norm.add_argument("--space", required=True, help="Path to the space file (JSON).")
    norm.add_argument(
        "--phi",
        required=True,
        help="Orlicz function: power:<p> (p > 1), powerlog:<p> (p >= 1) or expml.",
    )
    norm.add_argument(
        "--function",
        required=True,
        help="Function values as whitespace separated point=value pairs, e.g. '1=0.5 3=2'. Missing points are 0.",
    )

    witness = subparsers.add_parser(
        "witness", help="Bounded search for witnesses of infinite ascent on ℓ^p(ℕ)."
    )
    witness.add_argument(
        "--map",
        required=True,
        help="Symbolic rule: affine:<a>:<b> or table:{i->j,...};affine:<a>:<b>.",
    )
    witness.add_argument("--depth", type=positive_int, required=True, help="Search depth K.")
    witness.add_argument(
        "--search-bound",
        type=positive_int,
        help="Largest candidate n per step (default: a·k + b + 64).",
    )
    witness.add_argument(
        "--onto-bound",
        type=positive_int,
        default=100,
        help="Check surjectivity of the rule on 1..N (default: 100).",
    )

    campaign = subparsers.add_parser(
        "campaign", help="Seeded property run over random functional graphs."
    )
    campaign.add_argument(
        "--n", type=positive_int, default=12, help="Largest graph size (default: 12)."
    )
    campaign.add_argument(
        "--count", type=nonnegative_int, default=1000, help="Number of graphs (default: 1000)."
    )
    campaign.add_argument(
        "--seed",
        type=int,
        default=0,
        help=f"Seed of the random generator (default: 0). The environment variable {SEED_ENV} overrides it.",
    )
    campaign.add_argument(
        "--permutations",
        type=nonnegative_int,
        default=0,
        help="Number of random permutations for the corollary checks (default: 0).",
    )
    campaign.add_argument("--records", help="Write one JSON record per graph to this JSONL file.")
    campaign.add_argument(
        "--progress", action="store_true", help="Show a progress bar on stderr."
    )

    return parser.parse_args(arguments)


def analyze(args: argparse.Namespace) -> Tuple[str, int]:
    _, tau = load_space_file(args.space)
    chain_report = consistency_report(tau, args.max_k)
    corollary = corollary_checks(tau)
    code = EXIT_OK if chain_report.consistency else EXIT_VIOLATION
    return report.render_chain_report(chain_report, corollary), code


def oracle(args: argparse.Namespace) -> Tuple[str, int]:
    _, tau = load_space_file(args.space)
    m = matrix_of(tau)
    dims = chain_dims(m, max(args.max_k or 0, m.n + 1))
    decomposition = riesz_decomposition(m, dims)
    text = report.render_oracle_report(
        tau, dims, ascent_oracle(m, dims), descent_oracle(m, dims), decomposition
    )
    return text, EXIT_OK


def norm(args: argparse.Namespace) -> Tuple[str, int]:
    space, _ = load_space_file(args.space)
    phi = parse_phi_spec(args.phi)
    pairs = utils.parse_key_value_pairs(args.function, field="function")
    try:
        values = {point: float(value) for point, value in pairs.items()}
    except ValueError as e:
        raise ParseError(f"Function values must be numbers: {e}", field="function") from e
    f = norms.SpaceFunction.from_mapping(space, values)
    text = report.render_norm_report(
        phi.spec,
        norms.modular(phi, f),
        norms.luxemburg_norm(phi, f),
        norms.amemiya_norm(phi, f),
        norms.delta2_check(phi),
    )
    return text, EXIT_OK


def witness(args: argparse.Namespace) -> Tuple[str, int]:
    sigma = parse_rule(args.map)
    result = witness_sequence(sigma, args.depth, args.search_bound)
    onto = onto_evidence(sigma, args.onto_bound)
    text = report.render_witness_report(sigma, result, args.depth, onto, args.onto_bound)
    return text, EXIT_OK


def campaign(args: argparse.Namespace) -> Tuple[str, int]:
    seed = args.seed
    if os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError as e:
            raise ParseError(f"{SEED_ENV} must be an integer", field=SEED_ENV) from e
    result = run_campaign(args.n, args.count, seed, args.permutations, args.progress)
    if args.records:
        utils.save_records_to_jsonl(result.records, args.records)
    lines = [result.summary(), "", report.TRAILER]
    lines.append(f"seed={seed}")
    lines.append(f"max_n={args.n}")
    lines.append(f"graphs={result.count}")
    lines.append(f"consistent={result.n_consistent}")
    lines.append(f"permutations={result.permutations}")
    lines.append(f"corollary_confirmed={result.n_corollary_confirmed}")
    text = "\n".join(lines) + "\n"
    return text, EXIT_OK if result.all_pass else EXIT_VIOLATION


COMMANDS = {
    "analyze": analyze,
    "oracle": oracle,
    "norm": norm,
    "witness": witness,
    "campaign": campaign,
}


def main(arguments: Optional[List[str]] = None) -> int:
    args = parse_arguments(arguments)
    logger.info(f"Command: {args.command}")
    try:
        text, code = COMMANDS[args.command](args)
    except VIOLATIONS as e:
        logger.error(f"Check failed: {e}")
        print(f"violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (KernelChainError, OSError) as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(text)
    if args.output:
        utils.save_text(text, args.output)
    logger.info(f"Exit code: {code}")
    return code


if __name__ == "__main__":
    logger.info(f"Start time: {datetime.now().strftime('%H:%M:%S')}")
    t = time.process_time()
    exit_code = main()
    elapsed_time = time.process_time() - t
    logger.info(f"Process took: {elapsed_time:.2f} seconds.")
    logger.info(f"End time: {datetime.now().strftime('%H:%M:%S')}")
    sys.exit(exit_code)
