"""Command-line front-end: decide, witness, verify, examples and the graph laboratory.

Exit codes:
    decide    0 Symmetric, 10 SymTimesPsd, 20 NotRealEigenvalued
    witness   0 found, 3 wrong verdict, 30 search exhausted
    verify    0 evaluated (and claim holds), 1 claim refuted
    graphlab  0 check passed, 1 check failed, 4 size guard fired
    any       2 bad input (parse errors, I/O, dimension or symmetry violations)
    any       5 arithmetic failure (overflow the exact fallback could not absorb)
"""

import argparse
import logging
import sys
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.config import get_settings
from ..core.decider import certificate_record
from ..core.engine import WordCertifier
from ..core.errors import HypothesisError, SizeGuardError
from ..core.witness import verify_witness
from ..core.words import format_word
from ..data.database import CertificateStore
from ..data.formats import (
    SCHEMA_VERSION,
    format_assignment,
    format_counterexample,
    parse_graph,
    parse_weighted_graph,
    to_json,
    verification_record,
    witness_record,
)
from ..data.models import Verdict
from ..graphs.graph import (
    EdgeRootedGraph,
    Graph,
    complete,
    cycle,
    directed_cycle,
    glue_cycle_layout,
    path,
    single_edge,
    star,
    word_blocks,
)
from ..graphs.homs import hom_count, hom_density
from ..graphs.rigid import choose_roots, generate_rigid_family, random_graph
from ..graphs.walktree import neighborhood_degree_sequence, walk_tree_oracle_partition, walk_tree_partition
from ..positivity.counterexample import Placement, find_sun_block, sun_negativity_check
from ..positivity.sampler import positivity_sampler

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_WRONG_VERDICT = 3
EXIT_SIZE_GUARD = 4
EXIT_ARITHMETIC = 5
EXIT_EXHAUSTED = 30
VERDICT_EXIT = {Verdict.SYMMETRIC: 0, Verdict.SYM_TIMES_PSD: 10, Verdict.NOT_REAL: 20}

PATTERNS = {
    "complete": complete,
    "cycle": cycle,
    "directed_cycle": directed_cycle,
    "path": path,
    "star": star,
}


def _names(value: Optional[str]) -> List[str]:
    return [part.strip() for part in (value or "").split(",") if part.strip()]


def _ints(value: str) -> List[int]:
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _emit(args, record: Dict, text: str) -> None:
    """Write the JSON record or the text report to --out or standard output."""
    payload = to_json(record) + "\n" if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        Path(args.out).write_text(payload)
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(payload)


def _graph_record(g: Graph, root: Optional[Tuple[int, int]] = None) -> Dict:
    record = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if root is not None:
        record["root"] = list(root)
    return record


def _load_pattern(spec: str) -> Graph:
    """`name:k` for a built-in family member, otherwise an edge-list file."""
    name, _, size = spec.partition(":")
    if name in PATTERNS and size:
        return PATTERNS[name](int(size))
    graph, _ = parse_graph(Path(spec).read_text())
    return graph


def _load_block(spec: str) -> EdgeRootedGraph:
    if spec == "triangle":
        return EdgeRootedGraph(complete(3), (0, 1))
    if spec == "edge":
        return single_edge()
    graph, root = parse_graph(Path(spec).read_text())
    if root is None:
        choice = choose_roots(graph)
        if choice is None:
            raise ValueError(f"{spec} has no root line and no root could be chosen")
        root = (choice.a, choice.b)
    return EdgeRootedGraph(graph, root)


def _certifier(args) -> WordCertifier:
    store = CertificateStore(args.store) if args.store else None
    return WordCertifier(store)


def _close(certifier: WordCertifier) -> None:
    if certifier.store is not None:
        certifier.store.close()


def cmd_decide(args) -> int:
    certifier = _certifier(args)
    try:
        w = certifier.parse(args.word, _names(args.sym))
        cert = certifier.decide_word(w)
    finally:
        _close(certifier)
    record = certificate_record(w, cert)
    record["word"] = format_word(w)
    lines = [f"word: {format_word(w)}", f"verdict: {cert.verdict.value}"]
    if cert.half is not None:
        lines.append(f"shift: {cert.shift}")
        lines.append(f"half: {record['half']}")
    if record["sym_var"] is not None:
        lines.append(f"sym_var: {record['sym_var']}")
    lines.append(f"comparisons: {cert.comparisons}")
    _emit(args, record, "\n".join(lines))
    return VERDICT_EXIT[cert.verdict]


def cmd_witness(args) -> int:
    certifier = _certifier(args)
    try:
        w = certifier.parse(args.word, _names(args.sym))
        cert = certifier.decide_word(w)
        if cert.verdict is Verdict.SYMMETRIC:
            sys.stderr.write(f"error: {args.word!r} is symmetric, hence PSD for every assignment; no witness exists\n")
            return EXIT_WRONG_VERDICT
        report = certifier.find_witness_word(w, args.dims, args.trials, args.seed, args.imag_tol)
    finally:
        _close(certifier)

    seed = get_settings().default_seed if args.seed is None else args.seed
    if report is None:
        record = {"schema": SCHEMA_VERSION, "word": format_word(w), "found": False, "seed": seed}
        _emit(args, record, f"no witness found for {format_word(w)} (seed {seed})")
        return EXIT_EXHAUSTED

    check = verify_witness(w, report, args.imag_tol, args.psd_tol)
    record = witness_record(w, report)
    record["word"] = format_word(w)
    record["found"] = True
    record["verification"] = verification_record(check)
    if args.save_assignment:
        Path(args.save_assignment).write_text(format_assignment(w, report.assignment))
    lines = [
        f"word: {format_word(w)}",
        f"witness: {report.kind.value} ({report.claim})",
        f"offending eigenvalue: {report.offending_eigenvalue:.12g}",
        f"trials used: {report.trials_used}, seed: {report.seed}",
        "verification: " + ("pass" if check.passed else "FAIL"),
        format_assignment(w, report.assignment),
    ]
    _emit(args, record, "\n".join(lines))
    return EXIT_OK if check.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    certifier = _certifier(args)
    try:
        text = Path(args.assignments).read_text()
        rec = certifier.verify(
            args.word, _names(args.sym), text, imag_tol=args.imag_tol, psd_tol=args.psd_tol, claim=args.claim
        )
    finally:
        _close(certifier)
    record = verification_record(rec)
    lines = [
        "eigenvalues: " + ", ".join(f"{lam:.12g}" for lam in rec.eigenvalues),
        f"max |Im|: {rec.max_imag:.3e} (tol {rec.imag_tol:.3e})",
        f"min Re: {rec.min_real:.12g} (tol {rec.psd_tol:.3e})",
        f"real: {rec.is_real}",
        f"psd: {rec.is_psd}",
    ]
    if rec.claim is not None:
        lines.append(f"claim {rec.claim}: " + ("pass" if rec.passed else "FAIL"))
    _emit(args, record, "\n".join(lines))
    return EXIT_FAILED if rec.passed is False else EXIT_OK


def cmd_examples(args) -> int:
    examples = WordCertifier().list_examples()
    record = {"schema": SCHEMA_VERSION, "examples": examples}
    lines = [f"{e['name']:<16} {e['verdict']:<20} {e['word']}" + (f"  [sym {','.join(e['sym'])}]" if e["sym"] else "")
             for e in examples]
    _emit(args, record, "\n".join(lines))
    return EXIT_OK


def cmd_sun_check(args) -> int:
    if args.graph:
        block = _load_block(args.graph)
        sample = None
    else:
        found = find_sun_block(seed=args.seed, budget=args.budget)
        if found is None:
            record = {"schema": SCHEMA_VERSION, "found": False, "seed": args.seed, "budget": args.budget}
            _emit(args, record, f"no suitable block in {args.budget} samples (seed {args.seed})")
            return EXIT_FAILED
        block, sample = found

    try:
        result = sun_negativity_check(
            block, k=args.k, ell=args.ell,
            epsilon=Fraction(args.epsilon) if args.epsilon else None, placement=args.placement,
            exact=args.exact, check=not args.skip_check,
        )
    except HypothesisError as e:
        record = {"schema": SCHEMA_VERSION, "block": _graph_record(block.graph, block.root), "failed": e.failed}
        _emit(args, record, f"block fails the construction's hypotheses: {', '.join(e.failed)}")
        return EXIT_FAILED

    if args.write_target:
        Path(args.write_target).write_text(format_counterexample(result.target))
    record = {
        "schema": SCHEMA_VERSION,
        "block": _graph_record(block.graph, block.root),
        "sample": sample,
        "seed": args.seed,
        "k": result.k,
        "ell": result.ell,
        "epsilon": result.epsilon,
        "placement": result.placement.value,
        "exact": result.exact,
        "in_regime": result.in_regime,
        "aligned": result.aligned,
        "value": result.value,
        "negative": result.negative,
        "hypotheses": asdict(result.hypotheses) if result.hypotheses is not None else None,
    }
    lines = [
        f"block: n={block.n}, m={block.graph.edge_count}, root {block.root}",
        f"k={result.k} ell={result.ell} epsilon={result.epsilon} placement={result.placement.value}",
        f"aligned weight: {result.aligned}",
        f"hom(sun, H) = {result.value}",
        "negative: " + ("yes" if result.negative else "no"),
    ]
    _emit(args, record, "\n".join(lines))
    return EXIT_OK if result.negative else EXIT_FAILED


def cmd_gsquare_sample(args) -> int:
    certifier = WordCertifier()
    w = certifier.parse(args.word, _names(args.sym))
    block = _load_block(args.block)
    blocks = word_blocks(w, {v: block for v in range(len(w.vars))})
    layout = glue_cycle_layout(blocks + blocks)
    result = positivity_sampler(
        layout, targets=args.targets, max_h=args.max_h, seed=args.seed, rational=args.exact,
        workers=args.workers or get_settings().workers,
    )
    record = {
        "schema": SCHEMA_VERSION,
        "word": format_word(w),
        "block": _graph_record(block.graph, block.root),
        "targets": result.samples,
        "seed": result.seed,
        "exact": args.exact,
        "minimum": result.minimum,
        "argmin": result.index,
        "nonnegative": not result.refuted,
    }
    lines = [
        f"word: {format_word(w)}, G^2 on {layout.graph.n} vertices",
        f"minimum over {result.samples} targets (seed {result.seed}): {result.minimum} at target {result.index}",
    ]
    _emit(args, record, "\n".join(lines))
    return EXIT_FAILED if result.refuted else EXIT_OK


def cmd_rigid_gen(args) -> int:
    report = generate_rigid_family(
        args.ell, args.n0, budget=args.budget, seed=args.seed, p=args.p,
        size_step=args.size_step, required=_names(args.required) or None,
    )
    record = {
        "schema": SCHEMA_VERSION,
        "seed": report.seed,
        "sizes": report.sizes,
        "required": report.required,
        "samples_used": report.samples_used,
        "family": [
            dict(_graph_record(f.graph, f.root), items=items)
            for f, items in zip(report.family, report.graph_reports)
        ],
        "family_items": report.family_report,
        "failed": report.failed,
        "rejections": report.rejections,
        "complete": report.complete,
    }
    lines = [f"sizes {report.sizes}, seed {report.seed}"]
    for i, (f, items) in enumerate(zip(report.family, report.graph_reports)):
        passed = ", ".join(name for name, ok in items.items() if ok)
        lines.append(f"graph {i}: n={f.n} m={f.graph.edge_count} root {f.root} after "
                     f"{report.samples_used[i]} samples; holds: {passed}")
    lines.append(f"family items: {report.family_report}")
    lines.append("complete" if report.complete else f"failed: {', '.join(report.failed)}")
    _emit(args, record, "\n".join(lines))
    return EXIT_OK if report.complete else EXIT_FAILED


def cmd_walktree(args) -> int:
    if args.graph:
        g, _ = parse_graph(Path(args.graph).read_text())
    else:
        g = random_graph(args.n, args.p, seed=args.seed)
    partition = walk_tree_partition(g)
    oracle = walk_tree_oracle_partition(g)
    consistent = all(
        len({g.degree(v) for v in cls}) == 1
        and len({tuple(neighborhood_degree_sequence(g, v)) for v in cls}) == 1
        for cls in partition
    )
    record = {
        "schema": SCHEMA_VERSION,
        "graph": _graph_record(g),
        "seed": None if args.graph else args.seed,
        "partition": partition,
        "oracle_partition": oracle,
        "match": partition == oracle,
        "degree_checks": consistent,
    }
    lines = [
        f"graph: n={g.n} m={g.edge_count}",
        "classes: " + " | ".join(" ".join(str(v) for v in cls) for cls in partition),
        f"matches depth-2n walk trees: {partition == oracle}",
        f"degree checks: {consistent}",
    ]
    _emit(args, record, "\n".join(lines))
    return EXIT_OK if partition == oracle and consistent else EXIT_FAILED


def cmd_hom(args) -> int:
    f = _load_pattern(args.pattern)
    h = parse_weighted_graph(Path(args.target).read_text(), exact=args.exact, directed=args.directed)
    value = hom_count(f, h, directed=args.directed, method=args.method, exact=args.exact)
    record = {
        "schema": SCHEMA_VERSION,
        "pattern": _graph_record(f),
        "target_vertices": h.n,
        "directed": args.directed,
        "exact": args.exact,
        "method": args.method,
        "hom": value,
    }
    lines = [f"hom = {value}"]
    if args.density:
        record["density"] = hom_density(f, h, exact=args.exact, directed=args.directed)
        lines.append(f"density = {record['density']}")
    _emit(args, record, "\n".join(lines))
    return EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output format")
    common.add_argument("--out", help="Write the report to this file instead of standard output")
    common.add_argument("--log-level", help="Logging level (default from WORDCERT_LOG_LEVEL or INFO)")
    return common


def _word_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("word", help="Word text, e.g. 'A B B^T A^T'")
    parser.add_argument("--sym", help="Comma-separated symmetric variable names")
    parser.add_argument("--store", help="DuckDB file for the certificate ledger")


def _tolerance_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--imag-tol", type=float, help="Absolute bound on |Im λ| (default scales with the norm)")
    parser.add_argument("--psd-tol", type=float, help="Absolute bound on -Re λ (default scales with the norm)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="wordcert",
        description="Decide PSD / real-eigenvaluedness of matrix words and run the graph homomorphism lab.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    decide = subparsers.add_parser("decide", parents=[common], help="Classify a word with a certificate")
    _word_options(decide)
    decide.set_defaults(func=cmd_decide)

    witness = subparsers.add_parser("witness", parents=[common], help="Find a counterexample assignment")
    _word_options(witness)
    _tolerance_options(witness)
    witness.add_argument("--dims", type=_ints, help="Matrix sizes for random search (default 2,3)")
    witness.add_argument("--trials", type=int, help="Random trials per dimension (default 10000)")
    witness.add_argument("--seed", type=int, help="Random seed (default 0)")
    witness.add_argument("--save-assignment", help="Also write the assignment in matrix text format")
    witness.set_defaults(func=cmd_witness)

    verify = subparsers.add_parser("verify", parents=[common], help="Evaluate a word under an assignment file")
    _word_options(verify)
    _tolerance_options(verify)
    verify.add_argument("--assignments", required=True, help="File of 'matrix NAME' blocks")
    verify.add_argument("--claim", choices=("not_real", "not_psd"), help="Claim to check against the spectrum")
    verify.set_defaults(func=cmd_verify)

    examples = subparsers.add_parser("examples", parents=[common], help="List curated example words")
    examples.set_defaults(func=cmd_examples)

    graphlab = subparsers.add_parser("graphlab", help="Graph homomorphism laboratory")
    tasks = graphlab.add_subparsers(dest="task", required=True)

    sun = tasks.add_parser("sun-check", parents=[common], help="Sign of hom(sun graph, H) for a rigid block")
    sun.add_argument("--graph", help="Block edge list with a root line; sampled when omitted")
    sun.add_argument("--k", type=int, default=2)
    sun.add_argument("--ell", type=int, default=3)
    sun.add_argument("--epsilon", help="Block edge weight (default from the small-ε bound)")
    sun.add_argument("--placement", choices=[p.value for p in Placement], default=Placement.RATIONAL.value)
    sun.add_argument("--exact", action="store_true", help="Rational arithmetic")
    sun.add_argument("--skip-check", action="store_true", help="Do not require the block hypotheses")
    sun.add_argument("--seed", type=int, default=0)
    sun.add_argument("--budget", type=int, default=2000, help="Samples when searching for a block")
    sun.add_argument("--write-target", help="Write H with its manifest to this file")
    sun.set_defaults(func=cmd_sun_check)

    gsq = tasks.add_parser("gsquare-sample", parents=[common], help="Minimum of hom(G², H) over random targets")
    gsq.add_argument("--word", required=True)
    gsq.add_argument("--sym", help="Comma-separated symmetric variable names")
    gsq.add_argument("--block", default="triangle", help="'triangle', 'edge' or an edge-list file")
    gsq.add_argument("--targets", type=int, default=100)
    gsq.add_argument("--max-h", type=int, default=4)
    gsq.add_argument("--seed", type=int, default=0)
    gsq.add_argument("--exact", action="store_true", help="Rational target weights")
    gsq.add_argument("--workers", type=int)
    gsq.set_defaults(func=cmd_gsquare_sample)

    rigid = tasks.add_parser("rigid-gen", parents=[common], help="Sample a rigid graph family")
    rigid.add_argument("--ell", type=int, required=True)
    rigid.add_argument("--n0", type=int, required=True)
    rigid.add_argument("--seed", type=int, default=0)
    rigid.add_argument("--budget", type=int, default=200)
    rigid.add_argument("--p", type=float, default=0.5)
    rigid.add_argument("--size-step", type=int, default=4)
    rigid.add_argument("--required", help="Comma-separated property items gating acceptance")
    rigid.set_defaults(func=cmd_rigid_gen)

    walk = tasks.add_parser("walktree", parents=[common], help="Walk-tree partition of a graph")
    walk.add_argument("--graph", help="Edge-list file; a G(n, p) sample when omitted")
    walk.add_argument("--n", type=int, default=8)
    walk.add_argument("--p", type=float, default=0.5)
    walk.add_argument("--seed", type=int, default=0)
    walk.set_defaults(func=cmd_walktree)

    hom = tasks.add_parser("hom", parents=[common], help="Weighted homomorphism count")
    hom.add_argument("--pattern", required=True, help="'cycle:5'-style built-in or an edge-list file")
    hom.add_argument("--target", required=True, help="Weighted edge-list file")
    hom.add_argument("--directed", action="store_true")
    hom.add_argument("--exact", action="store_true")
    hom.add_argument("--method", choices=("auto", "backtrack", "eliminate"), default="auto")
    hom.add_argument("--density", action="store_true")
    hom.set_defaults(func=cmd_hom)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=(args.log_level or get_settings().log_level).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except SizeGuardError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_SIZE_GUARD
    except (ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    except ArithmeticError as e:
        logger.error(f"Arithmetic failure in {args.command}: {e}")
        sys.stderr.write(f"error: arithmetic failure: {e}\n")
        return EXIT_ARITHMETIC


if __name__ == "__main__":
    sys.exit(main())
