"""Weighted targets on which a sun graph has a negative homomorphism count.

A two-vertex digraph D with adjacency M (trace(M^{2k}) < 0) is blown up:
every ordered pair (x, y) becomes a copy F^{x,y} of the block attached at x
by its root a, followed by a path P^{x,y} of length ℓ from b to y. Block
edges weigh ε and the path carries M[x, y]/ε^{e(F)} in total, so a
homomorphism that runs every block-and-path segment along a whole copy has
weight equal to a product of entries of M.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import HypothesisError, PreconditionError
from ..graphs.graph import EdgeRootedGraph, Graph, WeightedGraph, cut_vertices, edges_in_triangles, max_abs_row_sum
from ..graphs.homs import (
    LemmaReport, is_rigid, lemma_hypotheses, pinned_endomorphism_counts, weighted_homomorphisms,
)
from ..graphs.rigid import choose_roots, random_graph, sample_seed
from .transfer import as_exact, as_float, trace_power, transfer_matrix

logger = logging.getLogger(__name__)

PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))
DEFAULT_EPSILON_CAP = Fraction(1, 10 ** 6)


class Placement(str, Enum):
    """How the path weight M[x, y]/ε^{e(F)} is spread over a path."""
    RATIONAL = "rational"
    SPREAD = "spread"


def rotation_seed(k: int) -> np.ndarray:
    theta = math.pi / (2 * k)
    return np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])


def rational_rotation(k: int) -> np.ndarray:
    """Rational 2×2 matrix with trace(M^{2k}) < 0."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k == 2:
        m = np.array([[Fraction(1), Fraction(-1)], [Fraction(1), Fraction(1)]], dtype=object)
    else:
        theta = math.pi / (2 * k)
        c = Fraction(math.cos(theta)).limit_denominator(10 ** 6)
        s = Fraction(math.sin(theta)).limit_denominator(10 ** 6)
        m = np.array([[c, -s], [s, c]], dtype=object)
    if not trace_power(m, 2 * k) < 0:
        raise ArithmeticError(f"Rational rotation for k={k} lost the negative trace")
    return m


def epsilon_bound(f: EdgeRootedGraph, k: int, ell: int) -> int:
    """(17·Δ(F))^{2kℓ} as an exact integer."""
    return (17 * f.graph.max_degree()) ** (2 * k * ell)


def default_epsilon(f: EdgeRootedGraph, k: int, ell: int) -> Fraction:
    eps = min(DEFAULT_EPSILON_CAP, Fraction(1, epsilon_bound(f, k, ell) + 1))
    theta = math.pi / (2 * k)
    if not (eps < math.cos(theta) and eps < math.sin(theta)):
        raise ArithmeticError(f"Default epsilon {eps} violates the rotation-angle bound")
    return eps


def in_epsilon_regime(f: EdgeRootedGraph, k: int, ell: int, epsilon) -> bool:
    theta = math.pi / (2 * k)
    return (
        Fraction(epsilon) * epsilon_bound(f, k, ell) < 1
        and epsilon < math.cos(theta)
        and epsilon < math.sin(theta)
    )


def in_segment_regime(f: EdgeRootedGraph, k: int, ell: int, epsilon) -> bool:
    """Small ε and, for a block with non-trivial self-maps, an odd path length."""
    return in_epsilon_regime(f, k, ell, epsilon) and (ell % 2 == 1 or is_rigid(f.graph))


@dataclass
class CounterexampleTarget:
    """The weighted graph H with the bookkeeping of its block copies and paths."""
    h: WeightedGraph
    f: EdgeRootedGraph
    k: int
    ell: int
    epsilon: object
    placement: Placement
    m: np.ndarray
    copies: Dict[Tuple[int, int], List[int]] = field(default_factory=dict)
    paths: Dict[Tuple[int, int], List[int]] = field(default_factory=dict)
    designated_edge: int = 1

    @property
    def exact(self) -> bool:
        return self.h.exact


def designated_index(ell: int) -> int:
    """1-based index of the path edge that carries the sign (and, for RATIONAL, the whole weight)."""
    return ell // 2 + 1


def _path_weights(total, ell: int, placement: Placement, designated: int) -> List[object]:
    if placement is Placement.RATIONAL:
        return [total if i == designated else Fraction(1) for i in range(1, ell + 1)]
    magnitude = abs(float(total)) ** (1.0 / ell)
    sign = -1.0 if total < 0 else 1.0
    return [sign * magnitude if i == designated else magnitude for i in range(1, ell + 1)]


def build_counterexample_target(
    f: EdgeRootedGraph,
    k: int,
    ell: int,
    epsilon=None,
    placement: Placement = Placement.RATIONAL,
    m: Optional[np.ndarray] = None,
    check: bool = True,
) -> CounterexampleTarget:
    """Blow up D into H; RATIONAL weights are Fractions, SPREAD weights floats (equal ℓ-th roots per edge)."""
    if k < 2 or ell < 2:
        raise PreconditionError(f"Counterexample targets need k ≥ 2 and ℓ ≥ 2, got k={k}, ℓ={ell}")
    placement = Placement(placement)
    if check:
        report = lemma_hypotheses(f)
        if not report.ok:
            raise HypothesisError(f"Block fails {', '.join(report.failed)}", report.failed)
        if not report.rigid and ell % 2 == 0:
            raise HypothesisError("A non-rigid block needs an odd path length", ["odd_path_length"])

    exact = placement is Placement.RATIONAL
    if m is None:
        m = rational_rotation(k) if exact else rotation_seed(k)
    epsilon = default_epsilon(f, k, ell) if epsilon is None else epsilon
    epsilon = Fraction(epsilon) if exact else float(epsilon)
    e_f = f.graph.edge_count
    designated = designated_index(ell)

    a, b = f.root
    n_h = 2
    copies: Dict[Tuple[int, int], List[int]] = {}
    paths: Dict[Tuple[int, int], List[int]] = {}
    edges: List[Tuple[int, int, object]] = []
    for x, y in PAIRS:
        image = [-1] * f.n
        image[a] = x
        for v in range(f.n):
            if v != a:
                image[v] = n_h
                n_h += 1
        copies[(x, y)] = image
        edges.extend((image[u], image[v], epsilon) for u, v in f.graph.edges)

        path = [image[b]] + list(range(n_h, n_h + ell - 1)) + [y]
        n_h += ell - 1
        paths[(x, y)] = path
        total = (Fraction(m[x, y]) if exact else float(m[x, y])) / epsilon ** e_f
        weights = _path_weights(total, ell, placement, designated)
        edges.extend((path[i], path[i + 1], weights[i]) for i in range(ell))

    h = WeightedGraph.from_edges(n_h, edges, exact=exact)
    logger.info(f"Counterexample target: {n_h} vertices, ε = {epsilon}, placement {placement.value}")
    return CounterexampleTarget(h, f, k, ell, epsilon, placement, m, copies, paths, designated)


def _sun_trace(target: CounterexampleTarget, exact: bool):
    h = as_exact(target.h) if exact else as_float(target.h)
    segment = transfer_matrix(target.f, h, exact).entries
    for _ in range(target.ell):
        segment = segment @ h.matrix
    return trace_power(segment, 2 * target.k)


def evaluate_sun(target: CounterexampleTarget, exact: bool = True) -> Tuple[object, bool]:
    """hom(sun_graph(F, 2k, ℓ), H) and whether it was computed exactly.

    A float evaluation that leaves the float range is redone in exact arithmetic.
    """
    if exact and not target.h.exact:
        raise PreconditionError("SPREAD placement has irrational weights; evaluate it with exact=False")
    if exact:
        return _sun_trace(target, True), True
    try:
        with np.errstate(over="ignore", invalid="ignore"):
            value = _sun_trace(target, False)
        if math.isfinite(value):
            return float(value), False
        reason = f"non-finite result {value}"
    except OverflowError as e:
        reason = str(e)
    logger.warning(f"Float evaluation overflowed ({reason}); switching to exact arithmetic")
    return _sun_trace(target, True), True


def sun_hom_value(target: CounterexampleTarget, exact: bool = True):
    """hom(sun_graph(F, 2k, ℓ), H) = trace((S_F · A^ℓ)^{2k})."""
    return evaluate_sun(target, exact)[0]

def aligned_multiplicity(f: EdgeRootedGraph, k: int) -> int:
    """c with aligned weight c·trace(M^{2k}): root-fixing and root-swapping self-maps of F."""
    forward, swapped = pinned_endomorphism_counts(f)
    return forward ** (2 * k) + swapped ** (2 * k)


def aligned_tally(target: CounterexampleTarget, k: Optional[int] = None):
    k = target.k if k is None else k
    return aligned_multiplicity(target.f, k) * trace_power(target.m, 2 * k)


@dataclass
class SunCheckResult:
    value: object
    negative: bool
    epsilon: object
    in_regime: bool
    aligned: object
    k: int
    ell: int
    placement: Placement
    exact: bool
    hypotheses: Optional[LemmaReport] = None
    target: Optional[CounterexampleTarget] = None


def sun_negativity_check(
    f: EdgeRootedGraph,
    k: int = 2,
    ell: int = 3,
    epsilon=None,
    placement: Placement = Placement.RATIONAL,
    exact: bool = True,
    check: bool = True,
) -> SunCheckResult:
    """Build the target for F and evaluate the sun graph's hom count on it."""
    placement = Placement(placement)
    if placement is Placement.SPREAD and exact:
        logger.warning("SPREAD placement is evaluated in floating point")
        exact = False
    target = build_counterexample_target(f, k, ell, epsilon, placement, check=check)
    value, exact = evaluate_sun(target, exact)
    regime = in_epsilon_regime(f, k, ell, target.epsilon)
    if not regime:
        logger.warning(f"ε = {target.epsilon} is outside the small-ε regime; the sign is not guaranteed")
    return SunCheckResult(
        value=value,
        negative=bool(value < 0),
        epsilon=target.epsilon,
        in_regime=regime,
        aligned=aligned_tally(target),
        k=k,
        ell=ell,
        placement=placement,
        exact=exact,
        hypotheses=lemma_hypotheses(f) if check else None,
        target=target,
    )


def find_sun_block(
    seed: int = 0, sizes: Tuple[int, ...] = (8, 9, 10, 11, 12), p: float = 0.5, budget: int = 2000
) -> Optional[Tuple[EdgeRootedGraph, int]]:
    """First sampled rigid block with no cut vertex and every edge in a triangle."""
    for t in range(budget):
        n = sizes[t % len(sizes)]
        g = random_graph(n, p, seed=sample_seed(seed, t))
        if not g.edges or not edges_in_triangles(g) or not g.is_connected() or cut_vertices(g):
            continue
        if not is_rigid(g):
            continue
        roots = choose_roots(g)
        if roots is None:
            continue
        logger.info(f"Sun block found at sample {t}: n={n}, m={g.edge_count}")
        return EdgeRootedGraph(g, (roots.a, roots.b)), t
    logger.warning(f"No sun block among {budget} samples")
    return None


@dataclass
class SegmentAnalysis:
    """Homomorphisms of the sun graph split into aligned and misaligned ones."""
    segment_maps: int
    aligned_segments: int
    aligned_weights_exact: bool
    total: object
    aligned_total: object
    misaligned_total: object
    misaligned_max: object
    bound: object
    in_regime: bool = True

    @property
    def misaligned_bounded(self) -> bool:
        return self.misaligned_max <= self.bound


def segment_graph(f: EdgeRootedGraph, ell: int) -> Tuple[Graph, List[int]]:
    """F with a path of length ℓ hanging off b; returns the graph and the path vertices after b."""
    a, b = f.root
    tail = list(range(f.n, f.n + ell))
    g = Graph(f.n + ell, f.graph.edges)
    previous = b
    for v in tail:
        g.add_edge(previous, v)
        previous = v
    return g, tail


def _classify_segment(target: CounterexampleTarget, image: Tuple[int, ...], tail: List[int]):
    """Expected aligned weight for a segment map, or None when it is misaligned."""
    a, b = target.f.root
    block = {image[v] for v in range(target.f.n)}
    walk = [image[v] for v in tail]
    for x, y in PAIRS:
        copy = target.copies[(x, y)]
        if not block <= set(copy):
            continue
        if image[a] == x and image[b] == copy[b] and walk == target.paths[(x, y)][1:]:
            return target.m[x, y]
        if image[a] == copy[b] and image[b] == x:
            for z in (0, 1):
                if walk == target.paths[(z, x)][::-1][1:]:
                    return target.m[z, x]
    return None


def _max_times(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    return (p[:, :, None] * q[None, :, :]).max(axis=1)


def enumerate_sun_homomorphisms(target: CounterexampleTarget) -> SegmentAnalysis:
    """Enumerate every map of one block-and-path segment and chain the 2k segments.

    A sun homomorphism is aligned when all of its segments run along a whole
    copy, forwards or backwards. Sums compose by matrix product and
    per-homomorphism maxima by the max-times product.
    """
    if not target.exact:
        raise PreconditionError("Segment analysis needs exact target weights")
    h = target.h
    seg, tail = segment_graph(target.f, target.ell)
    a = target.f.root[0]
    zero = Fraction(0)
    all_sum = np.full((h.n, h.n), zero, dtype=object)
    aligned_sum = np.full((h.n, h.n), zero, dtype=object)
    all_max = np.full((h.n, h.n), zero, dtype=object)
    misaligned_max = np.full((h.n, h.n), zero, dtype=object)
    maps = aligned = 0
    exact_weights = True

    for image, weight in weighted_homomorphisms(seg, h):
        start, end = image[a], image[tail[-1]]
        maps += 1
        all_sum[start, end] += weight
        all_max[start, end] = max(all_max[start, end], abs(weight))
        expected = _classify_segment(target, image, tail)
        if expected is None:
            misaligned_max[start, end] = max(misaligned_max[start, end], abs(weight))
        else:
            aligned += 1
            aligned_sum[start, end] += weight
            exact_weights = exact_weights and weight == expected

    two_k = 2 * target.k
    total = trace_power(all_sum, two_k)
    aligned_total = trace_power(aligned_sum, two_k)
    chained = misaligned_max
    for _ in range(two_k - 1):
        chained = _max_times(chained, all_max)
    worst = max(chained[x, x] for x in range(h.n))
    bound = target.epsilon * max(Fraction(1), Fraction(max_abs_row_sum(target.m)) ** two_k)
    regime = in_segment_regime(target.f, target.k, target.ell, target.epsilon)
    log2_worst = Fraction(worst).numerator.bit_length() - Fraction(worst).denominator.bit_length()
    logger.info(f"{maps} segment maps, {aligned} aligned; worst misaligned weight about 2^{log2_worst}")
    if not regime:
        logger.warning(
            f"k={target.k}, ℓ={target.ell}, ε={target.epsilon} is outside the regime where misaligned weights are bounded"
        )
    return SegmentAnalysis(
        maps, aligned, exact_weights, total, aligned_total, total - aligned_total, worst, bound, regime
    )
