"""Random weighted targets as evidence for or against positivity of a graph."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

import numpy as np

from ..graphs.graph import GluedCycle, Graph, WeightedGraph
from ..graphs.homs import hom_count
from .transfer import glued_hom_via_transfer

logger = logging.getLogger(__name__)

RATIONAL_GRID = 8


def random_target(
    rng: np.random.Generator, size: int, rational: bool = False, loops: bool = True, directed: bool = False
) -> WeightedGraph:
    """Weights uniform on [−1, 1]; rational weights come from a grid of step 1/8."""
    if rational:
        numerators = rng.integers(-RATIONAL_GRID, RATIONAL_GRID + 1, size=(size, size))
        matrix = np.array([[Fraction(int(x), RATIONAL_GRID) for x in row] for row in numerators], dtype=object)
    else:
        matrix = rng.uniform(-1.0, 1.0, size=(size, size))
    if not directed:
        for i in range(size):
            for j in range(i):
                matrix[i, j] = matrix[j, i]
    if not loops:
        for i in range(size):
            matrix[i, i] = matrix[i, i] * 0
    return WeightedGraph(matrix, directed)


@dataclass
class SamplerResult:
    """Smallest hom value seen; a negative minimum refutes positivity."""
    minimum: object
    index: int
    target: WeightedGraph
    samples: int
    seed: int

    @property
    def refuted(self) -> bool:
        return self.minimum < 0


def _evaluate(g: Union[Graph, GluedCycle], h: WeightedGraph, exact: bool):
    if isinstance(g, GluedCycle):
        return glued_hom_via_transfer(g.blocks, h, exact)
    return hom_count(g, h, exact=exact)


def _sample(g, t: int, seed: int, max_h: int, rational: bool):
    rng = np.random.default_rng([seed, t])
    size = int(rng.integers(1, max_h + 1))
    h = random_target(rng, size, rational)
    return _evaluate(g, h, exact=rational), h


def positivity_sampler(
    g: Union[Graph, GluedCycle],
    targets: int = 100,
    max_h: int = 4,
    seed: int = 0,
    rational: bool = False,
    workers: int = 1,
) -> SamplerResult:
    """Minimum hom value over seeded random targets; ties go to the lowest index.

    Glued cycles are evaluated block by block through transfer matrices.
    """
    if targets < 1 or max_h < 1:
        raise ValueError(f"Need at least one target and one target vertex, got {targets}, {max_h}")
    indices = range(targets)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes: List = list(executor.map(lambda t: _sample(g, t, seed, max_h, rational), indices))
    else:
        outcomes = [_sample(g, t, seed, max_h, rational) for t in indices]

    best: Optional[int] = None
    for t, (value, _) in enumerate(outcomes):
        if best is None or value < outcomes[best][0]:
            best = t
    value, h = outcomes[best]
    logger.info(f"Minimum hom value {float(value):.6g} at target {best} of {targets}")
    return SamplerResult(value, best, h, targets, seed)
