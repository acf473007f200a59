"""Base class for acceptance checks and the context they share."""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..fourier import extremal_keys, isotypes, support_check
from ..moduli import RepresentationPoint, sample_point
from ..surface import CurveRoute, DehnParameter, PantsGraph, enumerate_dehn, route
from ..workers import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    metric: float
    detail: str


@dataclass(frozen=True)
class SweepRecord:
    """Isotype summary of one swept parameter at one base point."""

    param: DehnParameter
    point: int
    max_vanishing: float
    min_extremal: float


class SuiteContext:
    """Graph, seed and settings shared by the checks of one suite run.

    Base points and the isotype sweep are computed once and reused. The
    sweep covers `params` when given, else every parameter up to the
    configured m_max and t_max.
    """

    def __init__(self, graph: PantsGraph, seed: int, settings: Dict,
                 tolerances: Dict, sampling: Dict, threads: int = 1,
                 params: Optional[Sequence[DehnParameter]] = None,
                 grid: Optional[int] = None):
        self.graph = graph
        self.seed = seed
        self.settings = settings
        self.tolerances = tolerances
        self.sampling = sampling
        self.threads = threads
        self.params = list(params) if params else None
        self.grid = grid
        self._points: Dict[int, RepresentationPoint] = {}

    def rng(self, stream: int) -> np.random.Generator:
        """Independent generator per check, derived from the suite seed."""
        return np.random.default_rng([self.seed, stream])

    def point_seed(self, index: int) -> int:
        return int(np.random.SeedSequence([self.seed, 1000 + index]).generate_state(1)[0])

    def base_point(self, index: int) -> RepresentationPoint:
        if index not in self._points:
            self._points[index] = sample_point(
                self.graph, self.sampling['margin'], self.point_seed(index),
                self.sampling['max_draws'], self.sampling['batch_size'])
        return self._points[index]

    def grid_for(self, r: CurveRoute) -> Optional[Dict[str, int]]:
        """Grid half-widths for one route; `grid` only ever raises the default."""
        if self.grid is None:
            return None
        return {e: max(self.grid, r.crossing_count(e) + 1) for e in self.graph.internal_edges()}

    @cached_property
    def sweep(self) -> List[Tuple[DehnParameter, CurveRoute]]:
        params = self.params or enumerate_dehn(self.graph, self.settings['m_max'],
                                               self.settings['t_max'])
        logger.info("sweeping %d Dehn parameters", len(params))
        return [(d, route(self.graph, d)) for d in params]

    @cached_property
    def isotype_sweep(self) -> List[SweepRecord]:
        """Support and extremal moduli for every swept parameter and base point."""
        points = [self.base_point(n) for n in range(self.settings['base_points'])]
        jobs = [(n, d, r) for n in range(len(points)) for d, r in self.sweep]

        def summarize(job) -> SweepRecord:
            n, d, r = job
            table = isotypes(self.graph, points[n], r, self.grid_for(r))
            report = support_check(table, d, self.tolerances['vanishing'])
            extremal = min(abs(table.coefficient(k)) for k in extremal_keys(self.graph, d))
            return SweepRecord(d, n, report.max_modulus, extremal)

        return parallel_map(summarize, jobs, self.threads)


class Check(ABC):
    """Abstract base class for one acceptance criterion."""

    name = ''
    stream = 0
    needs_internal_edges = False

    def __init__(self, context: SuiteContext):
        """Initialize check with the shared suite context.

        Args:
            context: Graph, seed and settings of the run
        """
        self.context = context

    @abstractmethod
    def run(self) -> CheckResult:
        """Run the check.

        Returns:
            CheckResult with pass flag, headline metric and a detail line
        """
        pass

    def is_applicable(self) -> Tuple[bool, Optional[str]]:
        """Whether the graph supports this check.

        Returns:
            Tuple of (applicable, reason when not)
        """
        if self.needs_internal_edges and not self.context.graph.internal_edges():
            return False, "no internal edges"
        return True, None

    def result(self, passed: bool, metric: float, detail: str) -> CheckResult:
        return CheckResult(self.name, bool(passed), float(metric), detail)
