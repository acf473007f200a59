"""Suite runner that orchestrates the acceptance checks on one surface."""

import copy
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .checks import (CheckResult, IndependenceCheck, IntersectionCheck, NonVanishingCheck,
                     PolytopeCheck, SuiteContext, SupportCheck, TorusCheck, TraceRelationCheck,
                     TwistPhaseCheck)
from .config import Config
from .errors import InputError
from .formats import load_dehn, load_graph
from .moduli import require_seed
from .surface import DehnParameter, PantsGraph, require_admissible, require_valid_graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scenario:
    """Everything that determines one suite run's output.

    Args:
        graph_path: Graph file or bundled surface name
        seed: Seed recorded in the report header
        command: Command name for the provenance header
        params: Dehn parameter files; the default sweep when empty
        tolerances: Overrides for keys of the `tolerances` config section
        grid: Lower bound for the Fourier grid half-width of the sweep
        output: Report path, stdout when None
        quick: Use the reduced sweep sizes
    """

    graph_path: str
    seed: int
    command: str = 'suite'
    params: Sequence[str] = ()
    tolerances: Mapping[str, float] = field(default_factory=dict)
    grid: Optional[int] = None
    output: Optional[str] = None
    quick: bool = False

    def __post_init__(self):
        require_seed(self.seed)
        if self.grid is not None and self.grid < 1:
            raise InputError(f"grid must be at least 1, got {self.grid}")

    def load(self) -> Tuple[PantsGraph, List[DehnParameter]]:
        """Read and validate every referenced file.

        Returns:
            (graph, parameters) in the order given

        Raises:
            InputError: If a file is missing, does not parse, or fails validation
        """
        graph = load_graph(self.graph_path)
        require_valid_graph(graph)
        params = []
        for path in self.params:
            d = load_dehn(path)
            require_admissible(graph, d)
            params.append(d)
        return graph, params

    def merged_config(self, config: Dict) -> Dict:
        unknown = [k for k in self.tolerances if k not in config['tolerances']]
        if unknown:
            raise InputError(f"unknown tolerance(s): {', '.join(unknown)}")
        merged = copy.deepcopy(config)
        merged['tolerances'].update(self.tolerances)
        return merged

    def run(self, config: Dict) -> 'SuiteReport':
        """Load the files and run the suite on them."""
        graph, params = self.load()
        suite = Suite(self.merged_config(config), quick=self.quick)
        return suite.run(graph, self.seed, params=params, grid=self.grid)


@dataclass(frozen=True)
class SuiteReport:
    results: List[CheckResult]
    skipped: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def rows(self) -> List[list]:
        return [[r.name, r.passed, r.metric, r.detail] for r in self.results]


class Suite:
    """Orchestrates the acceptance checks."""

    check_map = {
        'polytope': PolytopeCheck,
        'trace_relation': TraceRelationCheck,
        'support': SupportCheck,
        'nonvanishing': NonVanishingCheck,
        'twist_phase': TwistPhaseCheck,
        'intersection': IntersectionCheck,
        'independence': IndependenceCheck,
        'torus': TorusCheck,
    }

    def __init__(self, config: Dict, quick: bool = False):
        """Initialize the suite.

        Args:
            config: Full application configuration
            quick: Use the reduced sweep sizes of `suite.quick`
        """
        self.config = config
        self.settings = Config.suite_settings(config, quick)
        self.threads = Config.thread_count(config)

    def _get_checks(self, context: SuiteContext) -> list:
        """Instantiate the configured checks, in configured order."""
        checks = []
        for name in self.settings.get('checks', list(self.check_map)):
            check_class = self.check_map.get(name)
            if not check_class:
                raise InputError(f"Unknown check: {name}")
            checks.append(check_class(context))
        return checks

    def run(self, graph: PantsGraph, seed: int,
            params: Optional[Sequence[DehnParameter]] = None,
            grid: Optional[int] = None) -> SuiteReport:
        """Run every configured check.

        Args:
            graph: Surface to check
            seed: Seed every random choice derives from
            params: Parameters to sweep instead of the enumerated ones
            grid: Lower bound for the sweep's Fourier grid half-width

        Returns:
            SuiteReport with one result per check

        Raises:
            InvalidGraph: If the graph is invalid; nothing runs
        """
        require_valid_graph(graph)
        context = SuiteContext(graph, seed, self.settings, self.config['tolerances'],
                               self.config['sampling'], self.threads, params, grid)
        results = []
        skipped = []
        for check in self._get_checks(context):
            applicable, reason = check.is_applicable()
            if not applicable:
                logger.info("skipping %s: %s", check.name, reason)
                skipped.append(check.name)
                continue
            logger.info("running %s", check.name)
            result = check.run()
            logger.info("%s: %s", check.name, 'pass' if result.passed else 'FAIL')
            results.append(result)
        return SuiteReport(results, tuple(skipped))
