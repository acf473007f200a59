"""Numerical witness for the linear independence of multicurve traces.

Rows of the evaluation matrix are seeded interior points of the moduli
space, columns are multicurves; full column rank certifies that the trace
functions are linearly independent. A rank deficit only says the sample
could not separate them.
"""

import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ColumnCapExceeded, ContractViolation, InputError
from .moduli import require_seed, sample_point
from .surface import DehnParameter, PantsGraph, route
from .trace_eval import trace_of_route
from .workers import parallel_map

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-8
DEFAULT_OVERSAMPLING = 3
MAX_COLUMNS = 500
INDEPENDENT = 'independent'
DEPENDENT = 'numerically dependent at this sample'


def row_seeds(seed: int, count: int) -> Tuple[int, ...]:
    """Per-row sampling seeds spawned from one seed."""
    return tuple(int(s) for s in np.random.SeedSequence(require_seed(seed)).generate_state(count))


@dataclass(frozen=True, eq=False)
class EvaluationMatrix:
    """Trace values: one row per sampled point, one column per multicurve."""

    labels: Tuple[str, ...]
    params: Tuple[Optional[DehnParameter], ...]
    seeds: Tuple[int, ...]
    entries: np.ndarray
    component_counts: Tuple[int, ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.entries, compute_uv=False)

    def take_rows(self, count: int) -> 'EvaluationMatrix':
        return replace(self, seeds=self.seeds[:count], entries=self.entries[:count].copy())

    def check_entries(self) -> List[str]:
        """Entries must be finite and bounded by 2^(component count)."""
        violations = []
        if not np.all(np.isfinite(self.entries)):
            violations.append("non-finite entries")
        for n, (label, count) in enumerate(zip(self.labels, self.component_counts)):
            if count is None:
                continue
            if np.max(np.abs(self.entries[:, n]), initial=0.0) > 2.0 ** count + 1e-9:
                violations.append(f"column {label} exceeds 2^{count}")
        return violations


def build_matrix(g: PantsGraph, params: Sequence[DehnParameter], n_samples: int,
                 seed: int, margin: float, threads: int = 1,
                 max_columns: int = MAX_COLUMNS,
                 allow_large: bool = False) -> EvaluationMatrix:
    """Evaluate every multicurve trace at n_samples interior points.

    Args:
        g: Valid graph
        params: Columns, in the order given
        n_samples: Rows; at least the number of columns
        seed: Seed all row seeds are spawned from
        margin: Interior margin passed to the sampler
        threads: Worker threads for the row fill
        max_columns: Column cap
        allow_large: Lift the column cap

    Returns:
        EvaluationMatrix

    Raises:
        ColumnCapExceeded: If there are too many columns
        ContractViolation: If an entry is non-finite or out of bounds
    """
    params = list(params)
    if len(params) > max_columns and not allow_large:
        raise ColumnCapExceeded(
            f"{len(params)} columns exceed the cap of {max_columns}; pass an override to proceed")
    if n_samples < len(params):
        raise InputError(f"need at least {len(params)} samples, got {n_samples}")
    routes = [route(g, d) for d in params]
    seeds = row_seeds(seed, n_samples)

    def evaluate(row_seed: int) -> List[float]:
        rep = sample_point(g, margin, row_seed)
        return [trace_of_route(rep, r).value for r in routes]

    rows = parallel_map(evaluate, seeds, threads)
    matrix = EvaluationMatrix(
        labels=tuple(d.label(g) for d in params),
        params=tuple(params),
        seeds=seeds,
        entries=np.array(rows, dtype=float).reshape(n_samples, len(params)),
        component_counts=tuple(len(r) for r in routes),
    )
    violations = matrix.check_entries()
    if violations:
        raise ContractViolation('; '.join(violations))
    logger.info("evaluation matrix %dx%d (seed %d)", n_samples, len(params), seed)
    return matrix


def append_column(matrix: EvaluationMatrix, values: np.ndarray, label: str) -> EvaluationMatrix:
    """Add a column that is not a multicurve, e.g. a negative control."""
    values = np.asarray(values, dtype=float).reshape(-1, 1)
    return replace(
        matrix,
        labels=matrix.labels + (label,),
        params=matrix.params + (None,),
        entries=np.hstack([matrix.entries, values]),
        component_counts=matrix.component_counts + (None,),
    )


@dataclass(frozen=True, eq=False)
class RankReport:
    rank: int
    columns: int
    condition_ratio: float
    verdict: str
    singular_values: np.ndarray

    @property
    def independent(self) -> bool:
        return self.verdict == INDEPENDENT


def rank_report(matrix: EvaluationMatrix, rel_tol: float = DEFAULT_REL_TOL) -> RankReport:
    """Numerical rank: singular values above rel_tol * sigma_max.

    Returns:
        RankReport; verdict is independent iff rank equals the column count
    """
    sigma = matrix.singular_values()
    columns = matrix.shape[1]
    if sigma.size == 0 or sigma[0] == 0.0:
        rank, ratio = 0, 0.0
    else:
        rank = int(np.count_nonzero(sigma > rel_tol * sigma[0]))
        ratio = float(sigma[-1] / sigma[0])
    verdict = INDEPENDENT if rank == columns else DEPENDENT
    logger.info("rank %d of %d columns, sigma_min/sigma_max %.3g: %s", rank, columns, ratio, verdict)
    return RankReport(rank, columns, ratio, verdict, sigma)
