"""Isotype decomposition of trace functions along torus orbits.

Restricted to a torus orbit, the trace function of a multicurve is a
trigonometric polynomial of degree at most m_j in t_j. Sampling it on the
odd grid t_j = s / (2N_j + 1) with N_j >= m_j therefore gives its Fourier
coefficients exactly, up to rounding.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import CentralHolonomy, GridTooSmall, InvalidDehnParameter, NotInterior, TwistError
from .moduli import Classification, RepresentationPoint, in_delta
from .surface import CurveRoute, DehnParameter, PantsGraph, route, twist
from .trace_eval import trace_on_torus_grid

logger = logging.getLogger(__name__)

VANISHING_TOL = 1e-8
NONVANISHING_TOL = 1e-6

Key = Tuple[int, ...]


def frequencies(n: int) -> np.ndarray:
    """Integer frequency of each FFT bin for an odd grid of size n."""
    return np.rint(np.fft.fftfreq(n) * n).astype(int)


@dataclass(frozen=True, eq=False)
class IsotypeTable:
    """Fourier coefficients c_k of a trace function at a base point.

    Coefficients are stored in FFT order; c_k sits at index k_j mod (2N_j+1)
    along each analyzed edge. `bound` holds the crossing count of each edge,
    the highest frequency the trace can carry there.
    """

    base: RepresentationPoint
    edges: Tuple[str, ...]
    bound: Mapping[str, int]
    grid: Mapping[str, int]
    samples: np.ndarray
    coefficients: np.ndarray

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(2 * self.grid[e] + 1 for e in self.edges)

    def _index(self, k: Sequence[int]) -> Tuple[int, ...]:
        if len(k) != len(self.edges):
            raise GridTooSmall(f"key {tuple(k)} does not match edges {self.edges}")
        for e, kj in zip(self.edges, k):
            if abs(kj) > self.grid[e]:
                raise GridTooSmall(f"|k| = {abs(kj)} on {e} exceeds grid N = {self.grid[e]}")
        return tuple(kj % n for kj, n in zip(k, self.sizes))

    def coefficient(self, k: Sequence[int]) -> complex:
        return complex(self.coefficients[self._index(tuple(k))])

    def keys(self) -> Iterator[Key]:
        """All k in prod [-N_j, N_j], lexicographic."""
        return itertools.product(*(range(-self.grid[e], self.grid[e] + 1) for e in self.edges))

    def items(self) -> Iterator[Tuple[Key, complex]]:
        for k in self.keys():
            yield k, self.coefficient(k)

    def frequency_grids(self) -> Tuple[np.ndarray, ...]:
        """Integer k_j of every coefficient, broadcast to the table shape."""
        return tuple(np.meshgrid(*(frequencies(n) for n in self.sizes), indexing='ij'))

    def reconstruct(self, t: Sequence[float]) -> complex:
        """Sum_k c_k exp(2 pi i <t, k>) at torus shift t."""
        if not self.edges:
            return complex(self.coefficients)
        phase = sum(2.0 * math.pi * tj * kj for tj, kj in zip(t, self.frequency_grids()))
        return complex(np.sum(self.coefficients * np.exp(1j * phase)))

    def reconstruction_error(self) -> float:
        """Largest deviation of the inverse transform from the samples."""
        if not self.edges:
            return 0.0
        rebuilt = np.fft.ifftn(self.coefficients * self.coefficients.size)
        return float(np.max(np.abs(rebuilt - self.samples)))

    def symmetry_error(self) -> float:
        """max |c_-k - conj(c_k)|; zero for a real function."""
        if not self.edges:
            return float(abs(np.imag(self.coefficients)))
        mirrored = self.coefficients
        for axis in range(mirrored.ndim):
            mirrored = np.roll(np.flip(mirrored, axis=axis), 1, axis=axis)
        return float(np.max(np.abs(mirrored - np.conj(self.coefficients))))


def isotypes(g: PantsGraph, rep: RepresentationPoint, r: CurveRoute,
             N: Optional[Mapping[str, int]] = None,
             edges: Optional[Iterable[str]] = None) -> IsotypeTable:
    """Fourier coefficients of T_r along the torus orbit of rep.

    Args:
        g: Graph of rep and r
        rep: Base point
        r: Routed multicurve
        N: Grid half-width per edge; defaults to crossings + 1
        edges: Circle actions to analyze, all internal edges by default;
            a single edge gives the isotypes of that one circle action

    Returns:
        IsotypeTable over the analyzed edges, in graph edge order

    Raises:
        CentralHolonomy: If an analyzed edge has holonomy +-I
        GridTooSmall: If some N_j < 1
    """
    chosen = set(g.internal_edges() if edges is None else edges)
    edges = tuple(e for e in g.internal_edges() if e in chosen)
    central = [e for e in edges if e in rep.degenerate_edges]
    if central:
        raise CentralHolonomy(central)
    bound = {e: r.crossing_count(e) for e in edges}
    grid = {e: (N or {}).get(e, bound[e] + 1) for e in edges}
    for e in edges:
        if grid[e] < 1:
            raise GridTooSmall(f"grid N on {e} must be >= 1, got {grid[e]}")

    sizes = [2 * grid[e] + 1 for e in edges]
    axes = np.meshgrid(*(np.arange(n) / n for n in sizes), indexing='ij')
    shifts = {e: axis.ravel() for e, axis in zip(edges, axes)}
    samples = trace_on_torus_grid(rep, r, shifts).values.reshape(sizes)
    if edges:
        coefficients = np.fft.fftn(samples) / samples.size
    else:
        coefficients = samples.astype(complex)
    logger.debug("isotypes on %s with grid %s", ','.join(edges) or '-', sizes)
    return IsotypeTable(rep, edges, bound, grid, samples, coefficients)


@dataclass(frozen=True)
class SupportReport:
    passed: bool
    max_modulus: float
    worst_key: Optional[Key]
    checked: int


def support_check(table: IsotypeTable, d: DehnParameter,
                  tol: float = VANISHING_TOL) -> SupportReport:
    """Coefficients with some |k_j| > m_j must vanish.

    Raises:
        GridTooSmall: If a grid has N_j < m_j + 1
    """
    for e in table.edges:
        if table.grid[e] < d.m_of(e) + 1:
            raise GridTooSmall(f"support check on {e} needs N >= {d.m_of(e) + 1}")
    if not table.edges:
        return SupportReport(True, 0.0, None, 0)
    grids = table.frequency_grids()
    beyond = np.zeros(table.coefficients.shape, dtype=bool)
    for e, k in zip(table.edges, grids):
        beyond |= np.abs(k) > d.m_of(e)
    moduli = np.where(beyond, np.abs(table.coefficients), -1.0)
    checked = int(beyond.sum())
    if not checked:
        return SupportReport(True, 0.0, None, 0)
    worst = np.unravel_index(int(np.argmax(moduli)), moduli.shape)
    max_modulus = float(moduli[worst])
    worst_key = tuple(int(k[worst]) for k in grids)
    return SupportReport(max_modulus <= tol, max_modulus, worst_key, checked)


def extremal_keys(g: PantsGraph, d: DehnParameter) -> Tuple[Key, ...]:
    """All k with |k_j| = m_j on every internal edge."""
    choices = [(-d.m_of(e), d.m_of(e)) if d.m_of(e) else (0,) for e in g.internal_edges()]
    return tuple(itertools.product(*choices))


def top_isotype(g: PantsGraph, rep: RepresentationPoint, d: DehnParameter,
                require_interior: bool = True,
                r: Optional[CurveRoute] = None) -> Dict[Key, complex]:
    """Extremal coefficients c_k with |k_j| = m_j for all j.

    Args:
        g: Graph
        rep: Base point
        d: Dehn parameter of the multicurve
        require_interior: Refuse base points on the boundary of Delta
        r: Route of d, when already computed

    Returns:
        Mapping k -> c_k over internal edges in graph order

    Raises:
        NotInterior: If require_interior and rep is not interior
        CentralHolonomy: If an internal edge has holonomy +-I
    """
    if require_interior and in_delta(g, rep.angles) is not Classification.INTERIOR:
        raise NotInterior("top isotype needs an interior base point")
    table = isotypes(g, rep, r if r is not None else route(g, d))
    return {k: table.coefficient(k) for k in extremal_keys(g, d)}


def twist_sign(ell: int, k: int) -> int:
    """Sign (-1)^{ell(k-1)} picked up by a coefficient of order k under ell twists.

    Args:
        ell: Number of fractional twists
        k: Intersection number with the pants curve

    Returns:
        +1 or -1
    """
    return -1 if (ell * (k - 1)) % 2 else 1


def twist_phase_check(g: PantsGraph, rep: RepresentationPoint, d: DehnParameter,
                      j: str, ell: int) -> float:
    """Residual of Pi_{+-k}(T twisted) = (-1)^{ell(k-1)} e^{+-i ell a_j} Pi_{+-k}(T).

    The isotypes are those of the circle action of edge j alone, with
    k = m_j and the twisted curve given by twist(d, j, ell).

    Raises:
        TwistError: If m_j = 0
        CentralHolonomy: If edge j has holonomy +-I
    """
    k = d.m_of(j)
    if k < 1:
        raise TwistError(f"twist phase check on {j} needs m>=1, got m={k}")
    grid = {j: k + 1}
    before = isotypes(g, rep, route(g, d), grid, edges=[j])
    after = isotypes(g, rep, route(g, twist(d, j, ell)), grid, edges=[j])
    sign = twist_sign(ell, k)
    angle = rep.angles[j]
    residual = 0.0
    for pm in (1, -1):
        predicted = sign * np.exp(1j * pm * ell * angle) * before.coefficient((pm * k,))
        residual = max(residual, abs(after.coefficient((pm * k,)) - predicted))
    return float(residual)


def intersection_number(g: PantsGraph, rep: RepresentationPoint, j: str,
                        r: CurveRoute, k_max: Optional[int] = None,
                        tol: float = NONVANISHING_TOL, require_interior: bool = True) -> int:
    """Largest k <= k_max whose single-circle isotype along j is non-zero.

    Args:
        g: Graph
        rep: Interior base point
        j: Internal edge whose circle action is analyzed
        r: Routed multicurve
        k_max: Search bound; crossings of j plus 2 by default
        tol: Non-vanishing threshold
        require_interior: Refuse base points on the boundary of Delta

    Returns:
        Geometric intersection number with the pants curve of j (0 if none)

    Raises:
        NotInterior: If require_interior and rep is not interior
        CentralHolonomy: If edge j has holonomy +-I
    """
    if require_interior and in_delta(g, rep.angles) is not Classification.INTERIOR:
        raise NotInterior("intersection numbers need an interior base point")
    crossings = r.crossing_count(j)
    if k_max is None:
        k_max = crossings + 2
    table = isotypes(g, rep, r, {j: max(k_max, crossings + 1, 1)}, edges=[j])
    for k in range(k_max, 0, -1):
        if max(abs(table.coefficient((k,))), abs(table.coefficient((-k,)))) > tol:
            return k
    return 0


def phi(k: int, ell: int, alpha: float) -> complex:
    """(-1)^{ell(k-1)} e^{i ell alpha} for k != 0, (2cos alpha)^ell for k = 0.

    Raises:
        InvalidDehnParameter: If k = 0 and ell < 0, or k < 0
    """
    if k < 0:
        raise InvalidDehnParameter(f"phi needs k >= 0, got {k}")
    if k == 0:
        if ell < 0:
            raise InvalidDehnParameter(f"phi_0,l needs l >= 0, got {ell}")
        return complex((2.0 * math.cos(alpha)) ** ell)
    return twist_sign(ell, k) * complex(np.exp(1j * ell * alpha))


def core_phase(k: int, ell: int, alpha: float) -> complex:
    """phi with the chi = -tr sign of core copies: (-2cos alpha)^ell when k = 0."""
    value = phi(k, ell, alpha)
    return value * (-1) ** ell if k == 0 else value


@dataclass(frozen=True)
class PhaseLawReport:
    """Factorized phase law at one base point.

    `residual` uses core_phase; `plain_residual` uses phi as written with
    (2cos a)^t for m=0 edges. They differ exactly when an odd number of
    core copies is present.
    """

    key: Key
    observed: complex
    reference: complex
    predicted: complex
    residual: float
    plain_residual: float
    core_sign: int


def phase_law_check(g: PantsGraph, rep: RepresentationPoint,
                    d: DehnParameter) -> PhaseLawReport:
    """Compare Pi_M(T_C(M,t)) with prod_j phi_{M_j,t_j}(a_j) Pi_M(T_C(M,0))."""
    key = tuple(d.m_of(e) for e in g.internal_edges())
    observed = isotypes(g, rep, route(g, d)).coefficient(key)
    reference = isotypes(g, rep, route(g, d.with_zero_twists())).coefficient(key)
    plain = complex(1.0)
    predicted = complex(1.0)
    core_sign = 1
    for e in g.edge_ids():
        mj, tj = d.m_of(e), d.t_of(e)
        plain *= phi(mj, tj, rep.angles[e])
        predicted *= core_phase(mj, tj, rep.angles[e])
        if mj == 0 and tj % 2:
            core_sign = -core_sign
    return PhaseLawReport(
        key=key,
        observed=observed,
        reference=reference,
        predicted=predicted,
        residual=float(abs(observed - predicted * reference)),
        plain_residual=float(abs(observed - plain * reference)),
        core_sign=core_sign,
    )


@dataclass(frozen=True)
class GapReport:
    max_vanishing: float
    min_nonvanishing: float
    separated: bool

    @property
    def ratio(self) -> float:
        if self.max_vanishing == 0.0:
            return math.inf
        return self.min_nonvanishing / self.max_vanishing


def spectral_gap(vanishing: Iterable[float], nonvanishing: Iterable[float],
                 vanishing_tol: float = VANISHING_TOL,
                 nonvanishing_tol: float = NONVANISHING_TOL) -> GapReport:
    """Separation between should-vanish and should-not-vanish moduli."""
    vanishing = list(vanishing)
    nonvanishing = list(nonvanishing)
    top = max(vanishing, default=0.0)
    bottom = min(nonvanishing, default=math.inf)
    return GapReport(top, bottom, top <= vanishing_tol and bottom >= nonvanishing_tol)
