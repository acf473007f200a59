"""Trace functions of multicurves and word-level trace utilities.

Every point on a trinion boundary is reached from the trinion basepoint
along the spoke of its slot and then forward along the slot loop. With
that choice an arc leaving slot c on the side facing slot c+1 picks up the
slot loop z_c, and a self-arc picks up one loop of the slot it encircles.
A crossing of annulus j with winding w contributes z^w times the gluing
matrix, written in the eigenframes of the two slots.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import InputError, UnassignedGenerator
from .moduli import W, W_INV, RepresentationPoint, shift_twist
from .surface import (AnnulusCrossing, ArcType, CoreLoop, CurveRoute, Step,
                      TrinionArc, next_slot, other_slots)

logger = logging.getLogger(__name__)

SU2_TOL = 1e-10


def inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse of a special unitary matrix (batched or not)."""
    return np.conj(np.swapaxes(matrix, -1, -2))


def slot_holonomy(rep: RepresentationPoint, trinion: str, slot: int) -> np.ndarray:
    """Holonomy of the slot loop z_slot; z_1 z_2 z_3 = I."""
    return rep.slot_holonomy(trinion, slot)


def _loop_power(rep: RepresentationPoint, trinion: str, slot: int, power: int) -> np.ndarray:
    if power == 0:
        return np.eye(2, dtype=complex)
    loop = rep.slot_holonomy(trinion, slot)
    return loop if power > 0 else inverse(loop)


def arc_holonomy(rep: RepresentationPoint, trinion: str,
                 arc_type: Union[str, ArcType]) -> np.ndarray:
    """Holonomy of an arc traversed in its canonical direction.

    Args:
        rep: Representation point on the arc's graph
        trinion: Trinion id
        arc_type: ArcType or label (`12`, `13`, `23`, `kk/i`)

    Returns:
        2x2 special unitary matrix

    Raises:
        UnknownArcType: If the label names no arc
    """
    arc = ArcType.parse(arc_type)
    if not arc.is_self:
        a, b = arc.first, arc.second
        start = 1 if b == next_slot(a) else 0
        finish = 1 if a == next_slot(b) else 0
        return _loop_power(rep, trinion, a, start) @ _loop_power(rep, trinion, b, -finish)
    k, i = arc.first, arc.encircles
    j = next(s for s in other_slots(k) if s != i)
    start = 1 if i == next_slot(k) else 0
    finish = 1 if j == next_slot(k) else 0
    bracket = _loop_power(rep, trinion, i, 1 if i == next_slot(k) else -1)
    return (_loop_power(rep, trinion, k, start) @ bracket
            @ _loop_power(rep, trinion, k, -finish))


def _crossing_factors(rep: RepresentationPoint, step: AnnulusCrossing,
                      theta: np.ndarray) -> np.ndarray:
    """(G, 2, 2) crossing matrices for a batch of twist values."""
    edge = rep.graph.edge(step.edge)
    sign = -1.0 if edge.reversed else 1.0
    phase = np.exp(1j * sign * (step.winding * rep.angles[step.edge] + 2.0 * math.pi * theta))
    if step.forward:
        diagonal = np.stack([phase, np.conj(phase)], axis=-1)
        left = rep.frame(*edge.end0).matrix
        right = W_INV @ rep.frame(*edge.end1).inverse
    else:
        diagonal = np.stack([np.conj(phase), phase], axis=-1)
        left = rep.frame(*edge.end1).matrix @ W
        right = rep.frame(*edge.end0).inverse
    return left @ (diagonal[:, :, None] * right)


def _step_factor(rep: RepresentationPoint, step: Step, thetas: Mapping[str, np.ndarray]):
    if isinstance(step, TrinionArc):
        holonomy = arc_holonomy(rep, step.trinion, step.arc_type)
        return holonomy if step.forward else inverse(holonomy)
    return _crossing_factors(rep, step, thetas[step.edge])


@dataclass(frozen=True, eq=False)
class HolonomyWord:
    """Ordered 2x2 factors whose product is a component's holonomy."""

    factors: Tuple[np.ndarray, ...]

    def product(self) -> np.ndarray:
        result = np.eye(2, dtype=complex)
        for factor in self.factors:
            result = result @ factor
        return result

    def is_special_unitary(self, tol: float = SU2_TOL) -> bool:
        p = self.product()
        return (abs(np.linalg.det(p) - 1.0) <= tol
                and np.max(np.abs(p @ p.conj().T - np.eye(2))) <= tol)


@dataclass(frozen=True)
class TraceValue:
    """Trace function value with its per-component factors -tr(g_gamma)."""

    value: float
    factors: Tuple[float, ...]


@dataclass(frozen=True, eq=False)
class GridTrace:
    values: np.ndarray
    factors: np.ndarray


def _twist_grid(rep: RepresentationPoint, shifts: Mapping[str, np.ndarray]) -> Tuple[int, Dict]:
    sizes = {np.size(v) for v in shifts.values()}
    if len(sizes) > 1:
        raise InputError("torus grid shifts must have equal length")
    size = sizes.pop() if sizes else 1
    thetas = {}
    for edge in rep.graph.internal_edges():
        base = rep.twists[edge]
        if edge in shifts:
            thetas[edge] = shift_twist(base, np.asarray(shifts[edge], dtype=float).ravel())
        else:
            thetas[edge] = np.full(size, base)
    return size, thetas


def trace_on_torus_grid(rep: RepresentationPoint, r: CurveRoute,
                        shifts: Optional[Mapping[str, np.ndarray]] = None) -> GridTrace:
    """Evaluate a trace function at many torus-shifted copies of rep.

    Args:
        rep: Base representation point
        r: Routed multicurve on rep's graph
        shifts: Edge -> array of torus coordinates added to the twist;
            edges left out stay at the base twist

    Returns:
        GridTrace with values (G,) and per-component factors (G, C)
    """
    size, thetas = _twist_grid(rep, shifts or {})
    factors = np.ones((size, len(r.components)))
    for n, component in enumerate(r.components):
        head = component[0]
        if isinstance(head, CoreLoop):
            factors[:, n] = -2.0 * math.cos(rep.angles[head.edge])
            continue
        product = np.broadcast_to(np.eye(2, dtype=complex), (size, 2, 2))
        for step in component:
            product = np.matmul(product, _step_factor(rep, step, thetas))
        factors[:, n] = -(product[:, 0, 0] + product[:, 1, 1]).real
    return GridTrace(values=np.prod(factors, axis=1), factors=factors)


def trace_of_route(rep: RepresentationPoint, r: CurveRoute) -> TraceValue:
    """T_C(rep) = product over components of -tr(holonomy).

    The empty route evaluates to 1; a core copy of edge j to -2cos(a_j).
    """
    grid = trace_on_torus_grid(rep, r)
    return TraceValue(value=float(grid.values[0]), factors=tuple(float(f) for f in grid.factors[0]))


def holonomy_words(rep: RepresentationPoint, r: CurveRoute) -> List[HolonomyWord]:
    """Per-component factor lists at the base twist."""
    _, thetas = _twist_grid(rep, {})
    words = []
    for component in r.components:
        head = component[0]
        if isinstance(head, CoreLoop):
            trinion, slot = rep.graph.trinion_end(head.edge)
            words.append(HolonomyWord((rep.slot_holonomy(trinion, slot),)))
            continue
        factors = []
        for step in component:
            factor = _step_factor(rep, step, thetas)
            factors.append(factor[0] if factor.ndim == 3 else factor)
        words.append(HolonomyWord(tuple(factors)))
    return words


def _loop_letters(trinion: str, slot: int, power: int) -> List[str]:
    if power == 0:
        return []
    return [f"{trinion}.z{slot}" + ('' if power > 0 else '^-1')]


def _arc_letters(trinion: str, arc: ArcType) -> List[str]:
    if not arc.is_self:
        a, b = arc.first, arc.second
        return (_loop_letters(trinion, a, 1 if b == next_slot(a) else 0)
                + _loop_letters(trinion, b, -1 if a == next_slot(b) else 0))
    k, i = arc.first, arc.encircles
    j = next(s for s in other_slots(k) if s != i)
    return (_loop_letters(trinion, k, 1 if i == next_slot(k) else 0)
            + _loop_letters(trinion, i, 1 if i == next_slot(k) else -1)
            + _loop_letters(trinion, k, -1 if j == next_slot(k) else 0))


def _inverse_letters(letters: List[str]) -> List[str]:
    return [l[:-3] if l.endswith('^-1') else l + '^-1' for l in reversed(letters)]


def route_words(r: CurveRoute) -> List[str]:
    """Symbolic word per component, over slot loops `T.zc` and gluings `g[e,w]`.

    Arcs expand into slot loops as in arc_holonomy; an empty arc word
    contributes nothing. A core copy of edge j is written `core(j)`.
    """
    words = []
    for component in r.components:
        letters: List[str] = []
        for step in component:
            if isinstance(step, CoreLoop):
                letters.append(f"core({step.edge})")
            elif isinstance(step, TrinionArc):
                arc = _arc_letters(step.trinion, step.arc_type)
                letters.extend(arc if step.forward else _inverse_letters(arc))
            else:
                gluing = f"g[{step.edge},{step.winding}]"
                letters.append(gluing if step.forward else gluing + '^-1')
        words.append(' '.join(letters))
    return words


def invert_word(word: str) -> str:
    """Inverse word: reversed, with generator case swapped."""
    return word[::-1].swapcase()


def evaluate_word(assignment: Mapping[str, np.ndarray], word: str) -> np.ndarray:
    """Product of the letters of a word; upper case means inverse.

    Raises:
        UnassignedGenerator: If a letter has no matrix
    """
    result = np.eye(2, dtype=complex)
    for letter in word:
        key = letter.lower()
        if not letter.isalpha() or key not in assignment:
            raise UnassignedGenerator(f"no matrix assigned to generator {letter!r}")
        matrix = np.asarray(assignment[key], dtype=complex)
        result = result @ (matrix if letter.islower() else inverse(matrix))
    return result


def word_trace(assignment: Mapping[str, np.ndarray], word: str) -> float:
    """chi_w = -tr(rho(w)); the empty word gives -2."""
    return float(-np.trace(evaluate_word(assignment, word)).real)


def check_trace_relation(assignment: Mapping[str, np.ndarray], a: str, b: str) -> float:
    """Residual |chi_a chi_b + chi_ab + chi_{a^-1 b}| of the trace identity."""
    return abs(word_trace(assignment, a) * word_trace(assignment, b)
               + word_trace(assignment, a + b)
               + word_trace(assignment, invert_word(a) + b))


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random element of SU(2) from a uniform unit quaternion."""
    q = rng.normal(size=4)
    a, b, c, d = q / np.linalg.norm(q)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def random_word(rng: np.random.Generator, generators: Sequence[str], max_length: int) -> str:
    """Random word with uniformly chosen letters, each inverted with probability 1/2.

    Args:
        rng: Generator to draw from
        generators: Lowercase generator letters
        max_length: Longest word; the length is uniform on 0..max_length

    Returns:
        Word string, upper case marking inverses
    """
    length = int(rng.integers(0, max_length + 1))
    letters = [generators[int(i)] for i in rng.integers(0, len(generators), size=length)]
    flips = rng.integers(0, 2, size=length)
    return ''.join(l.upper() if f else l for l, f in zip(letters, flips))
