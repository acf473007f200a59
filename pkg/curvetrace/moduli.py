"""SU(2) representation points, the moment polytope and the torus action.

A representation point is fixed by an angle a_j in [0, pi] on every edge and
a twist theta_j in [0, 1) on every internal edge. Each trinion gets
explicit holonomies X (slot 1) and Y (slot 2), with (XY)^-1 on slot 3;
internal edges glue the two trinion frames through the eigenframes of the
slot holonomies, rotated by the twist.
"""

import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import (CentralHolonomy, EmptyInterior, InputError, InvalidAngle,
                     OutsideDelta)
from .surface import SLOTS, PantsGraph, other_slots

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-12
TRACE_TOL = 1e-10
BOUNDARY_TOL = 1e-12
CENTRAL_TOL = 1e-12
MAX_DRAWS = 1_000_000
BATCH_SIZE = 4096

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# Annulus flip: conjugates diag(u, 1/u) to diag(1/u, u).
W = np.array([[0, 1], [-1, 0]], dtype=complex)
W_INV = np.array([[0, -1], [1, 0]], dtype=complex)


class Classification(str, Enum):
    INTERIOR = 'interior'
    BOUNDARY = 'boundary'
    OUTSIDE = 'outside'


def is_central(angle: float) -> bool:
    """Holonomy with this angle is +-I."""
    return math.sin(angle) < CENTRAL_TOL


def shift_twist(theta, t):
    """Twist coordinate after acting by t; keeps integer t exact."""
    shifted = np.mod(theta + np.mod(t, 1.0), 1.0)
    return np.where(shifted >= 1.0, 0.0, shifted)


class AngleVector:
    """Angle a_j in [0, pi] per edge."""

    __slots__ = ('_values',)

    def __init__(self, values: Mapping[str, float]):
        checked = {}
        for edge, value in values.items():
            value = float(value)
            if not math.isfinite(value) or value < 0.0 or value > math.pi:
                raise InvalidAngle(f"angle on edge {edge} must lie in [0, pi], got {value!r}")
            checked[edge] = value
        self._values = MappingProxyType(checked)

    @classmethod
    def from_array(cls, edges: Sequence[str], values) -> 'AngleVector':
        return cls(dict(zip(edges, (float(v) for v in values))))

    @classmethod
    def uniform(cls, g: PantsGraph, value: float) -> 'AngleVector':
        return cls({e: value for e in g.edge_ids()})

    def __getitem__(self, edge: str) -> float:
        return self._values[edge]

    def __contains__(self, edge: str) -> bool:
        return edge in self._values

    def as_array(self, edges: Sequence[str]) -> np.ndarray:
        return np.array([self._values[e] for e in edges], dtype=float)

    def to_dict(self) -> Dict[str, float]:
        return dict(self._values)

    def __eq__(self, other) -> bool:
        return isinstance(other, AngleVector) and dict(self._values) == dict(other._values)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self) -> str:
        return f"AngleVector({dict(self._values)})"


class TwistVector:
    """Torus coordinate theta_j in [0, 1) per internal edge."""

    __slots__ = ('_values',)

    def __init__(self, values: Optional[Mapping[str, float]] = None):
        checked = {}
        for edge, value in (values or {}).items():
            value = float(value)
            if not math.isfinite(value):
                raise InputError(f"twist on edge {edge} is not finite")
            value %= 1.0
            # tiny negatives round up to 1.0
            checked[edge] = 0.0 if value >= 1.0 else value
        self._values = MappingProxyType(checked)

    @classmethod
    def zero(cls, g: PantsGraph) -> 'TwistVector':
        return cls({e: 0.0 for e in g.internal_edges()})

    def __getitem__(self, edge: str) -> float:
        return self._values.get(edge, 0.0)

    def shifted(self, t: Mapping[str, float]) -> 'TwistVector':
        values = dict(self._values)
        for edge, amount in t.items():
            values[edge] = float(shift_twist(values.get(edge, 0.0), float(amount)))
        return TwistVector(values)

    def to_dict(self) -> Dict[str, float]:
        return dict(self._values)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistVector) and dict(self._values) == dict(other._values)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._values.items())))

    def __repr__(self) -> str:
        return f"TwistVector({dict(self._values)})"


@dataclass(frozen=True, eq=False)
class EigenFrame:
    """Phase-normalized eigenvectors (e+, e-) of a slot holonomy.

    e+ has its largest-modulus coordinate real and positive and
    e- = (-conj(e+[1]), conj(e+[0])), so the frame matrix [e+ e-] lies in
    SU(2) and omega(e+, e-) = 1.
    """

    plus: np.ndarray
    minus: np.ndarray
    degenerate: bool = False

    @classmethod
    def of(cls, holonomy: np.ndarray, degenerate: bool = False) -> 'EigenFrame':
        if degenerate:
            return cls(np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex), True)
        # e+ is the top eigenvector of (A - A^dagger)/2i, eigenvalue sin(a) > 0
        skew = (holonomy - holonomy.conj().T) / 2j
        _, vectors = np.linalg.eigh(skew)
        plus = vectors[:, 1]
        lead = int(np.argmax(np.abs(plus)))
        plus = plus * (abs(plus[lead]) / plus[lead])
        plus = plus / np.linalg.norm(plus)
        minus = np.array([-np.conj(plus[1]), np.conj(plus[0])])
        return cls(plus, minus, False)

    @property
    def matrix(self) -> np.ndarray:
        return np.column_stack([self.plus, self.minus])

    @property
    def inverse(self) -> np.ndarray:
        return self.matrix.conj().T

    def omega(self) -> complex:
        return complex(self.plus[0] * self.minus[1] - self.plus[1] * self.minus[0])


@dataclass(frozen=True, eq=False)
class MomentPolytope:
    """The polytope Delta as a linear system A alpha <= b.

    Per trinion with slot angles (a1, a2, a3): a_i + a_j >= a_k for each k
    and a1 + a2 + a3 <= 2 pi. Columns follow the graph's edge order.
    """

    edges: Tuple[str, ...]
    matrix: np.ndarray
    bound: np.ndarray
    faces: Tuple[Tuple[str, str], ...]

    @classmethod
    def from_graph(cls, g: PantsGraph) -> 'MomentPolytope':
        edges = g.edge_ids()
        column = {e: n for n, e in enumerate(edges)}
        rows, bounds, faces = [], [], []
        for trinion in g.trinions():
            slot_edges = g.slot_edges(trinion)
            for k in SLOTS:
                i, j = other_slots(k)
                row = np.zeros(len(edges))
                row[column[slot_edges[k]]] += 1.0
                row[column[slot_edges[i]]] -= 1.0
                row[column[slot_edges[j]]] -= 1.0
                rows.append(row)
                bounds.append(0.0)
                faces.append((trinion, f"a{i}+a{j}>=a{k}"))
            row = np.zeros(len(edges))
            for slot in SLOTS:
                row[column[slot_edges[slot]]] += 1.0
            rows.append(row)
            bounds.append(2.0 * math.pi)
            faces.append((trinion, "a1+a2+a3<=2pi"))
        return cls(edges, np.array(rows), np.array(bounds), tuple(faces))

    @property
    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=1)

    def slack(self, alphas: np.ndarray) -> np.ndarray:
        """b - A alpha for one angle array (E,) or a batch (n, E)."""
        return self.bound - np.asarray(alphas) @ self.matrix.T

    def distances(self, alphas: np.ndarray) -> np.ndarray:
        """Signed Euclidean distance to every face."""
        return self.slack(alphas) / self.norms

    def classify(self, alphas: np.ndarray, tol: float = BOUNDARY_TOL):
        """Classification of one point, or an array of them for a batch."""
        slack = self.slack(alphas)
        outside = np.any(slack < -tol, axis=-1)
        boundary = np.any(slack <= tol, axis=-1)
        if slack.ndim == 1:
            if outside:
                return Classification.OUTSIDE
            return Classification.BOUNDARY if boundary else Classification.INTERIOR
        labels = np.full(slack.shape[0], Classification.INTERIOR.value, dtype=object)
        labels[boundary] = Classification.BOUNDARY.value
        labels[outside] = Classification.OUTSIDE.value
        return labels


@lru_cache(maxsize=32)
def polytope(g: PantsGraph) -> MomentPolytope:
    """Moment polytope of a graph, cached per graph.

    Args:
        g: Valid graph

    Returns:
        MomentPolytope with four faces per trinion
    """
    return MomentPolytope.from_graph(g)


def in_delta(g: PantsGraph, alpha: AngleVector, tol: float = BOUNDARY_TOL) -> Classification:
    """Classify angles against the moment polytope.

    Args:
        g: Valid graph
        alpha: Angles on every edge
        tol: Slack within which a face counts as tight

    Returns:
        Classification.INTERIOR iff every inequality is strict
    """
    delta = polytope(g)
    return delta.classify(alpha.as_array(delta.edges), tol)


def tilt(a1: float, a2: float, a3: float) -> float:
    """Unclipped n_z of the trinion model; |n_z| <= 1 exactly on Delta."""
    denominator = math.sin(a1) * math.sin(a2)
    if abs(denominator) < CENTRAL_TOL:
        return 1.0
    return (math.cos(a1) * math.cos(a2) - math.cos(a3)) / denominator


def trinion_matrices(a1: float, a2: float, a3: float) -> Tuple[np.ndarray, np.ndarray]:
    """Holonomies X, Y with tr X = 2cos a1, tr Y = 2cos a2, tr XY = 2cos a3."""
    nz = min(1.0, max(-1.0, tilt(a1, a2, a3)))
    nx = math.sqrt(max(0.0, 1.0 - nz * nz))
    x = np.diag([np.exp(1j * a1), np.exp(-1j * a1)])
    y = math.cos(a2) * IDENTITY + 1j * math.sin(a2) * (nx * SIGMA_X + nz * SIGMA_Z)
    return x, y


@dataclass(frozen=True, eq=False)
class RepresentationPoint:
    """Explicit SU(2) holonomy data at one point of the moduli space."""

    graph: PantsGraph
    angles: AngleVector
    twists: TwistVector
    holonomies: Mapping[str, Tuple[np.ndarray, np.ndarray]]
    frames: Mapping[Tuple[str, int], EigenFrame]
    degenerate_edges: FrozenSet[str]
    classification: Classification

    def slot_holonomy(self, trinion: str, slot: int) -> np.ndarray:
        x, y = self.holonomies[trinion]
        if slot == 1:
            return x
        if slot == 2:
            return y
        return (x @ y).conj().T

    def frame(self, trinion: str, slot: int) -> EigenFrame:
        return self.frames[(trinion, slot)]

    def recomputed_angle(self, trinion: str, slot: int) -> float:
        trace = np.trace(self.slot_holonomy(trinion, slot)).real / 2.0
        return math.acos(min(1.0, max(-1.0, trace)))

    def check_invariants(self, unitary_tol: float = UNITARY_TOL,
                         trace_tol: float = TRACE_TOL) -> List[str]:
        """Violated holonomy and frame invariants, empty when all hold."""
        violations = []
        for trinion, (x, y) in self.holonomies.items():
            for name, mat in (('X', x), ('Y', y)):
                if abs(np.linalg.det(mat) - 1.0) > unitary_tol:
                    violations.append(f"{trinion}: det {name} != 1")
                if np.max(np.abs(mat @ mat.conj().T - IDENTITY)) > unitary_tol:
                    violations.append(f"{trinion}: {name} not unitary")
            slot_edges = self.graph.slot_edges(trinion)
            for slot in SLOTS:
                expected = 2.0 * math.cos(self.angles[slot_edges[slot]])
                trace = np.trace(self.slot_holonomy(trinion, slot))
                if abs(trace - expected) > trace_tol:
                    violations.append(f"{trinion} slot {slot}: trace {trace.real:.12g} != {expected:.12g}")
        for (trinion, slot), frame in self.frames.items():
            gram = frame.matrix.conj().T @ frame.matrix
            if np.max(np.abs(gram - IDENTITY)) > unitary_tol:
                violations.append(f"{trinion} slot {slot}: frame not orthonormal")
            if abs(frame.omega() - 1.0) > trace_tol:
                violations.append(f"{trinion} slot {slot}: omega(e+, e-) != 1")
        return violations

    def to_dict(self) -> Dict:
        """Angles, twists and the eight real entries of each X and Y."""
        matrices = {}
        for trinion, (x, y) in self.holonomies.items():
            matrices[trinion] = {
                name: [[float(v) for z in row for v in (z.real, z.imag)] for row in mat]
                for name, mat in (('X', x), ('Y', y))
            }
        return {
            'angles': self.angles.to_dict(),
            'twists': self.twists.to_dict(),
            'matrices': matrices,
        }


def build_representation(g: PantsGraph, alpha: AngleVector,
                         theta: Optional[TwistVector] = None) -> RepresentationPoint:
    """Construct explicit holonomies for angles in Delta.

    Per trinion with slot angles (a1, a2, a3): X = diag(e^{ia1}, e^{-ia1})
    and Y = cos a2 I + i sin a2 (n_x sigma_x + n_z sigma_z). Edges whose
    angle is 0 or pi are flagged as degenerate (holonomy +-I).

    Args:
        g: Valid graph
        alpha: Angles on every edge
        theta: Twists on internal edges (zero when omitted)

    Returns:
        RepresentationPoint

    Raises:
        OutsideDelta: If alpha lies outside the moment polytope
    """
    classification = in_delta(g, alpha)
    if classification is Classification.OUTSIDE:
        raise OutsideDelta(f"angles {alpha.to_dict()} lie outside the moment polytope")
    theta = theta or TwistVector.zero(g)
    holonomies, frames = {}, {}
    for trinion in g.trinions():
        slot_edges = g.slot_edges(trinion)
        a1, a2, a3 = (alpha[slot_edges[s]] for s in SLOTS)
        holonomies[trinion] = trinion_matrices(a1, a2, a3)

    point = RepresentationPoint(
        graph=g,
        angles=alpha,
        twists=theta,
        holonomies=MappingProxyType(holonomies),
        frames=MappingProxyType({}),
        degenerate_edges=frozenset(e for e in g.internal_edges() if is_central(alpha[e])),
        classification=classification,
    )
    for trinion in g.trinions():
        slot_edges = g.slot_edges(trinion)
        for slot in SLOTS:
            frames[(trinion, slot)] = EigenFrame.of(
                point.slot_holonomy(trinion, slot), is_central(alpha[slot_edges[slot]]))
    if point.degenerate_edges:
        logger.warning("central holonomy on %s: circle action undefined there",
                       ', '.join(sorted(point.degenerate_edges)))
    return replace(point, frames=MappingProxyType(frames))


def gluing_matrix(rep: RepresentationPoint, edge_id: str,
                  theta: Optional[float] = None) -> np.ndarray:
    """Transport across an internal edge: F_P R(s theta) W^-1 F_Q^-1.

    It conjugates the end0 slot holonomy to the inverse of the end1 one.
    Reversed edges measure the twist in the opposite sense (s = -1).
    """
    edge = rep.graph.edge(edge_id)
    theta = rep.twists[edge_id] if theta is None else theta
    sign = -1.0 if edge.reversed else 1.0
    phase = np.exp(2j * math.pi * sign * theta)
    rotation = np.diag([phase, np.conj(phase)])
    return rep.frame(*edge.end0).matrix @ rotation @ W_INV @ rep.frame(*edge.end1).inverse


def check_gluing(rep: RepresentationPoint, tol: float = TRACE_TOL) -> List[str]:
    """Edges whose gluing fails G^-1 z_P G = z_Q^-1."""
    violations = []
    for edge_id in rep.graph.internal_edges():
        edge = rep.graph.edge(edge_id)
        g = gluing_matrix(rep, edge_id)
        z_p = rep.slot_holonomy(*edge.end0)
        z_q = rep.slot_holonomy(*edge.end1)
        residual = np.max(np.abs(g.conj().T @ z_p @ g - z_q.conj().T))
        if residual > tol:
            violations.append(f"edge {edge_id}: gluing residual {residual:.3g}")
    return violations


def act(g: PantsGraph, rep: RepresentationPoint, t: Mapping[str, float]) -> RepresentationPoint:
    """Torus action: theta_j <- theta_j + t_j mod 1; angles unchanged.

    Raises:
        CentralHolonomy: If an acted-on edge has holonomy +-I
        InputError: If t names an edge that is not internal
    """
    unknown = [e for e in t if e not in g.internal_edges()]
    if unknown:
        raise InputError(f"torus action only on internal edges, got {', '.join(unknown)}")
    central = [e for e in t if e in rep.degenerate_edges]
    if central:
        raise CentralHolonomy(central)
    return replace(rep, twists=rep.twists.shifted(t))


def require_seed(seed) -> int:
    """Seeds are non-negative integers.

    Raises:
        InputError: For anything else
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InputError(f"seed must be a non-negative integer, got {seed!r}")
    return int(seed)


def sample_interior(g: PantsGraph, margin: float, seed: int,
                    max_draws: int = MAX_DRAWS,
                    batch_size: int = BATCH_SIZE) -> Tuple[AngleVector, TwistVector]:
    """Seeded rejection sample of Delta shrunk by `margin`.

    Angles are drawn uniformly from [0, pi]^E in batches from a PCG64
    generator; the first draw at distance >= margin from every face wins.
    Twists are then uniform in [0, 1).

    Args:
        g: Valid graph
        margin: Minimum Euclidean distance to every face, > 0
        seed: Generator seed
        max_draws: Draw budget before giving up
        batch_size: Draws per vectorized batch

    Returns:
        (AngleVector, TwistVector)

    Raises:
        InputError: If margin is not positive or seed is negative
        EmptyInterior: If no draw qualifies within the budget
    """
    if not margin > 0:
        raise InputError(f"margin must be positive, got {margin}")
    seed = require_seed(seed)
    delta = polytope(g)
    rng = np.random.default_rng(seed)
    draws = 0
    while draws < max_draws:
        n = min(batch_size, max_draws - draws)
        alphas = rng.uniform(0.0, math.pi, size=(n, len(delta.edges)))
        draws += n
        accepted = np.flatnonzero(delta.distances(alphas).min(axis=1) >= margin)
        if accepted.size:
            alpha = AngleVector.from_array(delta.edges, alphas[accepted[0]])
            internal = g.internal_edges()
            theta = TwistVector(dict(zip(internal, rng.random(len(internal)))))
            logger.debug("sampled interior point after %d draws (seed %d)", draws, seed)
            return alpha, theta
    raise EmptyInterior(f"no point at margin {margin} after {draws} draws")


def sample_point(g: PantsGraph, margin: float, seed: int,
                 max_draws: int = MAX_DRAWS, batch_size: int = BATCH_SIZE) -> RepresentationPoint:
    """Interior representation point from a seed."""
    alpha, theta = sample_interior(g, margin, seed, max_draws, batch_size)
    return build_representation(g, alpha, theta)
