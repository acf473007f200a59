"""Pants decompositions, Dehn parameters and multicurve routing.

A surface is described by a trivalent graph: trinion vertices carry three
numbered boundary slots, boundary vertices stand for the boundary circles of
the surface, and every edge is an annulus glued between two slots. A Dehn
parameter (m, t) puts m_j evenly spaced points on the pants curve of each
edge and twists the strands crossing the annulus by t_j positions.

Within a trinion the points on slot c are indexed 0..m_c-1 in the loop
direction, starting next to the spoke that joins slot c to the trinion's
basepoint. The half of slot c read first faces slot c-1, the other half
faces slot c+1 (slots taken cyclically). Each half lists its arc endpoints
from the spoke outward, innermost arc first.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

from .errors import (GraphFormatError, InvalidDehnParameter, InvalidGraph,
                     TwistError, UnknownArcType)

logger = logging.getLogger(__name__)

TRINION = 'trinion'
BOUNDARY = 'boundary'
VERTEX_KINDS = (TRINION, BOUNDARY)
SLOTS = (1, 2, 3)


def next_slot(slot: int) -> int:
    """Slot after this one in the cyclic order 1 -> 2 -> 3 -> 1.

    Args:
        slot: Trinion slot, 1 to 3

    Returns:
        The following slot
    """
    return slot % 3 + 1


def prev_slot(slot: int) -> int:
    return (slot - 2) % 3 + 1


def other_slots(slot: int) -> Tuple[int, int]:
    """The two remaining slots, lower-numbered first."""
    return tuple(s for s in SLOTS if s != slot)


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str


@dataclass(frozen=True)
class Edge:
    id: str
    end0: Tuple[str, int]
    end1: Tuple[str, int]
    reversed: bool = False

    def ends(self) -> Tuple[Tuple[str, int], Tuple[str, int]]:
        return (self.end0, self.end1)


@dataclass(frozen=True)
class PantsGraph:
    """Decorated trivalent graph encoding a pants decomposition.

    Edge order is significant: it fixes the coordinate order of Dehn
    parameters, torus points and every CSV column.
    """

    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]

    @classmethod
    def from_dict(cls, data: Dict) -> 'PantsGraph':
        """Build a graph from its JSON form.

        Args:
            data: Dictionary with `vertices` and `edges` arrays

        Returns:
            PantsGraph (structure only; call validate_graph for invariants)

        Raises:
            GraphFormatError: If a field is missing or has the wrong type
        """
        if not isinstance(data, dict):
            raise GraphFormatError("graph must be a JSON object")
        try:
            raw_vertices = data['vertices']
            raw_edges = data['edges']
        except KeyError as e:
            raise GraphFormatError(f"graph is missing the {e.args[0]!r} array")
        if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
            raise GraphFormatError("`vertices` and `edges` must be arrays")

        vertices = []
        for raw in raw_vertices:
            if not isinstance(raw, dict) or 'id' not in raw or 'kind' not in raw:
                raise GraphFormatError(f"vertex needs `id` and `kind`: {raw!r}")
            vertices.append(Vertex(id=str(raw['id']), kind=str(raw['kind']).lower()))

        edges = []
        for raw in raw_edges:
            if not isinstance(raw, dict):
                raise GraphFormatError(f"edge must be an object: {raw!r}")
            try:
                edge_id = str(raw['id'])
                end0 = cls._parse_end(raw['end0'])
                end1 = cls._parse_end(raw['end1'])
            except KeyError as e:
                raise GraphFormatError(f"edge is missing {e.args[0]!r}: {raw!r}")
            flag = raw.get('reversed', False)
            if not isinstance(flag, bool):
                raise GraphFormatError(f"edge {edge_id}: `reversed` must be true or false")
            edges.append(Edge(id=edge_id, end0=end0, end1=end1, reversed=flag))

        return cls(vertices=tuple(vertices), edges=tuple(edges))

    @staticmethod
    def _parse_end(raw) -> Tuple[str, int]:
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise GraphFormatError(f"edge end must be [vertex, slot], got {raw!r}")
        vertex, slot = raw
        if isinstance(slot, bool) or not isinstance(slot, int):
            raise GraphFormatError(f"slot must be an integer, got {slot!r}")
        return (str(vertex), slot)

    def to_dict(self) -> Dict:
        return {
            'vertices': [{'id': v.id, 'kind': v.kind} for v in self.vertices],
            'edges': [
                {'id': e.id, 'end0': list(e.end0), 'end1': list(e.end1),
                 'reversed': e.reversed}
                for e in self.edges
            ],
        }

    @cached_property
    def _vertex_map(self) -> Dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> Dict[Tuple[str, int], Tuple[str, int]]:
        """(vertex, slot) -> (edge id, which end)."""
        table = {}
        for edge in self.edges:
            for which, end in enumerate(edge.ends()):
                table.setdefault(end, (edge.id, which))
        return table

    def vertex(self, vertex_id: str) -> Vertex:
        return self._vertex_map[vertex_id]

    def edge(self, edge_id: str) -> Edge:
        return self._edge_map[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edge_map

    def edge_ids(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def trinions(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices if v.kind == TRINION)

    def is_internal(self, edge_id: str) -> bool:
        edge = self.edge(edge_id)
        return all(self._vertex_map.get(v) is not None
                   and self._vertex_map[v].kind == TRINION
                   for v, _ in edge.ends())

    @cached_property
    def _internal(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges if self.is_internal(e.id))

    def internal_edges(self) -> Tuple[str, ...]:
        return self._internal

    def external_edges(self) -> Tuple[str, ...]:
        return tuple(e.id for e in self.edges if e.id not in self._internal)

    def slot_edges(self, trinion: str) -> Dict[int, str]:
        """Edge attached at each slot of a trinion."""
        return {slot: self._incidence[(trinion, slot)][0] for slot in SLOTS}

    def end_at(self, vertex: str, slot: int) -> Tuple[str, int]:
        """Edge id and end number (0 or 1) glued at (vertex, slot)."""
        return self._incidence[(vertex, slot)]

    def trinion_end(self, edge_id: str) -> Tuple[str, int]:
        """First end of an edge that sits on a trinion."""
        for end in self.edge(edge_id).ends():
            if self.vertex(end[0]).kind == TRINION:
                return end
        raise InvalidGraph([f"edge {edge_id} touches no trinion"])

    def euler_characteristic(self) -> int:
        return -len(self.trinions())


def validate_graph(g: PantsGraph) -> List[str]:
    """Check every PantsGraph invariant.

    Args:
        g: Graph to check

    Returns:
        List of violations, empty when the graph is valid
    """
    violations = []

    seen = set()
    for v in g.vertices:
        if v.id in seen:
            violations.append(f"duplicate vertex id {v.id}")
        seen.add(v.id)
        if v.kind not in VERTEX_KINDS:
            violations.append(f"unknown vertex kind {v.kind!r} for {v.id}")

    seen = set()
    for e in g.edges:
        if e.id in seen:
            violations.append(f"duplicate edge id {e.id}")
        seen.add(e.id)

    if not any(v.kind == TRINION for v in g.vertices):
        violations.append("no trinion: Euler characteristic must be negative")

    kinds = {v.id: v.kind for v in g.vertices}
    used: Dict[Tuple[str, int], List[str]] = {}
    for e in g.edges:
        end_kinds = []
        for vertex, slot in e.ends():
            kind = kinds.get(vertex)
            end_kinds.append(kind)
            if kind is None:
                violations.append(f"edge {e.id} references unknown vertex {vertex}")
                continue
            if kind == TRINION and slot not in SLOTS:
                violations.append(f"edge {e.id}: slot {slot} out of range on trinion {vertex}")
            if kind == BOUNDARY and slot != 1:
                violations.append(f"edge {e.id}: boundary vertex {vertex} has only slot 1")
            used.setdefault((vertex, slot), []).append(e.id)
        if e.end0 == e.end1:
            violations.append(f"edge {e.id} glues slot {e.end0[1]} of {e.end0[0]} to itself")
        if end_kinds == [BOUNDARY, BOUNDARY]:
            violations.append(f"edge {e.id} joins two boundary vertices")

    for (vertex, slot), edge_ids in used.items():
        if len(edge_ids) > 1 and kinds.get(vertex) in VERTEX_KINDS:
            violations.append(
                f"slot used twice: {vertex} slot {slot} ({', '.join(edge_ids)})")

    for v in g.vertices:
        if v.kind == TRINION:
            for slot in SLOTS:
                if (v.id, slot) not in used:
                    violations.append(f"unfilled slot: {v.id} slot {slot}")
        elif v.kind == BOUNDARY:
            count = sum(len(ids) for (vertex, _), ids in used.items() if vertex == v.id)
            if count != 1:
                violations.append(f"boundary vertex {v.id} has {count} incidences, expected 1")

    return violations


def require_valid_graph(g: PantsGraph) -> None:
    violations = validate_graph(g)
    if violations:
        raise InvalidGraph(violations)


class DehnParameter:
    """Edge-indexed (m, t) pair naming a multicurve.

    Edges not mentioned carry (0, 0). Instances are immutable and compare
    equal whenever they agree on every edge.
    """

    __slots__ = ('_m', '_t', '_key')

    def __init__(self, m: Optional[Mapping[str, int]] = None,
                 t: Optional[Mapping[str, int]] = None):
        m = dict(m or {})
        t = dict(t or {})
        pairs = {}
        for edge in sorted(set(m) | set(t)):
            mj, tj = int(m.get(edge, 0)), int(t.get(edge, 0))
            if mj or tj:
                pairs[edge] = (mj, tj)
        object.__setattr__(self, '_m', MappingProxyType({e: p[0] for e, p in pairs.items()}))
        object.__setattr__(self, '_t', MappingProxyType({e: p[1] for e, p in pairs.items()}))
        object.__setattr__(self, '_key', tuple((e, p[0], p[1]) for e, p in pairs.items()))

    def __setattr__(self, name, value):
        raise AttributeError("DehnParameter is immutable")

    @classmethod
    def from_pairs(cls, pairs: Mapping[str, Tuple[int, int]]) -> 'DehnParameter':
        return cls({e: p[0] for e, p in pairs.items()}, {e: p[1] for e, p in pairs.items()})

    @property
    def m(self) -> Mapping[str, int]:
        return self._m

    @property
    def t(self) -> Mapping[str, int]:
        return self._t

    def m_of(self, edge: str) -> int:
        return self._m.get(edge, 0)

    def t_of(self, edge: str) -> int:
        return self._t.get(edge, 0)

    def edges(self) -> Tuple[str, ...]:
        return tuple(e for e, _, _ in self._key)

    def is_empty(self) -> bool:
        return not self._key

    def with_edge(self, edge: str, m: int, t: int) -> 'DehnParameter':
        pairs = {e: (mj, tj) for e, mj, tj in self._key}
        pairs[edge] = (m, t)
        return DehnParameter.from_pairs(pairs)

    def with_zero_twists(self) -> 'DehnParameter':
        return DehnParameter(dict(self._m))

    def sort_key(self, g: PantsGraph) -> Tuple:
        """Lexicographic order on m, then t, over the graph's edge order."""
        edges = g.internal_edges() + g.external_edges()
        return (tuple(self.m_of(e) for e in edges), tuple(self.t_of(e) for e in edges))

    def label(self, g: PantsGraph) -> str:
        edges = g.internal_edges()
        m = ','.join(str(self.m_of(e)) for e in edges)
        t = ','.join(str(self.t_of(e)) for e in edges)
        extra = ''.join(f" {e}^{self.t_of(e)}" for e in g.external_edges() if self.t_of(e))
        return f"m=({m}) t=({t}){extra}"

    def to_dict(self) -> Dict[str, List[int]]:
        return {e: [mj, tj] for e, mj, tj in self._key}

    def __eq__(self, other) -> bool:
        if not isinstance(other, DehnParameter):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"DehnParameter({self.to_dict()})"


def validate_dehn(g: PantsGraph, d: DehnParameter) -> List[str]:
    """Check the admissibility rules of a Dehn parameter.

    Args:
        g: Valid graph
        d: Dehn parameter to check

    Returns:
        List of violations, empty when admissible
    """
    violations = []
    for edge in d.edges():
        if not g.has_edge(edge):
            violations.append(f"unknown edge {edge}")
    for edge in g.edge_ids():
        if d.m_of(edge) < 0:
            violations.append(f"negative m on edge {edge}")
        if d.m_of(edge) == 0 and d.t_of(edge) < 0:
            violations.append(f"m=0 requires t>=0 on edge {edge}")
    for edge in g.external_edges():
        if d.m_of(edge) != 0:
            violations.append(f"external edge {edge} has m={d.m_of(edge)}, must be 0")
    for trinion in g.trinions():
        total = sum(d.m_of(e) for e in g.slot_edges(trinion).values())
        if total % 2:
            violations.append(f"odd sum at trinion {trinion} (m sum {total})")
    return violations


def require_admissible(g: PantsGraph, d: DehnParameter) -> None:
    violations = validate_dehn(g, d)
    if violations:
        raise InvalidDehnParameter(violations)


@dataclass(frozen=True)
class ArcType:
    """Isotopy type of an arc inside a trinion.

    Arcs between distinct slots run from the lower slot `first` to the
    higher slot `second`. A self-arc on slot k has first == second == k and
    runs from its end on the side facing the encircled slot to its end on
    the other side.
    """

    first: int
    second: int
    encircles: Optional[int] = None

    @property
    def is_self(self) -> bool:
        return self.first == self.second

    @property
    def label(self) -> str:
        if self.is_self:
            return f"{self.first}{self.second}/{self.encircles}"
        return f"{self.first}{self.second}"

    @classmethod
    def between(cls, a: int, b: int) -> 'ArcType':
        return cls(min(a, b), max(a, b))

    @classmethod
    def parse(cls, value: Union[str, 'ArcType']) -> 'ArcType':
        """Parse `12`, `13`, `23` or `kk/i` and check the slots."""
        if isinstance(value, ArcType):
            arc = value
        else:
            text = str(value).strip()
            try:
                if '/' in text:
                    pair, circled = text.split('/')
                    arc = cls(int(pair[0]), int(pair[1]), int(circled))
                elif len(text) == 2:
                    arc = cls(int(text[0]), int(text[1]))
                else:
                    raise ValueError
            except (ValueError, IndexError):
                raise UnknownArcType(f"unknown arc type {value!r}")
        slots_ok = arc.first in SLOTS and arc.second in SLOTS
        if arc.is_self:
            ok = slots_ok and arc.encircles in SLOTS and arc.encircles != arc.first
        else:
            ok = slots_ok and arc.first < arc.second and arc.encircles is None
        if not ok:
            raise UnknownArcType(f"unknown arc type {value!r}")
        return arc

    def __str__(self) -> str:
        return self.label


class ArcEnd(NamedTuple):
    arc: ArcType
    parallel: int
    start: bool


@dataclass(frozen=True)
class TrinionArcPattern:
    """Arc counts inside one trinion for boundary point counts (m1, m2, m3)."""

    m: Tuple[int, int, int]
    x12: int
    x13: int
    x23: int
    self_slot: Optional[int] = None
    self_count: int = 0
    encircles: Optional[int] = None

    @classmethod
    def for_counts(cls, m1: int, m2: int, m3: int) -> 'TrinionArcPattern':
        """Crossing-free arc system realizing the given point counts.

        Raises:
            InvalidDehnParameter: If the counts have odd sum
        """
        m = (m1, m2, m3)
        if sum(m) % 2:
            raise InvalidDehnParameter(f"odd sum {sum(m)} of trinion point counts {m}")
        for k in SLOTS:
            i, j = other_slots(k)
            if m[k - 1] > m[i - 1] + m[j - 1]:
                counts = {tuple(sorted((i, k))): m[i - 1], tuple(sorted((j, k))): m[j - 1]}
                return cls(
                    m=m,
                    x12=counts.get((1, 2), 0),
                    x13=counts.get((1, 3), 0),
                    x23=counts.get((2, 3), 0),
                    self_slot=k,
                    self_count=(m[k - 1] - m[i - 1] - m[j - 1]) // 2,
                    encircles=i,
                )
        return cls(
            m=m,
            x12=(m1 + m2 - m3) // 2,
            x13=(m1 + m3 - m2) // 2,
            x23=(m2 + m3 - m1) // 2,
        )

    def count(self, a: int, b: int) -> int:
        if a == b:
            return self.self_count if a == self.self_slot else 0
        return {(1, 2): self.x12, (1, 3): self.x13, (2, 3): self.x23}[(min(a, b), max(a, b))]

    def self_arc(self) -> Optional[ArcType]:
        if not self.self_count:
            return None
        return ArcType(self.self_slot, self.self_slot, self.encircles)

    def arc_types(self) -> List[Tuple[ArcType, int]]:
        arcs = [(ArcType(a, b), self.count(a, b)) for a, b in ((1, 2), (1, 3), (2, 3))]
        if self.self_count:
            arcs.append((self.self_arc(), self.self_count))
        return [(arc, n) for arc, n in arcs if n]

    def _side(self, slot: int, facing: int) -> List[ArcEnd]:
        """Arc ends on the half of `slot` facing `facing`, spoke outward."""
        direct = [ArcEnd(ArcType.between(slot, facing), p, slot < facing)
                  for p in range(self.count(slot, facing))]
        if slot != self.self_slot:
            return direct
        loop = self.self_arc()
        if facing == self.encircles:
            return direct + [ArcEnd(loop, p, True) for p in range(self.self_count)]
        return [ArcEnd(loop, p, False) for p in range(self.self_count)] + direct

    def layout(self, slot: int) -> Tuple[ArcEnd, ...]:
        """Arc end at each point index of a slot."""
        size = self.m[slot - 1]
        points: List[Optional[ArcEnd]] = [None] * size
        for index, end in enumerate(self._side(slot, prev_slot(slot))):
            points[index] = end
        for index, end in enumerate(self._side(slot, next_slot(slot))):
            points[size - 1 - index] = end
        return tuple(points)


@dataclass(frozen=True)
class TrinionArc:
    trinion: str
    arc_type: ArcType
    parallel: int
    forward: bool


@dataclass(frozen=True)
class AnnulusCrossing:
    edge: str
    inlet: int
    outlet: int
    winding: int
    forward: bool


@dataclass(frozen=True)
class CoreLoop:
    edge: str


Step = Union[TrinionArc, AnnulusCrossing, CoreLoop]


@dataclass(frozen=True)
class CurveRoute:
    """Closed strand decomposition of a multicurve.

    A strand component alternates annulus crossings and trinion arcs,
    starting with a crossing. A core component is a single CoreLoop.
    """

    components: Tuple[Tuple[Step, ...], ...]

    def __len__(self) -> int:
        return len(self.components)

    def crossings(self, edge: Optional[str] = None) -> List[AnnulusCrossing]:
        return [step for comp in self.components for step in comp
                if isinstance(step, AnnulusCrossing) and (edge is None or step.edge == edge)]

    def crossing_count(self, edge: str) -> int:
        return len(self.crossings(edge))

    def winding_sum(self, edge: str) -> int:
        return sum(step.winding for step in self.crossings(edge))

    def cores(self, edge: Optional[str] = None) -> int:
        return sum(1 for comp in self.components
                   if isinstance(comp[0], CoreLoop) and (edge is None or comp[0].edge == edge))

    def crossed_edges(self) -> Tuple[str, ...]:
        return tuple(sorted({step.edge for step in self.crossings()}))


def _flip(edge: Edge, end: int, index: int, m: int) -> int:
    """Convert between an end's local point index and the annulus index."""
    if (end == 0) == edge.reversed:
        return m - 1 - index
    return index


class _Router:
    """Follows strands of one multicurve until they close up."""

    def __init__(self, g: PantsGraph, d: DehnParameter):
        self.g = g
        self.d = d
        self.ends: Dict[Tuple[str, int, int], ArcEnd] = {}
        self.arc_points: Dict[Tuple[str, ArcType, int, bool], Tuple[str, int, int]] = {}
        for trinion in g.trinions():
            slot_edges = g.slot_edges(trinion)
            pattern = TrinionArcPattern.for_counts(*(d.m_of(slot_edges[c]) for c in SLOTS))
            for slot in SLOTS:
                for index, end in enumerate(pattern.layout(slot)):
                    point = (trinion, slot, index)
                    self.ends[point] = end
                    self.arc_points[(trinion, end.arc, end.parallel, end.start)] = point

    def cross(self, point: Tuple[str, int, int]) -> Tuple[AnnulusCrossing, Tuple[str, int, int]]:
        vertex, slot, local = point
        edge_id, end = self.g.end_at(vertex, slot)
        edge = self.g.edge(edge_id)
        m, t = self.d.m_of(edge_id), self.d.t_of(edge_id)
        if end == 0:
            inlet = _flip(edge, 0, local, m)
            outlet = (inlet + t) % m
            arrival = (*edge.end1, _flip(edge, 1, outlet, m))
        else:
            outlet = _flip(edge, 1, local, m)
            inlet = (outlet - t) % m
            arrival = (*edge.end0, _flip(edge, 0, inlet, m))
        step = AnnulusCrossing(edge_id, inlet, outlet, (inlet + t) // m, end == 0)
        return step, arrival

    def follow_arc(self, point: Tuple[str, int, int]) -> Tuple[TrinionArc, Tuple[str, int, int]]:
        trinion = point[0]
        end = self.ends[point]
        other = self.arc_points[(trinion, end.arc, end.parallel, not end.start)]
        return TrinionArc(trinion, end.arc, end.parallel, end.start), other

    def components(self) -> List[Tuple[Step, ...]]:
        visited = set()
        found = []
        for edge_id in self.g.internal_edges():
            m = self.d.m_of(edge_id)
            edge = self.g.edge(edge_id)
            for inlet in range(m):
                start = (*edge.end0, _flip(edge, 0, inlet, m))
                if start in visited:
                    continue
                steps = []
                point = start
                while True:
                    visited.add(point)
                    crossing, point = self.cross(point)
                    visited.add(point)
                    arc, point = self.follow_arc(point)
                    steps.extend((crossing, arc))
                    if point == start:
                        break
                found.append(tuple(steps))
        return found


def route(g: PantsGraph, d: DehnParameter) -> CurveRoute:
    """Route the strands of the multicurve C(m, t) and split it into components.

    Args:
        g: Valid graph
        d: Admissible Dehn parameter

    Returns:
        CurveRoute; strand components in order of their first crossing
        (edge order, then annulus index), followed by core copies of
        m=0 edges in edge order

    Raises:
        InvalidDehnParameter: If d is not admissible on g
    """
    require_admissible(g, d)
    components = _Router(g, d).components()
    for edge_id in g.edge_ids():
        if d.m_of(edge_id) == 0:
            components.extend([(CoreLoop(edge_id),)] * d.t_of(edge_id))
    logger.debug("routed %s into %d component(s)", d.label(g), len(components))
    return CurveRoute(tuple(components))


def twist(d: DehnParameter, j: str, ell: int) -> DehnParameter:
    """Fractional Dehn twist of order ell/m_j along edge j: t_j <- t_j + ell.

    Raises:
        TwistError: If m_j = 0
    """
    if d.m_of(j) < 1:
        raise TwistError(f"fractional twist along {j} needs m>=1, got m={d.m_of(j)}")
    return d.with_edge(j, d.m_of(j), d.t_of(j) + ell)


def enumerate_dehn(g: PantsGraph, m_max: int, t_max: int) -> List[DehnParameter]:
    """All admissible parameters with m_j <= m_max and |t_j| <= t_max.

    External edges are held at (0, 0). Results are sorted lexicographically
    by the m tuple, then the t tuple, over the internal edge order.
    """
    if m_max < 0 or t_max < 0:
        raise InvalidDehnParameter("m_max and t_max must be non-negative")
    internal = g.internal_edges()
    slot_edges = {trinion: list(g.slot_edges(trinion).values()) for trinion in g.trinions()}
    found = []
    for ms in itertools.product(range(m_max + 1), repeat=len(internal)):
        m = dict(zip(internal, ms))
        if any(sum(m.get(e, 0) for e in edges) % 2 for edges in slot_edges.values()):
            continue
        ranges = [range(0, t_max + 1) if mj == 0 else range(-t_max, t_max + 1) for mj in ms]
        for ts in itertools.product(*ranges):
            found.append(DehnParameter(m, dict(zip(internal, ts))))
    logger.debug("enumerated %d Dehn parameters (m<=%d, |t|<=%d)", len(found), m_max, t_max)
    return sorted(found, key=lambda d: d.sort_key(g))


def relabel(g: PantsGraph, d: DehnParameter, vertex_map: Mapping[str, str],
            edge_map: Mapping[str, str]) -> Tuple[PantsGraph, DehnParameter]:
    """Rename vertex and edge ids consistently; unmapped ids are kept."""
    vertices = tuple(Vertex(vertex_map.get(v.id, v.id), v.kind) for v in g.vertices)
    edges = tuple(
        Edge(
            edge_map.get(e.id, e.id),
            (vertex_map.get(e.end0[0], e.end0[0]), e.end0[1]),
            (vertex_map.get(e.end1[0], e.end1[0]), e.end1[1]),
            e.reversed,
        )
        for e in g.edges
    )
    pairs = {edge_map.get(e, e): (d.m_of(e), d.t_of(e)) for e in d.edges()}
    return PantsGraph(vertices, edges), DehnParameter.from_pairs(pairs)
