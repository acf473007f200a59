"""Torus action contracts: periodicity, angle invariance, disjointness."""

import numpy as np

from ..moduli import act
from ..surface import SLOTS
from ..trace_eval import trace_of_route, trace_on_torus_grid
from .base import Check, CheckResult

GRID = np.linspace(0.0, 1.0, 17)


class TorusCheck(Check):
    name = 'torus'
    stream = 8
    needs_internal_edges = True

    def run(self) -> CheckResult:
        g = self.context.graph
        tol = self.context.tolerances['trace']
        rep = self.context.base_point(0)
        rng = self.context.rng(self.stream)
        failures = []

        shifted = act(g, rep, {e: float(v) for e, v in
                               zip(g.internal_edges(), rng.random(len(g.internal_edges())))})
        if shifted.angles != rep.angles:
            failures.append("angles changed under the action")
        for trinion in g.trinions():
            slot_edges = g.slot_edges(trinion)
            for slot in SLOTS:
                drift = abs(shifted.recomputed_angle(trinion, slot) - rep.angles[slot_edges[slot]])
                if drift > tol:
                    failures.append(f"{trinion} slot {slot}: angle drift {drift:.3e}")

        drift = 0.0
        for d, r in self.context.sweep:
            base = trace_of_route(rep, r).value
            for edge in g.internal_edges():
                if trace_of_route(act(g, rep, {edge: 1.0}), r).value != base:
                    failures.append(f"{d.label(g)}: not 1-periodic along {edge}")
                if d.m_of(edge) == 0:
                    values = trace_on_torus_grid(rep, r, {edge: GRID}).values
                    drift = max(drift, float(np.max(np.abs(values - base))))
        if drift > tol:
            failures.append(f"disjoint curves drift by {drift:.3e}")

        detail = f"{len(self.context.sweep)} parameters" + (
            "; " + failures[0] if failures else "")
        return self.result(not failures, drift, detail)
