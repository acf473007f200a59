"""Geometric intersection numbers recovered from single-circle isotypes."""

from ..fourier import intersection_number
from .base import Check, CheckResult


class IntersectionCheck(Check):
    name = 'intersection'
    stream = 6
    needs_internal_edges = True

    def run(self) -> CheckResult:
        g = self.context.graph
        points = [self.context.base_point(n)
                  for n in range(self.context.settings['intersection_points'])]
        mismatches = []
        checked = 0
        for d, r in self.context.sweep:
            for edge in g.internal_edges():
                for n, rep in enumerate(points):
                    found = intersection_number(g, rep, edge, r,
                                                tol=self.context.tolerances['nonvanishing'])
                    checked += 1
                    if found != d.m_of(edge):
                        mismatches.append(f"{d.label(g)} on {edge} at point {n}: {found}")
        detail = f"{checked} recoveries"
        if mismatches:
            detail += "; first mismatch " + mismatches[0]
        return self.result(not mismatches, len(mismatches), detail)
