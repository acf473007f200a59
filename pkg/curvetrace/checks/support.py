"""Isotype support bound and extremal non-vanishing over a Dehn sweep."""

from ..fourier import isotypes, spectral_gap, support_check
from ..surface import route
from .base import Check, CheckResult


class SupportCheck(Check):
    """Coefficients with some |k_j| > m_j vanish, and a fault is caught."""

    name = 'support'
    stream = 3

    def _negative_control(self) -> bool:
        """Route with two extra crossings checked against the original bound."""
        g = self.context.graph
        for d, _ in self.context.sweep:
            crossed = [e for e in g.internal_edges() if d.m_of(e)]
            if not crossed:
                continue
            edge = crossed[0]
            corrupted = route(g, d.with_edge(edge, d.m_of(edge) + 2, d.t_of(edge)))
            grid = {e: d.m_of(e) + 1 for e in g.internal_edges()}
            table = isotypes(g, self.context.base_point(0), corrupted, grid)
            return not support_check(table, d, self.context.tolerances['vanishing']).passed
        return True

    def run(self) -> CheckResult:
        records = self.context.isotype_sweep
        worst = max(records, key=lambda rec: rec.max_vanishing)
        tol = self.context.tolerances['vanishing']
        caught = self._negative_control()
        detail = (f"{len(self.context.sweep)} parameters x {self.context.settings['base_points']} "
                  f"points, worst {worst.param.label(self.context.graph)}; "
                  f"corrupted routing {'flagged' if caught else 'NOT flagged'}")
        return self.result(worst.max_vanishing <= tol and caught, worst.max_vanishing, detail)


class NonVanishingCheck(Check):
    """Extremal coefficients stay away from zero at interior points."""

    name = 'nonvanishing'
    stream = 4

    def run(self) -> CheckResult:
        records = self.context.isotype_sweep
        weakest = min(records, key=lambda rec: rec.min_extremal)
        gap = spectral_gap((rec.max_vanishing for rec in records),
                           (rec.min_extremal for rec in records),
                           self.context.tolerances['vanishing'],
                           self.context.tolerances['nonvanishing'])
        passed = weakest.min_extremal >= self.context.tolerances['nonvanishing']
        detail = (f"weakest {weakest.param.label(self.context.graph)} at point {weakest.point}; "
                  f"gap: max vanishing {gap.max_vanishing:.3e} vs min extremal "
                  f"{gap.min_nonvanishing:.3e}")
        return self.result(passed, weakest.min_extremal, detail)
