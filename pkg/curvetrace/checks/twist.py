"""Fractional Dehn twist phase law and its factorized form."""

from ..fourier import phase_law_check, twist_phase_check
from .base import Check, CheckResult


class TwistPhaseCheck(Check):
    name = 'twist_phase'
    stream = 5
    needs_internal_edges = True

    def run(self) -> CheckResult:
        g = self.context.graph
        settings = self.context.settings
        rep = self.context.base_point(0)
        ells = range(-settings['twist_l_max'], settings['twist_l_max'] + 1)
        worst = 0.0
        cases = 0
        for d, _ in self.context.sweep:
            for edge in g.internal_edges():
                if not 1 <= d.m_of(edge) <= settings['twist_k_max']:
                    continue
                for ell in ells:
                    worst = max(worst, twist_phase_check(g, rep, d, edge, ell))
                    cases += 1

        law_worst = 0.0
        sign_flips = 0
        for d, _ in self.context.sweep:
            report = phase_law_check(g, rep, d)
            law_worst = max(law_worst, report.residual)
            if report.core_sign < 0 and report.plain_residual > self.context.tolerances['vanishing']:
                sign_flips += 1

        tol = self.context.tolerances['vanishing']
        detail = (f"{cases} twist cases; factorized law residual {law_worst:.3e}; "
                  f"{sign_flips} parameters need (-2cos a)^t on cores")
        return self.result(worst <= tol and law_worst <= tol, worst, detail)
