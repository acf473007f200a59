"""Full column rank of multicurve evaluation matrices."""

from ..independence import append_column, build_matrix, rank_report
from ..surface import enumerate_dehn
from .base import Check, CheckResult


def independence_range(graph):
    """(m_max, t_max) of the witness: (2, 2) on one trinion, else (1, 1)."""
    return (2, 2) if len(graph.trinions()) == 1 else (1, 1)


class IndependenceCheck(Check):
    name = 'independence'
    stream = 7

    def run(self) -> CheckResult:
        g = self.context.graph
        m_max, t_max = independence_range(g)
        params = enumerate_dehn(g, m_max, t_max)
        rel_tol = self.context.tolerances['rank_rel_tol']
        oversampling = self.context.sampling['oversampling']

        verdicts = []
        worst_ratio = 1.0
        control_flagged = True
        for n in range(self.context.settings['independence_seeds']):
            matrix = build_matrix(g, params, oversampling * len(params),
                                  self.context.seed + n, self.context.sampling['margin'],
                                  threads=self.context.threads)
            report = rank_report(matrix, rel_tol)
            verdicts.append(report.verdict)
            worst_ratio = min(worst_ratio, report.condition_ratio)
            if len(params) > 1:
                combination = matrix.entries[:, 0] + 2.0 * matrix.entries[:, 1]
            else:
                combination = 3.0 * matrix.entries[:, 0]
            control = rank_report(append_column(matrix, combination, 'control'), rel_tol)
            control_flagged = control_flagged and not control.independent

        stable = all(v == 'independent' for v in verdicts)
        detail = (f"{len(params)} columns (m<={m_max}, |t|<={t_max}), "
                  f"verdicts {'/'.join(verdicts)}; dependent control "
                  f"{'flagged' if control_flagged else 'NOT flagged'}")
        return self.result(stable and control_flagged, worst_ratio, detail)
