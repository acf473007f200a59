"""Word-level trace identity on random SU(2) assignments."""

from ..trace_eval import check_trace_relation, random_su2, random_word
from .base import Check, CheckResult

LETTERS = 'abcdefghijklmnopqrstuvwxyz'


class TraceRelationCheck(Check):
    name = 'trace_relation'
    stream = 2

    def run(self) -> CheckResult:
        settings = self.context.settings
        rng = self.context.rng(self.stream)
        generators = LETTERS[:settings['word_generators']]
        worst = 0.0
        worst_pair = ('', '')
        for _ in range(settings['relation_pairs']):
            assignment = {letter: random_su2(rng) for letter in generators}
            a = random_word(rng, generators, settings['word_length'])
            b = random_word(rng, generators, settings['word_length'])
            residual = check_trace_relation(assignment, a, b)
            if residual > worst:
                worst, worst_pair = residual, (a, b)
        passed = worst <= self.context.tolerances['relation']
        detail = (f"{settings['relation_pairs']} word pairs, worst at "
                  f"a={worst_pair[0] or '1'} b={worst_pair[1] or '1'}")
        return self.result(passed, worst, detail)
