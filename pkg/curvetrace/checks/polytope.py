"""Representations exist exactly over the moment polytope."""

import math

import numpy as np

from ..errors import OutsideDelta
from ..moduli import AngleVector, Classification, build_representation, polytope, tilt
from ..surface import SLOTS
from .base import Check, CheckResult


class PolytopeCheck(Check):
    """build_representation succeeds iff in_delta is not outside."""

    name = 'polytope'
    stream = 1

    def run(self) -> CheckResult:
        g = self.context.graph
        delta = polytope(g)
        count = self.context.settings['polytope_samples']
        alphas = self.context.rng(self.stream).uniform(0.0, math.pi, size=(count, len(delta.edges)))
        labels = delta.classify(alphas, self.context.tolerances['delta_boundary'])

        disagreements = 0
        broken = 0
        for alpha_row, label in zip(alphas, labels):
            alpha = AngleVector.from_array(delta.edges, alpha_row)
            outside = label == Classification.OUTSIDE.value
            try:
                rep = build_representation(g, alpha)
                built = True
            except OutsideDelta:
                built = False
            # the tilt of every trinion lies in [-1, 1] exactly on Delta
            tilted_out = any(
                abs(tilt(*(alpha[g.slot_edges(t)[s]] for s in SLOTS))) > 1.0
                for t in g.trinions())
            if built == outside or tilted_out != outside:
                disagreements += 1
            elif built and rep.check_invariants(self.context.tolerances['unitary'],
                                                self.context.tolerances['trace']):
                broken += 1

        inside = int(np.count_nonzero(labels != Classification.OUTSIDE.value))
        detail = (f"{count} angle vectors, {inside} in Delta, "
                  f"{disagreements} disagreements, {broken} with broken invariants")
        return self.result(disagreements == 0 and broken == 0, disagreements, detail)
