import math

import numpy as np
import pytest

from curvetrace.errors import (CentralHolonomy, EmptyInterior, InputError, InvalidAngle,
                               OutsideDelta)
from curvetrace.moduli import (AngleVector, Classification, TwistVector, act,
                               build_representation, check_gluing, gluing_matrix, in_delta,
                               polytope, require_seed, sample_interior, shift_twist, tilt,
                               trinion_matrices)
from curvetrace.surface import PantsGraph


@pytest.mark.parametrize("value, expected", [
    (math.pi / 2, Classification.INTERIOR),
    (2 * math.pi / 3, Classification.BOUNDARY),
    (math.pi, Classification.OUTSIDE),
])
def test_uniform_angles_on_genus2(genus2, value, expected):
    assert in_delta(genus2, AngleVector.uniform(genus2, value)) is expected


def test_triangle_inequality_violation_is_outside(genus2):
    alpha = AngleVector({'e1': 1.0, 'e2': 1.0, 'e3': 2.5})
    assert in_delta(genus2, alpha) is Classification.OUTSIDE
    with pytest.raises(OutsideDelta):
        build_representation(genus2, alpha)


@pytest.mark.parametrize("value", [-0.1, 3.5, float('nan'), float('inf')])
def test_angles_outside_range_are_rejected(value):
    with pytest.raises(InvalidAngle):
        AngleVector({'e1': value})


def test_twists_reduce_mod_one():
    theta = TwistVector({'e1': 1.25, 'e2': -0.25})
    assert theta['e1'] == pytest.approx(0.25)
    assert theta['e2'] == pytest.approx(0.75)
    assert theta['e3'] == 0.0
    assert theta.shifted({'e1': 1.0}) == theta


def test_tiny_negative_twists_wrap_to_zero():
    assert TwistVector({'e1': -1e-20})['e1'] == 0.0
    assert TwistVector({'e1': 0.0}).shifted({'e1': -1e-20})['e1'] == 0.0
    assert float(shift_twist(0.0, -1e-20)) == 0.0
    values = shift_twist(np.zeros(3), np.array([-1e-20, -0.25, 2.0]))
    assert np.all((values >= 0.0) & (values < 1.0))


def test_polytope_rows(genus2, torus):
    delta = polytope(genus2)
    assert delta.matrix.shape == (8, 3)
    assert delta.edges == ('e1', 'e2', 'e3')
    assert polytope(torus).matrix.shape == (4, 2)


def test_tilt_matches_polytope(genus2):
    assert tilt(math.pi / 2, math.pi / 2, math.pi / 2) == pytest.approx(0.0)
    rng = np.random.default_rng(3)
    delta = polytope(genus2)
    for alpha in rng.uniform(0.05, math.pi - 0.05, size=(200, 3)):
        inside = delta.classify(alpha) is not Classification.OUTSIDE
        assert (abs(tilt(*alpha)) <= 1.0 + 1e-12) == inside


def test_trinion_matrices_traces():
    a1, a2, a3 = 1.0, 1.3, 1.7
    x, y = trinion_matrices(a1, a2, a3)
    assert np.trace(x).real == pytest.approx(2 * math.cos(a1))
    assert np.trace(y).real == pytest.approx(2 * math.cos(a2))
    assert np.trace(x @ y).real == pytest.approx(2 * math.cos(a3))


def test_representation_invariants(genus2_point, torus_point, genus2_boundary):
    for rep in (genus2_point, torus_point, genus2_boundary):
        assert rep.check_invariants() == []
        assert check_gluing(rep) == []
        graph = rep.graph
        for trinion in graph.trinions():
            for slot, edge in graph.slot_edges(trinion).items():
                assert rep.recomputed_angle(trinion, slot) == pytest.approx(rep.angles[edge])
    assert genus2_point.classification is Classification.INTERIOR
    assert genus2_boundary.classification is Classification.BOUNDARY


def test_gluing_conjugates_across_reversed_edge(genus2, genus2_point):
    data = genus2.to_dict()
    data['edges'][0]['reversed'] = True
    flipped = PantsGraph.from_dict(data)
    rep = build_representation(flipped, genus2_point.angles, genus2_point.twists)
    assert check_gluing(rep) == []
    forward = gluing_matrix(genus2_point, 'e1', 0.2)
    backward = gluing_matrix(rep, 'e1', 0.8)
    assert np.allclose(forward, backward)


def test_act_shifts_twists_only(genus2, genus2_point):
    moved = act(genus2, genus2_point, {'e2': 0.5})
    assert moved.angles == genus2_point.angles
    assert moved.twists['e2'] == pytest.approx((genus2_point.twists['e2'] + 0.5) % 1.0)
    assert moved.twists['e1'] == genus2_point.twists['e1']
    assert act(genus2, genus2_point, {'e1': 1.0}).twists == genus2_point.twists


def test_act_refuses_central_and_external_edges(genus2, genus2_central, torus, torus_point):
    assert genus2_central.degenerate_edges == frozenset({'e1'})
    with pytest.raises(CentralHolonomy):
        act(genus2, genus2_central, {'e1': 0.3})
    act(genus2, genus2_central, {'e2': 0.3})
    with pytest.raises(InputError):
        act(torus, torus_point, {'b1': 0.3})


def test_sample_interior_is_seeded(genus2):
    a1, t1 = sample_interior(genus2, 0.05, 42)
    a2, t2 = sample_interior(genus2, 0.05, 42)
    assert a1 == a2 and t1 == t2
    a3, _ = sample_interior(genus2, 0.05, 43)
    assert a3 != a1
    delta = polytope(genus2)
    assert delta.distances(a1.as_array(delta.edges)).min() >= 0.05


def test_sample_interior_failures(genus2):
    with pytest.raises(InputError):
        sample_interior(genus2, 0.0, 1)
    with pytest.raises(EmptyInterior):
        sample_interior(genus2, 2.0, 1, max_draws=2000, batch_size=500)


@pytest.mark.parametrize("seed", [-1, 1.5, True, '3'])
def test_bad_seeds_are_input_errors(genus2, seed):
    with pytest.raises(InputError):
        require_seed(seed)
    with pytest.raises(InputError):
        sample_interior(genus2, 0.05, seed)


def test_numpy_seeds_are_accepted():
    assert require_seed(np.int64(5)) == 5
    assert require_seed(0) == 0


def test_to_dict_has_eight_reals_per_matrix(genus2_point):
    data = genus2_point.to_dict()
    assert set(data['angles']) == {'e1', 'e2', 'e3'}
    for matrices in data['matrices'].values():
        for entries in matrices.values():
            assert len(entries) == 2 and all(len(row) == 4 for row in entries)
