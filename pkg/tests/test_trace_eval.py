import math

import numpy as np
import pytest

from curvetrace.errors import InputError, UnassignedGenerator, UnknownArcType
from curvetrace.formats import load_dehn
from curvetrace.moduli import act, gluing_matrix
from curvetrace.surface import DehnParameter, enumerate_dehn, route
from curvetrace.trace_eval import (arc_holonomy, check_trace_relation, evaluate_word,
                                   holonomy_words, inverse, invert_word, random_su2, random_word,
                                   route_words, slot_holonomy, trace_of_route,
                                   trace_on_torus_grid, word_trace)


def test_empty_curve_has_trace_one(genus2, genus2_point):
    value = trace_of_route(genus2_point, route(genus2, DehnParameter()))
    assert value.value == 1.0
    assert value.factors == ()


def test_core_copies(torus, torus_point):
    a = torus_point.angles['e1']
    b = torus_point.angles['b1']
    value = trace_of_route(torus_point, route(torus, DehnParameter(t={'e1': 2, 'b1': 1})))
    assert value.factors == pytest.approx((-2 * math.cos(a), -2 * math.cos(a), -2 * math.cos(b)))
    assert value.value == pytest.approx(4 * math.cos(a) ** 2 * -2 * math.cos(b))


def test_arc_holonomies_in_slot_loops(genus2_point):
    z1, z2, z3 = (slot_holonomy(genus2_point, 'T1', s) for s in (1, 2, 3))
    assert np.allclose(z1 @ z2 @ z3, np.eye(2))
    assert np.allclose(arc_holonomy(genus2_point, 'T1', '12'), z1)
    assert np.allclose(arc_holonomy(genus2_point, 'T1', '13'), inverse(z3))
    assert np.allclose(arc_holonomy(genus2_point, 'T1', '23'), z2)
    assert np.allclose(arc_holonomy(genus2_point, 'T1', '11/2'), z1 @ z2)
    assert np.allclose(arc_holonomy(genus2_point, 'T1', '11/3'), inverse(z3) @ inverse(z1))
    with pytest.raises(UnknownArcType):
        arc_holonomy(genus2_point, 'T1', '31')


@pytest.mark.parametrize("t, power", [(0, -1), (1, 0), (2, 1), (-1, -2)])
def test_one_holed_torus_curve_against_explicit_word(torus, torus_point, t, power):
    x = slot_holonomy(torus_point, 'T1', 1)
    word = np.linalg.matrix_power(x if power >= 0 else inverse(x), abs(power))
    expected = -np.trace(word @ gluing_matrix(torus_point, 'e1')).real
    value = trace_of_route(torus_point, route(torus, DehnParameter({'e1': 1}, {'e1': t})))
    assert value.value == pytest.approx(expected, abs=1e-12)


def test_traces_are_bounded(genus2, genus2_point):
    for d in enumerate_dehn(genus2, 2, 1):
        r = route(genus2, d)
        value = trace_of_route(genus2_point, r)
        assert abs(value.value) <= 2.0 ** len(r) + 1e-9
        for word, factor in zip(holonomy_words(genus2_point, r), value.factors):
            assert word.is_special_unitary()
            assert -np.trace(word.product()).real == pytest.approx(factor, abs=1e-10)


def test_grid_matches_pointwise_evaluation(genus2, genus2_point):
    r = route(genus2, load_dehn('m110'))
    shifts = np.array([0.0, 0.25, 0.5, 1.0])
    grid = trace_on_torus_grid(genus2_point, r, {'e1': shifts})
    for s, value in zip(shifts, grid.values):
        moved = act(genus2, genus2_point, {'e1': float(s)})
        assert value == pytest.approx(trace_of_route(moved, r).value, abs=1e-12)
    assert grid.values[3] == pytest.approx(grid.values[0], abs=1e-14)


def test_grid_shifts_must_have_equal_length(genus2, genus2_point):
    r = route(genus2, load_dehn('m110'))
    with pytest.raises(InputError):
        trace_on_torus_grid(genus2_point, r, {'e1': np.zeros(3), 'e2': np.zeros(4)})


def test_component_factor_ignores_start_and_direction(genus2, genus2_point):
    for name in ('m200', 'm110'):
        r = route(genus2, load_dehn(name))
        expected = trace_of_route(genus2_point, r).factors
        for word, factor in zip(holonomy_words(genus2_point, r), expected):
            steps = list(word.factors)
            for shift in range(len(steps)):
                rotated = steps[shift:] + steps[:shift]
                product = np.linalg.multi_dot([np.eye(2)] + rotated + [np.eye(2)])
                assert -np.trace(product).real == pytest.approx(factor, abs=1e-12)
            backwards = [inverse(f) for f in reversed(steps)]
            product = np.linalg.multi_dot([np.eye(2)] + backwards + [np.eye(2)])
            assert -np.trace(product).real == pytest.approx(factor, abs=1e-12)


def test_word_trace_is_a_class_function():
    rng = np.random.default_rng(23)
    assignment = {letter: random_su2(rng) for letter in 'abc'}
    for _ in range(50):
        word = random_word(rng, 'abc', 8)
        value = word_trace(assignment, word)
        assert word_trace(assignment, invert_word(word)) == pytest.approx(value, abs=1e-12)
        for shift in range(len(word)):
            rotated = word[shift:] + word[:shift]
            assert word_trace(assignment, rotated) == pytest.approx(value, abs=1e-12)


def test_route_words(torus):
    assert route_words(route(torus, DehnParameter({'e1': 1}))) == ['g[e1,0] T1.z1^-1']
    assert route_words(route(torus, DehnParameter(t={'e1': 1}))) == ['core(e1)']


def test_word_evaluation():
    rng = np.random.default_rng(5)
    a, b = random_su2(rng), random_su2(rng)
    assignment = {'a': a, 'b': b}
    assert np.allclose(evaluate_word(assignment, 'aA'), np.eye(2))
    assert np.allclose(evaluate_word(assignment, 'abB'), a)
    assert word_trace(assignment, '') == -2.0
    with pytest.raises(UnassignedGenerator):
        evaluate_word(assignment, 'ac')


def test_random_su2_is_special_unitary():
    rng = np.random.default_rng(9)
    for _ in range(20):
        g = random_su2(rng)
        assert abs(np.linalg.det(g) - 1) < 1e-12
        assert np.allclose(g @ g.conj().T, np.eye(2))


def test_trace_relation_holds_on_random_words():
    rng = np.random.default_rng(17)
    for _ in range(200):
        assignment = {letter: random_su2(rng) for letter in 'abc'}
        a = random_word(rng, 'abc', 6)
        b = random_word(rng, 'abc', 6)
        assert check_trace_relation(assignment, a, b) <= 1e-10
