import pytest

from curvetrace.checks import SuiteContext, TraceRelationCheck
from curvetrace.checks.independence import independence_range
from curvetrace.config import Config
from curvetrace.errors import (InputError, InvalidDehnParameter, InvalidGraph,
                              MissingInputFile)
from curvetrace.surface import PantsGraph
from curvetrace.suite import Scenario, Suite

CHECKS = ['polytope', 'trace_relation', 'support', 'nonvanishing', 'twist_phase',
          'intersection', 'independence', 'torus']


def quick_config(**suite):
    config = Config.load()
    config['suite'].update(suite)
    return config


def test_quick_suite_on_one_holed_torus(torus):
    report = Suite(quick_config(), quick=True).run(torus, seed=1)
    assert [r.name for r in report.results] == CHECKS
    failed = [(r.name, r.detail) for r in report.results if not r.passed]
    assert failed == []
    assert report.passed
    assert len(report.rows()) == len(CHECKS)


def test_quick_suite_on_four_holed_sphere(sphere4):
    config = quick_config(checks=['polytope', 'support', 'nonvanishing', 'intersection', 'torus'])
    report = Suite(config, quick=True).run(sphere4, seed=2)
    assert report.passed, report.rows()


def test_suite_is_deterministic(torus):
    config = quick_config(checks=['polytope', 'trace_relation', 'support'])
    first = Suite(config, quick=True).run(torus, seed=5)
    second = Suite(config, quick=True).run(torus, seed=5)
    assert first.rows() == second.rows()


def test_unknown_check_is_rejected(torus):
    with pytest.raises(InputError):
        Suite(quick_config(checks=['polytope', 'nope']), quick=True).run(torus, seed=1)


def test_invalid_graph_runs_nothing():
    g = PantsGraph.from_dict({'vertices': [{'id': 'T1', 'kind': 'trinion'}], 'edges': []})
    with pytest.raises(InvalidGraph):
        Suite(quick_config(), quick=True).run(g, seed=1)


PANTS = {
    'vertices': [{'id': 'T1', 'kind': 'trinion'}, {'id': 'B1', 'kind': 'boundary'},
                 {'id': 'B2', 'kind': 'boundary'}, {'id': 'B3', 'kind': 'boundary'}],
    'edges': [{'id': f'b{n}', 'end0': ['T1', n], 'end1': [f'B{n}', 1]} for n in (1, 2, 3)],
}


def test_checks_needing_internal_edges_are_skipped():
    pants = PantsGraph.from_dict(PANTS)
    config = quick_config(checks=['polytope', 'twist_phase', 'intersection', 'torus'])
    report = Suite(config, quick=True).run(pants, seed=1)
    assert [r.name for r in report.results] == ['polytope']
    assert report.skipped == ('twist_phase', 'intersection', 'torus')
    assert report.passed


def test_rows_do_not_depend_on_thread_count(torus, monkeypatch):
    config = quick_config(checks=['support', 'nonvanishing', 'intersection'])
    monkeypatch.setenv('CURVETRACE_THREADS', '1')
    single = Suite(config, quick=True).run(torus, seed=4)
    monkeypatch.setenv('CURVETRACE_THREADS', '4')
    pooled = Suite(config, quick=True)
    assert pooled.threads == 4
    assert pooled.run(torus, seed=4).rows() == single.rows()


def test_scenario_sweeps_only_given_parameters(tmp_path):
    curve = tmp_path / 'curve.json'
    curve.write_text('{"e1": [2, 1]}')
    scenario = Scenario(graph_path='one_holed_torus', seed=3, params=(str(curve),),
                        tolerances={'vanishing': 1e-7}, grid=5, quick=True)
    graph, params = scenario.load()
    assert [d.label(graph) for d in params] == ['m=(2) t=(1)']
    assert scenario.merged_config(Config.load())['tolerances']['vanishing'] == 1e-7

    config = quick_config(checks=['support', 'intersection'])
    report = scenario.run(config)
    assert report.passed, report.rows()
    assert report.results[0].detail.startswith('1 parameters x 2 points')
    assert Config.load()['tolerances']['vanishing'] == 1e-8


def test_scenario_rejects_bad_inputs(tmp_path):
    with pytest.raises(InputError):
        Scenario(graph_path='genus2', seed=-1)
    with pytest.raises(InputError):
        Scenario(graph_path='genus2', seed=1, grid=0)
    with pytest.raises(MissingInputFile):
        Scenario(graph_path=str(tmp_path / 'nope.json'), seed=1).load()

    odd = tmp_path / 'odd.json'
    odd.write_text('{"e1": [1, 0]}')
    with pytest.raises(InvalidDehnParameter):
        Scenario(graph_path='genus2', seed=1, params=(str(odd),)).load()
    with pytest.raises(InputError, match='unknown tolerance'):
        Scenario(graph_path='genus2', seed=1, tolerances={'nope': 1.0}).merged_config(Config.load())


def test_relation_check_reports_worst_pair(torus):
    config = Config.load()
    context = SuiteContext(torus, 3, Config.suite_settings(config, quick=True),
                           config['tolerances'], config['sampling'])
    result = TraceRelationCheck(context).run()
    assert result.passed
    assert result.metric <= 1e-10
    assert result.detail.startswith('100 word pairs')


def test_independence_range(torus, genus2):
    assert independence_range(torus) == (2, 2)
    assert independence_range(genus2) == (1, 1)


@pytest.mark.slow
def test_full_suite_on_genus2(genus2):
    report = Suite(Config.load()).run(genus2, seed=1)
    assert report.passed, report.rows()


@pytest.mark.slow
def test_quick_suite_on_genus2(genus2):
    report = Suite(quick_config(), quick=True).run(genus2, seed=3)
    assert report.passed, report.rows()
