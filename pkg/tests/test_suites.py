import json

import pytest

from hyperortho import CaseTag, is_admissible
from hyperortho.suites import (PARAMETER_GRID, SUITES, CheckRow, SuiteConfig, grid_systems,
                               random_systems, run_suite)


def test_grid_covers_every_case():
    for case in CaseTag:
        samples = PARAMETER_GRID[case]
        assert len(samples) >= 3
        assert all(is_admissible(case, a, b) for a, b in samples)
    assert len(grid_systems()) == sum(map(len, PARAMETER_GRID.values()))


def test_random_systems_are_reproducible():
    a, b = random_systems(7), random_systems(7)
    assert [s.to_descriptor() for s in a] == [s.to_descriptor() for s in b]
    assert len(a) == 2 * len(CaseTag)
    assert all(is_admissible(s.case, s.alpha, s.beta) for s in a)


@pytest.mark.parametrize("name", SUITES)
def test_suite_passes_on_grid(name):
    rep = run_suite(name)
    bad = [r for r in rep.rows if r.status == "fail"]
    assert rep.passed, bad[:5]
    assert rep.counts()["pass"] > 0


@pytest.mark.parametrize("name", ["ode", "ladder", "norms", "recurrence", "orthogonality"])
def test_suite_passes_on_seeded_systems(name):
    rep = run_suite(name, systems=[], config=SuiteConfig(seed=2, l_max=5))
    assert rep.passed


def test_report_json_shape():
    rep = run_suite("rodrigues", config=SuiteConfig(l_max=3))
    d = json.loads(rep.to_json())
    assert set(d) == {"suite", "passed", "counts", "config", "results"}
    assert d["config"]["l_max"] == 3
    row = d["results"][0]
    assert {"system", "check", "l", "m", "residual", "status", "note"} <= set(row)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("banana")


def test_threads_env(monkeypatch):
    monkeypatch.setenv("HYPERORTHO_THREADS", "1")
    assert SuiteConfig().worker_count() == 1
    rep = run_suite("ode", config=SuiteConfig(l_max=2))
    order = [r.system for r in rep.rows]
    assert order[0] == grid_systems()[0].to_descriptor()
