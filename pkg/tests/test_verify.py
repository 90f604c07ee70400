import pytest

from qeuler.configuration import EvalConfig
from qeuler.errors import DomainError
from qeuler.verify import GRIDS, REGISTRY, SUITE_NAMES, CheckResult, ordered_map, run_suite


def test_ordered_map_keeps_input_order():
    items = list(range(40))
    assert ordered_map(lambda x: x * x, items, workers=4) == [x * x for x in items]
    assert ordered_map(str, [], workers=4) == []


def test_every_suite_has_checks():
    for name in SUITE_NAMES:
        assert REGISTRY[name], name


@pytest.mark.parametrize("suite", SUITE_NAMES)
def test_small_suites_pass(suite):
    results = run_suite(suite, "small")
    assert len(results) == len(REGISTRY[suite])
    failures = [f"{result.name}: {result.detail}" for result in results if not result.passed]
    assert not failures
    assert all(result.cases > 0 for result in results)


def test_unknown_suite_and_grid():
    with pytest.raises(DomainError):
        run_suite("nonsense")
    with pytest.raises(DomainError):
        run_suite("qcore", "huge")


def test_check_record():
    record = CheckResult("qcore", "roots", True, 1e-16, 12).to_record()
    assert record == {
        "suite": "qcore",
        "check": "roots",
        "passed": True,
        "max_error": 1e-16,
        "cases": 12,
        "detail": "",
    }


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["euler", "lfunctions"])
def test_full_grid_suites_pass(suite):
    results = run_suite(suite, "full")
    failures = [f"{result.name}: {result.detail}" for result in results if not result.passed]
    assert not failures
    assert all(result.cases > 0 for result in results)


def test_limit_check_passes_on_the_full_degree_range():
    (run_limit,) = [fn for name, fn in REGISTRY["euler"] if name == "q -> 1 limits"]
    result = run_limit(GRIDS["full"], EvalConfig()).result("euler", "q -> 1 limits")
    assert result.passed, result.detail
    assert result.cases == 2 * 7 + 7
