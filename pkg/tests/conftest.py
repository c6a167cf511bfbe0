import pytest

from conicdiv.conic import enumerate_conic_classes
from conicdiv.divisors import class_group
from conicdiv.presets import preset


class Example:
    def __init__(self, name):
        self.name = name
        self.cone = preset(name)
        self.group = class_group(self.cone)
        self._table = None

    @property
    def table(self):
        if self._table is None:
            self._table = enumerate_conic_classes(self.cone, self.group)
        return self._table


_CACHE = {}


def example(name):
    if name not in _CACHE:
        _CACHE[name] = Example(name)
    return _CACHE[name]


@pytest.fixture(scope="session")
def orthant2():
    return example("orthant:2")


@pytest.fixture(scope="session")
def fig1():
    return example("figure1")


@pytest.fixture(scope="session")
def segre22():
    return example("segre:2,2")


@pytest.fixture(scope="session")
def segre333():
    return example("segre:3,3,3")


SMALL_EXAMPLES = ["orthant:2", "figure1", "segre:2,2", "veronese:2,2", "veronese:2,3", "orthant:3"]


@pytest.fixture(scope="session", params=SMALL_EXAMPLES)
def small(request):
    return example(request.param)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    results = test_acceptance.RESULTS
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, text = results[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")
