import pytest
from hypothesis import settings

from noethercycles.instances import FiniteSystem, system_from_json
from noethercycles.core import Edge

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def finite(vertices, edges):
    """Build a FiniteSystem from ``[(id, src, dst), ...]``."""
    return FiniteSystem(vertices, [Edge(*e) for e in edges])


@pytest.fixture
def diamond():
    return finite("abcd", [("ab", "a", "b"), ("ac", "a", "c"), ("bd", "b", "d"), ("cd", "c", "d")])


@pytest.fixture
def fork():
    return finite("abc", [("ab", "a", "b"), ("ac", "a", "c")])


@pytest.fixture
def two_cycle():
    return finite("ab", [("ab", "a", "b"), ("ba", "b", "a")])


@pytest.fixture
def parallel():
    return system_from_json(
        {
            "vertices": ["a", "b"],
            "edges": [{"id": "e1", "src": "a", "dst": "b"}, {"id": "e2", "src": "a", "dst": "b"}],
        }
    )


# acceptance reporting -----------------------------------------------------

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    row = _criteria.setdefault(number, {"title": title, "failed": False, "ran": False})
    if call.when == "call":
        row["ran"] = True
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        row["failed"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        row = _criteria[number]
        status = "FAIL" if row["failed"] or not row["ran"] else "PASS"
        terminalreporter.write_line(f"criterion {number}: {status}  {row['title']}")
