import re
from collections import defaultdict

import hypothesis
import pytest

from acbasis.synth import build_majority_circuit, build_parity_circuit

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

_criteria = defaultdict(list)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+(?:\[[^\]]*\])?)", report.nodeid)
    if m:
        _criteria[int(m.group(1))].append((m.group(2), report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        runs = _criteria[num]
        failed = sorted({name for name, ok in runs if not ok})
        name = runs[0][0].split("[")[0]
        status = "PASS" if not failed else "FAIL"
        detail = f"  ({len(runs)} check{'s' if len(runs) > 1 else ''})" if not failed else f"  failing: {', '.join(failed)}"
        terminalreporter.write_line(f"criterion {num} [{name}]: {status}{detail}")


@pytest.fixture(scope="session")
def parity_circuits():
    return {n: build_parity_circuit(n) for n in range(1, 15)}


@pytest.fixture(scope="session")
def majority_circuits():
    return {n: build_majority_circuit(n) for n in range(1, 15)}
