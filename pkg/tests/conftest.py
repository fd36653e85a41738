import sys
from pathlib import Path

import pytest

HELPERS = Path(__file__).parent / "helpers"
sys.path.insert(0, str(HELPERS))

_CRITERION_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance-criterion test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.get_closest_marker("acceptance"):
        label = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _CRITERION_RESULTS.append((label, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERION_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for label, passed in _CRITERION_RESULTS:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"  [{status}] {label}")

ECHO_WORKER = HELPERS / "echo_worker.py"

FIG1_SENTENCE = (
    "Now, however, he is to go before the courts once more "
    "because the public prosecutor is appealing."
)

FIG1_AMR = """\
(c / contrast-01
    :ARG2 (g / go-02
        :ARG0 (h / he)
        :ARG4 (c2 / court)
        :mod (a / again
            :mod (o / once))
        :time (n / now)
        :ARG1-of (c3 / cause-01
            :ARG0 (a2 / appeal-02
                :ARG0 (p / person
                   :ARG0-of (p2 / prosecute-01)
                   :ARG1-of (p3 / public-02))))))"""


@pytest.fixture
def fig1_sentence():
    return FIG1_SENTENCE


@pytest.fixture
def fig1_amr():
    return FIG1_AMR


def echo_backend_spec(tmp_path=None, env=None, **overrides):
    """BackendSpec for the scripted echo worker."""
    from translationese_lab.pipeline import BackendSpec

    params = dict(
        id=env.get("ECHO_BACKEND", "echo") if env else "echo",
        transport="subprocess",
        command=(sys.executable, str(ECHO_WORKER)),
        timeout=10.0,
        batch_size=4,
        env=env or {},
    )
    params.update(overrides)
    return BackendSpec(**params)


@pytest.fixture
def echo_spec():
    return echo_backend_spec
