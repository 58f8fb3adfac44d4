import pytest

from cubictrails import generators as gen

NAMED_SMALL = {
    "theta": gen.theta,
    "dumbbell": gen.dumbbell,
    "k4": gen.k4,
    "k33": gen.k33,
    "cube": gen.cube,
    "petersen": gen.petersen,
    "prism3": lambda: gen.prism(3),
    "bridged6": gen.bridged6,
}


@pytest.fixture(params=sorted(NAMED_SMALL))
def named_graph(request):
    return request.param, NAMED_SMALL[request.param]()


# -- acceptance summary ---------------------------------------------------------------

_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for func_name, title in CRITERIA:
        verdict = _ACCEPTANCE.get(func_name, "NOT RUN")
        terminalreporter.write_line(f"{verdict:7} {title}")
    terminalreporter.write_line(f"falsification events during the run: {len(_FALSIFICATIONS)}")


# -- falsification bookkeeping ------------------------------------------------------
# Every Falsification constructed during the run is recorded, except the ones a
# test raises on purpose (their claim starts with "test:").

from cubictrails import errors as _errors

_FALSIFICATIONS: list = []
_original_init = _errors.Falsification.__init__


def _recording_init(self, claim, message, witness=None):
    _original_init(self, claim, message, witness)
    if not str(claim).startswith("test:"):
        _FALSIFICATIONS.append(self)


_errors.Falsification.__init__ = _recording_init


def recorded_falsifications() -> list:
    return list(_FALSIFICATIONS)
