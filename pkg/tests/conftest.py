import pytest

from ffdm import _backend, _kernels_py, analysis, codebook, matcher


def _available():
    names = ["python"]
    try:
        _backend.load("compiled")
    except ImportError:
        pass
    else:
        names.append("compiled")
    return names


BACKENDS = _available()


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per kernel backend."""
    mod = _backend.load(request.param)
    for target in (codebook, matcher, analysis):
        monkeypatch.setattr(target, "kernels", mod)
    return mod


@pytest.fixture
def pure():
    return _kernels_py


ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (passed, detail)."""
    name = request.node.name

    def record(passed, detail=""):
        ACCEPTANCE.append((name, bool(passed), detail))
        print(f"ACCEPTANCE {name}: {'PASS' if passed else 'FAIL'} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
