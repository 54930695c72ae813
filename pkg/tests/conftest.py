import pytest

from bamsr.encoder import encode_source
from bamsr.gf import FieldSpec
from bamsr.params import derive_params

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []

GF7 = FieldSpec.prime(7)
WORKED_SOURCE = [1, 2, 3, 4]


@pytest.fixture
def worked():
    """mu=1, delta=2 code over GF(7) with points 1..4."""
    p = derive_params(1, 2, 4, GF7, [1, 2, 3, 4])
    return p, {s.node: s for s in encode_source(WORKED_SOURCE, p)}


@pytest.fixture
def record():
    def _record(name, passed, detail=""):
        ACCEPTANCE_RESULTS.append((name, passed, detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
