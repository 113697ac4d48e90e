import json
from pathlib import Path

import pytest

_REF = json.loads((Path(__file__).parent / "reference" / "values.json").read_text())
# keys holding real vectors rather than one complex number
_REAL = {"mp_c0p5_x0p25"}


def ref_value(key):
    v = _REF[key]
    if key in _REAL or key.startswith("position"):
        return v
    if len(v) == 2 and all(isinstance(c, float) for c in v):
        return complex(*v)
    return v


@pytest.fixture
def ref():
    return ref_value


def pytest_terminal_summary(terminalreporter):
    import _acceptance_log

    if not _acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance_log.LINES):
        terminalreporter.write_line(_acceptance_log.LINES[n])
