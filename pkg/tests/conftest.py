import sys

import pytest

from zariski.fields import FieldSpec
from zariski.valuations import parse_place, zr_space


@pytest.fixture(params=["qz", "fp2", "qx"])
def spec(request):
    return {"qz": FieldSpec.qz(), "fp2": FieldSpec.fp(2), "qx": FieldSpec.qx()}[request.param]


def places(spec, *names):
    return [parse_place(n, spec) for n in names]


def finite(spec, *names, generic=False):
    return zr_space(spec).finite(places(spec, *names), generic=generic)


def cofinite(spec, *names, generic=False):
    return zr_space(spec).cofinite(places(spec, *names), generic=generic)



def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
