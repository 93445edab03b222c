
from hypothesis import HealthCheck, settings
import pytest

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("repro")

# criterion number -> list of (label, passed, detail)
_ACCEPTANCE = {}

TITLES = {
    1: "Markman trichotomy on the vertical wall",
    2: "Hilbert-scheme isometry word",
    3: "closed form agrees with enumeration on the grid",
    4: "monodromy test agrees with condition (*) on the grid",
    5: "divisorial r>2 walls reduce to r' in {1,2}",
    6: "property suites",
    7: "discriminant plumbing",
}


class AcceptanceRecorder:
    def __init__(self, number):
        self.number = number

    def record(self, label, passed, detail=""):
        _ACCEPTANCE.setdefault(self.number, []).append((label, bool(passed), detail))
        return passed


@pytest.fixture
def acceptance(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is None:
        raise RuntimeError("acceptance fixture needs @pytest.mark.acceptance(n)")
    return AcceptanceRecorder(marker.args[0])


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        rows = _ACCEPTANCE.get(n)
        if not rows:
            tr.write_line(f"criterion {n}: NOT RUN  {TITLES[n]}")
            continue
        ok = all(p for _, p, _ in rows)
        detail = "; ".join(f"{lab}: {'ok' if p else 'FAIL'}{' (' + d + ')' if d else ''}"
                           for lab, p, d in rows)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {TITLES[n]}  [{detail}]")
