"""Shared fixtures: reference-basis runs are expensive (~3 s) and cached per session."""

import pytest

from hhbar.config import RunConfig
from hhbar import spectrum


REFERENCE = RunConfig()  # 120 pairs, r_min 3e-5, r_max 20


@pytest.fixture(scope="session")
def reference_config():
    return REFERENCE


_cache = {}


def reference_run(flavor="bo", l=0, **kw):
    key = (flavor, l, tuple(sorted(kw.items())))
    if key not in _cache:
        _cache[key] = spectrum.run(REFERENCE.with_(flavor=flavor, l=l, **kw), with_residual=True)
    return _cache[key]


@pytest.fixture(scope="session")
def bo0():
    return reference_run("bo", 0)


@pytest.fixture(scope="session")
def sc0():
    return reference_run("scaled", 0)


@pytest.fixture(scope="session")
def bo1():
    return reference_run("bo", 1)


@pytest.fixture(scope="session")
def sc1():
    return reference_run("scaled", 1)


# acceptance results: criterion -> list of (part, ok, detail); printed after the run
ACCEPTANCE = {}


def record(criterion: int, part: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))
    return bool(ok)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        failed = [f"{p} ({d})" for p, ok, d in parts if not ok]
        note = "; failing: " + "; ".join(failed) if failed else f"{len(parts)} checks"
        terminalreporter.write_line(f"criterion {crit}: {status}  {note}")
