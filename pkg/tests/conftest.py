import pytest

_ACCEPTANCE = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _ACCEPTANCE[report.nodeid] = (label, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, (label, ok) in _ACCEPTANCE.items():
        case = nodeid.split("[", 1)[1].rstrip("]") if "[" in nodeid else ""
        suffix = f" [{case}]" if case else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  C{label}{suffix}")
    passed = sum(ok for _, ok in _ACCEPTANCE.values())
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} acceptance checks passed")
