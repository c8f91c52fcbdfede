import pytest

from minnorm import kernels

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    entry = _RESULTS.setdefault(num, [title, True, []])
    if rep.when == "call" or rep.failed:
        if rep.failed:
            entry[1] = False
            entry[2].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section(f"acceptance criteria (kernel backend: {kernels.BACKEND})")
    for num in sorted(_RESULTS):
        title, ok, failed = _RESULTS[num]
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}"
        if failed:
            line += f"  [failing: {', '.join(failed)}]"
        terminalreporter.write_line(line)


@pytest.fixture(autouse=True, scope="session")
def _certify_every_solve():
    """Check the optimality certificate of every solver run in the session."""
    import minnorm.cli
    import minnorm.hard
    import minnorm.reductions
    import minnorm.wolfe
    from minnorm.rational import wolfe_violators

    original = minnorm.wolfe.solve
    entry = _RESULTS.setdefault(5, ["empty violator set on every solver run", True, []])
    stats = {"runs": 0}

    def certified(instance, *args, **kwargs):
        result = original(instance, *args, **kwargs)
        stats["runs"] += 1
        bad = wolfe_violators(result.x, instance.points)
        if bad:
            entry[1] = False
            entry[2].append(f"run {stats['runs']}")
            raise AssertionError(f"x_star violates optimality at points {sorted(bad)}")
        return result

    modules = (minnorm.wolfe, minnorm.hard, minnorm.reductions, minnorm.cli)
    for mod in modules:
        mod.solve = certified
    entry[0] = "empty violator set on every solver run (suite-wide check)"
    yield stats
    for mod in modules:
        mod.solve = original
    entry[0] += f": {stats['runs']} runs"
