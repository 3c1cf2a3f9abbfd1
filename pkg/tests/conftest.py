import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
    missing = [n for n in range(1, 11) if n not in results]
    if missing:
        terminalreporter.write_line(f"not run or errored before recording: {missing}")
