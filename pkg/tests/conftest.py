import sys
from pathlib import Path

# lets test modules import the shared oracle helpers
sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[num])
