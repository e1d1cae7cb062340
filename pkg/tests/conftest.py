import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    log = sys.modules.get("acceptance_log")
    if log is not None and log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in log.LINES:
            terminalreporter.write_line(line)
