"""Collects one line per acceptance criterion for the terminal summary."""

LINES = []


def record(number: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    LINES.append(line)
    print(line)
