"""Shared store for the one-line acceptance verdicts."""
LINES: list[str] = []


def record(name: str, ok: bool, detail: str) -> str:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    LINES.append(line)
    print(line)
    return line
