"""Shared fixtures: cached game runs and the acceptance summary printer."""
from __future__ import annotations

import pytest

from flagchess import GameResult, run_game

_GAMES: dict[tuple, GameResult] = {}


def cached_game(n: int, eps: int, mode: str = "fibration",
                validate: bool | None = None) -> GameResult:
    """Memoize full game runs; several modules assert on the same boards."""
    key = (n, eps, mode, validate)
    if key not in _GAMES:
        _GAMES[key] = run_game(n, eps, mode=mode, validate=validate)
    return _GAMES[key]


@pytest.fixture(scope="session")
def game():
    return cached_game


ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_acceptance(num: int, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append((num, f"ACCEPTANCE {num:2d}: {verdict} - {detail}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
