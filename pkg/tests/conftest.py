"""Shared fixtures and the acceptance pass/fail summary hook."""

from __future__ import annotations

import pytest

from votecontrol.election import Election, Ranking, ScoringVector

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record_acceptance(criterion: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if passed else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"[{status}] {criterion}{suffix}")


def tail_vote(m: int, second: int, last: int) -> Ranking:
    """All-zero block ascending, then the scoring tail (second-to-last, last)."""
    zeros = [c for c in range(m) if c not in (second, last)]
    return tuple(zeros) + (second, last)


def seven_candidate_bribery_example() -> tuple[Election, ScoringVector]:
    """Rule (0,...,0,-1,-3) over p,a,b,c,d,e,f (ids 0-6): three voters rank p
    second-to-last, four voters split e/f in the tail; d currently wins."""
    m = 7
    votes = [
        tail_vote(m, 0, 1),
        tail_vote(m, 0, 2),
        tail_vote(m, 0, 3),
        tail_vote(m, 5, 6),
        tail_vote(m, 5, 6),
        tail_vote(m, 6, 5),
        tail_vote(m, 6, 5),
    ]
    return Election.from_rankings(m, votes), ScoringVector((0,) * 5 + (-1, -3))


def five_candidate_bribery_example() -> tuple[Election, ScoringVector]:
    """Rule (0,...,0,-2,-3) over p,a,b,c,d (ids 0-4), eleven voters."""
    m = 5
    votes = [
        tail_vote(m, 1, 0),
        tail_vote(m, 2, 0),
        tail_vote(m, 3, 0),
        tail_vote(m, 0, 4),
        tail_vote(m, 2, 4),
        tail_vote(m, 4, 2),
        tail_vote(m, 3, 4),
        tail_vote(m, 4, 3),
        tail_vote(m, 1, 4),
        tail_vote(m, 1, 4),
        tail_vote(m, 4, 1),
    ]
    return Election.from_rankings(m, votes), ScoringVector((0, 0, 0, -2, -3))


def two_slot_scenario_election() -> tuple[Election, ScoringVector]:
    """Five candidates p,c1,c2,c3,d; rule (0,0,0,-2,-3); surpluses against p
    are (4,3,3,-15): the instance where greedy manipulation must not put the
    highest-surplus rival last."""
    m = 5
    votes = [
        tail_vote(m, 0, 4),
        tail_vote(m, 0, 4),
        tail_vote(m, 4, 0),
        tail_vote(m, 4, 1),
        tail_vote(m, 2, 4),
        tail_vote(m, 2, 4),
        tail_vote(m, 3, 4),
        tail_vote(m, 3, 4),
    ]
    return Election.from_rankings(m, votes), ScoringVector((0, 0, 0, -2, -3))


@pytest.fixture
def seven_example():
    return seven_candidate_bribery_example()


@pytest.fixture
def five_example():
    return five_candidate_bribery_example()


@pytest.fixture
def two_slot_scenario():
    return two_slot_scenario_election()
