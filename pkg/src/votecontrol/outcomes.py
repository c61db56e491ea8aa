"""Solver verdicts with checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .election import Ranking


@dataclass(frozen=True)
class SolverOutcome:
    """Feasibility verdict plus whichever certificate the problem produces:
    a deletion set (CCDV), bribed voters with replacement ballots (bribery),
    or manipulator ballots (manipulation).  Feasible outcomes re-verify
    through the election core before they are returned."""

    feasible: bool
    deleted: tuple[int, ...] = ()
    bribed: tuple[int, ...] = ()
    replacements: tuple[Ranking, ...] = ()
    manipulator_votes: tuple[Ranking, ...] = ()
    note: str = ""
