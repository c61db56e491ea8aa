"""Solvers for strategic actions in positional scoring elections: coalitional
manipulation, constructive control by deleting voters, and bribery, together
with the polynomial/NP-complete classifier for rule families and generators
for matching-based hardness instances."""

from .election import (
    Election,
    Ranking,
    ScoreTable,
    ScoringVector,
    SurplusTable,
    add_votes,
    delete_votes,
    election_from_json,
    election_to_json,
    score_all,
    surplus,
    winners,
)
from .manipulation import (
    CoefficientProfile,
    DPQuery,
    ManipulationSolution,
    dp_feasible,
    reconstruct,
    solve_from_surpluses,
    solve_manipulation,
)
from .outcomes import SolverOutcome
from .rules import (
    BordaSpec,
    EquivalenceWitness,
    ExplicitTable,
    FamilySpec,
    RuleClass,
    classify,
    dual_vector,
    dualize,
    equivalent,
    is_pure,
    rule_from_json,
    rule_to_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]
