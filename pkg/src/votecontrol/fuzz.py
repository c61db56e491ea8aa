"""Seeded random-instance generation and solver-vs-oracle agreement streams.

Instances are drawn from the rule families the direct solvers handle, solved
both ways, and compared verdict-for-verdict.  A disagreement stops the stream,
greedily minimizes the instance by dropping votes, and surfaces the repro; for
a fixed seed the stream is byte-identical across runs (records carry no
timing).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .bribery import solve_bribery_front_back, solve_bribery_last_two
from .ccdv import CcdvInstance, solve_ccdv
from .election import Election, Ranking, ScoringVector, election_to_json
from .manipulation import solve_manipulation
from .oracles import OracleCaps, brute_bribery, brute_ccdv, brute_manipulation

PROBLEMS = ("manipulation", "ccdv", "bribery")


@dataclass(frozen=True)
class FuzzCase:
    index: int
    election: Election
    vector: ScoringVector
    preferred: int
    budget: int


@dataclass(frozen=True)
class FuzzRecord:
    case: FuzzCase
    solver_verdict: bool
    oracle_verdict: bool

    @property
    def agree(self) -> bool:
        return self.solver_verdict == self.oracle_verdict


def random_election(rng: random.Random, m: int, n: int) -> Election:
    rankings = [tuple(rng.sample(range(m), m)) for _ in range(n)]
    return Election.from_rankings(m, rankings)


def _last_two_vector(rng: random.Random, m: int) -> ScoringVector:
    beta = rng.randint(0, 3)
    alpha = rng.randint(max(beta, 1), 3)
    if m == 1:
        return ScoringVector((0,))
    if m == 2:
        return ScoringVector((-beta, -alpha) if beta <= alpha else (-alpha, -beta))
    return ScoringVector((0,) * (m - 2) + (-beta, -alpha))


def _front_back_vector(m: int) -> ScoringVector:
    return ScoringVector((1,) + (0,) * (m - 2) + (-1,))


def _few_coefficient_vector(rng: random.Random, m: int) -> ScoringVector:
    distinct = sorted(rng.sample(range(-3, 4), rng.randint(1, min(3, m))), reverse=True)
    cuts = sorted(rng.sample(range(1, m), len(distinct) - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [m])]
    coeffs: list[int] = []
    for value, size in zip(distinct, sizes):
        coeffs.extend([value] * size)
    return ScoringVector(tuple(coeffs))


def generate_case(problem: str, rng: random.Random, caps: OracleCaps, index: int) -> FuzzCase:
    if problem == "manipulation":
        m = rng.randint(2, min(5, caps.max_candidates))
        n = rng.randint(0, 6)
        budget = rng.randint(0, min(3, caps.max_budget))
        vector = _few_coefficient_vector(rng, m)
    elif problem == "ccdv":
        m = rng.randint(2, min(5, caps.max_candidates))
        n = rng.randint(1, 7)
        budget = rng.randint(0, min(3, caps.max_budget, n))
        vector = (
            ScoringVector((1,) + (0,) * (m - 1))
            if rng.random() < 0.5
            else _last_two_vector(rng, m)
        )
    elif problem == "bribery":
        m = rng.randint(2, min(5, caps.max_candidates))
        n = rng.randint(1, 6)
        budget = rng.randint(0, min(2, caps.max_budget))
        vector = _front_back_vector(m) if rng.random() < 0.5 else _last_two_vector(rng, m)
    else:
        raise ValueError(f"unknown fuzz problem {problem!r}")
    election = random_election(rng, m, n)
    preferred = rng.randrange(m)
    return FuzzCase(index, election, vector, preferred, budget)


def solve_case(problem: str, case: FuzzCase) -> bool:
    if problem == "manipulation":
        return solve_manipulation(case.election, case.vector, case.preferred, case.budget).feasible
    if problem == "ccdv":
        inst = CcdvInstance(case.election, case.vector, case.preferred, case.budget)
        return solve_ccdv(inst).feasible
    if problem == "bribery":
        if _is_front_back(case.vector):
            return solve_bribery_front_back(
                case.election, case.vector, case.preferred, case.budget
            ).feasible
        return solve_bribery_last_two(
            case.election, case.vector, case.preferred, case.budget
        ).feasible
    raise ValueError(problem)


def _is_front_back(vector: ScoringVector) -> bool:
    from .bribery import front_back_params
    from .errors import WrongRuleError

    try:
        front_back_params(vector)
        return True
    except WrongRuleError:
        return False


def oracle_case(problem: str, case: FuzzCase, caps: OracleCaps) -> bool:
    if problem == "manipulation":
        return brute_manipulation(
            case.election, case.vector, case.preferred, case.budget, caps
        ).feasible
    if problem == "ccdv":
        return brute_ccdv(case.election, case.vector, case.preferred, case.budget, caps).feasible
    if problem == "bribery":
        return brute_bribery(case.election, case.vector, case.preferred, case.budget, caps).feasible
    raise ValueError(problem)


def fuzz_stream(
    problem: str,
    seed: int,
    count: int,
    caps: OracleCaps = OracleCaps(),
    solver: Callable[[str, FuzzCase], bool] | None = None,
) -> Iterator[FuzzRecord]:
    """Yield agreement records; `solver` is injectable so the harness can be
    self-tested against a deliberately broken implementation."""
    rng = random.Random(seed)
    run = solver or solve_case
    for index in range(count):
        case = generate_case(problem, rng, caps, index)
        yield FuzzRecord(case, run(problem, case), oracle_case(problem, case, caps))


def minimize_case(
    problem: str,
    case: FuzzCase,
    caps: OracleCaps,
    solver: Callable[[str, FuzzCase], bool] | None = None,
) -> FuzzCase:
    """Greedily drop votes while the solver/oracle disagreement persists."""
    run = solver or solve_case

    def disagrees(c: FuzzCase) -> bool:
        try:
            return run(problem, c) != oracle_case(problem, c, caps)
        except Exception:
            return False

    current = case
    shrunk = True
    while shrunk:
        shrunk = False
        flat = current.election.vote_list()
        for drop in range(len(flat)):
            if len(flat) <= 1:
                break
            rankings = flat[:drop] + flat[drop + 1 :]
            smaller = FuzzCase(
                current.index,
                Election.from_rankings(current.election.num_candidates, rankings),
                current.vector,
                current.preferred,
                min(current.budget, len(rankings)),
            )
            if disagrees(smaller):
                current = smaller
                shrunk = True
                break
    return current


def case_to_json(problem: str, case: FuzzCase) -> dict:
    names = [f"c{i}" for i in range(case.election.num_candidates)]
    return {
        "problem": problem,
        "election": election_to_json(case.election, names),
        "vector": list(case.vector.coefficients),
        "preferred": names[case.preferred],
        "k": case.budget,
    }
