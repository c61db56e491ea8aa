"""Exhaustive ground-truth solvers for manipulation, CCDV, bribery, and 3DM.

Everything here is deliberately dumb: enumerate, score, compare.  All oracles
are total within their caps, refuse anything larger with a structured error
naming the violated cap, and enumerate in a fixed order so witnesses are
deterministic.  Deletion enumeration runs over vote *types* (multiplicities
collapsed) and maps each chosen multiset back to the earliest voter indices,
which is order-equivalent to subset enumeration by earliest index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .election import Election, Ranking, ScoringVector, score_all, vote_points
from .errors import CapsExceededError
from .manipulation import (
    DEFAULT_COEFFICIENT_CAP,
    CoefficientProfile,
    DPQuery,
    dp_feasible,
)
from .outcomes import SolverOutcome


@dataclass(frozen=True)
class OracleCaps:
    max_candidates: int = 6
    max_votes: int = 16
    max_budget: int = 3
    max_states: int = 20_000_000

    def check(self, *, candidates: int | None = None, votes: int | None = None,
              budget: int | None = None, states: int | None = None) -> None:
        for name, limit, actual in (
            ("max_candidates", self.max_candidates, candidates),
            ("max_votes", self.max_votes, votes),
            ("max_budget", self.max_budget, budget),
            ("max_states", self.max_states, states),
        ):
            if actual is not None and actual > limit:
                raise CapsExceededError(name, limit, actual)


DEFAULT_CAPS = OracleCaps()


def _p_first_votes(num_candidates: int, preferred: int) -> list[Ranking]:
    rivals = [c for c in range(num_candidates) if c != preferred]
    return [(preferred,) + perm for perm in itertools.permutations(rivals)]


def brute_manipulation(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    caps: OracleCaps = DEFAULT_CAPS,
) -> SolverOutcome:
    """Try every multiset of k manipulator ballots (all rank p first; sound
    w.l.o.g. for manipulation, CCDV remainders, and bribery replacements)."""
    m = election.num_candidates
    caps.check(candidates=m, budget=k)
    ballots = _p_first_votes(m, preferred)
    caps.check(states=len(ballots) ** max(k, 1))
    base = score_all(election, vector).scores
    deltas = [vote_points(b, vector) for b in ballots]
    for combo in itertools.combinations_with_replacement(range(len(ballots)), k):
        totals = list(base)
        for i in combo:
            for c in range(m):
                totals[c] += deltas[i][c]
        if totals[preferred] == max(totals):
            return SolverOutcome(True, manipulator_votes=tuple(ballots[i] for i in combo))
    return SolverOutcome(False)


def _deletion_multisets(counts: list[int], max_size: int):
    """Yield (size, take-vector) for every deletion multiset of size <= max_size,
    sizes ascending, lexicographic within a size."""
    for size in range(max_size + 1):
        def rec(idx: int, left: int, acc: list[int]):
            if idx == len(counts):
                if left == 0:
                    yield tuple(acc)
                return
            if left > sum(counts[idx:]):
                return
            for take in range(min(counts[idx], left) + 1):
                acc.append(take)
                yield from rec(idx + 1, left - take, acc)
                acc.pop()

        for take in rec(0, size, []):
            yield size, take


def brute_ccdv(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    caps: OracleCaps = DEFAULT_CAPS,
) -> SolverOutcome:
    """Try every deletion sub-multiset of size <= k; earliest-index witness."""
    m = election.num_candidates
    caps.check(candidates=m, votes=len(election.votes), budget=k)
    base = score_all(election, vector).scores
    types = [(ranking, count) for ranking, count in election.votes]
    deltas = [vote_points(r, vector) for r, _ in types]
    counts = [c for _, c in types]
    for _, take in _deletion_multisets(counts, min(k, election.num_votes)):
        totals = list(base)
        for t, n in enumerate(take):
            if n:
                for c in range(m):
                    totals[c] -= n * deltas[t][c]
        if totals[preferred] == max(totals):
            deleted: list[int] = []
            for t, n in enumerate(take):
                if n:
                    deleted.extend(election.indices_of(types[t][0], n))
            return SolverOutcome(True, deleted=tuple(sorted(deleted)))
    return SolverOutcome(False)


def brute_bribery(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    caps: OracleCaps = DEFAULT_CAPS,
) -> SolverOutcome:
    """Deletion sub-multisets of size j <= k, each completed by brute-force
    manipulation with j fresh ballots."""
    m = election.num_candidates
    caps.check(candidates=m, votes=len(election.votes), budget=k)
    base = score_all(election, vector).scores
    types = [(ranking, count) for ranking, count in election.votes]
    deltas = [vote_points(r, vector) for r, _ in types]
    counts = [c for _, c in types]
    ballots = _p_first_votes(m, preferred)
    ballot_deltas = [vote_points(b, vector) for b in ballots]
    for j, take in _deletion_multisets(counts, min(k, election.num_votes)):
        totals = list(base)
        for t, n in enumerate(take):
            if n:
                for c in range(m):
                    totals[c] -= n * deltas[t][c]
        for combo in itertools.combinations_with_replacement(range(len(ballots)), j):
            final = list(totals)
            for i in combo:
                for c in range(m):
                    final[c] += ballot_deltas[i][c]
            if final[preferred] == max(final):
                bribed: list[int] = []
                for t, n in enumerate(take):
                    if n:
                        bribed.extend(election.indices_of(types[t][0], n))
                return SolverOutcome(
                    True,
                    bribed=tuple(sorted(bribed)),
                    replacements=tuple(ballots[i] for i in combo),
                )
    return SolverOutcome(False)


def deletion_search_bribery(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    caps: OracleCaps = DEFAULT_CAPS,
    coefficient_cap: int = DEFAULT_COEFFICIENT_CAP,
) -> SolverOutcome:
    """Bribery ground truth for elections too wide for ballot enumeration.

    Deletions stay exhaustive (type-level, every sub-multiset of size <= k);
    the manipulation completion for each remainder is decided by the
    bounded-coefficient DP instead of ballot enumeration.  Requires the rule to
    use at most `coefficient_cap` distinct coefficients.
    """
    m = election.num_candidates
    caps.check(votes=len(election.votes), budget=k)
    profile = CoefficientProfile.from_vector(vector)
    penalties = profile.penalties
    max_relief = sum(a * mult for a, mult in zip(penalties, profile.multiplicity[1:]))
    rivals = [c for c in range(m) if c != preferred]
    base = score_all(election, vector).scores
    types = [(ranking, count) for ranking, count in election.votes]
    deltas = [vote_points(r, vector) for r, _ in types]
    counts = [c for _, c in types]
    for j, take in _deletion_multisets(counts, min(k, election.num_votes)):
        totals = list(base)
        for t, n in enumerate(take):
            if n:
                for c in range(m):
                    totals[c] -= n * deltas[t][c]
        surpluses = tuple(totals[c] - totals[preferred] for c in rivals)
        # cheap necessary bounds before the DP
        if penalties and max(surpluses) > j * penalties[-1]:
            continue
        if sum(s for s in surpluses if s > 0) > j * max_relief:
            continue
        if not penalties and max(surpluses, default=0) > 0:
            continue
        query = DPQuery(j, tuple(mult * j for mult in profile.multiplicity[1:]), surpluses)
        if dp_feasible(query, profile, coefficient_cap):
            bribed: list[int] = []
            for t, n in enumerate(take):
                if n:
                    bribed.extend(election.indices_of(types[t][0], n))
            return SolverOutcome(True, bribed=tuple(sorted(bribed)), note="dp completion")
    return SolverOutcome(False)


# --- 3DM ----------------------------------------------------------------------


def brute_3dm(instance, caps: OracleCaps = DEFAULT_CAPS):
    """Search every |X|-subset of the tuple multiset for a cover.

    Returns a CoverCertificate or None.  Because a cover has |X| tuples and
    must touch all 3|X| elements, it is automatically an exact matching.
    """
    from .reductions import CoverCertificate

    size = len(instance.x_elems)
    if size > 4:
        raise CapsExceededError("max_3dm_ground_set", 4, size)
    caps.check(states=len(instance.triples) ** max(size, 1))
    universe = set(instance.x_elems) | set(instance.y_elems) | set(instance.z_elems)
    for combo in itertools.combinations(range(len(instance.triples)), size):
        covered = set()
        for idx in combo:
            covered.update(instance.triples[idx])
        if covered == universe:
            return CoverCertificate(combo, tuple(instance.triples[i] for i in combo))
    return None
