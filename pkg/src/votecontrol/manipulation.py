"""Coalitional manipulation for scoring rules with few distinct coefficients.

The solver normalizes the scoring vector to per-position *deficits* against the
top coefficient: a manipulator vote always ranks the preferred candidate first,
so placing rival c in a position with deficit a lowers c's surplus by exactly a.
Feasibility is a dynamic program over one unary budget per distinct deficit;
votes are rebuilt by induction: recover one witness allocation, then peel off
one ballot per manipulator via a system of distinct representatives (bipartite
matching) over the deficit-class sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .election import Election, Ranking, ScoringVector, add_votes, surplus, winners
from .errors import UnsupportedRuleError

DEFAULT_COEFFICIENT_CAP = 6


@dataclass(frozen=True)
class CoefficientProfile:
    """Distinct normalized coefficients (0 > -a2 > ... > -ar) with multiplicities.

    `distinct[0]` is always 0; `multiplicity[0]` counts the zero-deficit
    positions available to rivals (it may be 0).  The remaining entries are the
    strictly negative normalized coefficients of the rule's tail.
    """

    distinct: tuple[int, ...]
    multiplicity: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.distinct[0] != 0:
            raise ValueError("profile must lead with the zero coefficient")
        if any(self.distinct[i] <= self.distinct[i + 1] for i in range(len(self.distinct) - 1)):
            raise ValueError("distinct coefficients must be strictly decreasing")
        if len(self.distinct) != len(self.multiplicity):
            raise ValueError("distinct/multiplicity length mismatch")
        if any(m < 0 for m in self.multiplicity) or any(m <= 0 for m in self.multiplicity[1:]):
            raise ValueError("multiplicities of negative coefficients must be positive")

    @classmethod
    def from_vector(cls, vector: ScoringVector) -> "CoefficientProfile":
        """Profile of the rival positions (all but the first) of `vector`.

        Position deficits are taken against the first coefficient, which the
        preferred candidate always occupies; any affine shift of the vector
        yields the same profile.
        """
        top = vector[0]
        deficits = [top - vector[i] for i in range(1, len(vector))]
        distinct = [0]
        multiplicity = [deficits.count(0)]
        for a in sorted(set(d for d in deficits if d > 0)):
            distinct.append(-a)
            multiplicity.append(deficits.count(a))
        return cls(tuple(distinct), tuple(multiplicity))

    @property
    def penalties(self) -> tuple[int, ...]:
        """Positive deficits a_2 < ... < a_r, aligned with the DP budgets."""
        return tuple(-c for c in self.distinct[1:])

    @property
    def num_rivals(self) -> int:
        return sum(self.multiplicity)


@dataclass(frozen=True)
class DPQuery:
    """One feasibility question: k manipulators, remaining per-deficit budgets,
    and the rivals' surpluses (exact integers, may be given in binary)."""

    k: int
    budgets: tuple[int, ...]
    surpluses: tuple[int, ...]


@dataclass(frozen=True)
class ManipulationSolution:
    feasible: bool
    votes: tuple[Ranking, ...] = ()


def _check_cap(profile: CoefficientProfile, cap: int) -> None:
    if len(profile.distinct) > cap:
        raise UnsupportedRuleError(
            f"rule uses {len(profile.distinct)} distinct coefficients, cap is {cap}; "
            "fall back to the exhaustive oracle"
        )


def _solve(query: DPQuery, profile: CoefficientProfile, cap: int):
    """Memoized DP; returns (feasible, memo) with one witness allocation per state.

    State (i, rem): can rivals 1..i be allocated placements from the remaining
    budgets `rem` so that each ends with surplus <= 0?  True for i = 0 iff all
    budgets are exactly zero (every placement slot must be used).
    """
    _check_cap(profile, cap)
    penalties = profile.penalties
    if len(query.budgets) != len(penalties):
        raise ValueError("budget vector length must match the number of penalties")
    if any(b < 0 for b in query.budgets):
        raise ValueError("budgets must be nonnegative")
    k = query.k
    surpluses = query.surpluses
    memo: dict[tuple[int, tuple[int, ...]], tuple[int, ...] | None] = {}

    def feasible(i: int, rem: tuple[int, ...]) -> bool:
        if i == 0:
            return all(r == 0 for r in rem)
        key = (i, rem)
        if key in memo:
            return memo[key] is not None
        s = surpluses[i - 1]
        ranges = [range(min(k, r) + 1) for r in rem]
        for alloc in itertools.product(*ranges):
            if sum(alloc) > k:
                continue
            if s - sum(a * x for a, x in zip(penalties, alloc)) > 0:
                continue
            if feasible(i - 1, tuple(r - x for r, x in zip(rem, alloc))):
                memo[key] = alloc
                return True
        memo[key] = None
        return False

    return feasible(len(surpluses), query.budgets), memo


def dp_feasible(query: DPQuery, profile: CoefficientProfile, cap: int = DEFAULT_COEFFICIENT_CAP) -> bool:
    """True iff placements x_{i,j} >= 0 exist with per-rival totals <= k, column
    sums exactly the budgets, and every surplus driven to <= 0."""
    ok, _ = _solve(query, profile, cap)
    return ok


def _witness_assignment(query: DPQuery, profile: CoefficientProfile, cap: int):
    ok, memo = _solve(query, profile, cap)
    if not ok:
        return None
    assignment: list[list[int]] = []
    rem = query.budgets
    for i in range(len(query.surpluses), 0, -1):
        alloc = memo[(i, rem)]
        assert alloc is not None
        assignment.append(list(alloc))
        rem = tuple(r - x for r, x in zip(rem, alloc))
    assignment.reverse()
    return assignment


def _traversal(x: list[list[int]], copies: list[int], forced: set[int]) -> list[int]:
    """Distinct representatives, one per deficit-class copy, covering `forced`.

    `copies[t]` is the class index of copy t; rival i may represent a copy of
    class j iff x[i][j] > 0.  A plain augmenting-path matching saturates the
    copies (Hall's condition holds for any DP witness); alternating-path
    exchanges then absorb every forced rival without unseating a copy.
    Ties break toward the lowest rival index.
    """
    num_copies = len(copies)
    match_of_copy: list[int | None] = [None] * num_copies
    match_of_rival: dict[int, int] = {}

    def augment(t: int, seen: set[int]) -> bool:
        j = copies[t]
        for i in range(len(x)):
            if x[i][j] <= 0 or i in seen:
                continue
            seen.add(i)
            if i not in match_of_rival or augment(match_of_rival[i], seen):
                match_of_copy[t] = i
                match_of_rival[i] = t
                return True
        return False

    for t in range(num_copies):
        if not augment(t, set()):
            raise AssertionError("marriage condition violated for a DP witness")

    for f in sorted(forced):
        if f in match_of_rival:
            continue
        # BFS over alternating paths f -> copy -> matched rival -> copy -> ...
        # until some copy's current representative is outside `forced`; flipping
        # that path seats f and unseats only a non-forced rival.
        parent: dict[int, int] = {}  # copy -> rival we reached it from
        frontier = [f]
        seen_copies: set[int] = set()
        end: int | None = None
        while frontier and end is None:
            next_frontier: list[int] = []
            for i in frontier:
                for t in range(num_copies):
                    if t in seen_copies or x[i][copies[t]] <= 0:
                        continue
                    seen_copies.add(t)
                    parent[t] = i
                    holder = match_of_copy[t]
                    assert holder is not None
                    if holder not in forced:
                        end = t
                        break
                    next_frontier.append(holder)
                if end is not None:
                    break
            frontier = next_frontier
        if end is None:
            raise AssertionError("forced rival cannot be absorbed into the traversal")
        t = end
        while True:
            i = parent[t]
            previous = match_of_rival.get(i)
            match_of_copy[t] = i
            if i == f:
                break
            assert previous is not None
            t = previous
        match_of_rival = {
            rival: t for t, rival in enumerate(match_of_copy) if rival is not None
        }

    return [match_of_copy[t] for t in range(num_copies)]  # type: ignore[return-value]


def _emit_round(
    x: list[list[int]], profile: CoefficientProfile, remaining: int
) -> list[int | None]:
    """One manipulator's block placements: slot -> rival, per deficit class.

    Rivals whose total remaining placements equal `remaining` must be seated in
    this ballot, or the per-rival `<= k` bound breaks for the rest.
    """
    copies = [j for j in range(len(profile.penalties)) for _ in range(profile.multiplicity[j + 1])]
    forced = {i for i in range(len(x)) if sum(x[i]) == remaining}
    reps = _traversal(x, copies, forced)
    for t, i in enumerate(reps):
        x[i][copies[t]] -= 1
    return reps


def _assignment_to_votes(
    assignment: list[list[int]], profile: CoefficientProfile, k: int
) -> list[tuple[int, ...]]:
    """Peel k ballots off a DP witness.  Ballots use implicit ids: the preferred
    candidate is 0 and rival i (surplus order) is i + 1."""
    num_rivals = len(assignment)
    if num_rivals != profile.num_rivals:
        raise ValueError("profile multiplicities must cover every rival")
    x = [list(row) for row in assignment]
    votes: list[tuple[int, ...]] = []
    class_sizes = profile.multiplicity[1:]
    for remaining in range(k, 0, -1):
        reps = _emit_round(x, profile, remaining)
        blocks: list[list[int]] = []
        offset = 0
        for size in class_sizes:
            blocks.append(sorted(reps[offset : offset + size]))
            offset += size
        seated = {i for block in blocks for i in block}
        zeros = sorted(i for i in range(num_rivals) if i not in seated)
        ranking = [0] + [i + 1 for i in zeros]
        for block in blocks:
            ranking.extend(i + 1 for i in block)
        votes.append(tuple(ranking))
    if any(any(v != 0 for v in row) for row in x):
        raise AssertionError("witness placements not fully consumed")
    return votes


def reconstruct(
    query: DPQuery, profile: CoefficientProfile, cap: int = DEFAULT_COEFFICIENT_CAP
) -> ManipulationSolution:
    """Constructive counterpart of dp_feasible for the top-level budgets.

    Requires budgets of the form multiplicity_j * k and one surplus per rival;
    returns k ballots over implicit ids (preferred = 0, rival i = i + 1).
    """
    expected = tuple(m * query.k for m in profile.multiplicity[1:])
    if query.budgets != expected:
        raise ValueError(f"reconstruction needs full budgets {expected}, got {query.budgets}")
    assignment = _witness_assignment(query, profile, cap)
    if assignment is None:
        return ManipulationSolution(False)
    return ManipulationSolution(True, tuple(_assignment_to_votes(assignment, profile, query.k)))


def solve_from_surpluses(
    surpluses: tuple[int, ...],
    profile: CoefficientProfile,
    k: int,
    cap: int = DEFAULT_COEFFICIENT_CAP,
    want_votes: bool = True,
) -> ManipulationSolution:
    """Surplus-table entry point: surpluses need not be realizable by any vote
    set and may be given in binary; budgets stay unary-bounded by m*k."""
    query = DPQuery(k, tuple(m * k for m in profile.multiplicity[1:]), tuple(surpluses))
    if not want_votes or len(surpluses) != profile.num_rivals:
        return ManipulationSolution(dp_feasible(query, profile, cap))
    return reconstruct(query, profile, cap)


def solve_manipulation(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    cap: int = DEFAULT_COEFFICIENT_CAP,
) -> ManipulationSolution:
    """Decide and construct a successful manipulation by k new voters.

    All manipulators rank `preferred` first; the emitted ballots are verified
    to make the preferred candidate a co-winner before returning.
    """
    profile = CoefficientProfile.from_vector(vector)
    _check_cap(profile, cap)
    table = surplus(election, vector, preferred)
    rivals = [c for c in range(election.num_candidates) if c != preferred]
    surpluses = tuple(table[c] for c in rivals)
    solution = solve_from_surpluses(surpluses, profile, k, cap)
    if not solution.feasible:
        return solution
    ids = [preferred] + rivals
    votes = tuple(tuple(ids[slot] for slot in ballot) for ballot in solution.votes)
    if votes:
        check = winners(add_votes(election, votes), vector)
        if preferred not in check:
            raise AssertionError("reconstructed manipulation failed verification")
    return ManipulationSolution(True, votes)
