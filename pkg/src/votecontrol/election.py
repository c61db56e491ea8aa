"""Exact-arithmetic election model: candidates, votes, scoring, winners, surpluses.

Candidates are integer ids ``0..m-1``; names exist only at the JSON boundary.
A vote is a complete, tie-free ranking (a permutation of all candidate ids,
best to worst).  Elections are immutable multisets of votes; all scoring is
exact (Python integers), and the winner model is the co-winner model: the
argmax set of the score table, never broken by any tie-breaking order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, ElectionError, InvalidCandidateError, MissingVoteError

Ranking = tuple[int, ...]


def _as_ranking(vote: Sequence[int], num_candidates: int) -> Ranking:
    ranking = tuple(vote)
    if sorted(ranking) != list(range(num_candidates)):
        raise ElectionError(
            f"vote {ranking!r} is not a permutation of 0..{num_candidates - 1}"
        )
    return ranking


@dataclass(frozen=True)
class ScoringVector:
    """A weakly decreasing tuple of exact integer coefficients."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ElectionError("scoring vector must have at least one coefficient")
        if any(not isinstance(c, int) for c in self.coefficients):
            raise ElectionError("coefficients must be exact integers; use from_values")
        if any(
            self.coefficients[i] < self.coefficients[i + 1]
            for i in range(len(self.coefficients) - 1)
        ):
            raise ElectionError(f"coefficients must be weakly decreasing: {self.coefficients}")

    @classmethod
    def from_values(cls, values: Iterable[int | Fraction]) -> "ScoringVector":
        """Build a vector from integers or rationals.

        Rational inputs are cleared to integers by multiplying through with the
        LCM of the denominators; this is an affine rescaling, so winner sets
        are unchanged.
        """
        fracs = [Fraction(v) for v in values]
        denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
        return cls(tuple(int(f * denom) for f in fracs))

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i]

    def __iter__(self):
        return iter(self.coefficients)

    def distinct_count(self) -> int:
        return len(set(self.coefficients))


@dataclass(frozen=True)
class Election:
    """An immutable multiset of complete rankings over ``num_candidates`` candidates.

    Votes are stored canonically with multiplicities so that reduction-generated
    elections (thousands of duplicate setup votes) stay compact.
    """

    num_candidates: int
    votes: tuple[tuple[Ranking, int], ...]

    def __post_init__(self) -> None:
        if self.num_candidates < 1:
            raise ElectionError("an election needs a non-empty candidate set")
        seen: set[Ranking] = set()
        for ranking, count in self.votes:
            _as_ranking(ranking, self.num_candidates)
            if count < 1:
                raise ElectionError(f"multiplicity of {ranking!r} must be >= 1, got {count}")
            if ranking in seen:
                raise ElectionError(f"duplicate vote entry for {ranking!r}; merge multiplicities")
            seen.add(ranking)

    @classmethod
    def from_rankings(cls, num_candidates: int, rankings: Iterable[Sequence[int]]) -> "Election":
        counts: dict[Ranking, int] = {}
        for vote in rankings:
            ranking = tuple(vote)
            counts[ranking] = counts.get(ranking, 0) + 1
        return cls(num_candidates, tuple(counts.items()))

    @classmethod
    def from_counts(
        cls, num_candidates: int, pairs: Iterable[tuple[Sequence[int], int]]
    ) -> "Election":
        counts: dict[Ranking, int] = {}
        for vote, count in pairs:
            ranking = tuple(vote)
            counts[ranking] = counts.get(ranking, 0) + count
        return cls(num_candidates, tuple(counts.items()))

    @property
    def num_votes(self) -> int:
        return sum(count for _, count in self.votes)

    def multiplicity(self, ranking: Sequence[int]) -> int:
        key = tuple(ranking)
        for vote, count in self.votes:
            if vote == key:
                return count
        return 0

    def vote_list(self) -> list[Ranking]:
        """Flatten to one ranking per voter; index order is the stored group order."""
        flat: list[Ranking] = []
        for ranking, count in self.votes:
            flat.extend([ranking] * count)
        return flat

    def indices_of(self, ranking: Sequence[int], count: int = 1) -> list[int]:
        """Earliest flattened voter indices holding `ranking` (`count` of them)."""
        key = tuple(ranking)
        offset = 0
        for vote, mult in self.votes:
            if vote == key:
                if count > mult:
                    raise MissingVoteError(
                        f"requested {count} copies of {key!r}, only {mult} present"
                    )
                return list(range(offset, offset + count))
            offset += mult
        raise MissingVoteError(f"vote {key!r} not present")


def vote_points(ranking: Ranking, vector: ScoringVector) -> tuple[int, ...]:
    """Per-candidate points contributed by a single vote."""
    points = [0] * len(ranking)
    coeffs = vector.coefficients
    for position, candidate in enumerate(ranking):
        points[candidate] = coeffs[position]
    return tuple(points)


@dataclass(frozen=True)
class ScoreTable:
    scores: tuple[int, ...]

    def __getitem__(self, candidate: int) -> int:
        return self.scores[candidate]

    def argmax(self) -> set[int]:
        top = max(self.scores)
        return {c for c, s in enumerate(self.scores) if s == top}


@dataclass(frozen=True)
class SurplusTable:
    """Per-candidate score difference against the preferred candidate."""

    surplus: tuple[int, ...]
    preferred: int

    def __getitem__(self, candidate: int) -> int:
        return self.surplus[candidate]

    def preferred_is_winner(self) -> bool:
        return max(self.surplus) <= 0


def _check_dimensions(election: Election, vector: ScoringVector) -> None:
    if len(vector) != election.num_candidates:
        raise DimensionError(
            f"scoring vector has {len(vector)} coefficients for "
            f"{election.num_candidates} candidates"
        )


def score_all(election: Election, vector: ScoringVector) -> ScoreTable:
    """Exact score of every candidate: sum of the coefficient at its position, per vote."""
    _check_dimensions(election, vector)
    scores = [0] * election.num_candidates
    coeffs = vector.coefficients
    for ranking, count in election.votes:
        for position, candidate in enumerate(ranking):
            scores[candidate] += coeffs[position] * count
    return ScoreTable(tuple(scores))


def winners(election: Election, vector: ScoringVector) -> set[int]:
    """The co-winner set: all candidates attaining the maximum score."""
    return score_all(election, vector).argmax()


def surplus(election: Election, vector: ScoringVector, preferred: int) -> SurplusTable:
    """surplus(c) = score(c) - score(preferred); preferred co-wins iff all <= 0."""
    if not 0 <= preferred < election.num_candidates:
        raise InvalidCandidateError(f"candidate {preferred} outside 0..{election.num_candidates - 1}")
    table = score_all(election, vector)
    base = table[preferred]
    return SurplusTable(tuple(s - base for s in table.scores), preferred)


def delete_votes(election: Election, which: Iterable[Sequence[int]]) -> Election:
    """Return a copy with the given votes removed (multiset semantics)."""
    removals: dict[Ranking, int] = {}
    for vote in which:
        key = tuple(vote)
        removals[key] = removals.get(key, 0) + 1
    remaining: list[tuple[Ranking, int]] = []
    for ranking, count in election.votes:
        take = removals.pop(ranking, 0)
        if take > count:
            raise MissingVoteError(f"cannot delete {take} copies of {ranking!r}; only {count} present")
        if count - take:
            remaining.append((ranking, count - take))
    if removals:
        missing = next(iter(removals))
        raise MissingVoteError(f"vote {missing!r} not present")
    return Election(election.num_candidates, tuple(remaining))


def add_votes(election: Election, new: Iterable[Sequence[int]]) -> Election:
    """Return a copy with the given votes added (multiset semantics)."""
    counts: dict[Ranking, int] = {ranking: count for ranking, count in election.votes}
    for vote in new:
        ranking = _as_ranking(vote, election.num_candidates)
        counts[ranking] = counts.get(ranking, 0) + 1
    return Election(election.num_candidates, tuple(counts.items()))


# --- JSON boundary -----------------------------------------------------------
#
# Election JSON: {"candidates": ["p", "a", ...],
#                 "votes": [{"ranking": ["a", "p", ...], "count": 2}, ...]}
# Candidate names map to ids by roster order.


def election_to_json(election: Election, names: Sequence[str]) -> dict:
    if len(names) != election.num_candidates:
        raise DimensionError("name roster length does not match candidate count")
    return {
        "candidates": list(names),
        "votes": [
            {"ranking": [names[c] for c in ranking], "count": count}
            for ranking, count in election.votes
        ],
    }


def election_from_json(doc: dict) -> tuple[Election, tuple[str, ...]]:
    try:
        names = tuple(str(n) for n in doc["candidates"])
        raw_votes = doc["votes"]
    except (KeyError, TypeError) as exc:
        raise ElectionError(f"malformed election document: missing field {exc}") from exc
    if len(set(names)) != len(names):
        raise ElectionError("candidate names must be distinct")
    index = {name: i for i, name in enumerate(names)}
    pairs: list[tuple[Ranking, int]] = []
    for entry_no, entry in enumerate(raw_votes):
        try:
            ranking_names = entry["ranking"]
            count = int(entry.get("count", 1))
        except (KeyError, TypeError) as exc:
            raise ElectionError(f"votes[{entry_no}]: malformed entry ({exc})") from exc
        try:
            ranking = tuple(index[str(n)] for n in ranking_names)
        except KeyError as exc:
            raise ElectionError(f"votes[{entry_no}]: unknown candidate {exc}") from exc
        pairs.append((ranking, count))
    return Election.from_counts(len(names), pairs), names
