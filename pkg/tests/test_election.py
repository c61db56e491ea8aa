import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from votecontrol.election import (
    Election,
    ScoringVector,
    add_votes,
    delete_votes,
    election_from_json,
    election_to_json,
    score_all,
    surplus,
    winners,
)
from votecontrol.errors import (
    DimensionError,
    ElectionError,
    InvalidCandidateError,
    MissingVoteError,
)
from votecontrol.rules import dual_vector

from conftest import seven_candidate_bribery_example


def test_borda_symmetric_pair():
    e = Election.from_rankings(3, [(0, 1, 2), (1, 0, 2)])
    v = ScoringVector((2, 1, 0))
    assert score_all(e, v).scores == (3, 3, 0)
    assert winners(e, v) == {0, 1}


def test_seven_candidate_example_scores():
    e, v = seven_candidate_bribery_example()
    table = score_all(e, v)
    assert table.scores == (-3, -3, -3, -3, 0, -8, -8)
    assert winners(e, v) == {4}
    s = surplus(e, v, 0)
    assert s.surplus == (0, 0, 0, 0, 3, -5, -5)
    assert not s.preferred_is_winner()


def test_empty_election_scores_zero():
    e = Election(3, ())
    v = ScoringVector((2, 1, 0))
    assert score_all(e, v).scores == (0, 0, 0)
    assert winners(e, v) == {0, 1, 2}


def test_single_candidate_wins():
    e = Election.from_rankings(1, [(0,)])
    assert winners(e, ScoringVector((5,))) == {0}


def test_one_approval_surplus():
    e = Election.from_rankings(3, [(0, 1, 2)])
    v = ScoringVector((1, 0, 0))
    assert surplus(e, v, 0).surplus == (0, -1, -1)


def test_surplus_of_preferred_is_zero_and_winner_condition():
    e = Election.from_rankings(3, [(1, 0, 2), (2, 1, 0)])
    v = ScoringVector((3, 1, 0))
    for p in range(3):
        s = surplus(e, v, p)
        assert s[p] == 0
        assert s.preferred_is_winner() == (p in winners(e, v))


def test_delete_decrements_multiplicity():
    e = Election.from_rankings(2, [(0, 1), (0, 1)])
    smaller = delete_votes(e, [(0, 1)])
    assert smaller.multiplicity((0, 1)) == 1
    assert e.multiplicity((0, 1)) == 2  # value semantics


def test_delete_nothing_and_everything():
    e = Election.from_rankings(2, [(0, 1), (1, 0)])
    assert delete_votes(e, []) == e
    empty = delete_votes(e, [(0, 1), (1, 0)])
    assert empty.num_votes == 0
    assert score_all(empty, ScoringVector((1, 0))).scores == (0, 0)


def test_delete_missing_vote_raises():
    e = Election.from_rankings(2, [(0, 1)])
    with pytest.raises(MissingVoteError):
        delete_votes(e, [(1, 0)])
    with pytest.raises(MissingVoteError):
        delete_votes(e, [(0, 1), (0, 1)])


def test_add_then_delete_roundtrip():
    e = Election.from_rankings(2, [(0, 1)])
    assert delete_votes(add_votes(e, [(1, 0)]), [(1, 0)]) == e


def test_add_p_first_raises_score():
    e = Election.from_rankings(3, [(1, 2, 0)])
    v = ScoringVector((4, 2, 0))
    before = score_all(e, v)[0]
    bigger = add_votes(e, [(0, 1, 2)] * 3)
    assert score_all(bigger, v)[0] == before + 3 * 4


def test_score_additivity_under_deletion():
    e = Election.from_rankings(3, [(0, 1, 2), (1, 2, 0), (2, 1, 0)])
    v = ScoringVector((3, 2, 0))
    removed = [(1, 2, 0)]
    rest = delete_votes(e, removed)
    sub = Election.from_rankings(3, removed)
    for c in range(3):
        assert score_all(rest, v)[c] == score_all(e, v)[c] - score_all(sub, v)[c]


def test_dimension_mismatch():
    e = Election.from_rankings(2, [(0, 1)])
    with pytest.raises(DimensionError):
        score_all(e, ScoringVector((1, 0, 0)))


def test_invalid_candidate_and_bad_vote():
    e = Election.from_rankings(2, [(0, 1)])
    with pytest.raises(InvalidCandidateError):
        surplus(e, ScoringVector((1, 0)), 5)
    with pytest.raises(ElectionError):
        Election.from_rankings(2, [(0, 0)])
    with pytest.raises(ElectionError):
        ScoringVector((0, 1))


def test_score_table_total_invariant():
    e = Election.from_rankings(3, [(0, 1, 2), (2, 0, 1), (1, 2, 0)])
    v = ScoringVector((3, 1, -2))
    table = score_all(e, v)
    assert sum(table.scores) == e.num_votes * sum(v.coefficients)


def test_rational_coefficients_cleared():
    from fractions import Fraction

    v = ScoringVector.from_values([Fraction(1, 2), Fraction(1, 3), 0])
    assert v.coefficients == (3, 2, 0)


votes_strategy = st.lists(st.permutations(range(4)).map(tuple), min_size=0, max_size=6)


@settings(max_examples=60, deadline=None)
@given(
    votes=votes_strategy,
    coeffs=st.lists(st.integers(-4, 4), min_size=4, max_size=4),
    gamma=st.integers(1, 4),
    delta=st.integers(-5, 5),
)
def test_winners_nonempty_argmax_and_affine_invariance(votes, coeffs, gamma, delta):
    e = Election.from_rankings(4, votes)
    v = ScoringVector(tuple(sorted(coeffs, reverse=True)))
    won = winners(e, v)
    assert won == score_all(e, v).argmax() and won
    scaled = ScoringVector(tuple(gamma * c + delta for c in v))
    assert winners(e, scaled) == won


@settings(max_examples=60, deadline=None)
@given(
    vote=st.permutations(range(5)).map(tuple),
    coeffs=st.lists(st.integers(-4, 4), min_size=5, max_size=5),
)
def test_dual_score_identity_single_vote(vote, coeffs):
    v = ScoringVector(tuple(sorted(coeffs, reverse=True)))
    dual = dual_vector(v)
    e = Election.from_rankings(5, [vote])
    e_rev = Election.from_rankings(5, [vote[::-1]])
    for c in range(5):
        assert score_all(e_rev, dual)[c] == -score_all(e, v)[c]


def test_json_roundtrip():
    e, v = seven_candidate_bribery_example()
    names = tuple("pabcdef")
    doc = election_to_json(e, names)
    back, back_names = election_from_json(json.loads(json.dumps(doc)))
    assert back == e and back_names == names


def test_json_errors():
    with pytest.raises(ElectionError):
        election_from_json({"candidates": ["a", "a"], "votes": []})
    with pytest.raises(ElectionError):
        election_from_json({"candidates": ["a", "b"], "votes": [{"ranking": ["a", "zz"]}]})
