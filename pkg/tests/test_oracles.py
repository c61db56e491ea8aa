import random

import pytest

from votecontrol.election import Election, ScoringVector, winners
from votecontrol.errors import CapsExceededError
from votecontrol.oracles import (
    OracleCaps,
    brute_3dm,
    brute_bribery,
    brute_ccdv,
    brute_manipulation,
    deletion_search_bribery,
)
from votecontrol.reductions import ThreeDmInstance

CAPS = OracleCaps(max_candidates=5, max_votes=20, max_budget=3)


def _random_instance(rng):
    m = rng.randint(2, 4)
    n = rng.randint(1, 5)
    e = Election.from_rankings(m, [tuple(rng.sample(range(m), m)) for _ in range(n)])
    v = ScoringVector(tuple(sorted((rng.randint(-2, 2) for _ in range(m)), reverse=True)))
    return e, v, rng.randrange(m), rng.randint(0, 2)


def test_oracles_deterministic():
    rng = random.Random(2)
    for _ in range(20):
        e, v, p, k = _random_instance(rng)
        assert brute_manipulation(e, v, p, k) == brute_manipulation(e, v, p, k)
        assert brute_ccdv(e, v, p, min(k, e.num_votes)) == brute_ccdv(e, v, p, min(k, e.num_votes))
        assert brute_bribery(e, v, p, k) == brute_bribery(e, v, p, k)


def test_budget_zero_is_winner_check():
    rng = random.Random(6)
    for _ in range(40):
        e, v, p, _ = _random_instance(rng)
        is_winner = p in winners(e, v)
        assert brute_manipulation(e, v, p, 0).feasible == is_winner
        assert brute_ccdv(e, v, p, 0).feasible == is_winner
        assert brute_bribery(e, v, p, 0).feasible == is_winner


def test_ccdv_feasible_implies_bribery_feasible():
    rng = random.Random(8)
    for _ in range(60):
        e, v, p, k = _random_instance(rng)
        k = min(k, e.num_votes)
        if brute_ccdv(e, v, p, k).feasible:
            assert brute_bribery(e, v, p, k).feasible


def test_full_deletion_budget_always_feasible():
    # deleting every vote leaves the all-tied empty election
    rng = random.Random(10)
    caps = OracleCaps(max_candidates=5, max_votes=20, max_budget=6)
    for _ in range(30):
        e, v, p, _ = _random_instance(rng)
        assert brute_ccdv(e, v, p, e.num_votes, caps).feasible


def test_caps_refusal_names_the_cap():
    e = Election.from_rankings(7, [tuple(range(7))])
    v = ScoringVector((1,) + (0,) * 6)
    with pytest.raises(CapsExceededError) as err:
        brute_manipulation(e, v, 0, 1, OracleCaps(max_candidates=6))
    assert err.value.cap_name == "max_candidates"
    with pytest.raises(CapsExceededError):
        brute_ccdv(e, v, 0, 5, OracleCaps(max_candidates=7, max_budget=3))


def test_manipulation_witness_is_lexicographically_first():
    # (0,1,2) hands the leader another point, so the first workable ballot
    # in enumeration order is (0,2,1)
    e = Election.from_rankings(3, [(1, 2, 0)])
    v = ScoringVector((2, 1, 0))
    out = brute_manipulation(e, v, 0, 1)
    assert out.feasible
    assert out.manipulator_votes == ((0, 2, 1),)


def test_deletion_search_matches_brute_bribery():
    rng = random.Random(14)
    for _ in range(120):
        m = rng.randint(2, 4)
        n = rng.randint(1, 5)
        e = Election.from_rankings(m, [tuple(rng.sample(range(m), m)) for _ in range(n)])
        beta = rng.randint(0, 2)
        alpha = rng.randint(max(beta, 1), 2)
        if m == 2:
            v = ScoringVector(tuple(sorted((-beta, -alpha), reverse=True)))
        else:
            v = ScoringVector((0,) * (m - 2) + (-beta, -alpha))
        p = rng.randrange(m)
        k = rng.randint(0, 2)
        assert (
            deletion_search_bribery(e, v, p, k, CAPS).feasible
            == brute_bribery(e, v, p, k, CAPS).feasible
        )


# --- 3DM oracle ---------------------------------------------------------------


def test_forced_singleton_cover():
    t = ("x1", "y1", "z1")
    inst = ThreeDmInstance(("x1",), ("y1",), ("z1",), (t, t, t))
    cover = brute_3dm(inst)
    assert cover is not None and cover.triples == (t,)


def test_disjoint_pair_positive():
    inst = ThreeDmInstance(
        ("x1", "x2"),
        ("y1", "y2"),
        ("z1", "z2"),
        (("x1", "y1", "z1"), ("x2", "y2", "z2"), ("x1", "y2", "z1")),
    )
    assert brute_3dm(inst) is not None


def test_all_pairs_collide_negative():
    inst = ThreeDmInstance(
        ("x1", "x2"),
        ("y1", "y2"),
        ("z1", "z2"),
        (("x1", "y1", "z1"), ("x1", "y2", "z2"), ("x2", "y1", "z2"), ("x2", "y2", "z1")),
    )
    assert brute_3dm(inst) is None


def test_3dm_ground_set_cap():
    elems = [f"e{i}" for i in range(5)]
    inst = ThreeDmInstance(
        tuple(f"x{i}" for i in range(5)),
        tuple(f"y{i}" for i in range(5)),
        tuple(f"z{i}" for i in range(5)),
        tuple((f"x{i}", f"y{i}", f"z{i}") for i in range(5)),
    )
    with pytest.raises(CapsExceededError):
        brute_3dm(inst)
