"""Constructive control by deleting voters: polynomial solvers and dispatch.

Direct algorithms exist for vectors equivalent to 1-approval (greedy deletion
against the current leader) and to (0,...,0,-beta,-alpha) (a two-budget DP that
never touches voters ranking p outside the last two positions).  All other
classes fall through to the exhaustive oracle, annotated with whether a
polynomial algorithm is merely deferred or the class is NP-hard.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bribery import last_two_params, partition_last_two
from .election import Election, ScoringVector, delete_votes, score_all, winners
from .errors import WrongRuleError
from .outcomes import SolverOutcome
from .rules import equivalent


@dataclass(frozen=True)
class CcdvInstance:
    election: Election
    vector: ScoringVector
    preferred: int
    budget: int

    def __post_init__(self) -> None:
        if self.budget > self.election.num_votes:
            raise ValueError("deletion budget exceeds the number of votes")


def _verify_deletion(inst: CcdvInstance, deleted: list[int]) -> None:
    flat = inst.election.vote_list()
    modified = delete_votes(inst.election, [flat[i] for i in deleted])
    if inst.preferred not in winners(modified, inst.vector):
        raise AssertionError("deletion certificate failed re-verification")


def is_plurality(vector: ScoringVector) -> bool:
    coeffs = vector.coefficients
    return len(coeffs) >= 2 and coeffs[0] > coeffs[1] and all(
        c == coeffs[1] for c in coeffs[1:]
    )


def solve_ccdv_plurality(inst: CcdvInstance) -> SolverOutcome:
    """Greedy: repeatedly delete one voter topping a currently maximal rival.

    Ties break toward the lowest rival index, then the earliest voter index.
    """
    if not is_plurality(inst.vector):
        raise WrongRuleError(f"{inst.vector.coefficients} is not 1-approval-like")
    e, p = inst.election, inst.preferred
    flat = e.vote_list()
    # canonical plurality scores: number of first places
    scores = [0] * e.num_candidates
    for ranking in flat:
        scores[ranking[0]] += 1
    available = list(range(len(flat)))
    deleted: list[int] = []
    while len(deleted) < inst.budget:
        top = max(scores[c] for c in range(e.num_candidates) if c != p)
        if top <= scores[p]:
            break
        leader = min(c for c in range(e.num_candidates) if c != p and scores[c] == top)
        pick = next(i for i in available if flat[i][0] == leader)
        available.remove(pick)
        deleted.append(pick)
        scores[leader] -= 1
    if max(scores[c] for c in range(e.num_candidates) if c != p) > scores[p]:
        return SolverOutcome(False)
    _verify_deletion(inst, deleted)
    return SolverOutcome(True, deleted=tuple(deleted))


def solve_ccdv_last_two(inst: CcdvInstance) -> SolverOutcome:
    """Deletion-only DP for (0,...,0,-beta,-alpha), alpha >= beta >= 0.

    Deleting a voter who ranks p outside the last two positions can only raise
    rivals, so only p-last (V1) and p-second-to-last (V2) voters are touched.
    For each split (D1, D2) of the budget the DP distributes the deletions over
    per-rival capacities so that every surplus lands at or below p's gain
    alpha*D1 + beta*D2.
    """
    beta, alpha = last_two_params(inst.vector)
    e, p = inst.election, inst.preferred
    if p in winners(e, inst.vector):
        return SolverOutcome(True)
    flat = e.vote_list()
    part = partition_last_two(e, p)
    rivals = [c for c in range(e.num_candidates) if c != p]
    rival_pos = {c: i for i, c in enumerate(rivals)}
    table = score_all(e, inst.vector)
    surpluses = [table[c] - table[p] for c in rivals]
    cap_v1 = [0] * len(rivals)
    for idx in part.v1:
        if len(flat[idx]) >= 2:
            cap_v1[rival_pos[flat[idx][-2]]] += 1
    cap_v2 = [0] * len(rivals)
    for idx in part.v2:
        cap_v2[rival_pos[flat[idx][-1]]] += 1

    for d1 in range(min(len(part.v1), inst.budget) + 1):
        for d2 in range(min(len(part.v2), inst.budget - d1) + 1):
            gain = alpha * d1 + beta * d2
            witness = _deletion_dp(surpluses, gain, d1, d2, cap_v1, cap_v2, beta, alpha)
            if witness is None:
                continue
            zs, ws = witness
            deleted: list[int] = []
            for i, z in enumerate(zs):
                matching = [idx for idx in part.v1 if rival_pos[flat[idx][-2]] == i]
                deleted.extend(matching[:z])
            for i, w in enumerate(ws):
                matching = [idx for idx in part.v2 if rival_pos[flat[idx][-1]] == i]
                deleted.extend(matching[:w])
            deleted.sort()
            _verify_deletion(inst, deleted)
            return SolverOutcome(True, deleted=tuple(deleted))
    return SolverOutcome(False)


def _deletion_dp(
    surpluses: list[int],
    gain: int,
    d1: int,
    d2: int,
    cap_v1: list[int],
    cap_v2: list[int],
    beta: int,
    alpha: int,
):
    """Distribute d1 V1-deletions and d2 V2-deletions over per-rival capacities
    with surpl(c_i) + beta*z_i + alpha*w_i - gain <= 0 for every rival."""
    n = len(surpluses)
    memo: dict[tuple[int, int, int], tuple[int, int] | None] = {}

    def feasible(i: int, r1: int, r2: int) -> bool:
        if i == 0:
            return r1 == 0 and r2 == 0
        key = (i, r1, r2)
        if key in memo:
            return memo[key] is not None
        slack = gain - surpluses[i - 1]
        if slack >= 0:
            for z in range(min(cap_v1[i - 1], r1) + 1):
                if beta * z > slack:
                    break
                for w in range(min(cap_v2[i - 1], r2) + 1):
                    if beta * z + alpha * w > slack:
                        break
                    if feasible(i - 1, r1 - z, r2 - w):
                        memo[key] = (z, w)
                        return True
        memo[key] = None
        return False

    if not feasible(n, d1, d2):
        return None
    zs, ws = [], []
    r1, r2 = d1, d2
    for i in range(n, 0, -1):
        z, w = memo[(i, r1, r2)]  # type: ignore[misc]
        zs.append(z)
        ws.append(w)
        r1 -= z
        r2 -= w
    zs.reverse()
    ws.reverse()
    return zs, ws


def solve_ccdv(inst: CcdvInstance, oracle=None) -> SolverOutcome:
    """Dispatch by rule shape; unhandled classes delegate to `oracle`.

    `oracle` is a callable (inst) -> SolverOutcome (normally the exhaustive
    brute-force solver); it receives instances whose class has no direct
    algorithm here, with a note saying whether that class is still polynomial.
    """
    coeffs = inst.vector.coefficients
    if is_plurality(inst.vector):
        return solve_ccdv_plurality(inst)
    m = len(coeffs)
    if m <= 2 or all(c == coeffs[0] for c in coeffs[: m - 2]):
        return solve_ccdv_last_two(inst)
    if oracle is None:
        raise WrongRuleError(
            "no direct CCDV algorithm for this rule; supply an oracle fallback"
        )
    note = _fallback_note(inst.vector)
    outcome = oracle(inst)
    return SolverOutcome(
        outcome.feasible,
        deleted=outcome.deleted,
        note=note,
    )


def _fallback_note(vector: ScoringVector) -> str:
    coeffs = vector.coefficients
    m = len(coeffs)
    deferred = [
        ScoringVector((1, 1) + (0,) * (m - 2)),  # 2-approval
        ScoringVector((1,) * (m - 3) + (0, 0, 0)),  # 3-veto
        ScoringVector((2,) + (1,) * (m - 2) + (0,)),  # (2,1,...,1,0)
    ] if m >= 4 else []
    for known in deferred:
        if len(known) == m and equivalent(vector, known) is not None:
            return "polynomial algorithm deferred; exhaustive search used"
    return "rule class is NP-hard in general; exhaustive search used"
