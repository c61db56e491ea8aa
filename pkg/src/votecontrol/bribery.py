"""Polynomial-time bribery solvers.

Two rule families are covered.  For vectors equivalent to (1,0,...,0,-1) the
hard case reduces to a min-cost network flow; for (0,...,0,-beta,-alpha) the
solver enumerates which front-loaded voters to bribe (boundedly many, by the
constant cap on useful V3 bribes) and decides the rest with a four-budget
dynamic program, rebuilding replacement ballots through the manipulation
module's representative extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .election import Election, Ranking, ScoringVector, add_votes, delete_votes, score_all, winners
from .errors import WrongRuleError
from .manipulation import CoefficientProfile, DPQuery, _assignment_to_votes, dp_feasible
from .outcomes import SolverOutcome


# --- flow kernel -------------------------------------------------------------


@dataclass(frozen=True)
class FlowEdge:
    tail: int
    head: int
    capacity: int
    cost: int


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    source: int
    sink: int
    edges: tuple[FlowEdge, ...]

    def __post_init__(self) -> None:
        for e in self.edges:
            if not (0 <= e.tail < self.num_nodes and 0 <= e.head < self.num_nodes):
                raise ValueError(f"edge {e} runs outside the node range")
            if e.capacity < 0 or e.cost < 0:
                raise ValueError(f"edge {e} needs nonnegative capacity and cost")


def min_cost_flow(
    net: FlowNetwork, required_value: int
) -> tuple[dict[tuple[int, int], int], int] | None:
    """Integral min-cost flow of exactly `required_value`, or None if the max
    flow falls short.  Returns ({(tail, head): flow}, total_cost)."""
    if required_value < 0:
        raise ValueError("required flow value must be nonnegative")
    if required_value == 0:
        return {}, 0
    graph = nx.DiGraph()
    graph.add_nodes_from(range(net.num_nodes))
    for e in net.edges:
        if graph.has_edge(e.tail, e.head):
            raise ValueError("parallel edges are not supported")
        graph.add_edge(e.tail, e.head, capacity=e.capacity, weight=e.cost)
    graph.nodes[net.source]["demand"] = -required_value
    graph.nodes[net.sink]["demand"] = required_value
    try:
        flow = nx.min_cost_flow(graph)
    except nx.NetworkXUnfeasible:
        return None
    result = {
        (u, v): f
        for u, adj in flow.items()
        for v, f in adj.items()
        if f > 0
    }
    cost = sum(f * graph[u][v]["weight"] for (u, v), f in result.items())
    return result, cost


# --- shared plumbing ---------------------------------------------------------


@dataclass(frozen=True)
class BriberyInstance:
    election: Election
    vector: ScoringVector
    preferred: int
    budget: int


@dataclass(frozen=True)
class VoterPartition:
    """Indices of the three voter groups a bribery solver distinguishes.

    For (0,...,0,-beta,-alpha): V1 ranks p last, V2 ranks p second-to-last,
    V3 is the remainder.  For (1,0,...,0,-1): V1 ranks p last, V2 ranks p
    neither first nor last, V3 ranks p first.
    """

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    v3: tuple[int, ...]


def partition_last_two(election: Election, preferred: int) -> VoterPartition:
    v1, v2, v3 = [], [], []
    for idx, ranking in enumerate(election.vote_list()):
        if ranking[-1] == preferred:
            v1.append(idx)
        elif len(ranking) >= 2 and ranking[-2] == preferred:
            v2.append(idx)
        else:
            v3.append(idx)
    return VoterPartition(tuple(v1), tuple(v2), tuple(v3))


def partition_front_back(election: Election, preferred: int) -> VoterPartition:
    v1, v2, v3 = [], [], []
    for idx, ranking in enumerate(election.vote_list()):
        if ranking[-1] == preferred:
            v1.append(idx)
        elif ranking[0] == preferred:
            v3.append(idx)
        else:
            v2.append(idx)
    return VoterPartition(tuple(v1), tuple(v2), tuple(v3))


def last_two_params(vector: ScoringVector) -> tuple[int, int]:
    """(beta, alpha) if `vector` matches (0,...,0,-beta,-alpha) up to affine
    equivalence, i.e. all but the last two coefficients coincide."""
    coeffs = vector.coefficients
    m = len(coeffs)
    if m >= 3 and any(c != coeffs[0] for c in coeffs[: m - 2]):
        raise WrongRuleError(f"{coeffs} is not of the form (0,...,0,-beta,-alpha)")
    if m == 1:
        return 0, 0
    return coeffs[0] - coeffs[-2], coeffs[0] - coeffs[-1]


def front_back_params(vector: ScoringVector) -> int:
    """Positive step a if `vector` is equivalent to (1,0,...,0,-1)."""
    coeffs = vector.coefficients
    m = len(coeffs)
    if m < 2:
        raise WrongRuleError("(1,0,...,0,-1) needs at least two candidates")
    middle = coeffs[1:-1]
    if any(c != coeffs[1] for c in middle):
        raise WrongRuleError(f"{coeffs} has a non-constant middle segment")
    if m == 2:
        if coeffs[0] <= coeffs[1]:
            raise WrongRuleError(f"{coeffs} is trivial, not (1,-1)-like")
        return coeffs[0] - coeffs[1]
    step = coeffs[0] - coeffs[1]
    if step <= 0 or coeffs[1] - coeffs[-1] != step:
        raise WrongRuleError(f"{coeffs} is not equivalent to (1,0,...,0,-1)")
    return step


def _verify_bribery(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    bribed: list[int],
    replacements: list[Ranking],
) -> None:
    flat = election.vote_list()
    modified = add_votes(
        delete_votes(election, [flat[i] for i in bribed]), replacements
    )
    if preferred not in winners(modified, vector):
        raise AssertionError("bribery certificate failed re-verification")


def _fill_ranking(m: int, preferred: int, tail: list[int]) -> Ranking:
    """p first, then all remaining candidates lowest-index-first, then `tail`."""
    used = {preferred, *tail}
    middle = [c for c in range(m) if c not in used]
    return tuple([preferred] + middle + tail)


# --- (0,...,0,-beta,-alpha) --------------------------------------------------


@dataclass(frozen=True)
class V3Bound:
    """Constant cap on useful bribes of voters ranking p outside the last two."""

    r: int
    cap: int


def v3_bound(alpha: int, beta: int) -> V3Bound:
    """cap = ceil((alpha/beta - 1)(r - 1) / (alpha/beta - r + 1)) + 1, r = ceil(alpha/beta).

    The +1 is guard slack on top of the threshold derivation; the randomized
    oracle-agreement suite is the safety net for this constant.
    """
    if beta < 1 or alpha < beta:
        raise WrongRuleError("v3 bound needs alpha >= beta >= 1")
    ratio = Fraction(alpha, beta)
    r = math.ceil(ratio)
    numerator = (ratio - 1) * (r - 1)
    denominator = ratio - r + 1
    return V3Bound(r, math.ceil(numerator / denominator) + 1)


def _bounded_multisets(counts: list[int], size: int):
    """All multisets of `size` items over types 0..len(counts)-1, respecting
    per-type multiplicity caps; yielded as count vectors, lexicographically."""

    def rec(idx: int, left: int, acc: list[int]):
        if idx == len(counts):
            if left == 0:
                yield tuple(acc)
            return
        remaining_cap = sum(counts[idx:])
        if left > remaining_cap:
            return
        for take in range(min(counts[idx], left) + 1):
            acc.append(take)
            yield from rec(idx + 1, left - take, acc)
            acc.pop()

    yield from rec(0, size, [])


def _two_candidate_bribery(
    election: Election, vector: ScoringVector, preferred: int, k: int
) -> SolverOutcome:
    # With two candidates every position is scoring; bribe rival-first votes.
    rival = 1 - preferred
    flat = election.vote_list()
    rival_first = [i for i, v in enumerate(flat) if v[0] == rival]
    take = rival_first[: min(k, len(rival_first))]
    replacement = (preferred, rival)
    for count in range(len(take) + 1):
        bribed = take[:count]
        modified = add_votes(
            delete_votes(election, [flat[i] for i in bribed]), [replacement] * count
        )
        if preferred in winners(modified, vector):
            return SolverOutcome(True, bribed=tuple(bribed), replacements=(replacement,) * count)
    return SolverOutcome(False)


def solve_bribery_last_two(
    election: Election, vector: ScoringVector, preferred: int, k: int
) -> SolverOutcome:
    """Bribery for (0,...,0,-beta,-alpha), alpha >= beta >= 0.

    Enumerates bribed V3 voters up to the v3_bound cap *by vote type* (only a
    V3 vote's last two positions matter), then for each (k1, k2, V3') split
    runs the four-budget DP; every returned certificate is re-verified.
    """
    beta, alpha = last_two_params(vector)
    if alpha < beta or beta < 0:
        raise WrongRuleError(f"need alpha >= beta >= 0, got beta={beta}, alpha={alpha}")
    m = election.num_candidates
    if preferred in winners(election, vector):
        return SolverOutcome(True)
    # not a winner yet, so the election is nonempty and k = 0 fails
    if k <= 0:
        return SolverOutcome(False)
    if m == 1:
        return SolverOutcome(True)
    if alpha == 0:
        # trivial rule: every candidate always ties
        return SolverOutcome(True)
    if m == 2:
        return _two_candidate_bribery(election, vector, preferred, k)

    flat = election.vote_list()
    part = partition_last_two(election, preferred)
    k = min(k, len(flat))

    if beta == 0:
        return _one_veto_greedy(election, vector, preferred, k, part, alpha)

    if k >= len(part.v1) + len(part.v2):
        bribed = list(part.v1 + part.v2)
        replacements = [_fill_ranking(m, preferred, []) for _ in bribed]
        _verify_bribery(election, vector, preferred, bribed, replacements)
        return SolverOutcome(True, bribed=tuple(bribed), replacements=tuple(replacements))

    rivals = [c for c in range(m) if c != preferred]
    rival_pos = {c: i for i, c in enumerate(rivals)}
    scores = score_all(election, vector)
    base_surpluses = [scores[c] - scores[preferred] for c in rivals]

    # per-rival deletion capacities
    cap_v1 = [0] * len(rivals)
    for idx in part.v1:
        cap_v1[rival_pos[flat[idx][-2]]] += 1
    cap_v2 = [0] * len(rivals)
    for idx in part.v2:
        cap_v2[rival_pos[flat[idx][-1]]] += 1

    # V3 vote types: only the last two positions matter for deletion effects
    v3_types: dict[tuple[int, int], list[int]] = {}
    for idx in part.v3:
        v3_types.setdefault((flat[idx][-2], flat[idx][-1]), []).append(idx)
    type_keys = sorted(v3_types)
    type_counts = [len(v3_types[t]) for t in type_keys]

    bound = v3_bound(alpha, beta)
    max_t = min(bound.cap, len(part.v3), k)

    for t in range(max_t + 1):
        for picked in _bounded_multisets(type_counts, t):
            gains = [0] * len(rivals)
            for type_idx, take in enumerate(picked):
                if not take:
                    continue
                second, last = type_keys[type_idx]
                gains[rival_pos[second]] += beta * take
                gains[rival_pos[last]] += alpha * take
            lo = max(0, (k - t) - len(part.v2))
            hi = min(len(part.v1), k - t)
            for k1 in range(lo, hi + 1):
                k2 = k - t - k1
                adjusted = tuple(
                    base_surpluses[i] + gains[i] - alpha * k1 - beta * k2
                    for i in range(len(rivals))
                )
                witness = _bribery_dp(adjusted, k, k1, k2, cap_v1, cap_v2, beta, alpha)
                if witness is None:
                    continue
                xs, ys, zs, ws = witness
                bribed: list[int] = []
                for i, z in enumerate(zs):
                    matching = [idx for idx in part.v1 if rival_pos[flat[idx][-2]] == i]
                    bribed.extend(matching[:z])
                for i, w in enumerate(ws):
                    matching = [idx for idx in part.v2 if rival_pos[flat[idx][-1]] == i]
                    bribed.extend(matching[:w])
                for type_idx, take in enumerate(picked):
                    bribed.extend(v3_types[type_keys[type_idx]][:take])
                replacements = _replacement_votes(xs, ys, k, m, preferred, rivals, alpha, beta)
                _verify_bribery(election, vector, preferred, bribed, replacements)
                return SolverOutcome(
                    True, bribed=tuple(sorted(bribed)), replacements=tuple(replacements)
                )
    return SolverOutcome(False)


def _one_veto_greedy(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    part: VoterPartition,
    alpha: int,
) -> SolverOutcome:
    """beta = 0 degenerate case: only last positions score, so bribe voters
    vetoing p first and spend the replacement vetoes greedily on the leaders."""
    m = election.num_candidates
    flat = election.vote_list()
    bribed = list(part.v1[: min(k, len(part.v1))])
    scores = list(score_all(election, vector).scores)
    for idx in bribed:
        scores[preferred] += alpha
    replacements: list[Ranking] = []
    for _ in bribed:
        target = max(
            (c for c in range(m) if c != preferred),
            key=lambda c: (scores[c], -c),
        )
        scores[target] -= alpha
        replacements.append(_fill_ranking(m, preferred, [target]))
    if max(scores[c] for c in range(m) if c != preferred) > scores[preferred]:
        return SolverOutcome(False)
    if bribed:
        _verify_bribery(election, vector, preferred, bribed, replacements)
    return SolverOutcome(True, bribed=tuple(bribed), replacements=tuple(replacements))


def _bribery_dp(
    surpluses: tuple[int, ...],
    k: int,
    k1: int,
    k2: int,
    cap_v1: list[int],
    cap_v2: list[int],
    beta: int,
    alpha: int,
):
    """Four-budget feasibility predicate with witness recovery.

    State after peeling rivals l..i+1: (i, k_beta, k_alpha, k1', k2').  With no
    rivals left it holds iff all four counters are zero.  Per rival i the
    transition picks x_i, y_i (replacement-ballot placements, x+y <= k) and
    z_i <= cap_v1[i], w_i <= cap_v2[i] (bribed voters whose deletion feeds
    rival i) with s_i - beta*x - alpha*y + beta*z + alpha*w <= 0.
    """
    n = len(surpluses)
    memo: dict[tuple[int, int, int, int, int], tuple[int, int, int, int] | None] = {}

    def feasible(i: int, k_beta: int, k_alpha: int, r1: int, r2: int) -> bool:
        if i == 0:
            return k_beta == k_alpha == r1 == r2 == 0
        key = (i, k_beta, k_alpha, r1, r2)
        if key in memo:
            return memo[key] is not None
        s = surpluses[i - 1]
        for x in range(min(k, k_beta) + 1):
            for y in range(min(k - x, k_alpha) + 1):
                relief = s - beta * x - alpha * y
                if relief > 0:
                    continue
                for z in range(min(cap_v1[i - 1], r1) + 1):
                    if relief + beta * z > 0:
                        break
                    for w in range(min(cap_v2[i - 1], r2) + 1):
                        if relief + beta * z + alpha * w > 0:
                            break
                        if feasible(i - 1, k_beta - x, k_alpha - y, r1 - z, r2 - w):
                            memo[key] = (x, y, z, w)
                            return True
        memo[key] = None
        return False

    if not feasible(n, k, k, k1, k2):
        return None
    xs, ys, zs, ws = [], [], [], []
    state = (n, k, k, k1, k2)
    for i in range(n, 0, -1):
        x, y, z, w = memo[(i, state[1], state[2], state[3], state[4])]  # type: ignore[misc]
        xs.append(x)
        ys.append(y)
        zs.append(z)
        ws.append(w)
        state = (i - 1, state[1] - x, state[2] - y, state[3] - z, state[4] - w)
    xs.reverse()
    ys.reverse()
    zs.reverse()
    ws.reverse()
    return xs, ys, zs, ws


def _replacement_votes(
    xs: list[int],
    ys: list[int],
    k: int,
    m: int,
    preferred: int,
    rivals: list[int],
    alpha: int,
    beta: int,
) -> list[Ranking]:
    """Turn next-to-last/last placement counts into k concrete ballots."""
    if alpha > beta:
        profile = CoefficientProfile((0, -beta, -alpha), (m - 3, 1, 1))
        assignment = [[xs[i], ys[i]] for i in range(len(rivals))]
    else:
        # beta == alpha: the two tail slots are one deficit class
        profile = CoefficientProfile((0, -alpha), (m - 3, 2))
        assignment = [[xs[i] + ys[i]] for i in range(len(rivals))]
    implicit = _assignment_to_votes(assignment, profile, k)
    ids = [preferred] + rivals
    return [tuple(ids[slot] for slot in ballot) for ballot in implicit]


# --- (1,0,...,0,-1) ----------------------------------------------------------


def solve_bribery_front_back(
    election: Election, vector: ScoringVector, preferred: int, k: int
) -> SolverOutcome:
    """Bribery for rules equivalent to (1,0,...,0,-1).

    Case 1 (k <= |V1|): greedy deletion of p-last votes topped by the current
    leader, then greedy vetoes.  Case 2 (k >= |V1|+|V2|): always feasible.
    Case 3: min-cost flow; feasible iff a flow saturating every source edge
    costs at most k - |V1|.
    """
    front_back_params(vector)
    m = election.num_candidates
    if preferred in winners(election, vector):
        return SolverOutcome(True)
    if k <= 0:
        return SolverOutcome(False)
    flat = election.vote_list()
    k = min(k, len(flat))
    part = partition_front_back(election, preferred)

    # canonical (1,0,...,0,-1) scores; equivalence keeps the winner set
    canonical = ScoringVector((1,) + (0,) * (m - 2) + (-1,)) if m >= 2 else vector
    scores = list(score_all(election, canonical).scores)

    if k >= len(part.v1) + len(part.v2):
        bribed = list(part.v1 + part.v2)
        replacements = [_fill_ranking(m, preferred, []) for _ in bribed]
        _verify_bribery(election, vector, preferred, bribed, replacements)
        return SolverOutcome(True, bribed=tuple(bribed), replacements=tuple(replacements))

    if k <= len(part.v1):
        return _front_back_case1(election, vector, preferred, k, part, scores)

    return _front_back_flow(election, vector, preferred, k, part, scores)


def _front_back_case1(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    part: VoterPartition,
    scores: list[int],
) -> SolverOutcome:
    m = election.num_candidates
    flat = election.vote_list()
    remaining = list(part.v1)
    bribed: list[int] = []
    for _ in range(k):
        # delete the p-last vote whose top candidate currently leads
        pick = max(remaining, key=lambda idx: (scores[flat[idx][0]], -flat[idx][0], -idx))
        remaining.remove(pick)
        bribed.append(pick)
        scores[flat[pick][0]] -= 1
        scores[preferred] += 1
    replacements: list[Ranking] = []
    for _ in range(k):
        target = max(
            (c for c in range(m) if c != preferred),
            key=lambda c: (scores[c], -c),
        )
        scores[target] -= 1
        scores[preferred] += 1
        replacements.append(_fill_ranking(m, preferred, [target]))
    if max(scores[c] for c in range(m) if c != preferred) > scores[preferred]:
        return SolverOutcome(False)
    bribed.sort()
    _verify_bribery(election, vector, preferred, bribed, replacements)
    return SolverOutcome(True, bribed=tuple(bribed), replacements=tuple(replacements))


def _front_back_flow(
    election: Election,
    vector: ScoringVector,
    preferred: int,
    k: int,
    part: VoterPartition,
    scores: list[int],
) -> SolverOutcome:
    """|V1| < k < |V1|+|V2|: bribe all of V1 plus k-|V1| voters from V2.

    One node per rival plus a veto node.  Source edges carry each rival's score
    over V2 u V3 (shifted to stay nonnegative) and must saturate; transferring
    a point along a->b (cost 1) deletes one V2 vote a > ... > b; the veto node
    absorbs up to k replacement vetoes.
    """
    m = election.num_candidates
    flat = election.vote_list()
    rivals = [c for c in range(m) if c != preferred]

    s23 = list(scores)
    for idx in part.v1:
        s23[flat[idx][0]] -= 1
        s23[preferred] += 1  # p no longer last there; bookkeeping only
    shift = len(part.v2) + len(part.v3) + k

    node = {c: i for i, c in enumerate(rivals)}
    source = len(rivals)
    sink = source + 1
    veto = sink + 1
    edges: list[FlowEdge] = []
    for c in rivals:
        edges.append(FlowEdge(source, node[c], s23[c] + shift, 0))
        edges.append(FlowEdge(node[c], sink, len(part.v3) + k + shift, 0))
        edges.append(FlowEdge(node[c], veto, k, 0))
    edges.append(FlowEdge(veto, sink, k, 0))
    pair_votes: dict[tuple[int, int], list[int]] = {}
    for idx in part.v2:
        pair_votes.setdefault((flat[idx][0], flat[idx][-1]), []).append(idx)
    for (a, b), indices in sorted(pair_votes.items()):
        edges.append(FlowEdge(node[a], node[b], len(indices), 1))
    net = FlowNetwork(veto + 1, source, sink, tuple(edges))

    required = sum(s23[c] + shift for c in rivals)
    solved = min_cost_flow(net, required)
    budget = k - len(part.v1)
    if solved is None:
        return SolverOutcome(False)
    flow, cost = solved
    if cost > budget:
        return SolverOutcome(False)

    bribed = list(part.v1)
    vetoes: list[int] = []
    for (a, b), indices in sorted(pair_votes.items()):
        transferred = flow.get((node[a], node[b]), 0)
        bribed.extend(indices[:transferred])
    # pad to exactly k bribes with further V2 voters; their replacement re-vetoes
    # the padded vote's own last candidate, a strict improvement for p
    pad_count = budget - cost
    unbribed_v2 = [idx for idx in part.v2 if idx not in set(bribed)]
    pads = unbribed_v2[:pad_count]
    bribed.extend(pads)
    replacements: list[Ranking] = []
    for c in rivals:
        for _ in range(flow.get((node[c], veto), 0)):
            vetoes.append(c)
    for c in vetoes:
        replacements.append(_fill_ranking(m, preferred, [c]))
    for idx in pads:
        replacements.append(_fill_ranking(m, preferred, [flat[idx][-1]]))
    spare = len(bribed) - len(replacements)
    filler = min(rivals)
    replacements.extend(_fill_ranking(m, preferred, [filler]) for _ in range(spare))
    bribed.sort()
    _verify_bribery(election, vector, preferred, bribed, replacements)
    return SolverOutcome(True, bribed=tuple(bribed), replacements=tuple(replacements))
