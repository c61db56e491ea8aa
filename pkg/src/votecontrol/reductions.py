"""Hardness-reduction machinery: 3DM normalization and blow-ups, the
score-realization construction, and generators that compile three-dimensional
matching instances into CCDV / bribery instances for rules of the form
(0,...,0,-gamma,-beta,-alpha).

Every generator records a manifest mapping each emitted vote group to its role
(tuple vote, swapped duplicate, setup-loss group, dummy sink) so tests can
audit the score plan without re-deriving it, and asserts the assembled
election's relative scores against the intended table before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bribery import BriberyInstance
from .ccdv import CcdvInstance
from .election import Election, Ranking, ScoringVector, score_all
from .errors import DimensionError, RealizationError


# --- 3DM instances -----------------------------------------------------------


@dataclass(frozen=True)
class ThreeDmInstance:
    """Disjoint equal-size ground sets and a multiset of triples."""

    x_elems: tuple[str, ...]
    y_elems: tuple[str, ...]
    z_elems: tuple[str, ...]
    triples: tuple[tuple[str, str, str], ...]

    def __post_init__(self) -> None:
        if not (len(self.x_elems) == len(self.y_elems) == len(self.z_elems)):
            raise ValueError("ground sets must have equal sizes")
        sets = [set(self.x_elems), set(self.y_elems), set(self.z_elems)]
        if any(len(s) != len(e) for s, e in zip(sets, (self.x_elems, self.y_elems, self.z_elems))):
            raise ValueError("ground-set elements must be distinct")
        if sets[0] & sets[1] or sets[0] & sets[2] or sets[1] & sets[2]:
            raise ValueError("ground sets must be pairwise disjoint")
        for t in self.triples:
            if t[0] not in sets[0] or t[1] not in sets[1] or t[2] not in sets[2]:
                raise ValueError(f"triple {t} is not in X x Y x Z")

    @property
    def size(self) -> int:
        return len(self.x_elems)

    def degrees(self) -> dict[str, int]:
        deg = {e: 0 for e in self.x_elems + self.y_elems + self.z_elems}
        for t in self.triples:
            for e in t:
                deg[e] += 1
        return deg

    def is_regular(self, r: int) -> bool:
        return all(d == r for d in self.degrees().values())


@dataclass(frozen=True)
class CoverCertificate:
    """|X| triples touching every element (hence touching each exactly once)."""

    indices: tuple[int, ...]
    triples: tuple[tuple[str, str, str], ...]


@dataclass(frozen=True)
class NormalizationResult:
    instance: ThreeDmInstance
    forced: tuple[tuple[str, str, str], ...]
    trivially_negative: bool


def threedm_from_json(doc: dict) -> ThreeDmInstance:
    try:
        return ThreeDmInstance(
            tuple(str(e) for e in doc["X"]),
            tuple(str(e) for e in doc["Y"]),
            tuple(str(e) for e in doc["Z"]),
            tuple((str(t[0]), str(t[1]), str(t[2])) for t in doc["M"]),
        )
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed 3DM document: {exc}") from exc


def threedm_to_json(inst: ThreeDmInstance) -> dict:
    return {
        "X": list(inst.x_elems),
        "Y": list(inst.y_elems),
        "Z": list(inst.z_elems),
        "M": [list(t) for t in inst.triples],
    }


def _positive_singleton() -> ThreeDmInstance:
    t = ("x+", "y+", "z+")
    return ThreeDmInstance(("x+",), ("y+",), ("z+",), (t, t, t))


def _gadgetize(inst: ThreeDmInstance) -> ThreeDmInstance:
    """Raise every degree-2 element to degree 3 with the four-triple gadget.

    Degree-2 elements are paired up across X, Y, Z (their counts agree); each
    pack (x, y, z) gains primed twins x', y', z' and triples (x,y',z'),
    (x',y,z'), (x',y',z), (x',y',z').  Any cover must use (x',y',z'), so
    positivity is untouched.
    """
    deg = inst.degrees()
    if any(d not in (2, 3) for d in deg.values()):
        raise ValueError("gadget step expects only degree-2 and degree-3 elements")
    xs = sorted(e for e in inst.x_elems if deg[e] == 2)
    ys = sorted(e for e in inst.y_elems if deg[e] == 2)
    zs = sorted(e for e in inst.z_elems if deg[e] == 2)
    assert len(xs) == len(ys) == len(zs)
    new_x = list(inst.x_elems)
    new_y = list(inst.y_elems)
    new_z = list(inst.z_elems)
    triples = list(inst.triples)
    for i, (x, y, z) in enumerate(zip(xs, ys, zs)):
        px, py, pz = f"{x}'g{i}", f"{y}'g{i}", f"{z}'g{i}"
        new_x.append(px)
        new_y.append(py)
        new_z.append(pz)
        triples.extend([(x, py, pz), (px, y, pz), (px, py, z), (px, py, pz)])
    out = ThreeDmInstance(tuple(new_x), tuple(new_y), tuple(new_z), tuple(triples))
    assert out.is_regular(3)
    return out


def canonical_negative() -> ThreeDmInstance:
    """A fixed 3-regular instance with no cover: the gadgetized 2-regular
    4-cycle (every cross pair of its triples collides in some coordinate)."""
    base = ThreeDmInstance(
        ("x1", "x2"),
        ("y1", "y2"),
        ("z1", "z2"),
        (("x1", "y1", "z1"), ("x1", "y2", "z2"), ("x2", "y1", "z2"), ("x2", "y2", "z1")),
    )
    return _gadgetize(base)


def normalize_3dm(inst: ThreeDmInstance) -> NormalizationResult:
    """Force an equivalent instance where every element has degree exactly 3.

    Degree-1 elements pin their triple into the cover; the triple and all of
    its elements' other triples are pruned (iterated).  A pruned-to-zero
    element certifies a negative instance, reported as the canonical negative
    with the flag set.  Remaining degree-2 elements are lifted by the gadget.
    """
    deg = inst.degrees()
    if any(d < 1 or d > 3 for d in deg.values()):
        raise ValueError("normalization expects every element in 1..3 triples")
    xs, ys, zs = list(inst.x_elems), list(inst.y_elems), list(inst.z_elems)
    triples = list(inst.triples)
    forced: list[tuple[str, str, str]] = []
    while True:
        deg = {e: 0 for e in xs + ys + zs}
        for t in triples:
            for e in t:
                deg[e] += 1
        if any(d == 0 for d in deg.values()):
            return NormalizationResult(canonical_negative(), tuple(forced), True)
        singles = sorted(e for e, d in deg.items() if d == 1)
        if not singles:
            break
        elem = singles[0]
        pick = next(t for t in triples if elem in t)
        forced.append(pick)
        x, y, z = pick
        xs.remove(x)
        ys.remove(y)
        zs.remove(z)
        triples = [t for t in triples if x not in t and y not in t and z not in t]
    if not xs:
        return NormalizationResult(_positive_singleton(), tuple(forced), False)
    out = _gadgetize(ThreeDmInstance(tuple(xs), tuple(ys), tuple(zs), tuple(triples)))
    return NormalizationResult(out, tuple(forced), False)


def to_f3dm(inst: ThreeDmInstance, factor: int) -> ThreeDmInstance:
    """Repeat every triple `factor` times: degree 3 becomes 3*factor, cover
    existence is untouched."""
    if factor < 1:
        raise ValueError("blow-up factor must be >= 1")
    return ThreeDmInstance(
        inst.x_elems, inst.y_elems, inst.z_elems, inst.triples * factor
    )


def pad_disjoint(inst: ThreeDmInstance, copies: int) -> ThreeDmInstance:
    """Disjoint union of `copies` renamed copies: |X| grows by the factor,
    3-regularity and positivity are preserved (cover each copy separately)."""
    if copies < 1:
        raise ValueError("need at least one copy")
    if copies == 1:
        return inst

    def tag(name: str, i: int) -> str:
        return f"c{i}|{name}"

    xs, ys, zs, triples = [], [], [], []
    for i in range(copies):
        xs.extend(tag(e, i) for e in inst.x_elems)
        ys.extend(tag(e, i) for e in inst.y_elems)
        zs.extend(tag(e, i) for e in inst.z_elems)
        triples.extend(
            (tag(t[0], i), tag(t[1], i), tag(t[2], i)) for t in inst.triples
        )
    return ThreeDmInstance(tuple(xs), tuple(ys), tuple(zs), tuple(triples))


# --- score realization -------------------------------------------------------


@dataclass(frozen=True)
class ScoreRealizationRequest:
    """Per-candidate coefficient-multiplicity targets (signed), plus the margin
    by which the designated sink candidate (the last one) must trail."""

    num_candidates: int
    targets: tuple[tuple[int, ...], ...]
    margin: int = 0

    def __post_init__(self) -> None:
        if len(self.targets) != self.num_candidates - 1:
            raise ValueError("need one target row per non-sink candidate")
        if any(len(row) != self.num_candidates for row in self.targets):
            raise ValueError("each target row needs one entry per coefficient")


def _bezout_combo(values: list[int]) -> tuple[int, dict[int, int]]:
    """gcd of `values` plus one integer combination achieving it."""
    g, combo = values[0], {0: 1}
    if g < 0:
        g, combo = -g, {0: -1}
    for idx in range(1, len(values)):
        g2, u, w = _ext_gcd(g, values[idx])
        combo = {q: c * u for q, c in combo.items()}
        combo[idx] = combo.get(idx, 0) + w
        g = g2
    assert sum(c * values[q] for q, c in combo.items()) == g
    return g, combo


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, u, w = _ext_gcd(b, a % b)
    return g, w, u - (a // b) * w


def realize_scores(
    req: ScoreRealizationRequest, vector: ScoringVector
) -> tuple[list[tuple[Ranking, int]], int]:
    """Emit votes whose scores are o + sum_i targets[c][i]*alpha_i for every
    non-sink candidate (one shared offset o), with the sink candidate trailing
    everyone by more than margin * alpha_1.

    Construction: blocks of sink-pinned-last rotations (relative-score neutral
    among the others) carry single candidate<->sink transpositions, each worth
    one signed unit of alpha_q - alpha_m; plain rotation blocks then sink the
    last candidate as far as the margin requires.
    """
    m = req.num_candidates
    if len(vector) != m:
        raise DimensionError("vector length must match the candidate count")
    if m == 1:
        return [], 0
    sink = m - 1
    wanted = [
        sum(row[i] * vector[i] for i in range(m)) for row in req.targets
    ]
    deltas = [vector[q] - vector[sink] for q in range(m - 1)]
    nonzero = [d for d in deltas if d]
    if not nonzero:
        raise RealizationError("a constant vector cannot separate the sink candidate")
    g, combo = _bezout_combo(nonzero)
    nonzero_pos = [q for q in range(m - 1) if deltas[q]]

    votes: dict[Ranking, int] = {}

    def emit(ranking: Ranking, count: int = 1) -> None:
        if count:
            votes[ranking] = votes.get(ranking, 0) + count

    def rotation(shift: int) -> list[int]:
        return [(pos + shift) % (m - 1) for pos in range(m - 1)] + [sink]

    # decompose each candidate's offset-relative target into signed units
    reference = wanted[0]
    for c in range(m - 1):
        diff = wanted[c] - reference
        if diff % g:
            raise RealizationError(
                f"target difference {diff} is not a multiple of the coefficient "
                f"difference gcd {g}"
            )
        scale = diff // g
        for idx, coeff in combo.items():
            units = scale * coeff
            q = nonzero_pos[idx]
            if units > 0:
                # +1 unit for c == -1 unit for every other non-sink candidate
                for other in range(m - 1):
                    if other != c:
                        _emit_lowered(votes, m, other, q, units)
            elif units < 0:
                _emit_lowered(votes, m, c, q, -units)

    # sink margin: plain rotation blocks drop the sink by sum(deltas) each
    interim = Election.from_counts(m, votes.items()) if votes else None
    scores = score_all(interim, vector).scores if interim else (0,) * m
    floor = min(scores[c] for c in range(m - 1))
    need = req.margin * vector[0] + 1 - (floor - scores[sink])
    sink_gain = sum(deltas)
    blocks = max(0, -(-need // sink_gain))
    for shift in range(m - 1):
        emit(tuple(rotation(shift)), blocks)

    final = Election.from_counts(m, votes.items())
    table = score_all(final, vector).scores
    offset = table[0] - wanted[0]
    for c in range(m - 1):
        if table[c] - wanted[c] != offset:
            raise AssertionError("realized scores drifted from the target table")
    if any(table[c] - table[sink] <= req.margin * vector[0] for c in range(m - 1)):
        raise AssertionError("sink candidate margin not achieved")
    return list(final.votes), offset


def _emit_lowered(votes: dict[Ranking, int], m: int, candidate: int, q: int, count: int) -> None:
    """One block per unit: the m-1 sink-last rotations, with `candidate`
    traded into the sink seat in the rotation that put it at position q."""
    if count <= 0:
        return
    sink = m - 1
    shift = (candidate - q) % (m - 1)
    for s in range(m - 1):
        ranking = [(pos + s) % (m - 1) for pos in range(m - 1)] + [sink]
        if s == shift:
            ranking[q] = sink
            ranking[-1] = candidate
        key = tuple(ranking)
        votes[key] = votes.get(key, 0) + count


# --- reductions to CCDV and bribery -----------------------------------------


class _ReductionNames:
    """Candidate roster shared by both reductions: p, the 3DM elements, the
    per-tuple gate candidates, three dummies, and (bribery only) blockers."""

    def __init__(self, inst: ThreeDmInstance, blockers: bool):
        self.elements = list(inst.x_elems) + list(inst.y_elems) + list(inst.z_elems)
        n = len(inst.triples)
        self.names: list[str] = ["p"] + self.elements
        self.names += [f"S{i}" for i in range(n)]
        self.names += [f"S'{i}" for i in range(n)]
        self.names += ["d1", "d2", "d3"]
        if blockers:
            self.names += ["b_alpha", "b_beta", "b_gamma"]
        if len(set(self.names)) != len(self.names):
            raise ValueError("3DM element names collide with reserved candidate names")
        self.index = {name: i for i, name in enumerate(self.names)}
        self.p = 0
        self.gate = [self.index[f"S{i}"] for i in range(n)]
        self.gate_prime = [self.index[f"S'{i}"] for i in range(n)]
        self.dummies = [self.index[d] for d in ("d1", "d2", "d3")]

    @property
    def count(self) -> int:
        return len(self.names)


def _tail_vote(m: int, occupants: tuple[int, int, int]) -> Ranking:
    """All-zero block in ascending order, then the three scoring positions."""
    zeros = [c for c in range(m) if c not in occupants]
    return tuple(zeros) + occupants


def _p_first_tail_vote(m: int, p: int, occupants: tuple[int, int, int]) -> Ranking:
    zeros = [c for c in range(m) if c != p and c not in occupants]
    return (p,) + tuple(zeros) + occupants


def _loss_vote(m: int, p: int, dummies: list[int], target: int, slot: int) -> Ranking:
    """p first; `target` in the tail slot worth -delta (slot 0/1/2 for
    -gamma/-beta/-alpha); dummies fill the other two tail positions."""
    fill = [d for d in dummies if d != target][:2]
    tail = [0, 0, 0]
    tail[slot] = target
    rest = iter(fill)
    for i in range(3):
        if i != slot:
            tail[i] = next(rest)
    return _p_first_tail_vote(m, p, tuple(tail))


def _tuple_votes_ccdv(names: _ReductionNames, inst: ThreeDmInstance) -> list[tuple[str, Ranking]]:
    m = names.count
    out = []
    for i, (x, y, z) in enumerate(inst.triples):
        s, sp = names.gate[i], names.gate_prime[i]
        p = names.p
        out.append((f"tuple{i}:x", _tail_vote(m, (s, p, names.index[x]))))
        out.append((f"tuple{i}:y", _tail_vote(m, (s, p, names.index[y]))))
        out.append((f"tuple{i}:z", _tail_vote(m, (sp, p, names.index[z]))))
        out.append((f"tuple{i}:gate", _tail_vote(m, (sp, p, s))))
    return out


def _check_coefficients(alpha: int, beta: int, gamma: int) -> None:
    if not (0 < gamma <= beta <= alpha and gamma < alpha):
        raise ValueError(
            "reduction needs 0 < gamma <= beta <= alpha with gamma < alpha; "
            f"got gamma={gamma}, beta={beta}, alpha={alpha}"
        )


def _loss_schedule(loss: int, kind: str, alpha: int, beta: int, gamma: int, k: int):
    """Decompose one candidate's required loss against p into (slot, count)
    groups of single-loss setup votes; exact by construction."""
    if loss < 0:
        raise ValueError("loss targets must be nonnegative; pad the instance")
    if gamma == 1:
        return [(0, loss)]  # unit losses in the -gamma slot
    # here beta >= gamma >= 2
    if kind == "element":  # loss = 7k*beta - 2*alpha
        return [(2, beta - 2), (1, 7 * k - alpha)]
    if kind == "gate-min-alpha":  # loss = 7k*beta - alpha
        return [(2, beta - 1), (1, 7 * k - alpha)]
    if kind == "gate-min-2gamma":  # loss = 7k*beta - 2*gamma
        return [(0, 2 * (beta - 1)), (1, 7 * k - 2 * gamma)]
    if kind == "gate-prime":  # loss = 7k*beta - gamma
        return [(0, beta - 1), (1, 7 * k - gamma)]
    raise ValueError(f"unknown schedule kind {kind}")


SLOT_DELTAS = ("gamma", "beta", "alpha")


@dataclass(frozen=True)
class CcdvReduction:
    instance: CcdvInstance
    names: tuple[str, ...]
    threedm: ThreeDmInstance
    manifest: dict

    def cover_to_deletions(self, cover: CoverCertificate) -> list[int]:
        """The winning deletion set a cover prescribes: the x/y/z votes of the
        covered tuples plus the gate vote of every uncovered tuple."""
        e = self.instance.election
        m = e.num_candidates
        names = _ReductionNames(self.threedm, blockers=False)
        rankings: list[Ranking] = []
        covered = set(cover.indices)
        for i, (x, y, z) in enumerate(self.threedm.triples):
            s, sp = names.gate[i], names.gate_prime[i]
            if i in covered:
                rankings.append(_tail_vote(m, (s, names.p, names.index[x])))
                rankings.append(_tail_vote(m, (s, names.p, names.index[y])))
                rankings.append(_tail_vote(m, (sp, names.p, names.index[z])))
            else:
                rankings.append(_tail_vote(m, (sp, names.p, s)))
        indices: list[int] = []
        used: dict[Ranking, int] = {}
        for ranking in rankings:
            skip = used.get(ranking, 0)
            indices.append(e.indices_of(ranking, skip + 1)[skip])
            used[ranking] = skip + 1
        return sorted(indices)


def _min_padding(k: int, alpha: int, beta: int, gamma: int) -> int:
    """Smallest disjoint-copy factor making every loss target and schedule
    count nonnegative ("wlog 7k >= alpha")."""
    factor = 1
    while True:
        kk = factor * k
        if gamma == 1:
            if 7 * kk * beta >= 2 * alpha:
                return factor
        else:
            if 7 * kk >= alpha and 7 * kk * beta >= 2 * alpha:
                return factor
        factor += 1


def reduce_3dm_to_ccdv(
    inst: ThreeDmInstance, alpha: int, beta: int, gamma: int, auto_pad: bool = True
) -> CcdvReduction:
    """Compile a 3-regular 3DM instance into CCDV for (0,...,0,-gamma,-beta,-alpha).

    Positive instances admit a 5k-deletion certificate (see
    cover_to_deletions); negative instances admit none.  Setup votes place p
    first, so deleting them never profits the controller.
    """
    _check_coefficients(alpha, beta, gamma)
    if not inst.is_regular(3):
        raise ValueError("reduction needs a normalized (3-regular) instance")
    factor = _min_padding(inst.size, alpha, beta, gamma)
    if factor > 1:
        if not auto_pad:
            raise ValueError(f"instance too small for these coefficients; pad by {factor}")
        inst = pad_disjoint(inst, factor)
    k = inst.size
    names = _ReductionNames(inst, blockers=False)
    m = names.count
    vector = ScoringVector((0,) * (m - 3) + (-gamma, -beta, -alpha))

    groups: list[dict] = []
    counts: dict[Ranking, int] = {}

    def emit(role: str, ranking: Ranking, count: int) -> None:
        if count <= 0:
            return
        counts[ranking] = counts.get(ranking, 0) + count
        groups.append({"role": role, "ranking": ranking, "count": count})

    for role, ranking in _tuple_votes_ccdv(names, inst):
        emit(role, ranking, 1)

    min_term = min(alpha, 2 * gamma)
    losses: dict[int, tuple[int, str]] = {}
    for x in names.elements:
        losses[names.index[x]] = (7 * k * beta - 2 * alpha, "element")
    gate_kind = "gate-min-alpha" if min_term == alpha else "gate-min-2gamma"
    for s in names.gate:
        losses[s] = (7 * k * beta - min_term, gate_kind)
    for sp in names.gate_prime:
        losses[sp] = (7 * k * beta - gamma, "gate-prime")

    deltas = {0: gamma, 1: beta, 2: alpha}
    for target, (loss, kind) in losses.items():
        for slot, count in _loss_schedule(loss, kind, alpha, beta, gamma, k):
            emit(
                f"setup-loss:{names.names[target]}:-{SLOT_DELTAS[slot]}",
                _loss_vote(m, names.p, names.dummies, target, slot),
                count,
            )

    budget = 5 * k
    _emit_dummy_sinks(emit, counts, names, vector, budget, alpha, gamma)

    election = Election.from_counts(m, counts.items())
    _assert_relative_scores(election, vector, names, k, alpha, beta, gamma, blockers=False)

    manifest = {
        "kind": "ccdv",
        "k": k,
        "pad_factor": factor,
        "alpha": alpha,
        "beta": beta,
        "gamma": gamma,
        "budget": budget,
        "candidates": list(names.names),
        "groups": [
            {"role": g["role"], "ranking": [names.names[c] for c in g["ranking"]], "count": g["count"]}
            for g in groups
        ],
    }
    return CcdvReduction(
        CcdvInstance(election, vector, names.p, budget),
        tuple(names.names),
        inst,
        manifest,
    )


def _emit_dummy_sinks(emit, counts, names, vector, budget, alpha, gamma) -> None:
    """Sink d1..d3 far enough below p that no <=budget deletion lifts them:
    each deletion raises a dummy by at most alpha and never lowers p."""
    m = names.count
    election = Election.from_counts(m, counts.items())
    table = score_all(election, vector).scores
    worst = max(table[d] for d in names.dummies)
    need = table[names.p] - worst
    shortfall = budget * alpha + 1 - need
    blocks = max(0, -(-shortfall // gamma))  # d1 sits in the -gamma slot
    sink_vote = _p_first_tail_vote(m, names.p, tuple(names.dummies))
    emit("dummy-sink", sink_vote, blocks)


def _assert_relative_scores(election, vector, names, k, alpha, beta, gamma, blockers) -> None:
    table = score_all(election, vector).scores
    p = table[names.p]
    min_term = min(alpha, 2 * gamma)
    for x in names.elements:
        assert table[names.index[x]] - p == 5 * k * beta - alpha
    for s in names.gate:
        assert table[s] - p == 5 * k * beta + min_term - alpha - 2 * gamma
    for sp in names.gate_prime:
        assert table[sp] - p == 5 * k * beta - gamma
    if blockers:
        for heart, value in (("b_alpha", alpha), ("b_beta", beta), ("b_gamma", gamma)):
            assert table[names.index[heart]] - p == 5 * k * (beta + value)


@dataclass(frozen=True)
class BriberyReduction:
    instance: BriberyInstance
    names: tuple[str, ...]
    threedm: ThreeDmInstance
    manifest: dict

    def cover_to_bribery(self, cover: CoverCertificate) -> tuple[list[int], list[Ranking]]:
        """Bribe the cover-prescribed votes; replacements seat p first and the
        blockers in the three scoring positions."""
        e = self.instance.election
        m = e.num_candidates
        names = _ReductionNames(self.threedm, blockers=True)
        ccdv_twin = CcdvReduction(
            CcdvInstance(e, self.instance.vector, names.p, self.instance.budget),
            self.names,
            self.threedm,
            {},
        )
        bribed = ccdv_twin.cover_to_deletions(cover)
        tail = (
            names.index["b_gamma"],
            names.index["b_beta"],
            names.index["b_alpha"],
        )
        replacement = _p_first_tail_vote(m, names.p, tail)
        return bribed, [replacement] * self.instance.budget


def _decompose_loss(loss: int, gamma: int, alpha: int) -> tuple[int, int]:
    """loss = a*gamma + b*alpha with a, b >= 0, preferring few alpha votes."""
    g = gcd(gamma, alpha)
    if loss % g:
        raise RealizationError(f"loss {loss} not in the lattice of gamma={gamma}, alpha={alpha}")
    gg, aa = gamma // g, alpha // g
    b = (loss // g) * pow(aa, -1, gg) % gg if gg > 1 else 0
    rem = loss - b * alpha
    if rem < 0:
        raise RealizationError(f"loss {loss} too small to decompose; pad the instance")
    assert rem % gamma == 0
    return rem // gamma, b


def reduce_3dm_to_bribery(
    inst: ThreeDmInstance,
    alpha: int,
    beta: int,
    gamma: int,
    swap_copies: int | None = None,
    auto_pad: bool = True,
) -> BriberyReduction:
    """Compile a 3-regular 3DM instance into bribery for (0,...,0,-gamma,-beta,-alpha).

    Requires beta == gamma (the construction pins the blockers only then).
    Each tuple vote gains `swap_copies` duplicates with the -gamma and -beta
    positions exchanged; blockers b_alpha/b_beta/b_gamma must absorb every
    scoring position of every replacement ballot, which forces the deletions
    to act exactly as in the CCDV reduction.
    """
    _check_coefficients(alpha, beta, gamma)
    if beta != gamma:
        raise ValueError("bribery reduction requires beta == gamma")
    if not inst.is_regular(3):
        raise ValueError("reduction needs a normalized (3-regular) instance")
    G = swap_copies if swap_copies is not None else default_swap_copies(alpha, beta, gamma)
    if G < 1:
        raise ValueError("swap-vote count must be >= 1")

    factor = 1
    while True:
        padded = pad_disjoint(inst, factor)
        k = padded.size
        class_losses = _bribery_losses(k, alpha, beta, gamma, G)
        if all(v >= 0 for v, _ in class_losses.values()):
            try:
                class_schedules = {
                    name: _decompose_loss(value, gamma, alpha)
                    for name, (value, _) in class_losses.items()
                }
                break
            except RealizationError:
                pass
        if not auto_pad:
            raise ValueError("instance too small for these coefficients; enable padding")
        factor += 1
        if factor > 64:
            raise RealizationError("padding runaway; coefficients look inconsistent")

    inst = padded
    names = _ReductionNames(inst, blockers=True)
    m = names.count
    vector = ScoringVector((0,) * (m - 3) + (-gamma, -beta, -alpha))

    groups: list[dict] = []
    counts: dict[Ranking, int] = {}

    def emit(role: str, ranking: Ranking, count: int) -> None:
        if count <= 0:
            return
        counts[ranking] = counts.get(ranking, 0) + count
        groups.append({"role": role, "ranking": ranking, "count": count})

    p = names.p
    for i, (x, y, z) in enumerate(inst.triples):
        s, sp = names.gate[i], names.gate_prime[i]
        for label, base_tail in (
            ("x", (s, p, names.index[x])),
            ("y", (s, p, names.index[y])),
            ("z", (sp, p, names.index[z])),
            ("gate", (sp, p, s)),
        ):
            emit(f"tuple{i}:base-{label}", _tail_vote(m, base_tail), 1)
            swapped = (base_tail[1], base_tail[0], base_tail[2])
            emit(f"tuple{i}:swap-{label}", _tail_vote(m, swapped), G)

    per_candidate: list[tuple[int, tuple[int, int]]] = []
    for x in names.elements:
        per_candidate.append((names.index[x], class_schedules["__element__"]))
    for s in names.gate:
        per_candidate.append((s, class_schedules["__gate__"]))
    for sp in names.gate_prime:
        per_candidate.append((sp, class_schedules["__gate_prime__"]))
    for heart in ("b_alpha", "b_beta", "b_gamma"):
        per_candidate.append((names.index[heart], class_schedules[heart]))
    for target, (a_count, b_count) in per_candidate:
        name = names.names[target]
        emit(
            f"setup-loss:{name}:-gamma",
            _loss_vote(m, p, names.dummies, target, 0),
            a_count,
        )
        emit(
            f"setup-loss:{name}:-alpha",
            _loss_vote(m, p, names.dummies, target, 2),
            b_count,
        )

    k = inst.size
    budget = 5 * k
    _emit_dummy_sinks(emit, counts, names, vector, budget, alpha, gamma)

    election = Election.from_counts(m, counts.items())
    _assert_relative_scores(election, vector, names, k, alpha, beta, gamma, blockers=True)

    manifest = {
        "kind": "bribery",
        "k": k,
        "pad_factor": factor,
        "alpha": alpha,
        "beta": beta,
        "gamma": gamma,
        "swap_copies": G,
        "budget": budget,
        "candidates": list(names.names),
        "groups": [
            {"role": g["role"], "ranking": [names.names[c] for c in g["ranking"]], "count": g["count"]}
            for g in groups
        ],
    }
    return BriberyReduction(
        BriberyInstance(election, vector, p, budget),
        tuple(names.names),
        inst,
        manifest,
    )


def default_swap_copies(alpha: int, beta: int, gamma: int) -> int:
    """Smallest duplicate count making every setup-loss target positive for
    every k >= 1 (the targets are increasing in k, so k = 1 decides)."""
    G = 1
    while True:
        if all(v > 0 for v, _ in _bribery_losses(1, alpha, beta, gamma, G).values()):
            return G
        G += 1


def _bribery_losses(k: int, alpha: int, beta: int, gamma: int, G: int) -> dict[str, tuple[int, str]]:
    """Per-candidate points to lose against p via setup votes (exact)."""
    losses: dict[str, tuple[int, str]] = {}
    min_term = min(alpha, 2 * gamma)
    element = 12 * k * G * gamma + 7 * k * beta - (3 * G + 2) * alpha
    gate = -min_term + 12 * k * G * gamma + beta * (7 * k - 2 * G) - G * alpha
    gate_prime = gamma * (12 * k * G - 1) + beta * (7 * k - 2 * G)
    losses["__element__"] = (element, "element")
    losses["__gate__"] = (gate, "gate")
    losses["__gate_prime__"] = (gate_prime, "gate-prime")
    for heart, value in (("b_alpha", alpha), ("b_beta", beta), ("b_gamma", gamma)):
        losses[heart] = (k * (12 * G * gamma + 7 * beta - 5 * value), "blocker")
    return losses
