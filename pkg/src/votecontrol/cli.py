"""Command-line entry point: JSON in, JSON out.

Every subcommand prints a single JSON document on stdout and diagnostics on
stderr.  Exit codes: 0 = answered, 1 = malformed input, 2 = refused by oracle
caps, 3 = fuzz found a solver/oracle disagreement.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass

from . import fuzz as fuzz_mod
from .bribery import solve_bribery_front_back, solve_bribery_last_two
from .ccdv import CcdvInstance, is_plurality, solve_ccdv
from .election import (
    Election,
    ScoringVector,
    add_votes,
    delete_votes,
    election_from_json,
    election_to_json,
    score_all,
    winners,
)
from .errors import CapsExceededError, WrongRuleError
from .manipulation import solve_manipulation
from .oracles import (
    OracleCaps,
    brute_3dm,
    brute_bribery,
    brute_ccdv,
    brute_manipulation,
)
from .outcomes import SolverOutcome
from .reductions import (
    reduce_3dm_to_bribery,
    reduce_3dm_to_ccdv,
    threedm_from_json,
    threedm_to_json,
)
from .rules import classify, rule_from_json


@dataclass
class RunReport:
    """One solved instance: what was asked, who answered, and whether the
    certificate survived re-verification."""

    problem: str
    digest: str
    verdict: object
    certificate: dict
    solver: str
    verified: bool | None = None
    oracle_agreement: bool | None = None
    wall_time_ms: float = 0.0

    def to_json(self) -> dict:
        doc = asdict(self)
        if isinstance(self.verdict, bool):
            doc["feasible"] = self.verdict
        return doc


def _digest(doc: dict) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]


def _load_json(path: str) -> dict:
    with open(path) as handle:
        return json.load(handle)


def _load_instance(args) -> tuple[Election, tuple[str, ...], ScoringVector, str]:
    doc = _load_json(args.election)
    election, names = election_from_json(doc)
    spec = rule_from_json(_load_json(args.rule) if args.rule.endswith(".json") else json.loads(args.rule))
    vector = spec.instantiate(election.num_candidates)
    return election, names, vector, _digest({"election": doc, "rule": list(vector.coefficients)})


def _preferred_id(names: tuple[str, ...], name: str) -> int:
    if name not in names:
        raise ValueError(f"unknown candidate {name!r}")
    return names.index(name)


def _caps(args) -> OracleCaps:
    return OracleCaps(
        max_candidates=args.max_candidates,
        max_votes=args.max_votes,
        max_budget=args.max_budget,
    )


def _emit(report: RunReport) -> None:
    print(json.dumps(report.to_json(), sort_keys=True))


def _verify_outcome(
    election: Election, vector: ScoringVector, preferred: int, outcome: SolverOutcome
) -> bool:
    if not outcome.feasible:
        return True
    flat = election.vote_list()
    modified = election
    removed = outcome.deleted or outcome.bribed
    if removed:
        modified = delete_votes(modified, [flat[i] for i in removed])
    added = outcome.replacements or outcome.manipulator_votes
    if added:
        modified = add_votes(modified, added)
    return preferred in winners(modified, vector)


def cmd_winners(args) -> int:
    election, names, vector, digest = _load_instance(args)
    start = time.perf_counter()
    table = score_all(election, vector)
    won = sorted(winners(election, vector))
    report = RunReport(
        "winners",
        digest,
        [names[c] for c in won],
        {"scores": {names[c]: table[c] for c in range(election.num_candidates)}},
        "election.winners",
        wall_time_ms=(time.perf_counter() - start) * 1000,
    )
    _emit(report)
    return 0


def _outcome_certificate(names, outcome: SolverOutcome) -> dict:
    cert: dict = {}
    if outcome.deleted:
        cert["deleted"] = list(outcome.deleted)
    if outcome.bribed:
        cert["bribed"] = list(outcome.bribed)
    if outcome.replacements:
        cert["replacements"] = [[names[c] for c in r] for r in outcome.replacements]
    if outcome.manipulator_votes:
        cert["votes"] = [[names[c] for c in r] for r in outcome.manipulator_votes]
    if outcome.note:
        cert["note"] = outcome.note
    return cert


def cmd_manipulate(args) -> int:
    election, names, vector, digest = _load_instance(args)
    p = _preferred_id(names, args.preferred)
    start = time.perf_counter()
    solution = solve_manipulation(election, vector, p, args.k)
    outcome = SolverOutcome(solution.feasible, manipulator_votes=solution.votes)
    if args.surplus_only:
        outcome = SolverOutcome(solution.feasible)
    return _solver_report(
        args, "manipulation", digest, election, names, vector, p, outcome,
        "manipulation.solve_manipulation", start,
        lambda caps: brute_manipulation(election, vector, p, args.k, caps),
    )


def cmd_ccdv(args) -> int:
    election, names, vector, digest = _load_instance(args)
    p = _preferred_id(names, args.preferred)
    caps = _caps(args)
    inst = CcdvInstance(election, vector, p, min(args.k, election.num_votes))
    start = time.perf_counter()
    outcome = solve_ccdv(
        inst,
        oracle=lambda i: brute_ccdv(i.election, i.vector, i.preferred, i.budget, caps),
    )
    return _solver_report(
        args, "ccdv", digest, election, names, vector, p, outcome,
        "ccdv.solve_ccdv", start,
        lambda c: brute_ccdv(election, vector, p, inst.budget, c),
    )


def cmd_bribe(args) -> int:
    election, names, vector, digest = _load_instance(args)
    p = _preferred_id(names, args.preferred)
    start = time.perf_counter()
    try:
        outcome = solve_bribery_front_back(election, vector, p, args.k)
        solver = "bribery.solve_bribery_front_back"
    except WrongRuleError:
        outcome = solve_bribery_last_two(election, vector, p, args.k)
        solver = "bribery.solve_bribery_last_two"
    return _solver_report(
        args, "bribery", digest, election, names, vector, p, outcome, solver, start,
        lambda caps: brute_bribery(election, vector, p, args.k, caps),
    )


def _solver_report(
    args, problem, digest, election, names, vector, p, outcome, solver, start, oracle
) -> int:
    report = RunReport(
        problem,
        digest,
        outcome.feasible,
        _outcome_certificate(names, outcome),
        solver,
        wall_time_ms=(time.perf_counter() - start) * 1000,
    )
    if args.verify:
        report.verified = _verify_outcome(election, vector, p, outcome)
        if not report.verified:
            raise AssertionError("unverifiable feasible verdict; refusing to report it")
    if args.oracle_check:
        oracle_outcome = oracle(_caps(args))
        report.oracle_agreement = oracle_outcome.feasible == outcome.feasible
    _emit(report)
    return 0


def cmd_classify(args) -> int:
    spec = rule_from_json(
        _load_json(args.rule) if args.rule.endswith(".json") else json.loads(args.rule)
    )
    start = time.perf_counter()
    result = {}
    for problem in ("ccdv", "bribery"):
        rc = classify(spec, problem)
        result[problem] = {
            "tag": rc.tag,
            "polynomial": rc.polynomial,
            "params": list(rc.params),
            "case": rc.case,
        }
    report = RunReport(
        "classify",
        _digest(result),
        "P" if result["ccdv"]["polynomial"] else "NP-hard",
        result,
        "rules.classify",
        wall_time_ms=(time.perf_counter() - start) * 1000,
    )
    _emit(report)
    return 0


def cmd_gen_reduction(args) -> int:
    inst = threedm_from_json(_load_json(args.threedm))
    start = time.perf_counter()
    if args.target == "ccdv":
        red = reduce_3dm_to_ccdv(inst, args.alpha, args.beta, args.gamma)
        election, vector = red.instance.election, red.instance.vector
        budget = red.instance.budget
    else:
        red = reduce_3dm_to_bribery(
            inst, args.alpha, args.beta, args.gamma, swap_copies=args.swap_copies
        )
        election, vector = red.instance.election, red.instance.vector
        budget = red.instance.budget
    doc = {
        "election": election_to_json(election, red.names),
        "rule": {
            "kind": "family",
            "prefix": [],
            "middle": 0,
            "suffix": [-args.gamma, -args.beta, -args.alpha],
        },
        "preferred": "p",
        "budget": budget,
        "threedm": threedm_to_json(red.threedm),
        "manifest": red.manifest,
    }
    report = {
        "problem": f"gen-reduction:{args.target}",
        "digest": _digest(doc["election"]),
        "wall_time_ms": (time.perf_counter() - start) * 1000,
        **doc,
    }
    print(json.dumps(report, sort_keys=True))
    return 0


def cmd_oracle(args) -> int:
    caps = _caps(args)
    start = time.perf_counter()
    if args.problem == "3dm":
        inst = threedm_from_json(_load_json(args.threedm))
        cover = brute_3dm(inst, caps)
        report = RunReport(
            "oracle:3dm",
            _digest(threedm_to_json(inst)),
            cover is not None,
            {"cover": [list(t) for t in cover.triples]} if cover else {},
            "oracles.brute_3dm",
            wall_time_ms=(time.perf_counter() - start) * 1000,
        )
        _emit(report)
        return 0
    election, names, vector, digest = _load_instance(args)
    p = _preferred_id(names, args.preferred)
    solver = {
        "manipulation": brute_manipulation,
        "ccdv": brute_ccdv,
        "bribery": brute_bribery,
    }[args.problem]
    outcome = solver(election, vector, p, args.k, caps)
    report = RunReport(
        f"oracle:{args.problem}",
        digest,
        outcome.feasible,
        _outcome_certificate(names, outcome),
        f"oracles.brute_{args.problem}",
        wall_time_ms=(time.perf_counter() - start) * 1000,
    )
    _emit(report)
    return 0


def cmd_fuzz(args) -> int:
    caps = _caps(args)
    disagreement = None
    for record in fuzz_mod.fuzz_stream(args.problem, args.seed, args.count, caps):
        line = {
            "index": record.case.index,
            "digest": _digest(fuzz_mod.case_to_json(args.problem, record.case)),
            "solver": record.solver_verdict,
            "oracle": record.oracle_verdict,
            "agree": record.agree,
        }
        print(json.dumps(line, sort_keys=True))
        if not record.agree:
            disagreement = record
            break
    if disagreement is None:
        print(
            f"fuzz {args.problem}: {args.count}/{args.count} agree", file=sys.stderr
        )
        return 0
    small = fuzz_mod.minimize_case(args.problem, disagreement.case, caps)
    repro = fuzz_mod.case_to_json(args.problem, small)
    path = args.repro_path or f"fuzz-repro-{args.problem}-{args.seed}.json"
    with open(path, "w") as handle:
        json.dump(repro, handle, indent=2, sort_keys=True)
    print(f"fuzz {args.problem}: disagreement minimized to {path}", file=sys.stderr)
    return 3


def _add_instance_args(sub, budget_flag: bool = True) -> None:
    sub.add_argument("--election", required=True, help="election JSON file")
    sub.add_argument("--rule", required=True, help="rule JSON file or inline JSON")
    sub.add_argument("--preferred", required=True, help="preferred candidate name")
    if budget_flag:
        sub.add_argument("--k", type=int, required=True, help="action budget")
    sub.add_argument("--verify", action="store_true", help="re-check the certificate")
    sub.add_argument(
        "--oracle-check", action="store_true", help="run the matching oracle and record agreement"
    )


def _add_caps_args(parser) -> None:
    parser.add_argument("--max-candidates", type=int, default=6)
    parser.add_argument("--max-votes", type=int, default=16)
    parser.add_argument("--max-budget", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votecontrol",
        description="strategic-action solvers for positional scoring elections",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    w = subs.add_parser("winners", help="score an election and report the co-winner set")
    w.add_argument("--election", required=True)
    w.add_argument("--rule", required=True)
    w.set_defaults(func=cmd_winners)

    m = subs.add_parser("manipulate", help="coalitional manipulation")
    _add_instance_args(m)
    m.add_argument("--surplus-only", action="store_true", help="feasibility only, no ballots")
    _add_caps_args(m)
    m.set_defaults(func=cmd_manipulate)

    c = subs.add_parser("ccdv", help="constructive control by deleting voters")
    _add_instance_args(c)
    _add_caps_args(c)
    c.set_defaults(func=cmd_ccdv)

    b = subs.add_parser("bribe", help="bribery")
    _add_instance_args(b)
    _add_caps_args(b)
    b.set_defaults(func=cmd_bribe)

    cl = subs.add_parser("classify", help="CCDV/bribery dichotomy class of a rule family")
    cl.add_argument("--rule", required=True)
    cl.set_defaults(func=cmd_classify)

    g = subs.add_parser("gen-reduction", help="compile a 3DM instance into CCDV or bribery")
    g.add_argument("--3dm", dest="threedm", required=True, help="3DM JSON file")
    g.add_argument("--target", choices=("ccdv", "bribery"), required=True)
    g.add_argument("--alpha", type=int, required=True)
    g.add_argument("--beta", type=int, required=True)
    g.add_argument("--gamma", type=int, required=True)
    g.add_argument("--G", dest="swap_copies", type=int, default=None, help="swap-vote copies")
    g.set_defaults(func=cmd_gen_reduction)

    o = subs.add_parser("oracle", help="exhaustive ground-truth solvers")
    o.add_argument("--problem", choices=("manipulation", "ccdv", "bribery", "3dm"), required=True)
    o.add_argument("--election")
    o.add_argument("--rule")
    o.add_argument("--preferred")
    o.add_argument("--k", type=int, default=0)
    o.add_argument("--3dm", dest="threedm")
    _add_caps_args(o)
    o.set_defaults(func=cmd_oracle)

    f = subs.add_parser("fuzz", help="seeded solver-vs-oracle agreement stream")
    f.add_argument("--problem", choices=fuzz_mod.PROBLEMS, required=True)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--repro-path", default=None)
    _add_caps_args(f)
    f.set_defaults(func=cmd_fuzz)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapsExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
