"""Generator families, affine equivalence, purity, dualization, and the
CCDV/bribery dichotomy classifier.

A *generator* describes one scoring vector per number of candidates.  Two
descriptions are supported: an explicit table (one vector per m over a finite
range) and a family ``(prefix..., middle, middle, ..., middle, ...suffix)``
valid for every m >= len(prefix) + len(suffix) + 1.  The classifier decides,
symbolically on the family description, whether constructive control by
deleting voters (and bribery, which always has the same polarity) is
polynomial-time solvable or NP-complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

from .election import ScoringVector
from .errors import RuleDomainError


@dataclass(frozen=True)
class FamilySpec:
    """Finite description (prefix..., middle repeated, ...suffix) of a generator."""

    prefix: tuple[int, ...]
    middle: int
    suffix: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = list(self.prefix) + [self.middle] + list(self.suffix)
        if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
            raise RuleDomainError(f"family {seq} is not weakly decreasing")

    @property
    def min_candidates(self) -> int:
        return len(self.prefix) + len(self.suffix) + 1

    def instantiate(self, m: int) -> ScoringVector:
        if m < self.min_candidates:
            raise RuleDomainError(
                f"family needs at least {self.min_candidates} candidates, got {m}"
            )
        fill = m - len(self.prefix) - len(self.suffix)
        return ScoringVector(self.prefix + (self.middle,) * fill + self.suffix)


@dataclass(frozen=True)
class ExplicitTable:
    """One scoring vector per candidate count, for a finite set of m."""

    table: tuple[tuple[int, ScoringVector], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Iterable[int]]) -> "ExplicitTable":
        return cls(
            tuple(
                (m, ScoringVector(tuple(vec)))
                for m, vec in sorted(mapping.items())
            )
        )

    def instantiate(self, m: int) -> ScoringVector:
        for size, vector in self.table:
            if size == m:
                return vector
        raise RuleDomainError(f"no vector tabled for m={m}")

    def covered(self) -> list[int]:
        return [m for m, _ in self.table]


@dataclass(frozen=True)
class BordaSpec:
    """The Borda generator (m-1, m-2, ..., 1, 0); not a finite family."""

    def instantiate(self, m: int) -> ScoringVector:
        if m < 1:
            raise RuleDomainError("need at least one candidate")
        return ScoringVector(tuple(range(m - 1, -1, -1)))


GeneratorSpec = FamilySpec | ExplicitTable | BordaSpec


@dataclass(frozen=True)
class EquivalenceWitness:
    """gamma > 0 and delta with w_i = gamma * v_i + delta for all i."""

    gamma: Fraction
    delta: Fraction

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise RuleDomainError("equivalence witness requires gamma > 0")


def equivalent(v: ScoringVector, w: ScoringVector) -> EquivalenceWitness | None:
    """Exact affine witness between two same-length vectors, or None.

    gamma is solved from any two indices where v differs and verified on every
    coordinate; vectors related this way induce identical winner sets.
    """
    if len(v) != len(w):
        raise RuleDomainError("equivalence is only defined for equal-length vectors")
    pivot = next((i for i in range(len(v) - 1) if v[i] != v[i + 1]), None)
    if pivot is None:
        # v constant: w must be constant too.
        if any(w[i] != w[0] for i in range(len(w))):
            return None
        return EquivalenceWitness(Fraction(1), Fraction(w[0] - v[0]))
    gamma = Fraction(w[pivot] - w[pivot + 1], v[pivot] - v[pivot + 1])
    if gamma <= 0:
        return None
    delta = Fraction(w[pivot]) - gamma * v[pivot]
    if all(Fraction(w[i]) == gamma * v[i] + delta for i in range(len(v))):
        return EquivalenceWitness(gamma, delta)
    return None


def is_pure(spec: GeneratorSpec, m_lo: int, m_hi: int) -> bool:
    """True iff f(m) arises from f(m+1) by deleting one coefficient, over [m_lo, m_hi].

    Both vectors are weakly decreasing, so this is exactly multiset containment
    with a size difference of one.
    """
    if m_hi <= m_lo:
        raise RuleDomainError("need m_hi > m_lo to check purity")
    if isinstance(spec, ExplicitTable):
        have = set(spec.covered())
        missing = [m for m in range(m_lo, m_hi + 1) if m not in have]
        if missing:
            raise RuleDomainError(f"purity check needs consecutive m; missing {missing}")
    for m in range(m_lo, m_hi):
        small = sorted(spec.instantiate(m).coefficients)
        big = sorted(spec.instantiate(m + 1).coefficients)
        # remove one matching coefficient of `small` from `big`
        leftovers = list(big)
        ok = True
        for c in small:
            try:
                leftovers.remove(c)
            except ValueError:
                ok = False
                break
        if not ok or len(leftovers) != 1:
            return False
    return True


def dualize(spec: GeneratorSpec) -> GeneratorSpec:
    """Negate all coefficients and reverse their order.

    Deleting a vote under f has the same effect on relative scores as adding
    the reversed vote under dualize(f).
    """
    if isinstance(spec, FamilySpec):
        return FamilySpec(
            tuple(-c for c in reversed(spec.suffix)),
            -spec.middle,
            tuple(-c for c in reversed(spec.prefix)),
        )
    if isinstance(spec, ExplicitTable):
        return ExplicitTable(
            tuple(
                (m, ScoringVector(tuple(-c for c in reversed(vec.coefficients))))
                for m, vec in spec.table
            )
        )
    raise RuleDomainError(f"cannot dualize {type(spec).__name__}")


def dual_vector(v: ScoringVector) -> ScoringVector:
    return ScoringVector(tuple(-c for c in reversed(v.coefficients)))


# --- dichotomy classifier ----------------------------------------------------

POLY_TAGS = {"1-approval", "2-approval", "3-veto", "last-two", "(2,1,...,1,0)"}


@dataclass(frozen=True)
class RuleClass:
    """Outcome of the CCDV/bribery dichotomy for one family description."""

    tag: str
    problem: str
    polynomial: bool
    params: tuple[int, ...] = ()
    case: str = ""


def canonical_family(spec: FamilySpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Normalize a family: subtract the middle, absorb middle-equal affix entries,
    divide by the gcd.  Returns (positive prefix, negative suffix)."""
    prefix = [c - spec.middle for c in spec.prefix]
    suffix = [c - spec.middle for c in spec.suffix]
    while prefix and prefix[-1] == 0:
        prefix.pop()
    while suffix and suffix[0] == 0:
        suffix.pop(0)
    g = 0
    for c in prefix + suffix:
        g = gcd(g, abs(c))
    if g > 1:
        prefix = [c // g for c in prefix]
        suffix = [c // g for c in suffix]
    return tuple(prefix), tuple(suffix)


def classify(spec: GeneratorSpec, problem: str) -> RuleClass:
    """Walk the dichotomy's case tree on the normalized family description.

    Only FamilySpec inputs are accepted: a finite table cannot determine the
    asymptotic class.  CCDV and bribery always receive the same polarity.
    """
    if problem not in ("ccdv", "bribery"):
        raise RuleDomainError(f"problem must be 'ccdv' or 'bribery', got {problem!r}")
    if not isinstance(spec, FamilySpec):
        raise RuleDomainError(
            "classification needs a finite family description (prefix/middle/suffix)"
        )
    prefix, suffix = canonical_family(spec)

    def hard(case: str) -> RuleClass:
        tag = (
            "hard-many-coefficients"
            if case == "many distinct coefficients"
            else "hard-few-coefficients"
        )
        return RuleClass(tag, problem, polynomial=False, case=case)

    if len(prefix) > 2 or len(suffix) > 3:
        # for large m the 3rd coefficient exceeds the (m-3)rd
        return hard("many distinct coefficients")
    if not prefix:
        if len(suffix) <= 2:
            beta = -suffix[0] if len(suffix) == 2 else 0
            alpha = -suffix[-1] if suffix else 0
            return RuleClass("last-two", problem, polynomial=True, params=(beta, alpha))
        if suffix[0] == suffix[2]:
            return RuleClass("3-veto", problem, polynomial=True)
        return hard("(0,...,0,-c,-b,-a) with three distinct trailing losses")
    if len(prefix) == 1:
        if not suffix:
            return RuleClass("1-approval", problem, polynomial=True)
        if len(suffix) == 1:
            if prefix[0] == -suffix[0]:
                return RuleClass("(2,1,...,1,0)", problem, polynomial=True)
            if prefix[0] < -suffix[0]:
                return hard("(a,0,...,0,-b) with a < b")
            return hard("(a,0,...,0,-b) with a > b")
        return hard("leading bonus with two or three trailing losses")
    # len(prefix) == 2
    if not suffix:
        if prefix[0] == prefix[1]:
            return RuleClass("2-approval", problem, polynomial=True)
        return hard("(a,b,0,...,0) with a > b > 0")
    return hard("two leading bonuses with trailing losses")


# --- rule JSON boundary ------------------------------------------------------
#
# Rule JSON: {"kind": "family", "prefix": [...], "middle": x, "suffix": [...]}
#         or {"kind": "named", "name": "borda"|"k-approval"|"k-veto", "k": n}
# Named approval/veto rules desugar to FamilySpec.


def rule_from_json(doc: dict) -> GeneratorSpec:
    kind = doc.get("kind")
    if kind == "family":
        try:
            return FamilySpec(
                tuple(int(c) for c in doc.get("prefix", [])),
                int(doc["middle"]),
                tuple(int(c) for c in doc.get("suffix", [])),
            )
        except KeyError as exc:
            raise RuleDomainError(f"family rule missing field {exc}") from exc
    if kind == "named":
        name = doc.get("name")
        if name == "borda":
            return BordaSpec()
        k = int(doc.get("k", 1))
        if k < 1:
            raise RuleDomainError("k must be >= 1")
        if name == "k-approval":
            return FamilySpec((1,) * k, 0, ())
        if name == "k-veto":
            return FamilySpec((), 1, (0,) * k)
        raise RuleDomainError(f"unknown named rule {name!r}")
    raise RuleDomainError(f"rule kind must be 'family' or 'named', got {kind!r}")


def rule_to_json(spec: GeneratorSpec) -> dict:
    if isinstance(spec, FamilySpec):
        return {
            "kind": "family",
            "prefix": list(spec.prefix),
            "middle": spec.middle,
            "suffix": list(spec.suffix),
        }
    if isinstance(spec, BordaSpec):
        return {"kind": "named", "name": "borda"}
    raise RuleDomainError("explicit tables have no JSON form")
