"""Decision and refutation procedures for the family conditions S1-A5.

W- and FIN-families over a region are decided by rule tables on the
region (exact for whole group, cones, finite sets, subgroups, and for
submonoids whenever sign analysis or a bounded group-detection settles
it).  Explicit finite families are decided by brute force over their
members.  A verdict either holds with a named rule, fails with a
concrete re-checkable witness, or stays unknown within the budget.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import (
    GroupElement,
    generates_whole_group,
    group_zero,
    subgroup_contains,
    unit_sample,
)
from .series import Horizon
from .supports import (
    DEFAULT_BUDGET,
    EXPLICIT_FAMILY,
    FIN_FAMILY,
    FINITE,
    NONNEG,
    POS,
    SUBGROUP,
    SUBMONOID,
    W_FAMILY,
    WHOLE,
    Family,
    Region,
    SearchBudget,
    SupportSet,
    family_contains,
    finite_sums_closure,
    monoid_is_group,
    region_contains,
)

CONDITION_NAMES = ("S1", "S2", "S3", "S4", "S5", "S6", "A1", "A2", "A3", "A4", "A5")

HOLDS = "holds"
FAILS = "fails"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: str
    rule: str | None = None
    witness: object = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.outcome == HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome == FAILS

    @property
    def unknown(self) -> bool:
        return self.outcome == UNKNOWN

    def __str__(self):
        if self.holds:
            return f"holds [{self.rule}]"
        if self.fails:
            w = f" witness {self.witness}" if self.witness is not None else ""
            return f"fails{w}" + (f" ({self.note})" if self.note else "")
        return f"unknown ({self.note})"


def _holds(rule, note=""):
    return Verdict(HOLDS, rule=rule, note=note)


def _fails(witness, note=""):
    return Verdict(FAILS, witness=witness, note=note)


def _unknown(note):
    return Verdict(UNKNOWN, note=note)


def _singleton(group, g) -> SupportSet:
    return SupportSet(group, (g,))


def _empty(group) -> SupportSet:
    return SupportSet(group, ())


# ---------------------------------------------------------------------------
# region analysis helpers; tri-state with witnesses

def _region_is_whole(region: Region, budget: SearchBudget):
    """(True, None), (False, element outside), or (None, None)."""
    group = region.group
    zero = group_zero(group)
    unit = unit_sample(group)
    trivial = unit is None
    if region.kind == WHOLE:
        return True, None
    if region.kind == NONNEG:
        return (True, None) if trivial else (False, -unit)
    if region.kind == POS:
        return False, zero
    if region.kind == FINITE:
        probe = [zero]
        if not trivial:
            for k in range(1, len(region.elements) + 2):
                probe.extend([unit.scale(k), -unit.scale(k)])
        for g in probe:
            if g not in region.elements:
                return False, g
        return True, None
    if region.kind == SUBGROUP:
        ok, witness = generates_whole_group(list(region.elements), group)
        return (True, None) if ok else (False, witness)
    # submonoid
    gens = [e for e in region.elements if not e.is_zero]
    if not gens:
        return (True, None) if trivial else (False, unit)
    if monoid_is_group(gens, budget):
        ok, witness = generates_whole_group(gens, group)
        return (True, None) if ok else (False, witness)
    if all(not e < zero for e in gens):
        positive = [e for e in gens if zero < e]
        if positive:
            return False, -positive[0]
    if all(not zero < e for e in gens):
        negative = [e for e in gens if e < zero]
        if negative:
            return False, -negative[0]
    return None, None


def _region_is_empty(region: Region) -> bool:
    if region.kind == POS:
        return unit_sample(region.group) is None
    if region.kind == FINITE:
        return not region.elements
    return False


def _region_sample(region: Region, budget: SearchBudget) -> GroupElement | None:
    """Some element of the region, or None when it is empty."""
    zero = group_zero(region.group)
    if region.kind in (WHOLE, NONNEG, SUBGROUP, SUBMONOID):
        return zero
    if region.kind == POS:
        return unit_sample(region.group)
    return region.elements[0] if region.elements else None


def _region_symmetric(region: Region, budget: SearchBudget):
    """Whether g in S implies -g in S: (True, None), (False, g), (None, None)."""
    group = region.group
    zero = group_zero(group)
    unit = unit_sample(group)
    if region.kind in (WHOLE, SUBGROUP):
        return True, None
    if region.kind in (NONNEG, POS):
        return (True, None) if unit is None else (False, unit)
    if region.kind == FINITE:
        for e in region.elements:
            if -e not in region.elements:
                return False, e
        return True, None
    gens = [e for e in region.elements if not e.is_zero]
    if not gens:
        return True, None
    if monoid_is_group(gens, budget):
        return True, None
    if all(not e < zero for e in gens):
        positive = [e for e in gens if zero < e]
        if positive:
            return False, positive[0]
    if all(not zero < e for e in gens):
        negative = [e for e in gens if e < zero]
        if negative:
            return False, negative[0]
    return None, None


def _region_add_closed(region: Region):
    """Whether S + S is contained in S: (True, None) or (False, (s, t))."""
    if region.kind == FINITE:
        for s in region.elements:
            for t in region.elements:
                if s + t not in region.elements:
                    return False, (s, t)
        return True, None
    return True, None


def _region_positive_sample(region: Region, budget: SearchBudget) -> GroupElement | None:
    """Some strictly positive element of the region, or None."""
    group = region.group
    zero = group_zero(group)
    unit = unit_sample(group)
    if unit is None:
        return None
    if region.kind in (WHOLE, NONNEG, POS):
        return unit
    if region.kind == FINITE:
        for e in reversed(region.elements):
            if zero < e:
                return e
        return None
    gens = [e for e in region.elements if not e.is_zero]
    if not gens:
        return None
    if region.kind == SUBGROUP or monoid_is_group(gens, budget):
        g = gens[0]
        return g if zero < g else -g
    for e in gens:
        if zero < e:
            return e
    return None  # all generators negative: no positive sums


# ---------------------------------------------------------------------------
# the checker

def check_condition(family: Family, condition: str,
                    budget: SearchBudget = DEFAULT_BUDGET) -> Verdict:
    if condition not in CONDITION_NAMES:
        raise ValueError(f"unknown condition {condition!r}")
    if family.kind in (W_FAMILY, FIN_FAMILY):
        return _check_region_family(family, condition, budget)
    return _check_explicit_family(family, condition, budget)


def _check_region_family(family: Family, condition: str,
                         budget: SearchBudget) -> Verdict:
    region = family.region
    group = family.group
    zero = group_zero(group)
    finite_only = family.kind == FIN_FAMILY

    if condition == "S2":
        return _holds("members-closed-under-subsets")
    if condition == "S3":
        return _holds("members-closed-under-unions")
    if condition == "S5":
        return _holds("empty-set-is-a-member")
    if condition == "S6":
        return _holds("initial-segments-are-subsets")

    if condition == "S4":
        if region_contains(region, zero, budget):
            return _holds("zero-in-region")
        return _fails(_singleton(group, zero), "zero is outside the region")

    if condition == "S1":
        whole, witness = _region_is_whole(region, budget)
        if whole:
            return _holds("region-is-whole-group")
        if whole is None:
            return _unknown("region extent undecided within budget")
        return _fails(_singleton(group, witness), f"{witness} is outside the region")

    if condition == "A1":
        if region.kind in (WHOLE, NONNEG, POS):
            # a cone generates the group; over the trivial group <empty> = G
            return _holds("cone-generates-group")
        ok, witness = generates_whole_group(list(region.elements), group)
        if ok:
            return _holds("region-generators-span-group")
        return _fails(witness, "outside the subgroup generated by the region")

    if condition == "A2":
        closed, pair = _region_add_closed(region)
        if closed:
            return _holds("region-closed-under-addition")
        s, t = pair
        return _fails(
            _singleton(group, s + t),
            f"{{{s}}} (+) {{{t}}} leaves the region",
        )

    if condition == "A3":
        if _region_is_empty(region):
            return _holds("empty-region-family-is-translation-stable")
        whole, outside = _region_is_whole(region, budget)
        if whole:
            return _holds("whole-group-is-translation-stable")
        if whole is None:
            return _unknown("region extent undecided within budget")
        sample = _region_sample(region, budget)
        return _fails(
            _singleton(group, outside),
            f"translate {{{sample}}} by {outside - sample}",
        )

    if condition == "A4":
        if not region_contains(region, zero, budget):
            return _fails(
                _empty(group),
                "sum closure of the empty set is {0}, which is not a member",
            )
        if finite_only:
            positive = _region_positive_sample(region, budget)
            if positive is None:
                return _holds("no-positive-elements-to-sum")
            return _fails(
                _singleton(group, positive),
                f"sum closure of {{{positive}}} is infinite",
            )
        if region.kind == FINITE:
            positive = _region_positive_sample(region, budget)
            if positive is None:
                return _holds("no-positive-elements-to-sum")
            return _fails(
                _singleton(group, positive),
                f"sum closure of {{{positive}}} escapes the finite region",
            )
        return _holds("region-closed-under-nonnegative-sums")

    # A5
    symmetric, witness = _region_symmetric(region, budget)
    if symmetric:
        return _holds("region-symmetric-on-singletons")
    if symmetric is None:
        return _unknown("region symmetry undecided within budget")
    return _fails(witness, f"{{{witness}}} is a member but {{{-witness}}} is not")


def _probe_elements(group, count):
    zero = group_zero(group)
    unit = unit_sample(group)
    probe = [zero]
    if unit is not None:
        for k in range(1, count + 1):
            probe.extend([unit.scale(k), -unit.scale(k)])
    return probe


def _member_union_generators(family: Family) -> list[GroupElement]:
    gens = []
    for m in family.members:
        gens.extend(m)
    return gens


def _check_explicit_family(family: Family, condition: str,
                           budget: SearchBudget) -> Verdict:
    group = family.group
    zero = group_zero(group)
    members = set(family.members)
    rule = "brute-force-over-members"

    if condition == "S5":
        if members:
            return _holds(rule)
        return _fails(None, "the family is empty")

    if condition == "S4":
        if (zero,) in members:
            return _holds(rule)
        return _fails(_singleton(group, zero), "{0} is not a member")

    if condition == "S1":
        for g in _probe_elements(group, len(members) + 1):
            if (g,) not in members:
                return _fails(_singleton(group, g), f"{{{g}}} is not a member")
        if unit_sample(group) is None:
            return _holds(rule)
        return _unknown("probe set exhausted without refutation")

    if condition == "S2":
        for m in family.members:
            for mask in range(1 << len(m)):
                sub = tuple(p for i, p in enumerate(m) if mask >> i & 1)
                if sub not in members:
                    return _fails(
                        SupportSet(group, sub),
                        f"subset of {{{','.join(map(str, m))}}} missing",
                    )
        return _holds(rule)

    if condition == "S6":
        for m in family.members:
            for k in range(len(m) + 1):
                if m[:k] not in members:
                    return _fails(
                        SupportSet(group, m[:k]),
                        f"initial segment of {{{','.join(map(str, m))}}} missing",
                    )
        return _holds(rule)

    if condition == "S3":
        for a in family.members:
            for b in family.members:
                union = tuple(sorted(set(a) | set(b)))
                if union not in members:
                    return _fails(SupportSet(group, union), "union of members missing")
        return _holds(rule)

    if condition == "A1":
        ok, witness = generates_whole_group(_member_union_generators(family), group)
        if ok:
            return _holds("member-union-generates-group")
        return _fails(witness, "outside the subgroup generated by the member union")

    if condition == "A2":
        for a in family.members:
            for b in family.members:
                if not a or not b:
                    total = ()
                else:
                    total = tuple(sorted({x + y for x in a for y in b}))
                if total not in members:
                    return _fails(
                        SupportSet(group, total), "pairwise sum set missing"
                    )
        return _holds(rule)

    if condition == "A3":
        nonempty = [m for m in family.members if m]
        if not nonempty:
            return _holds("only-the-empty-set-to-translate")
        unit = unit_sample(group)
        if unit is None:
            return _holds("trivial-group-translations")
        for m in nonempty:
            for k in range(1, len(members) + 2):
                shifted = tuple(p + unit.scale(k) for p in m)
                if shifted not in members:
                    return _fails(
                        SupportSet(group, shifted),
                        f"member translated by {unit.scale(k)} is missing",
                    )
        return _unknown("translation probes exhausted without refutation")

    if condition == "A4":
        for m in family.members:
            if any(p < zero for p in m):
                continue
            if all(p.is_zero for p in m):
                if (zero,) not in members:
                    return _fails(
                        SupportSet(group, m),
                        "sum closure {0} is not a member",
                    )
            else:
                return _fails(
                    SupportSet(group, m),
                    "sum closure is infinite, no finite member matches",
                )
        return _holds(rule)

    # A5
    for m in family.members:
        if len(m) == 1:
            neg = (-m[0],)
            if neg not in members:
                return _fails(m[0], f"{{{m[0]}}} is a member but {{{-m[0]}}} is not")
    return _holds(rule)


# ---------------------------------------------------------------------------
# witness re-checking (soundness of Fails verdicts)

def witness_refutes(family: Family, condition: str, verdict: Verdict,
                    budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Confirm that a Fails witness is a genuine violation of the
    condition, using family_contains and the condition's definition."""
    if not verdict.fails:
        raise ValueError("only Fails verdicts carry witnesses")
    group = family.group
    zero = group_zero(group)
    unit = unit_sample(group)
    probe_horizon = Horizon(
        unit.scale(64) if unit is not None else zero, 256
    )

    def contains(ss: SupportSet) -> bool:
        return family_contains(family, ss, probe_horizon, budget)

    w = verdict.witness
    if condition == "S5":
        return not family.members if family.kind == EXPLICIT_FAMILY else False
    if condition in ("S1", "S4"):
        return not contains(w)
    if condition == "S2":
        if contains(w):
            return False
        wset = w.as_set()
        return any(wset <= set(m) for m in family.members)
    if condition == "S6":
        if contains(w):
            return False
        return any(tuple(w.points) == m[: len(w.points)] for m in family.members)
    if condition == "S3":
        if contains(w):
            return False
        wset = w.as_set()
        for a in family.members:
            for b in family.members:
                if set(a) | set(b) == wset:
                    return True
        return False
    if condition == "A1":
        if family.kind == EXPLICIT_FAMILY:
            gens = _member_union_generators(family)
        elif family.region.kind in (SUBGROUP, SUBMONOID, FINITE):
            gens = list(family.region.elements)
        else:
            return False  # cones never fail A1
        return not subgroup_contains(gens, w)
    if condition == "A2":
        if contains(w):
            return False
        wset = w.as_set()
        if family.kind == EXPLICIT_FAMILY:
            for a in family.members:
                for b in family.members:
                    if a and b and {x + y for x in a for y in b} == wset:
                        return True
            return False
        return any(
            {s + t} == wset
            for s in family.region.elements
            for t in family.region.elements
        )
    if condition == "A3":
        if contains(w):
            return False
        if family.kind == EXPLICIT_FAMILY:
            for m in family.members:
                if len(m) == len(w.points) and m:
                    shift = w.points[0] - m[0]
                    if tuple(p + shift for p in m) == tuple(w.points):
                        return True
            return False
        sample = _region_sample(family.region, budget)
        return sample is not None and len(w.points) == 1
    if condition == "A4":
        if not contains(w):
            return False
        if any(p < zero for p in w.points):
            return False
        closure = finite_sums_closure(w, probe_horizon)
        if closure.is_entire:
            return not contains(closure)
        if family.kind == EXPLICIT_FAMILY:
            universe_top = max(
                (p for m in family.members for p in m), default=None
            )
            return universe_top is None or any(
                p > universe_top for p in closure.points
            )
        if family.kind == FIN_FAMILY:
            return True  # a non-entire closure is not a finite set
        return any(
            region_contains(family.region, p, budget) is False
            for p in closure.points
        )
    # A5
    return contains(_singleton(group, w)) and not contains(_singleton(group, -w))
