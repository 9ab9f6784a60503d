"""Well-ordered support sets, regions, and symbolic families.

Families of well-ordered sets are uncountable, so they are never held
extensionally: a family is either all well-ordered subsets of a region,
all finite subsets of a region, or an explicit finite list of finite
sets.  Support sets themselves are enumerated prefixes with the same
bound discipline as series evaluation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import (
    DescriptorMismatch,
    FieldTooSmall,
    NotInNonNegCone,
    TermBudgetExceeded,
    UnknownWithinBudget,
)
from .fields import FieldDescriptor
from .groups import (
    GroupDescriptor,
    GroupElement,
    group_zero,
    subgroup_contains,
)
from .series import Horizon, Literal, Series, TermList


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the bounded searches behind membership and conditions."""

    monoid_sum_length: int = 12
    enumeration_cap: int = 4096
    seed: int = 0


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SupportSet:
    """A well-ordered subset of G, or an enumerated prefix of one.

    ``bound is None`` means the listed points are the entire set.  With a
    bound, every support point up to it is listed; if ``budget_hit`` the
    enumeration stopped early and the bound is exclusive (all points
    strictly below it are listed).
    """

    group: GroupDescriptor
    points: tuple[GroupElement, ...]
    bound: GroupElement | None = None
    budget_hit: bool = False

    def __post_init__(self):
        prev = None
        for p in self.points:
            if p.descriptor != self.group:
                raise DescriptorMismatch("support point uses a different group")
            if prev is not None and not prev < p:
                raise ValueError("support points must be strictly increasing")
            prev = p

    @property
    def is_entire(self) -> bool:
        return self.bound is None

    @property
    def is_empty(self) -> bool:
        return not self.points

    def min(self) -> GroupElement | None:
        return self.points[0] if self.points else None

    def as_set(self) -> frozenset[GroupElement]:
        return frozenset(self.points)

    def __str__(self):
        body = ",".join(str(p) for p in self.points)
        suffix = "" if self.is_entire else (",..." if self.budget_hit else f" (<= {self.bound})")
        return "{" + body + "}" + suffix


def explicit_support(group: GroupDescriptor, points) -> SupportSet:
    pts = tuple(sorted(set(points)))
    return SupportSet(group, pts)


def enumerated_support(group, points, bound, budget_hit=False) -> SupportSet:
    return SupportSet(group, tuple(points), bound, budget_hit)


def support_of_terms(group: GroupDescriptor, tl: TermList,
                     bound: GroupElement) -> SupportSet:
    """The enumerated support of an evaluated series prefix."""
    if tl.complete:
        return SupportSet(group, tl.support(), bound)
    return SupportSet(group, tl.support(), tl.frontier, True)


# ---------------------------------------------------------------------------
# regions

WHOLE = "whole"
NONNEG = "nonneg"
POS = "pos"
SUBMONOID = "submonoid"
SUBGROUP = "subgroup"
FINITE = "finite"


@dataclass(frozen=True)
class Region:
    """A subset of G that a family can quantify over."""

    group: GroupDescriptor
    kind: str
    elements: tuple[GroupElement, ...] = ()

    def __post_init__(self):
        if self.kind not in (WHOLE, NONNEG, POS, SUBMONOID, SUBGROUP, FINITE):
            raise ValueError(f"unknown region kind {self.kind!r}")
        for e in self.elements:
            if e.descriptor != self.group:
                raise DescriptorMismatch("region element uses a different group")

    def __str__(self):
        if self.kind == WHOLE:
            return str(self.group)
        if self.kind == NONNEG:
            return f"{self.group}>=0"
        if self.kind == POS:
            return f"{self.group}>0"
        inner = ",".join(str(e) for e in self.elements)
        label = {SUBMONOID: "mon", SUBGROUP: "grp", FINITE: "set"}[self.kind]
        return label + "{" + inner + "}"


def whole_group(group) -> Region:
    return Region(group, WHOLE)


def nonneg_cone(group) -> Region:
    return Region(group, NONNEG)


def pos_cone(group) -> Region:
    return Region(group, POS)


def submonoid(group, gens) -> Region:
    return Region(group, SUBMONOID, tuple(gens))


def subgroup(group, gens) -> Region:
    return Region(group, SUBGROUP, tuple(gens))


def finite_region(group, elems) -> Region:
    return Region(group, FINITE, tuple(sorted(set(elems))))


def _monoid_reachable(gens, target, max_len) -> bool:
    """Breadth-first search for target as a sum of at most max_len
    generators."""
    zero = group_zero(target.descriptor)
    if target == zero:
        return True
    seen = {zero}
    frontier = [zero]
    for _ in range(max_len):
        nxt = []
        for base in frontier:
            for g in gens:
                s = base + g
                if s == target:
                    return True
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        if not nxt:
            return False
        frontier = nxt
    return False


def monoid_is_group(gens, budget: SearchBudget = DEFAULT_BUDGET) -> bool | None:
    """True when every generator's inverse is reachable, None if the
    bounded search cannot tell."""
    if all(g.is_zero for g in gens):
        return True
    for g in gens:
        if not _monoid_reachable(list(gens), -g, budget.monoid_sum_length):
            return None
    return True


def region_contains(region: Region, g: GroupElement,
                    budget: SearchBudget = DEFAULT_BUDGET) -> bool | None:
    """Tri-state membership; None when a bounded search is inconclusive."""
    if g.descriptor != region.group:
        raise DescriptorMismatch("element uses a different group")
    zero = group_zero(region.group)
    if region.kind == WHOLE:
        return True
    if region.kind == NONNEG:
        return not g < zero
    if region.kind == POS:
        return zero < g
    if region.kind == FINITE:
        return g in region.elements
    if region.kind == SUBGROUP:
        return subgroup_contains(list(region.elements), g)
    # submonoid: exact pre-filters, then bounded search
    gens = [e for e in region.elements if not e.is_zero]
    if not subgroup_contains(gens, g):
        return False
    if g.is_zero:
        return True
    if all(not e < zero for e in gens):
        if g < zero:
            return False
        positive = [e for e in gens if zero < e]
        min_pos = min(positive) if positive else None
        if min_pos is not None and g < min_pos:
            return False
    if _monoid_reachable(gens, g, budget.monoid_sum_length):
        return True
    if monoid_is_group(gens, budget):
        return True  # membership in the subgroup was already confirmed
    if all(not e < zero for e in gens):
        positive = [e for e in gens if zero < e]
        # every representation of g uses at most len summands of size >= min
        if positive and not min(positive).scale(budget.monoid_sum_length) < g:
            return False
    return None


# ---------------------------------------------------------------------------
# set operations

def translate(A: SupportSet, g: GroupElement) -> SupportSet:
    if g.descriptor != A.group:
        raise DescriptorMismatch("translation amount uses a different group")
    return SupportSet(
        A.group,
        tuple(p + g for p in A.points),
        None if A.bound is None else A.bound + g,
        A.budget_hit,
    )


def minkowski_sum(A: SupportSet, B: SupportSet, h: Horizon) -> SupportSet:
    if A.group != B.group:
        raise DescriptorMismatch("summand sets use different groups")
    bound = h.exp_bound
    if A.is_empty or B.is_empty:
        return SupportSet(A.group, ())
    sums = sorted({a + b for a in A.points for b in B.points})
    # sums with unenumerated points of one side exceed its bound plus the
    # other side's minimum; budget-hit bounds are exclusive
    limit, strict = bound, False
    for X, Y in ((A, B), (B, A)):
        if X.bound is not None:
            edge = X.bound + Y.points[0]
            if edge < limit or (edge == limit and X.budget_hit):
                limit, strict = edge, X.budget_hit
    kept = [s for s in sums if (s < limit if strict else not s > limit)]
    budget_hit = A.budget_hit or B.budget_hit
    if A.is_entire and B.is_entire and not sums[-1] > bound:
        return SupportSet(A.group, tuple(kept))
    if len(kept) > h.term_bound:
        frontier = kept[h.term_bound]
        kept = kept[: h.term_bound]
        return SupportSet(A.group, tuple(kept), frontier, True)
    return SupportSet(A.group, tuple(kept), limit, budget_hit)


def finite_sums_closure(A: SupportSet, h: Horizon) -> SupportSet:
    """All finite sums of elements of A up to the horizon, in increasing
    order; the empty sum contributes 0, so the closure of the empty set
    is {0}."""
    zero = group_zero(A.group)
    for p in A.points:
        if p < zero:
            raise NotInNonNegCone(f"element {p} is negative")
    bound = h.exp_bound
    exclusive = False
    if A.bound is not None and not bound < A.bound:
        bound = A.bound
        exclusive = A.budget_hit
    gens = [p for p in A.points if not p.is_zero]
    emitted = []
    seen = {zero}
    heap = [zero]
    while heap:
        x = heapq.heappop(heap)
        if x > bound or (exclusive and x == bound):
            break
        if len(emitted) >= h.term_bound:
            return SupportSet(A.group, tuple(emitted), x, True)
        emitted.append(x)
        for g in gens:
            s = x + g
            if s not in seen and not s > bound:
                seen.add(s)
                heapq.heappush(heap, s)
    if not gens and A.is_entire:
        return SupportSet(A.group, tuple(emitted))
    return SupportSet(A.group, tuple(emitted), bound, A.budget_hit)


def is_initial_segment(B: SupportSet, A: SupportSet, h: Horizon) -> bool:
    """B is a subset of A and no element of A outside B precedes one of B."""
    aset = A.as_set()
    bset = B.as_set()
    if not bset <= aset:
        return False
    if not bset:
        return True
    top = B.points[-1]
    return all(a in bset for a in A.points if not a > top)


# ---------------------------------------------------------------------------
# families

W_FAMILY = "W"
FIN_FAMILY = "FIN"
EXPLICIT_FAMILY = "explicit"


@dataclass(frozen=True)
class Family:
    """A symbolic family of well-ordered subsets of G."""

    group: GroupDescriptor
    kind: str
    region: Region | None = None
    members: tuple[tuple[GroupElement, ...], ...] = ()

    def __post_init__(self):
        if self.kind in (W_FAMILY, FIN_FAMILY):
            if self.region is None or self.region.group != self.group:
                raise ValueError("region family needs a region over the same group")
        elif self.kind == EXPLICIT_FAMILY:
            for m in self.members:
                for p in m:
                    if p.descriptor != self.group:
                        raise DescriptorMismatch("member point uses a different group")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    def member_sets(self) -> list[SupportSet]:
        return [SupportSet(self.group, m) for m in self.members]

    def __str__(self):
        if self.kind == W_FAMILY:
            return f"W({self.region})"
        if self.kind == FIN_FAMILY:
            return f"FIN({self.region})"
        body = ",".join(
            "{" + ",".join(str(p) for p in m) + "}" for m in self.members
        )
        return "explicit{" + body + "}"


def well_ordered_family(region: Region) -> Family:
    return Family(region.group, W_FAMILY, region)


def finite_subsets_family(region: Region) -> Family:
    return Family(region.group, FIN_FAMILY, region)


def explicit_family(group: GroupDescriptor, members) -> Family:
    canonical = sorted({tuple(sorted(set(m))) for m in members})
    return Family(group, EXPLICIT_FAMILY, members=tuple(canonical))


def family_contains(F: Family, A: SupportSet, h: Horizon,
                    budget: SearchBudget = DEFAULT_BUDGET) -> bool:
    """Membership of a support set in the family.

    For region families every enumerated point is tested against the
    region; a point outside refutes membership soundly even for truncated
    enumerations.  A truncated enumeration cannot *confirm* membership in
    a W-family (TermBudgetExceeded) and counts as not-finite for a
    FIN-family.  Explicit families compare enumerated content.
    """
    if A.group != F.group:
        raise DescriptorMismatch("support set uses a different group")
    if F.kind == EXPLICIT_FAMILY:
        if A.budget_hit:
            raise TermBudgetExceeded("cannot compare a truncated enumeration")
        return tuple(A.points) in F.members
    unknowns = []
    for p in A.points:
        verdict = region_contains(F.region, p, budget)
        if verdict is False:
            return False
        if verdict is None:
            unknowns.append(p)
    if unknowns:
        raise UnknownWithinBudget(
            f"membership of {unknowns[0]} in {F.region} undecided within budget"
        )
    if F.kind == W_FAMILY:
        if A.budget_hit:
            raise TermBudgetExceeded(
                "enumeration truncated; cannot confirm every point is in the region"
            )
        return True
    return A.is_entire


# ---------------------------------------------------------------------------
# witness series (field must have a third element, i.e. not F_2)

def _require_not_f2(fld: FieldDescriptor):
    if fld.characteristic == 2 and fld.kind == "Fp":
        raise FieldTooSmall("witness construction needs a field other than F_2")


def ones_series(A: SupportSet, fld: FieldDescriptor) -> Series:
    """sum of t^g over the points of A, every coefficient 1."""
    return Literal(A.group, fld, [(g, fld.one) for g in A.points])


def subset_sum_witness(A: SupportSet, B: SupportSet,
                       fld: FieldDescriptor) -> tuple[Series, Series]:
    """(a, c) with supp(a) = supp(c) = A and supp(a + c) = B, for B a
    subset of A: coefficients of c avoid {0, -a_g} on B and cancel a
    elsewhere."""
    _require_not_f2(fld)
    if not B.as_set() <= A.as_set():
        raise ValueError("subset witness needs B contained in A")
    one = fld.one
    a = ones_series(A, fld)
    bset = B.as_set()
    c = Literal(
        A.group,
        fld,
        [(g, one if g in bset else -one) for g in A.points],
    )
    return a, c


def union_sum_witness(A: SupportSet, B: SupportSet,
                      fld: FieldDescriptor) -> tuple[Series, Series]:
    """(a, b) with supp(a) = A, supp(b) = B and supp(a + b) = A union B."""
    _require_not_f2(fld)
    return ones_series(A, fld), ones_series(B, fld)


def build_group_witnesses(A: SupportSet, B: SupportSet,
                          fld: FieldDescriptor) -> tuple[Series, Series]:
    """The additive-closure probes: a subset witness pair when B is
    contained in A, otherwise a union witness pair."""
    if B.as_set() <= A.as_set():
        return subset_sum_witness(A, B, fld)
    return union_sum_witness(A, B, fld)
