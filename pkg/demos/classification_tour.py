#!/usr/bin/env python3
"""A walk through families, conditions, witnesses, and classification."""

from hahnseries import (
    CONDITION_NAMES,
    INTEGERS,
    QQ,
    check_condition,
    classify_khull,
    explicit_family,
    finite_subsets_family,
    nonneg_cone,
    prime_field,
    submonoid,
    well_ordered_family,
    whole_group,
)
from hahnseries.classify import FLAG_NAMES

z = INTEGERS.element


def check_all(family):
    print(f"conditions for {family}:")
    for name in CONDITION_NAMES:
        print(f"  {name}: {check_condition(family, name)}")


def classify(fld, family):
    c = classify_khull(fld, family)
    print(f"classification of {fld}(({family})):")
    for name in FLAG_NAMES:
        print(f"  {name}: {c.flag(name).render()}")


print("== the full family satisfies everything ==")
check_all(well_ordered_family(whole_group(INTEGERS)))

print()
print("== the valuation ring: a ring with identity, not a field ==")
classify(QQ, well_ordered_family(nonneg_cone(INTEGERS)))

print()
print("== finite supports: closed under everything except sum closures ==")
classify(QQ, finite_subsets_family(whole_group(INTEGERS)))

print()
print("== a numerical-monoid region ==")
classify(QQ, well_ordered_family(submonoid(INTEGERS, [z(2), z(3)])))

print()
print("== explicit families are brute forced, witnesses included ==")
F = explicit_family(INTEGERS, [[], [z(0)], [z(1)]])
check_all(F)

print()
print("== over F_2 failed converses honestly answer unknown ==")
classify(prime_field(2), F)
classify(QQ, F)
