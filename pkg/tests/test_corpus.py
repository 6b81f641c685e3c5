"""Corpus manifest versus the checklist of published locations."""
from collections import Counter

from liext.audit import AUDIT, CONFIRM
from liext.corpus import CASES, all_tags

# (location prefix, number of entries printed at that location)
CHECKLIST = [
    ("translation/arbitrary-extension", 1),
    ("translation/local-equivalence", 1),
    ("translation/extended-adi/", 1),
    ("translation/rdi/", 1),
    ("translation/extraction", 1),
    ("two-dim/alg1/commutator", 1),
    ("two-dim/alg2/commutator", 1),
    ("two-dim/alg3/commutator", 1),
    ("two-dim/alg1/determining", 1),
    ("two-dim/alg2/determining", 1),
    ("two-dim/alg3/determining", 1),
    ("ext-table/row1/general", 1),
    ("ext-table/row1/inequivalent", 1),
    ("ext-table/row2/general", 1),
    ("ext-table/row2/inequivalent", 1),
    ("ext-table/row3/general", 1),
    ("ext-table/row3/inequivalent", 1),
    ("inv-table/row1/op", 2),
    ("inv-table/row2/op", 2),
    ("inv-table/row3/op", 2),
    ("inv-table/row1/adi/", 7),
    ("inv-table/row2/adi/", 7),
    ("inv-table/row3/adi/", 7),
    ("inv-table/row1/rdi/", 7),
    ("inv-table/row2/rdi/", 7),
    ("inv-table/row3/rdi/", 7),
    ("inv-table/row2/exp-cross-check", 1),
    ("poincare/commutators", 1),
    ("poincare/adi-basis/", 5),
    ("poincare/rdi-basis/", 4),
    ("poincare/extension-family", 1),
    ("poincare/determining", 1),
    ("poincare/inequivalent-extension", 1),
    ("poincare/exp-adi/", 2),
    ("poincare/exp-rdi/", 2),
    ("poincare/extended-prolongation/", 3),
    ("poincare/first-order-adi/", 2),
    ("poincare/first-order-rdi/", 2),
    ("poincare/second-order-determining", 1),
    ("poincare/second-order-adi/", 3),
    ("poincare/second-order-rdi/", 2),
    ("poincare/wave-operator-absolute/", 1),
    ("poincare/products/", 3),
    ("nonlinear/commutators", 1),
    ("nonlinear/adi-basis/", 5),
    ("nonlinear/determining", 1),
    ("nonlinear/extension-family", 1),
    ("nonlinear/inequivalent-extension", 1),
    ("nonlinear/exp-adi/", 2),
    ("nonlinear/exp-rdi/", 2),
    ("nonlinear/extended-prolongation/", 1),
    ("nonlinear/rdi-list/", 6),
]


def test_tags_are_unique():
    dup = [t for t, n in Counter(all_tags()).items() if n > 1]
    assert dup == []


def test_every_location_is_claimed_with_the_printed_count():
    tags = all_tags()
    for prefix, count in CHECKLIST:
        hits = [t for t in tags if t.startswith(prefix)]
        assert len(hits) == count, (prefix, hits)


def test_every_claim_belongs_to_a_location():
    prefixes = [p for p, _ in CHECKLIST] + ["inv-table/row1/adi-independence", "inv-table/row1/rdi-independence",
                                            "inv-table/row2/adi-independence", "inv-table/row2/rdi-independence",
                                            "inv-table/row3/adi-independence", "inv-table/row3/rdi-independence",
                                            "inv-table/row1/extension", "inv-table/row2/extension",
                                            "inv-table/row3/extension", "poincare/adi-independence",
                                            "nonlinear/adi-independence"]
    orphans = [t for t in all_tags() if not any(t.startswith(p) for p in prefixes)]
    assert orphans == []


def test_case_ids_and_classes():
    assert list(CASES) == ["T1", "A1", "A2", "A3", "P1", "P2"]
    for case in CASES.values():
        assert {c.klass for c in case.claims} <= {CONFIRM, AUDIT}
        assert f"task audit corpus={case.id};" in case.spec
