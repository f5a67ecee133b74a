import math

import pytest

from moduliq import qq
from moduliq.ledger import (
    DivisorExpr,
    Relation,
    RelationSet,
    UnderdeterminedError,
    consistency_report,
    discriminant_pullback_multiplicity,
    hassett_keel_relations,
    k_equiv_obstruction,
    kirwan_discrepancy,
    kirwan_exceptional_coefficient,
    normal_bundle_bidegree,
    ordered_k_formulas,
    section4_relations,
    solve_unknown,
    top_intersection_T9,
    vital_coefficient,
)


def test_vital_coefficients_match_printed_values():
    assert ordered_k_formulas() == {
        2: qq(-2, 11),
        3: qq(5, 11),
        4: qq(10, 11),
        5: qq(13, 11),
        6: qq(14, 11),
    }
    assert discriminant_pullback_multiplicity(12) == 15 == math.comb(6, 2)


def test_rederivations():
    assert kirwan_exceptional_coefficient() == 4
    assert solve_unknown(hassett_keel_relations("discriminant")) == qq(-2, 11)
    assert solve_unknown(hassett_keel_relations("pullback")) == 15


def test_solver_is_order_invariant():
    rels = hassett_keel_relations("exceptional")
    flipped = RelationSet.make(list(reversed(rels.relations)), rels.independent)
    assert solve_unknown(rels) == solve_unknown(flipped) == 4


def test_solver_error_modes():
    d2 = DivisorExpr.of("D2")
    with pytest.raises(UnderdeterminedError):
        solve_unknown(RelationSet.make([Relation("t", d2, d2)], independent=("D2",)))


def test_discrepancy_two_thirds():
    assert kirwan_discrepancy() == qq(2, 3)


def test_normal_bundle():
    assert normal_bundle_bidegree() == (qq(-1), qq(-1))


def test_section4_consistency_report():
    report = consistency_report(section4_relations())
    assert not report.consistent
    assert report.conflicts == ("K_tor = pi*K_BB + 16T (as printed)",)
    # the unique single-coefficient repair flips the boundary orientation
    assert len(report.repairs) == 1
    relation, cls, side, value = report.repairs[0]
    assert relation == "K_tor = pi*K_BB + 16T (as printed)"
    assert cls == "T" and side == "rhs" and value == -16


def test_section4_subsystem_without_printed_relation_is_consistent():
    rels = section4_relations()
    kept = [r for r in rels.relations if "as printed" not in r.name]
    sub = RelationSet.make(kept, rels.independent)
    assert consistency_report(sub).consistent


def test_section4_entails_minus_16():
    # replace the printed relation by one with an unknown boundary coefficient
    rels = section4_relations()
    kept = [r for r in rels.relations if "as printed" not in r.name]
    from moduliq.ledger import UNKNOWN

    candidate = Relation(
        "K_tor = pi*K_BB + xT",
        DivisorExpr.of("Ktor"),
        DivisorExpr.of("KBB") + DivisorExpr.make({"T": UNKNOWN}),
    )
    x = solve_unknown(RelationSet.make(kept + [candidate], rels.independent))
    assert x == -16


def test_trivial_consistency_cases():
    assert consistency_report(RelationSet.make([], ())).consistent
    one = DivisorExpr.of("1")
    x = DivisorExpr.of("x")
    bad = RelationSet.make(
        [Relation("a", x, one), Relation("b", x, one.scale(2))], independent=("1",)
    )
    report = consistency_report(bad)
    assert not report.consistent
    assert set(report.conflicts) == {"a", "b"}


def test_top_intersection():
    assert top_intersection_T9() == qq(7, 103680)
    assert top_intersection_T9() == qq(7) / (144 * math.factorial(6))
    assert qq(math.comb(12, 6), 2) == 462
    assert math.comb(8, 4) == 70


def test_k_equivalence_obstruction():
    report = k_equiv_obstruction()
    assert report.delta9_required == qq(16**9 * 7, 9**9 * 144 * 720)
    assert report.valuation_at_3 == -22
    assert report.contradiction
    # internal cross-check: (16/9)^-9 times the required value is T^9
    assert report.delta9_required * qq(9, 16) ** 9 == top_intersection_T9()
