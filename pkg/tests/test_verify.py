import pytest

from cdcodes.constructions import CodeFamily, LiftedPart, corollary_vectors, lemma13_vectors, lifted_mrd, parallel, theorem2
from cdcodes.ferrers import FerrersDiagram
from cdcodes.matrix import Mat
from cdcodes.rank_metric import BudgetExceeded, LinearMatCode, gabidulin, support_constrained_subcode
from cdcodes.verify import verify_cdc, verify_constant_weight, verify_matrices, verify_rank_code


def test_lifted_mrd_exhaustive():
    rep = verify_cdc(lifted_mrd(2, 6, 3, 2))
    assert rep.ok
    assert rep.pairs_checked == 2016
    assert rep.min_distance_observed == 4
    assert rep.formula_size == rep.enumerated_size == 64


def test_lifted_mrd_q3_exhaustive_small():
    rep = verify_cdc(lifted_mrd(3, 4, 2, 2))
    assert rep.ok and rep.enumerated_size == 9 and rep.pairs_checked == 36


def test_parallel_exhaustive_and_part_minima():
    rep = verify_cdc(parallel(2, 6, 3, 2))
    assert rep.ok and rep.enumerated_size == 71
    assert rep.part_minima[("grmc", "lifted-mrd")] >= 4


def test_overclaim_fails_with_witness():
    rep = verify_cdc(lifted_mrd(2, 6, 3, 2), claimed=6)
    assert not rep.ok
    assert rep.violations[0]["kind"] == "distance"
    assert rep.violation_count > len(rep.violations) > 0
    assert "FAIL" in rep.to_text()


def test_single_member_family_is_vacuous():
    p = lifted_mrd(2, 6, 3, 3).parts[0]
    single = LiftedPart("single", p.vector, p.offset, LinearMatCode(2, 3, 6, []))
    solo = CodeFamily(2, 6, 3, 3, [single], "solo")
    for mode in ("exhaustive", "sampled"):
        rep = verify_cdc(solo, mode=mode)
        assert rep.ok and rep.pairs_checked == 0


def test_exhaustive_budget_refusal():
    with pytest.raises(BudgetExceeded) as e:
        verify_cdc(theorem2(2, 3))
    assert e.value.cardinality == 9271545225290474496


def test_sampled_is_reproducible_and_bounded_below():
    f = parallel(2, 6, 3, 2)
    a = verify_cdc(f, mode="sampled", seed=5, samples=300)
    b = verify_cdc(f, mode="sampled", seed=5, samples=300)
    assert a.to_dict() == b.to_dict()
    ex = verify_cdc(f)
    assert a.min_distance_observed >= ex.min_distance_observed
    assert a.pairs_checked == 300


def test_sampled_theorem2_smoke():
    rep = verify_cdc(theorem2(2, 3), mode="sampled", seed=1, samples=500)
    assert rep.ok and rep.min_distance_observed >= 6
    rep = verify_cdc(theorem2(2, 3), mode="sampled", seed=1, samples=200, weighting="size")
    assert rep.ok


def test_verify_matrices_flags_rank_loss():
    mats = list(lifted_mrd(2, 6, 3, 2).members())
    assert verify_matrices(mats, 4).ok
    bad = list(mats)
    bad[0] = Mat(bad[0].field, [bad[0].data[0], bad[0].data[1], [0] * 6], 6)
    rep = verify_matrices(bad, 4)
    assert not rep.ok
    assert any(v["kind"] == "dimension" for v in rep.violations)


def test_verify_matrices_duplicate():
    M = next(iter(lifted_mrd(2, 6, 3, 2).members()))
    rep = verify_matrices([M, M], 4)
    assert rep.min_distance_observed == 0 and not rep.ok


def test_constant_weight_lemma13():
    rep = verify_constant_weight(lemma13_vectors(8, 4, 2), 4)
    assert rep.ok and rep.pairs_checked == 3


def test_constant_weight_bilateral_cross_pairs():
    _, _, B, B1 = corollary_vectors(6)
    rep = verify_constant_weight(B + B1, 6)
    assert rep.ok


def test_constant_weight_violations():
    rep = verify_constant_weight(["1100", "1100"], 2)
    assert not rep.ok and rep.violations[0]["distance"] == 0
    rep = verify_constant_weight(["1100", "1110"], 1)
    assert any(v["kind"] == "weight" for v in rep.violations)
    with pytest.raises(ValueError):
        verify_constant_weight([], 2)


def test_rank_code_gabidulin():
    rep = verify_rank_code(gabidulin(2, 3, 3, 2), 2)
    assert rep.ok and rep.min_distance_observed == 2 and rep.pairs_checked == 63


def test_rank_code_ferrers_subcode():
    P = FerrersDiagram((1, 1, 3, 3, 6, 6)).pattern()
    sub = support_constrained_subcode(gabidulin(2, 6, 6, 3), P)
    rep = verify_rank_code(sub, 3)
    assert sub.dim == 8
    assert rep.ok and rep.pairs_checked == 255 and rep.min_distance_observed == 3


def test_rank_code_zero_dimensional():
    rep = verify_rank_code(LinearMatCode(2, 2, 2, []), 5)
    assert rep.ok and rep.pairs_checked == 0


def test_report_serialization():
    rep = verify_cdc(lifted_mrd(2, 4, 2, 2))
    d = rep.to_dict()
    assert d["ok"] and d["mode"] == "exhaustive" and d["pairs_checked"] == 6
    assert '"min_distance_observed": 4' in rep.to_json()
