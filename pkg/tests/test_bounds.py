from fractions import Fraction

import pytest

from cdcodes.bounds import (
    GOLDEN_TABLE1,
    TABLE1_Q,
    TABLE1_ROWS,
    BoundOracle,
    QPow,
    RankDist,
    Sum,
    lower_bound,
    lower_bound_expr,
    old_lower_bound,
    ratio_remark3,
    table1,
    upper_bound_lemma1,
)
from cdcodes.matrix import all_subspaces
from cdcodes.qcount import gaussian_binomial, rank_distribution


def test_gaussian_small_values():
    assert gaussian_binomial(2, 4, 2) == (15 * 7) // (3 * 1) == 35
    assert gaussian_binomial(3, 5, 0) == 1
    assert gaussian_binomial(2, 3, 4) == 0


def test_gaussian_counts_subspaces():
    assert gaussian_binomial(2, 4, 2) == len(all_subspaces(2, 4, 2))
    assert gaussian_binomial(3, 3, 1) == len(all_subspaces(3, 3, 1)) == 13


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_gaussian_symmetry(q):
    for n in range(9):
        for k in range(n + 1):
            assert gaussian_binomial(q, n, k) == gaussian_binomial(q, n, n - k)


def test_size_expression_arithmetic():
    e = QPow(3) + 1
    assert e.evaluate(2) == 9
    assert (e * 2).evaluate(3) == 56
    assert (QPow(4) - QPow(2)).evaluate(2) == 12
    assert Sum([RankDist(3, 3, 2, 2)]).evaluate(2) == rank_distribution(2, 3, 3, 2, 2)
    assert "q^3" in str(e)


def test_corollary2_value():
    assert lower_bound("corollary2", 2) == 9271545225290474496
    assert lower_bound("theorem2", 2, delta=3) == lower_bound("corollary2", 2)


def test_corollary4_and_6_values():
    assert lower_bound("corollary4", 3) == 984822786754906111880
    assert lower_bound("corollary6", 3) == 42393314923753439324693652326


def test_table1_cell_q4():
    assert lower_bound("corollary2", 4) == 85071058146182807998870119931236581376


def test_old_bound_and_difference():
    assert old_lower_bound("corollary4", 3) == 984822786754900790910
    assert lower_bound("corollary4", 3) - old_lower_bound("corollary4", 3) == 5320970
    # printed old value for q=2, (18,6,9) is one less than the formula; see the typo cells below
    assert old_lower_bound("corollary2", 2) == 9271545225288115200


def test_remark2_corrected_formula_below_new_bound():
    for q in TABLE1_Q[(18, 6, 7)]:
        assert old_lower_bound("corollary5", q) < lower_bound("corollary5", q)


def test_lower_bound_rejects_unknown():
    with pytest.raises(ValueError):
        lower_bound("corollary9", 2)
    with pytest.raises(ValueError):
        lower_bound_expr("theorem2", delta=1)


def test_table1_reproduction():
    rep = table1()
    assert len(rep.rows) == sum(len(v) for v in TABLE1_Q.values()) == 25
    # every computed new value matches the print
    assert all(r.new_ok for r in rep.rows)
    bad = {(r.n, r.d, r.k, r.q): r.status for r in rep.failures()}
    # cells whose printed columns are internally inconsistent, or whose old value is off by one
    assert bad == {
        (18, 6, 9, 2): "mismatch:old,diff",
        (18, 6, 9, 5): "mismatch:diff",
        (18, 6, 9, 7): "mismatch:diff",
        (18, 6, 7, 8): "mismatch:diff",
        (18, 6, 7, 9): "mismatch:diff",
    }
    for r in rep.failures():
        if r.status == "mismatch:diff":
            assert not r.printed_consistent
            assert r.diff == r.new - r.old


def test_table1_filters_and_serialization():
    assert table1(q_list=[]).rows == []
    rep = table1(q_list=[3], rows=[(17, 6, 6)])
    assert len(rep.rows) == 1 and rep.ok
    d = rep.rows[0].to_dict()
    assert set(d) >= {"q", "n", "d", "k", "new", "old", "diff", "status"}
    assert d["diff"] == "5320970"
    assert "17 6 6" in rep.to_text()
    assert '"status": "match"' in rep.to_json()


def test_golden_table_shape():
    for key, which in TABLE1_ROWS.items():
        for q in TABLE1_Q[key]:
            assert key + (q,) in GOLDEN_TABLE1


def test_upper_bound_case2():
    ub = upper_bound_lemma1(2, 8, 3, 3)
    assert ub.case == 2
    assert ub.value == 2**5 + 1
    assert upper_bound_lemma1(3, 8, 3, 3).value == 3**5 + 1


def test_upper_bound_case3_uses_oracle():
    ub = upper_bound_lemma1(3, 19, 3, 7)
    assert ub.case == 3
    names = [t[0] for t in ub.terms]
    assert "A_q(12,4,6)" in names
    singleton = gaussian_binomial(3, 11, 6)
    assert dict((t[0], t[1]) for t in ub.terms)["A_q(12,4,6)"] == singleton


def test_oracle_table_precedence():
    o = BoundOracle()
    base = upper_bound_lemma1(3, 19, 3, 7, o).value
    o.add(3, 12, 4, 6, 1000, "made-up table entry")
    assert o.lookup(3, 12, 4, 6) == (1000, "made-up table entry")
    ub = upper_bound_lemma1(3, 19, 3, 7, o)
    assert ub.value == base - gaussian_binomial(3, 11, 6) + 1000
    assert any("made-up" in t[2] for t in ub.terms)


def test_oracle_fallbacks_are_upper_bounds():
    # the lifted MRD code gives A_2(6,4,3) >= 64
    for fb in ("singleton", "anticode", "trivial"):
        v, prov = BoundOracle(fallback=fb).lookup(2, 6, 4, 3)
        assert 64 <= v <= gaussian_binomial(2, 6, 3)
        assert prov
    with pytest.raises(ValueError):
        BoundOracle(fallback="johnson")


def test_upper_bound_unsupported():
    with pytest.raises(ValueError):
        upper_bound_lemma1(2, 20, 2, 8)
    with pytest.raises(ValueError):
        upper_bound_lemma1(2, 10, 3, 6)


def test_lower_below_upper_on_table1():
    for (n, d, k), which in TABLE1_ROWS.items():
        for q in TABLE1_Q[(n, d, k)]:
            if k < 3 * (d // 2):
                up = upper_bound_lemma1(q, n, d // 2, k).value
            else:
                # outside the recursive bound (k = 3 delta): the Singleton-type bound on A_q
                up = BoundOracle().lookup(q, n, d, k)[0]
            assert lower_bound(which, q) < up


def test_ratio_remark3():
    r = ratio_remark3(3)
    assert isinstance(r.value, Fraction)
    assert 0 < r.value < 1
    assert r.decimal(6) == "0.999957"
    assert r.meets("0.94548")
    assert r.provenance
    with pytest.raises(ValueError):
        ratio_remark3(2)


def test_ratio_across_q():
    vals = [ratio_remark3(q).value for q in (3, 4, 5, 7, 8, 9)]
    assert all(0 < v < 1 for v in vals)
    assert vals == sorted(vals)
