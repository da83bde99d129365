import random

import pytest

from cdcodes.bounds import lower_bound
from cdcodes.constructions import (
    ConstructionError,
    bilateral_multilevel,
    corollary3,
    corollary3_vectors,
    corollary_family,
    corollary_params,
    corollary_vectors,
    double_multilevel,
    fill_pattern,
    insertion_lemma15,
    insertion_lemma16,
    inverse_multilevel,
    lemma13_dims,
    lemma13_vectors,
    lifted_mrd,
    multilevel,
    parallel,
    theorem2,
    theorem2_vectors,
    theorem3_check,
    union,
)
from cdcodes.ferrers import DotPattern, FerrersDiagram
from cdcodes.matrix import ProfileVector, hamming_distance, profile_vector, rank
from cdcodes.rank_metric import min_rank_distance
from cdcodes.verify import verify_cdc


def _pv(text, flavor="identifying", tt=None):
    return ProfileVector.parse(flavor, text, tt)


def test_lifted_mrd_size_and_shape():
    f = lifted_mrd(2, 6, 3, 2)
    assert f.size == 64 == len(list(f.members()))
    assert str(f.size_formula) == "(q^6)"
    M = next(iter(f.members()))
    assert M.shape == (3, 6) and rank(M) == 3


def test_multilevel_single_vector_is_lifted_mrd():
    a = set(multilevel(2, 6, 3, 2, ["111000"]).members())
    b = set(lifted_mrd(2, 6, 3, 2).members())
    assert a == b


def test_inverse_multilevel_is_reversal():
    fwd = multilevel(2, 6, 3, 2, ["111000"])
    inv = inverse_multilevel(2, 6, 3, 2, ["000111"])
    assert fwd.size == inv.size
    vh = _pv("000111", "inverse")
    rev = [M.reverse_columns() for M in fwd.members()]
    assert all(profile_vector(M, "inverse") == vh for M in rev)
    assert all(profile_vector(M, "inverse") == vh for M in inv.members())
    assert verify_cdc(inv).min_distance_observed == 4


def test_vector_preconditions():
    with pytest.raises(ConstructionError):
        multilevel(2, 6, 3, 2, ["111000", "110100"])  # Hamming distance 2 < 4
    with pytest.raises(ConstructionError):
        multilevel(2, 6, 3, 2, ["1110000"])
    with pytest.raises(ConstructionError):
        lifted_mrd(2, 5, 3, 2)  # n < 2k
    with pytest.raises(ConstructionError):
        double_multilevel(multilevel(2, 6, 3, 2, ["111000"]), inverse_multilevel(2, 6, 3, 2, ["000111"], caps=3))


def test_fill_pattern_ferrers():
    # the 6 x 6 diagram [1,1,3,3,6,6] has an FDRMC of dimension 8 at delta 3
    P = FerrersDiagram((1, 1, 3, 3, 6, 6)).pattern()
    code, how, realized = fill_pattern(2, P, 3)
    assert realized == code.dim == 8
    assert min_rank_distance(code) == 3
    small, _, _ = fill_pattern(2, P, 3, target=5)
    assert small.dim == 5
    with pytest.raises(ConstructionError):
        fill_pattern(2, P, 3, target=9)


def test_fill_pattern_empty():
    code, how, realized = fill_pattern(2, DotPattern(2, 2, frozenset()), 1)
    assert code.dim == 0 and realized == 0


def test_parallel_grmc():
    f = parallel(2, 6, 3, 2)
    assert [p.size for p in f.parts] == [64, 7]
    assert all(rank(M) == 3 for M in f.members())


def test_lemma13_vectors():
    vs = lemma13_vectors(8, 4, 2)
    assert [str(v) for v in vs] == ["11110000", "11001100", "00111100"]
    assert all(hamming_distance(a, b) >= 4 for i, a in enumerate(vs) for b in vs[i + 1:])
    with pytest.raises(ConstructionError):
        lemma13_vectors(8, 3, 2)


def test_lemma13_family_exhaustive():
    f = multilevel(2, 5, 2, 1, lemma13_vectors(5, 2, 1), targets=lemma13_dims(5, 2, 1))
    assert f.size == lower_bound("lemma13", 2, n=5, k=2, delta=1) == 112
    rep = verify_cdc(f)
    assert rep.ok and rep.enumerated_size == 112 and rep.min_distance_observed == 2
    f3 = multilevel(3, 5, 2, 1, lemma13_vectors(5, 2, 1), targets=lemma13_dims(5, 2, 1))
    assert f3.size == lower_bound("lemma13", 3, n=5, k=2, delta=1) == 1053


@pytest.mark.parametrize("delta", [2, 3])
def test_theorem2_size_matches_formula(delta):
    f = theorem2(2, delta)
    assert f.size == lower_bound("theorem2", 2, delta=delta)
    assert [p.label for p in f.parts] == ["C1", "C2", "C3[0]", "C3[1]", "C4", "C5"]


def test_theorem2_corollary2_value():
    assert theorem2(2, 3).size == 9271545225290474496
    assert theorem2(3, 3).size == lower_bound("corollary2", 3)


def test_theorem2_rejects_delta_one():
    with pytest.raises(ConstructionError):
        theorem2(2, 1)


def test_theorem2_vectors_shape():
    vs = theorem2_vectors(3)
    assert str(vs["v"]) == "1" * 9 + "0" * 9
    assert vs["type"] == (9, 3, 6)
    assert all(v.weight == 9 for v in vs["B"] + vs["B_hat"])


def test_insertion_sizes_and_distance():
    for f in (insertion_lemma15(2, 8, 4, 2, 2, 2, 2, 2, 1, 1), insertion_lemma16(2, 8, 2, 4, 2, 2, 2, 2, 1, 1)):
        assert f.size == 256
        assert f.parts[0].info["s"] == 4
        rep = verify_cdc(f)
        assert rep.ok and rep.min_distance_observed == 4 and rep.enumerated_size == 256


def test_insertion_single_block():
    # b1 = b2 = delta leaves one coset pair
    f = insertion_lemma15(2, 8, 4, 2, 2, 2, 2, 2, 2, 2)
    assert f.parts[0].info["s"] == 1
    assert f.size == 64


def test_insertion_b_constraints():
    with pytest.raises(ConstructionError):
        insertion_lemma15(2, 8, 4, 2, 2, 2, 2, 2, 0, 2)
    with pytest.raises(ConstructionError):
        insertion_lemma15(2, 8, 4, 2, 2, 3, 2, 2, 1, 1)  # b1 + b2 < delta
    with pytest.raises(ConstructionError):
        insertion_lemma16(2, 9, 2, 4, 2, 2, 2, 2, 1, 1)  # block sizes do not sum to n


@pytest.mark.parametrize("n", [10, 11])
def test_corollary3_size(n):
    f = corollary3(2, n, 4, 2)
    assert f.size == lower_bound("corollary3", 2, n=n, k=4, delta=2)


def test_corollary3_vectors_conditions():
    B, B1, tt = corollary3_vectors(10, 4, 2)
    assert tt == (6, 0, 4)
    n, k = 10, 4
    A = lemma13_vectors(n, k, 2)
    vh = _pv("0" * (n - k) + "1" * k, "inverse")
    assert theorem3_check(A, [vh], B, B1, 2).ok


def test_corollary3_preconditions():
    with pytest.raises(ConstructionError):
        corollary3(2, 9, 4, 2)


@pytest.mark.parametrize("which", [4, 5, 6])
def test_corollary_vectors_pass_theorem3(which):
    A, Ahat, B, B1 = corollary_vectors(which)
    n, k, delta, tt = corollary_params(which)
    assert all(v.n == n and v.weight == k for v in A + Ahat + B + B1)
    rep = theorem3_check(A, Ahat, B, B1, delta)
    assert rep.ok, rep.to_text()
    assert set(rep.checked) == {0, 1, 2, 3, 4}


@pytest.mark.parametrize("which", [4, 5, 6])
def test_corollary_family_printed_size(which):
    # the rank-capped part contributes its zero word on top of the printed formula
    for q in (2, 3):
        assert corollary_family(q, which).size == lower_bound(f"corollary{which}", q) + 1


def test_corollary_family_generic_fill_is_larger():
    assert corollary_family(2, 4, printed=False).size > corollary_family(2, 4).size


def test_theorem3_flags_bad_sets():
    A, Ahat, B, B1 = corollary_vectors(4)
    rep = theorem3_check(A, Ahat, B, B1 + [B[0]], 3)
    assert not rep.ok
    assert any(v[0] == 4 for v in rep.violations)
    close = _pv("0" * 8 + "111111" + "000", "inverse")  # distance 10 to 000111111 0^8
    rep = theorem3_check(A, [close], B, B1, 3)
    assert any(v[0] == 1 for v in rep.violations)
    assert "violated" in rep.to_text()


def test_members_carry_their_part_vector():
    rng = random.Random(3)
    fams = [theorem2(2, 3), corollary_family(2, 4), corollary_family(3, 6), corollary3(3, 10, 4, 2)]
    for fam in fams:
        for p in fam.parts:
            for _ in range(3):
                _, M = p.sample(rng)
                assert rank(M) == fam.k
                assert profile_vector(M, p.vector.flavor, p.vector.type_triple) == p.vector


def test_capped_part_samples_respect_cap():
    p = corollary_family(2, 4).part("C2")
    rng = random.Random(9)
    n, k = 17, 6
    for _ in range(20):
        t, M = p.sample(rng)
        assert rank(M.select_columns(range(n - k))) <= 3


def test_sampling_is_reproducible():
    f = theorem2(2, 2)
    draw = lambda seed: [p.sample_packed(random.Random(seed)) for p in f.parts]
    assert draw(4) == draw(4)


def test_union_checks_parameters():
    with pytest.raises(ConstructionError):
        union(lifted_mrd(2, 6, 3, 2), lifted_mrd(2, 6, 3, 1))
    u = union(lifted_mrd(2, 6, 3, 2), lifted_mrd(2, 6, 3, 2), name="twice")
    assert u.size == 128 and u.name == "twice"


def test_bilateral_type_must_sum_to_n():
    with pytest.raises(ConstructionError):
        bilateral_multilevel(2, 17, 6, 3, ["111000000|00|000111"], (9, 2, 5))


def test_budget_refusal():
    from cdcodes.rank_metric import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        list(theorem2(2, 3).members())
    assert len(list(theorem2(2, 3).members(limit=5))) == 5
