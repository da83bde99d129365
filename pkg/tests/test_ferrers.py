import pytest

from cdcodes.ferrers import (
    DotPattern,
    FerrersDiagram,
    all_diagrams,
    bilateral_pattern,
    from_echelon_form,
    inverse,
    lemma7_dimension,
    lemma7_hypothesis,
    singleton_bound,
    to_ferrers,
    transpose,
)
from cdcodes.matrix import ProfileVector

F2345 = FerrersDiagram((2, 3, 4, 5))


def test_diagram_invariants():
    assert F2345.m == 5 and F2345.n == 4 and len(F2345) == 14
    assert F2345.row_counts() == [4, 4, 3, 2, 1]
    with pytest.raises(ValueError):
        FerrersDiagram((3, 2))
    with pytest.raises(ValueError):
        FerrersDiagram((0, 2))


def test_inverse_layout():
    P = inverse(F2345)
    assert P.col_counts() == [5, 4, 3, 2]
    assert P.render() == "\n".join(["****", "****", "***.", "**..", "*..."])
    full = FerrersDiagram((3, 3, 3))
    assert inverse(full) == full.pattern()
    assert inverse(FerrersDiagram((4,))) == FerrersDiagram((4,)).pattern()


def test_transpose_example():
    T = transpose(F2345)
    assert T.gamma == (1, 2, 3, 4, 4)
    assert T.m == 4 and T.n == 5
    assert T.render() == "\n".join(["*****", ".****", "..***", "...**"])
    assert transpose(T) == F2345
    assert len(T) == 14


def test_singleton_examples():
    assert singleton_bound(F2345, 1) == 14
    assert singleton_bound(FerrersDiagram((1, 1, 3, 3, 6, 6)), 3) == 8
    assert singleton_bound(FerrersDiagram((3, 3, 3)), 2) == 6
    assert singleton_bound(FerrersDiagram((3, 3, 3)), 3) == 3


def test_lemma7_on_f1():
    F1 = FerrersDiagram((1, 1, 3, 3, 6, 6))
    assert lemma7_hypothesis(F1, 3)
    assert lemma7_dimension(F1, 3) == 8


def test_singleton_properties_small_diagrams():
    count = 0
    for F in all_diagrams(5, 5):
        count += 1
        assert len(inverse(F)) == len(F) == len(transpose(F))
        assert singleton_bound(F, 1) == len(F)
        for d in range(2, min(F.m, F.n) + 1):
            s = singleton_bound(F, d)
            assert s < len(F)
            assert s == singleton_bound(transpose(F), d)
    assert count > 100


def test_echelon_form_example1():
    v = ProfileVector.parse("identifying", "1011000")
    P = from_echelon_form(v)
    assert P.render() == "\n".join(["****", ".***", ".***"])
    assert to_ferrers(P).gamma == (1, 3, 3, 3)


def test_echelon_form_inverse_example1():
    v = ProfileVector.parse("inverse", "0001011")
    P = from_echelon_form(v)
    assert P.render() == "\n".join(["****", "****", "***."])


def test_echelon_form_full():
    v = ProfileVector.parse("identifying", "111000")
    assert from_echelon_form(v) == DotPattern.full(3, 3)


def test_identifying_patterns_are_ferrers():
    from itertools import combinations

    for n in range(2, 8):
        for k in range(1, n):
            for ones in combinations(range(n), k):
                bits = tuple(int(j in ones) for j in range(n))
                P = from_echelon_form(ProfileVector("identifying", bits))
                if len(P) == 0:
                    continue
                # rows right-justified with nonincreasing counts, after dropping empty columns
                counts = P.row_counts()
                assert counts == sorted(counts, reverse=True)
                for r, c in P.dots:
                    assert all((r, cc) in P.dots for cc in range(c, P.n))


def test_echelon_form_bilateral_example2():
    v = ProfileVector.parse("bilateral", "110100 00 001101", (6, 2, 6))
    P = from_echelon_form(v)
    assert P.render() == "\n".join([
        "*****...",
        "*****...",
        ".****...",
        "...*****",
        "...****.",
        "...****.",
    ])  # upper rows then lower rows; pivots removed
    left = to_ferrers(DotPattern(3, 3, {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)}))
    right = DotPattern(3, 3, {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1)})
    assert bilateral_pattern(left, 2, right, 3, 3) == P


def test_echelon_form_inverse_bilateral_example4():
    v = ProfileVector.parse("inverse-bilateral", "1011000 00 001101", (7, 2, 6))
    P = from_echelon_form(v)
    assert P.render() == "\n".join([
        "....*****",
        "....****.",
        "....****.",
        "******...",
        ".*****...",
        ".*****...",
    ])


def test_bilateral_pattern_degenerate_and_additive():
    F = FerrersDiagram((1, 2, 2))
    assert bilateral_pattern(F, 0, None, 2, 0) == F.pattern()
    R = FerrersDiagram((1, 3))
    P = bilateral_pattern(F, 3, R, 2, 3)
    assert len(P) == len(F) + 5 * 3 + len(R)
    with pytest.raises(ValueError):
        bilateral_pattern(F, 1, R, 3, 3)
