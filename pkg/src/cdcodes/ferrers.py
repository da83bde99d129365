"""Ferrers diagrams, bilateral dot patterns, and the Singleton-like bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .matrix import ProfileVector


@dataclass(frozen=True)
class DotPattern:
    """An m x n grid with an explicit set of dot cells (row, col)."""

    m: int
    n: int
    dots: frozenset

    def __post_init__(self):
        object.__setattr__(self, "dots", frozenset(self.dots))
        for r, c in self.dots:
            if not (0 <= r < self.m and 0 <= c < self.n):
                raise ValueError(f"dot {(r, c)} outside the {self.m}x{self.n} grid")

    @classmethod
    def full(cls, m: int, n: int) -> "DotPattern":
        return cls(m, n, frozenset((r, c) for r in range(m) for c in range(n)))

    def __len__(self) -> int:
        return len(self.dots)

    def row_counts(self) -> list[int]:
        out = [0] * self.m
        for r, _ in self.dots:
            out[r] += 1
        return out

    def col_counts(self) -> list[int]:
        out = [0] * self.n
        for _, c in self.dots:
            out[c] += 1
        return out

    def is_full(self) -> bool:
        return len(self.dots) == self.m * self.n

    def transpose(self) -> "DotPattern":
        return DotPattern(self.n, self.m, frozenset((c, r) for r, c in self.dots))

    def render(self) -> str:
        return "\n".join(
            "".join("*" if (r, c) in self.dots else "." for c in range(self.n)) for r in range(self.m)
        )

    def largest_rectangle(self) -> tuple[list[int], list[int]]:
        """Rows and columns of a largest all-dot combinatorial rectangle (by
        cell count) among rectangles whose columns are the common dot columns
        of a set of rows. Exhaustive over row subsets when m is small."""
        best: tuple[int, list[int], list[int]] = (0, [], [])
        rows_cols = [frozenset(c for (r, c) in self.dots if r == i) for i in range(self.m)]
        if self.m <= 16:
            for mask in range(1, 1 << self.m):
                rows = [i for i in range(self.m) if mask >> i & 1]
                cols = frozenset.intersection(*(rows_cols[i] for i in rows))
                area = len(rows) * len(cols)
                if area > best[0]:
                    best = (area, rows, sorted(cols))
        return best[1], best[2]


@dataclass(frozen=True)
class FerrersDiagram:
    """Column dot counts gamma_0..gamma_{n-1}, dots top-right-justified."""

    gamma: tuple[int, ...]

    def __post_init__(self):
        g = tuple(self.gamma)
        object.__setattr__(self, "gamma", g)
        if not g:
            raise ValueError("empty Ferrers diagram")
        if any(a > b for a, b in zip(g, g[1:])):
            raise ValueError("column counts must be nondecreasing")
        if g[0] < 1:
            raise ValueError("the first row must have n dots")

    @property
    def m(self) -> int:
        return self.gamma[-1]

    @property
    def n(self) -> int:
        return len(self.gamma)

    def __len__(self) -> int:
        return sum(self.gamma)

    def row_counts(self) -> list[int]:
        return [sum(1 for g in self.gamma if g > r) for r in range(self.m)]

    @property
    def dots(self) -> frozenset:
        return frozenset((r, c) for c, g in enumerate(self.gamma) for r in range(g))

    def pattern(self) -> DotPattern:
        return DotPattern(self.m, self.n, self.dots)

    def render(self) -> str:
        return self.pattern().render()


def inverse(F: FerrersDiagram) -> DotPattern:
    """Inverse diagram: column counts reversed, dots left-aligned."""
    g = F.gamma[::-1]
    return DotPattern(F.m, F.n, frozenset((r, c) for c, h in enumerate(g) for r in range(h)))


def transpose(F: FerrersDiagram) -> FerrersDiagram:
    """F^t = [rho_{m-1}, ..., rho_0]."""
    return FerrersDiagram(tuple(F.row_counts()[::-1]))


def to_ferrers(P: DotPattern) -> FerrersDiagram:
    """Read a pattern whose rows are right-justified runs as a Ferrers diagram."""
    rows = P.row_counts()
    for r, cnt in enumerate(rows):
        expect = {(r, c) for c in range(P.n - cnt, P.n)}
        if not expect <= P.dots:
            raise ValueError("pattern rows are not right-justified")
    if any(a < b for a, b in zip(rows, rows[1:])) or not rows or rows[0] != P.n:
        raise ValueError("pattern is not a Ferrers diagram")
    F = FerrersDiagram(tuple(P.col_counts()))
    return F


def singleton_bound(F: FerrersDiagram | DotPattern, delta: int) -> int:
    """min over i < delta of the dots outside the first i rows and outside the
    rightmost delta-1-i columns."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    P = F.pattern() if isinstance(F, FerrersDiagram) else F
    best = None
    for i in range(delta):
        right = delta - 1 - i
        v = sum(1 for r, c in P.dots if r >= i and c < P.n - right)
        best = v if best is None else min(best, v)
    return best


def lemma7_hypothesis(F: FerrersDiagram, delta: int) -> bool:
    """m >= n and each of the rightmost delta-1 columns has at least n dots."""
    if F.m < F.n:
        return False
    return all(g >= F.n for g in F.gamma[F.n - (delta - 1):]) if delta > 1 else True


def lemma7_dimension(F: FerrersDiagram, delta: int) -> int:
    return sum(F.gamma[: F.n - delta + 1])


def from_echelon_form(v: ProfileVector) -> DotPattern:
    """Dots of the echelon Ferrers form of v, pivot columns removed.

    Rows follow the canonical form's row order; column j of the result is the
    j-th non-pivot column of the k x n form.
    """
    pivots = v.row_pivots()
    free = v.stripped_columns()
    col_index = {c: j for j, c in enumerate(free)}
    n = v.n
    dots = set()
    if v.flavor in ("bilateral", "inverse-bilateral"):
        n1, mid, n2 = v.type_triple
        middle = range(n1, n1 + mid)
    for r, p in enumerate(pivots):
        if v.flavor == "identifying":
            cells = [c for c in free if c > p]
        elif v.flavor == "inverse":
            cells = [c for c in free if c < p]
        elif p < n1:
            cells = [c for c in free if p < c < n1] + list(middle)
        else:
            cells = list(middle) + [c for c in free if n - n2 <= c < p]
        dots.update((r, col_index[c]) for c in cells)
    return DotPattern(len(pivots), len(free), frozenset(dots))


def bilateral_pattern(left: FerrersDiagram | DotPattern, middle_cols: int, right, k1: int, k2: int) -> DotPattern:
    """Upper k1 rows: left diagram then a full middle; lower k2 rows: full
    middle then the inverse-shaped right pattern."""
    L = left.pattern() if isinstance(left, FerrersDiagram) else left
    if right is None:
        R = DotPattern(k2, 0, frozenset())
    elif isinstance(right, FerrersDiagram):
        R = inverse(right)
    else:
        R = right
    if L.m != k1 or R.m != k2:
        raise ValueError("block row counts do not match k1, k2")
    n = L.n + middle_cols + R.n
    dots = set(L.dots)
    for r in range(k1 + k2):
        dots.update((r, L.n + c) for c in range(middle_cols))
    dots.update((k1 + r, L.n + middle_cols + c) for r, c in R.dots)
    return DotPattern(k1 + k2, n, frozenset(dots))


def all_diagrams(max_m: int, max_n: int) -> Iterable[FerrersDiagram]:
    """Every Ferrers diagram with m <= max_m rows and n <= max_n columns."""

    def rec(prefix, n, m):
        if len(prefix) == n:
            if prefix[-1] == m:
                yield FerrersDiagram(tuple(prefix))
            return
        lo = prefix[-1] if prefix else 1
        for g in range(lo, m + 1):
            yield from rec(prefix + [g], n, m)

    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            yield from rec([], n, m)
