"""CDC constructions assembled from lifted rank-metric codes.

Every part of a family is an affine code of k x n generator matrices: a
fixed template holding the pivot (identity) entries plus a linear code placed
on the free positions. Members are addressed by index, so families of 10^19
subspaces can be sampled without being enumerated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .bounds import Const, QPow, RankDist, SizeExpr, Sum, corollary3_t
from .ferrers import DotPattern, from_echelon_form
from .gf import field_new
from .matrix import Mat, ProfileVector, hamming_distance, rank, weight
from .rank_metric import (
    BudgetExceeded,
    LinearMatCode,
    coset_family,
    embed_code,
    enumeration_budget,
    gabidulin,
    realize_grmc,
    sample_mrd_rank,
    support_constrained_subcode,
)
from .qcount import rank_count

__all__ = [
    "BlockPart",
    "CodeFamily",
    "ConstructionError",
    "LiftedPart",
    "ListPart",
    "Theorem3Report",
    "bilateral_multilevel",
    "corollary3",
    "corollary_family",
    "corollary_params",
    "corollary_vectors",
    "double_multilevel",
    "fill_pattern",
    "insertion_lemma15",
    "insertion_lemma16",
    "inverse_bilateral_multilevel",
    "inverse_multilevel",
    "corollary3_vectors",
    "lemma13_dims",
    "lemma13_vectors",
    "theorem2_vectors",
    "lifted_mrd",
    "multilevel",
    "parallel",
    "theorem2",
    "theorem3_check",
    "union",
]


class ConstructionError(ValueError):
    pass


def _ceil2(x: int) -> int:
    return (x + 1) // 2


def _pack(M: Mat) -> int:
    w = 0
    for x in M.entries:
        w = (w << 1) | x
    return w


# ---------------------------------------------------------------------------
# Parts


class Part:
    """One piece of a family; subclasses provide indexing and sampling."""

    label: str
    vector: ProfileVector | None
    q: int
    k: int
    n: int
    size_expr: SizeExpr
    info: dict

    @property
    def size(self) -> int:
        raise NotImplementedError

    @property
    def cap(self) -> int | None:
        return None

    def members(self) -> Iterator[tuple[int, Mat]]:
        raise NotImplementedError

    def sample(self, rng: random.Random) -> tuple[int, Mat]:
        raise NotImplementedError

    def sample_packed(self, rng: random.Random) -> tuple[int, int]:
        idx, M = self.sample(rng)
        return idx, _pack(M)

    def members_packed(self) -> Iterator[tuple[int, int]]:
        for idx, M in self.members():
            yield idx, _pack(M)


class LiftedPart(Part):
    """Members offset + code.word_at(i); optionally only the words whose
    unembedded fill has rank in `ranks` (a rank-capped GRMC part)."""

    def __init__(self, label, vector, offset: Mat, code: LinearMatCode, fill: LinearMatCode | None = None,
                 ranks: tuple[int, int] | None = None, size_expr: SizeExpr | None = None, info: dict | None = None):
        self.label, self.vector = label, vector
        self.q, self.k, self.n = code.q, offset.rows, offset.cols
        self.offset, self.code, self.fill, self.ranks = offset, code, fill, ranks
        self.info = dict(info or {})
        if ranks is not None and fill is None:
            raise ValueError("a rank filter needs the unembedded fill code")
        self._offset_packed = _pack(offset) if self.q == 2 else None
        if size_expr is None:
            if ranks is not None:
                raise ValueError("rank-filtered parts need an explicit size expression")
            size_expr = QPow(code.dim)
        self.size_expr = size_expr
        self._size = size_expr.evaluate(self.q)

    @property
    def size(self) -> int:
        return self._size

    @property
    def cap(self) -> int | None:
        return self.ranks[1] if self.ranks else None

    def _keep(self, t: int) -> bool:
        if self.ranks is None:
            return True
        lo, hi = self.ranks
        r = self.fill.rank_at(t)
        return r == 0 or lo <= r <= hi

    def member(self, t: int) -> Mat:
        if self.ranks is not None and not self._keep(t):
            raise IndexError(f"index {t} is filtered out of part {self.label}")
        return self.offset + self.code.word_at(t)

    def members(self) -> Iterator[tuple[int, Mat]]:
        for t in range(self.code.size):
            if self._keep(t):
                yield t, self.offset + self.code.word_at(t)

    def members_packed(self):
        if self.q != 2:
            yield from super().members_packed()
            return
        for t in range(self.code.size):
            if self._keep(t):
                yield t, self._offset_packed ^ self.code.packed_word(t)

    def _draw(self, rng: random.Random) -> int:
        if self.ranks is None:
            return rng.randrange(self.code.size)
        if self._size * 256 < self.code.size:
            return self._draw_structured(rng)
        while True:
            t = rng.randrange(self.code.size)
            if self._keep(t):
                return t

    def _draw_structured(self, rng: random.Random) -> int:
        # rejection would almost never accept: pick the rank by its count, then a word of that rank
        lo, hi = self.ranks
        fill = self.fill
        x = rng.randrange(self._size)
        if x == 0:
            return 0
        x -= 1
        for r in range(lo, min(hi, fill.m, fill.n) + 1):
            c = rank_count(self.q, fill.m, fill.n, lo, r)
            if x < c:
                return sample_mrd_rank(fill, lo, r, rng)
            x -= c
        raise AssertionError("rank counts do not add up to the part size")

    def sample(self, rng):
        t = self._draw(rng)
        return t, self.offset + self.code.word_at(t)

    def sample_packed(self, rng):
        if self.q != 2:
            return super().sample_packed(rng)
        t = self._draw(rng)
        return t, self._offset_packed ^ self.code.packed_word(t)


class ListPart(Part):
    """An explicit list of member matrices (e.g. a searched GRMC, lifted)."""

    def __init__(self, label, vector, mats: Sequence[Mat], info: dict | None = None):
        if not mats:
            raise ValueError("empty list part")
        self.label, self.vector = label, vector
        self.mats = list(mats)
        self.q = self.mats[0].field.q
        self.k, self.n = self.mats[0].shape
        self.size_expr = Const(len(self.mats))
        self.info = dict(info or {})
        self._packed = [_pack(M) for M in self.mats] if self.q == 2 else None

    @property
    def size(self) -> int:
        return len(self.mats)

    def member(self, t: int) -> Mat:
        return self.mats[t]

    def members(self):
        return iter(enumerate(self.mats))

    def sample(self, rng):
        t = rng.randrange(len(self.mats))
        return t, self.mats[t]

    def sample_packed(self, rng):
        if self._packed is None:
            return super().sample_packed(rng)
        t = rng.randrange(len(self.mats))
        return t, self._packed[t]


@dataclass
class Slot:
    """A matrix slot of a block layout; coset slots are indexed by (r, i)."""

    name: str
    code: LinearMatCode  # the parent code, embedded in the k x n grid
    coset_s: int | None = None  # parent/subcode index ratio for coset slots

    @property
    def count(self) -> int:
        if self.coset_s is None:
            return self.code.size
        return self.code.size // self.coset_s

    def index(self, r: int, i: int) -> int:
        return i if self.coset_s is None else r + i * self.coset_s


class BlockPart(Part):
    """Union over r < s of {offset + sum of slot words}, coset slots taking
    their r-th coset."""

    def __init__(self, label, vector, offset: Mat, slots: Sequence[Slot], s: int, size_expr: SizeExpr,
                 info: dict | None = None):
        self.label, self.vector = label, vector
        self.offset, self.slots, self.s = offset, list(slots), s
        self.q = self.slots[0].code.q
        self.k, self.n = offset.shape
        self.size_expr = size_expr
        self.info = dict(info or {})
        self._size = s
        for sl in self.slots:
            self._size *= sl.count
        if self._size != size_expr.evaluate(self.q):
            raise ConstructionError(f"block part {label}: size {self._size} disagrees with its formula")
        self._offset_packed = _pack(offset) if self.q == 2 else None

    @property
    def size(self) -> int:
        return self._size

    def _split(self, t: int) -> tuple[int, list[int]]:
        idx = []
        for sl in reversed(self.slots):
            t, i = divmod(t, sl.count)
            idx.append(i)
        return t, idx[::-1]

    def member(self, t: int) -> Mat:
        r, idx = self._split(t)
        M = self.offset
        for sl, i in zip(self.slots, idx):
            M = M + sl.code.word_at(sl.index(r, i))
        return M

    def packed_member(self, t: int) -> int:
        r, idx = self._split(t)
        w = self._offset_packed
        for sl, i in zip(self.slots, idx):
            w ^= sl.code.packed_word(sl.index(r, i))
        return w

    def members(self):
        for t in range(self._size):
            yield t, self.member(t)

    def members_packed(self):
        if self.q != 2:
            yield from super().members_packed()
            return
        for t in range(self._size):
            yield t, self.packed_member(t)

    def sample(self, rng):
        t = rng.randrange(self._size)
        return t, self.member(t)

    def sample_packed(self, rng):
        if self.q != 2:
            return super().sample_packed(rng)
        t = rng.randrange(self._size)
        return t, self.packed_member(t)


# ---------------------------------------------------------------------------
# Families


@dataclass
class CodeFamily:
    q: int
    n: int
    k: int
    delta: int
    parts: list
    name: str = ""
    notes: list = field(default_factory=list)

    @property
    def min_dist_claimed(self) -> int:
        return 2 * self.delta

    @property
    def size_formula(self) -> SizeExpr:
        return Sum([p.size_expr for p in self.parts])

    @property
    def size(self) -> int:
        return sum(p.size for p in self.parts)

    @property
    def vectors(self) -> list:
        return [p.vector for p in self.parts]

    def part(self, label: str) -> Part:
        for p in self.parts:
            if p.label == label:
                return p
        raise KeyError(label)

    def members(self, budget: int | None = None, limit: int | None = None) -> Iterator[Mat]:
        """Stream every member in canonical order (parts in order, then index).

        With a limit only that many members are produced and the budget
        applies to the limit."""
        b = enumeration_budget(budget)
        want = self.size if limit is None else min(limit, self.size)
        if want > b:
            raise BudgetExceeded(self.size if limit is None else want, b)
        produced = 0
        for p in self.parts:
            for _, M in p.members():
                if produced >= want:
                    return
                yield M
                produced += 1

    def indexed_members(self, budget: int | None = None, packed: bool = False):
        """(part index, member index, member) in canonical order."""
        b = enumeration_budget(budget)
        if self.size > b:
            raise BudgetExceeded(self.size, b)
        for pi, p in enumerate(self.parts):
            it = p.members_packed() if packed else p.members()
            for t, M in it:
                yield pi, t, M

    def choose_part(self, rng: random.Random, weighting: str = "uniform") -> int:
        if weighting == "uniform":
            return rng.randrange(len(self.parts))
        if weighting == "size":
            x = rng.randrange(self.size)
            for i, p in enumerate(self.parts):
                if x < p.size:
                    return i
                x -= p.size
        raise ValueError(f"unknown weighting {weighting!r}")

    def summary(self) -> list[dict]:
        out = []
        for p in self.parts:
            row = {"label": p.label, "vector": str(p.vector) if p.vector else None, "size": p.size,
                   "formula": str(p.size_expr)}
            row.update(p.info)
            out.append(row)
        return out


def union(*families: CodeFamily, name: str = "") -> CodeFamily:
    """Union of families with equal (q, n, k, delta). Cross-family distances
    are the caller's claim; verify them with the verify module."""
    if not families:
        raise ValueError("union of nothing")
    f0 = families[0]
    for f in families[1:]:
        if (f.q, f.n, f.k, f.delta) != (f0.q, f0.n, f0.k, f0.delta):
            raise ConstructionError("union of families with different parameters")
    parts, notes = [], []
    for f in families:
        parts.extend(f.parts)
        notes.extend(f.notes)
    return CodeFamily(f0.q, f0.n, f0.k, f0.delta, parts, name or "+".join(f.name for f in families), notes)


# ---------------------------------------------------------------------------
# Filling dot patterns


def _permuted_pattern(P: DotPattern, rows: Sequence[int], cols: Sequence[int]) -> DotPattern:
    ri = {r: i for i, r in enumerate(rows)}
    ci = {c: j for j, c in enumerate(cols)}
    return DotPattern(len(rows), len(cols), frozenset((ri[r], ci[c]) for r, c in P.dots if r in ri and c in ci))


def fill_pattern(q: int, P: DotPattern, delta: int, target: int | None = None) -> tuple[LinearMatCode, str, int]:
    """A linear code of P.m x P.n matrices supported on P with minimum rank
    distance >= delta, as large as the candidate rules allow.

    Candidates: the support-constrained subcode of a Gabidulin code on the
    full grid or on the grid of occupied rows and columns, each in the four
    row/column reflections; and a Gabidulin code on a largest all-dot
    rectangle. The best is truncated to `target` when one is given.
    Returns (code, rule used, dimension before truncation)."""
    best: LinearMatCode | None = None
    how = "zero"
    if P.dots:
        occ_rows = sorted({r for r, _ in P.dots})
        occ_cols = sorted({c for _, c in P.dots})
        grids = [(list(range(P.m)), list(range(P.n)), "grid")]
        if (len(occ_rows), len(occ_cols)) != (P.m, P.n):
            grids.append((occ_rows, occ_cols, "compact"))
        for rows, cols, tag in grids:
            for flip_r in (False, True):
                for flip_c in (False, True):
                    rr = rows[::-1] if flip_r else rows
                    cc = cols[::-1] if flip_c else cols
                    if min(len(rr), len(cc)) < delta:
                        continue
                    sub = support_constrained_subcode(gabidulin(q, len(rr), len(cc), delta), _permuted_pattern(P, rr, cc))
                    if best is None or sub.dim > best.dim:
                        best = embed_code(sub, rr, cc, P.m, P.n)
                        how = f"support-constrained ({tag}{', rows reflected' if flip_r else ''}{', columns reflected' if flip_c else ''})"
        rows, cols = P.largest_rectangle()
        if min(len(rows), len(cols)) >= delta:
            rect = gabidulin(q, len(rows), len(cols), delta)
            if best is None or rect.dim > best.dim:
                best = embed_code(rect, rows, cols, P.m, P.n)
                how = f"rectangle {len(rows)}x{len(cols)}"
    if best is None:
        best = LinearMatCode(q, P.m, P.n, [], delta)
    best.delta_claimed = delta
    realized = best.dim
    if target is not None:
        if best.dim < target:
            raise ConstructionError(f"pattern fill reaches dimension {best.dim}, below the target {target}")
        best = best.truncated(target)
    return best, how, realized


def _template(q: int, v: ProfileVector) -> tuple[Mat, list[int]]:
    """Pivot template of v and the stripped (free) columns."""
    F = field_new(q)
    pivots = v.row_pivots()
    rows = [[0] * v.n for _ in pivots]
    for r, p in enumerate(pivots):
        rows[r][p] = 1
    return Mat(F, rows, v.n), v.stripped_columns()


def _lifted_part(q: int, v: ProfileVector, delta: int, label: str, target: int | None = None,
                 cap: int | None = None) -> LiftedPart:
    k = v.weight
    offset, free = _template(q, v)
    P = from_echelon_form(v)
    if cap is not None:
        if not P.is_full():
            raise ConstructionError(f"rank caps need a full pattern; {v} is not full")
        if cap < 0:
            raise ConstructionError("negative rank cap")
        fill = gabidulin(q, P.m, P.n, delta)
        expr = Sum([Const(1)] + [RankDist(P.m, P.n, delta, i) for i in range(delta, min(cap, P.m, P.n) + 1)])
        emb = embed_code(fill, list(range(k)), free, k, v.n)
        return LiftedPart(label, v, offset, emb, fill=fill, ranks=(delta, cap), size_expr=expr,
                          info={"fill": "full MRD, rank-capped", "cap": cap})
    fill, how, realized = fill_pattern(q, P, delta, target)
    emb = embed_code(fill, list(range(k)), free, k, v.n)
    return LiftedPart(label, v, offset, emb, info={"fill": how, "dim": fill.dim, "realized_dim": realized, "dots": len(P)})


def _as_vectors(vs: Iterable, flavor: str, type_triple=None) -> list[ProfileVector]:
    out = []
    for v in vs:
        if isinstance(v, ProfileVector):
            if v.flavor != flavor:
                raise ConstructionError(f"{v} is a {v.flavor} vector, expected {flavor}")
            if type_triple is not None and tuple(v.type_triple or ()) != tuple(type_triple):
                raise ConstructionError(f"{v} has type {v.type_triple}, expected {tuple(type_triple)}")
            out.append(v)
        else:
            out.append(ProfileVector.parse(flavor, str(v), type_triple))
    return out


def _check_vectors(vs: list[ProfileVector], n: int, k: int, delta: int) -> None:
    for v in vs:
        if v.n != n or v.weight != k:
            raise ConstructionError(f"vector {v} must have length {n} and weight {k}")
    for a, b in combinations(vs, 2):
        d = hamming_distance(a, b)
        if d < 2 * delta:
            raise ConstructionError(f"vectors {a} and {b} have Hamming distance {d} < {2 * delta}")


def _targets(targets, count):
    if targets is None:
        return [None] * count
    targets = list(targets)
    if len(targets) != count:
        raise ValueError("one target per vector")
    return targets


def _check_params(n: int, k: int, delta: int) -> None:
    if not (1 <= delta <= k and 2 * k <= n):
        raise ConstructionError(f"need n >= 2k >= 2 delta >= 2, got n={n}, k={k}, delta={delta}")


def _multilevel_generic(q, n, k, delta, vectors, flavor, type_triple, targets, caps, name):
    vs = _as_vectors(vectors, flavor, type_triple)
    _check_vectors(vs, n, k, delta)
    tg = _targets(targets, len(vs))
    if caps is None or isinstance(caps, int):
        cp = [caps] * len(vs)
    else:
        cp = list(caps)
    parts = [
        _lifted_part(q, v, delta, f"{name}[{i}]" if len(vs) > 1 else name, t, c)
        for i, (v, t, c) in enumerate(zip(vs, tg, cp))
    ]
    return CodeFamily(q, n, k, delta, parts, name)


def multilevel(q: int, n: int, k: int, delta: int, A: Iterable, targets=None, name: str = "multilevel") -> CodeFamily:
    """Union of lifted pattern fills over identifying vectors."""
    _check_params(n, k, delta)
    return _multilevel_generic(q, n, k, delta, A, "identifying", None, targets, None, name)


def inverse_multilevel(q: int, n: int, k: int, delta: int, Ahat: Iterable, caps=None, targets=None,
                       name: str = "inverse-multilevel") -> CodeFamily:
    """Mirror of multilevel on inverse identifying vectors. caps (an int or
    one per vector) keeps only fills of rank <= cap (full patterns only)."""
    _check_params(n, k, delta)
    return _multilevel_generic(q, n, k, delta, Ahat, "inverse", None, targets, caps, name)


def bilateral_multilevel(q: int, n: int, k: int, delta: int, B: Iterable, type_triple, targets=None,
                         name: str = "bilateral") -> CodeFamily:
    _check_params(n, k, delta)
    if sum(type_triple) != n:
        raise ConstructionError(f"type {tuple(type_triple)} does not sum to n={n}")
    return _multilevel_generic(q, n, k, delta, B, "bilateral", tuple(type_triple), targets, None, name)


def inverse_bilateral_multilevel(q: int, n: int, k: int, delta: int, Bhat: Iterable, type_triple, targets=None,
                                 name: str = "inverse-bilateral") -> CodeFamily:
    _check_params(n, k, delta)
    if sum(type_triple) != n:
        raise ConstructionError(f"type {tuple(type_triple)} does not sum to n={n}")
    return _multilevel_generic(q, n, k, delta, Bhat, "inverse-bilateral", tuple(type_triple), targets, None, name)


def lifted_mrd(q: int, n: int, k: int, delta: int) -> CodeFamily:
    """{rs(I_k | A) : A in the k x (n-k) Gabidulin code}."""
    _check_params(n, k, delta)
    v = ProfileVector("identifying", tuple([1] * k + [0] * (n - k)))
    offset, free = _template(q, v)
    code = embed_code(gabidulin(q, k, n - k, delta), list(range(k)), free, k, n)
    part = LiftedPart("lifted-mrd", v, offset, code, info={"fill": "full MRD", "dim": code.dim})
    return CodeFamily(q, n, k, delta, [part], "lifted-mrd")


def parallel(q: int, n: int, k: int, delta: int, grmc: Sequence[Mat] | None = None) -> CodeFamily:
    """Lifted MRD plus {rs(A | I_k)} over a GRMC with ranks <= k - delta.

    Without an explicit GRMC the one from realize_grmc(q, k, n-k, delta, 0,
    k-delta) is used."""
    _check_params(n, k, delta)
    if grmc is None:
        grmc = realize_grmc(q, k, n - k, delta, 0, k - delta)
    F = field_new(q)
    mats = []
    for A in grmc:
        if A.shape != (k, n - k):
            raise ConstructionError(f"GRMC matrix has shape {A.shape}, expected {(k, n - k)}")
        if rank(A) > k - delta:
            raise ConstructionError(f"GRMC matrix of rank {rank(A)} exceeds k - delta = {k - delta}")
        mats.append(Mat(F, [list(A.data[r]) + [1 if c == r else 0 for c in range(k)] for r in range(k)], n))
    base = lifted_mrd(q, n, k, delta)
    if not mats:
        return base
    v = ProfileVector("inverse", tuple([0] * (n - k) + [1] * k))
    part = ListPart("grmc", v, mats, info={"fill": "explicit GRMC"})
    return CodeFamily(q, n, k, delta, base.parts + [part], "parallel")


def double_multilevel(C1: CodeFamily, C2: CodeFamily, s_map: dict | None = None) -> CodeFamily:
    """Union of a multilevel family and an inverse multilevel family, checking
    d_H(v_hat, v) >= 2(s + delta) for every pair of vectors.

    s for a part of C2 is s_map[str(v_hat)] when given, otherwise the part's
    rank cap (min(k, n-k) for uncapped parts)."""
    if (C1.q, C1.n, C1.k, C1.delta) != (C2.q, C2.n, C2.k, C2.delta):
        raise ConstructionError("families have different parameters")
    delta = C1.delta
    for p2 in C2.parts:
        vh = p2.vector
        if s_map is not None and str(vh) in s_map:
            s = s_map[str(vh)]
        elif p2.cap is not None:
            s = p2.cap
        else:
            s = min(C2.k, C2.n - C2.k)
        for p1 in C1.parts:
            d = hamming_distance(vh, p1.vector)
            if d < 2 * (s + delta):
                raise ConstructionError(f"d_H({vh}, {p1.vector}) = {d} < 2(s + delta) = {2 * (s + delta)}")
    return union(C1, C2, name="double-multilevel")


# ---------------------------------------------------------------------------
# Insertion constructions


def _insertion_check(n, n1, n2, n3, delta, delta1, delta2, b1, b2):
    if n1 + n2 + n3 != n:
        raise ConstructionError("n1 + n2 + n3 must equal n")
    if min(n1, n2, n3, delta1, delta2) < 1:
        raise ConstructionError("block sizes must be positive")
    if b1 + b2 < delta:
        raise ConstructionError("need b1 + b2 >= delta")
    if not (1 <= b1 <= delta and 1 <= b2 <= delta):
        raise ConstructionError("need 1 <= b_i <= delta")
    if n1 < delta1 or n2 < delta2:
        raise ConstructionError("need n1 >= delta1 and n2 >= delta2")


def _place(q: int, code: LinearMatCode, rows: Sequence[int], cols: Sequence[int], k: int, n: int) -> LinearMatCode:
    return embed_code(code, list(rows), list(cols), k, n)


def _block_part(q, k, n, label, vector, offset_cells, slot_specs, delta):
    """slot_specs: (name, kind, (m, nn, d_parent), rows, cols) with kind
    'coset' (parent distance b, subcode delta) or 'mrd'."""
    F = field_new(q)
    off = [[0] * n for _ in range(k)]
    for r, c in offset_cells:
        off[r][c] = 1
    offset = Mat(F, off, n)
    slots, ss, exps = [], [], 0
    for name, kind, (m, nn, d), rows, cols in slot_specs:
        if kind == "coset":
            fam = coset_family(q, m, nn, d, delta)
            slots.append(Slot(name, _place(q, fam.parent, rows, cols, k, n), fam.s))
            ss.append(fam.s)
            exps += fam.subcode.dim
        else:
            code = gabidulin(q, m, nn, delta)
            slots.append(Slot(name, _place(q, code, rows, cols, k, n)))
            exps += code.dim
    s = min(ss)
    e = 0
    while q**e < s:
        e += 1
    info = {"s": s, "slots": {sl.name: sl.count for sl in slots}}
    return BlockPart(label, vector, offset, slots, s, QPow(e + exps), info)


def insertion_lemma15(q: int, n: int, n1: int, n2: int, n3: int, delta: int, delta1: int, delta2: int,
                      b1: int, b2: int, vector: ProfileVector | None = None, label: str = "lemma15") -> CodeFamily:
    """Rows [0 | 0 | M2 | I^_{d2} | 0 ; I_{d1} | M1 | M3 | 0 | 0] with M1, M2 in
    coupled cosets and M3 from a delta-MRD code."""
    _insertion_check(n, n1, n2, n3, delta, delta1, delta2, b1, b2)
    k = delta1 + delta2
    if delta > min(delta1, n1 - delta1) or delta > min(delta2, n3) or delta > min(delta1, n3):
        raise ConstructionError("slot shapes too small for rank distance delta")
    c3 = n1  # first middle column
    chat = n1 + n3  # first column of the reversed identity
    cells = [(r, chat + delta2 - 1 - r) for r in range(delta2)]
    cells += [(delta2 + i, i) for i in range(delta1)]
    top, bot = range(delta2), range(delta2, k)
    specs = [
        ("M1", "coset", (delta1, n1 - delta1, b1), bot, range(delta1, n1)),
        ("M2", "coset", (delta2, n3, b2), top, range(c3, c3 + n3)),
        ("M3", "mrd", (delta1, n3, delta), bot, range(c3, c3 + n3)),
    ]
    part = _block_part(q, k, n, label, vector, cells, specs, delta)
    return CodeFamily(q, n, k, delta, [part], label)


def insertion_lemma16(q: int, n: int, n1: int, n2: int, n3: int, delta: int, delta1: int, delta2: int,
                      b1: int, b2: int, vector: ProfileVector | None = None, label: str = "lemma16") -> CodeFamily:
    """Rows [0 | 0 | M3 | M2 | I^_{d2} ; 0 | I_{d1} | M1 | 0 | 0]."""
    _insertion_check(n, n1, n2, n3, delta, delta1, delta2, b1, b2)
    k = delta1 + delta2
    if delta > min(delta1, n3) or delta > min(delta2, n2 - delta2) or delta > min(delta2, n3):
        raise ConstructionError("slot shapes too small for rank distance delta")
    a = n1 - delta1
    c3 = n1
    c2 = n1 + n3
    chat = n1 + n3 + n2 - delta2
    cells = [(r, chat + delta2 - 1 - r) for r in range(delta2)]
    cells += [(delta2 + i, a + i) for i in range(delta1)]
    top, bot = range(delta2), range(delta2, k)
    specs = [
        ("M1", "coset", (delta1, n3, b1), bot, range(c3, c3 + n3)),
        ("M2", "coset", (delta2, n2 - delta2, b2), top, range(c2, c2 + n2 - delta2)),
        ("M3", "mrd", (delta2, n3, delta), top, range(c3, c3 + n3)),
    ]
    part = _block_part(q, k, n, label, vector, cells, specs, delta)
    return CodeFamily(q, n, k, delta, [part], label)


# ---------------------------------------------------------------------------
# Large assembled families


def _bits(*runs: tuple[int, int]) -> tuple[int, ...]:
    out: list[int] = []
    for bit, length in runs:
        out.extend([bit] * length)
    return tuple(out)


def theorem2_vectors(delta: int) -> dict:
    d = delta
    tt = (3 * d, d, 2 * d)
    return {
        "v": ProfileVector("identifying", _bits((1, 3 * d), (0, 3 * d))),
        "v_hat": ProfileVector("inverse", _bits((0, 3 * d), (1, 3 * d))),
        "B": [
            ProfileVector("bilateral", _bits((1, 2 * d), (0, d), (0, d), (0, d), (1, d)), tt),
            ProfileVector("bilateral", _bits((1, d), (0, d), (1, d), (0, d), (0, d), (1, d)), tt),
        ],
        "B_hat": [
            ProfileVector("inverse-bilateral", _bits((1, 2 * d), (0, d), (0, d), (1, d), (0, d)), tt),
            ProfileVector("inverse-bilateral", _bits((0, d), (1, 2 * d), (0, d), (0, d), (1, d)), tt),
        ],
        "type": tt,
    }


def theorem2(q: int, delta: int) -> CodeFamily:
    """The five-part (6 delta, 2 delta, 3 delta) family.

    delta = 1 is rejected (no b_i with 1 <= b_i < delta)."""
    if delta < 2:
        raise ConstructionError("theorem2 needs delta >= 2")
    d, c = delta, _ceil2(delta)
    n, k = 6 * d, 3 * d
    vs = theorem2_vectors(d)
    C1 = multilevel(q, n, k, d, [vs["v"]], name="C1")
    C2 = inverse_multilevel(q, n, k, d, [vs["v_hat"]], caps=2 * d, name="C2")
    C12 = double_multilevel(C1, C2)
    C3 = bilateral_multilevel(q, n, k, d, vs["B"], vs["type"], targets=[2 * d * d + 4 * d + d * c, d * d + 5 * d],
                              name="C3")
    b1, b2 = c, d // 2
    C4 = insertion_lemma15(q, n, 3 * d, 2 * d, d, d, 2 * d, d, b1, b2, vector=vs["B_hat"][0], label="C4")
    C5 = insertion_lemma16(q, n, 3 * d, 2 * d, d, d, 2 * d, d, b1, b2, vector=vs["B_hat"][1], label="C5")
    fam = union(C12, C3, C4, C5, name=f"theorem2(delta={d})")
    return fam


def lemma13_vectors(n: int, k: int, delta: int) -> list[ProfileVector]:
    """{1^k 0..} and {1^(k-i delta) 0^delta 1^(i delta) 0..} for 1 <= i <= k // delta."""
    if not (1 <= delta and k >= 2 * delta and n >= k + delta):
        raise ConstructionError("lemma13_vectors needs k >= 2 delta and n >= k + delta")
    out = [ProfileVector("identifying", _bits((1, k), (0, n - k)))]
    for i in range(1, k // delta + 1):
        out.append(ProfileVector("identifying", _bits((1, k - i * delta), (0, delta), (1, i * delta), (0, n - k - delta))))
    return out


def lemma13_dims(n: int, k: int, delta: int) -> list[int]:
    top = k // delta
    dims = [(n - k) * (k - delta + 1) - i * delta * delta for i in range(top)]
    return dims + [(n - k - delta) * (k - delta + 1)]


def corollary3_vectors(n: int, k: int, delta: int) -> tuple[list, list, tuple]:
    """(B, B1, type triple) of the bilateral vector families."""
    ch, fh, cd, fd = _ceil2(k), k // 2, _ceil2(delta), delta // 2
    t = corollary3_t(k, delta)
    mid = n - k - 2 * delta - fh
    tt = (k + delta, mid, delta + fh)
    B = []
    for j in range(t):
        left = _bits((1, ch - j * cd), (0, cd), (1, j * cd))
        left += (0,) * (k + delta - len(left))
        right = _bits((0, cd), (1, j * fd), (0, fd), (1, fh - j * fd))
        B.append(ProfileVector("bilateral", left + (0,) * mid + right, tt))
    B1 = []
    for l in range(1, t):
        left = _bits((0, cd), (1, ch - l * cd), (0, cd), (1, l * cd))
        left += (0,) * (k + delta - len(left))
        right = _bits((1, l * fd), (0, fd), (1, fh - l * fd), (0, cd))
        B1.append(ProfileVector("bilateral", left + (0,) * mid + right, tt))
    return B, B1, tt


def corollary3(q: int, n: int, k: int, delta: int) -> CodeFamily:
    """Constant-weight multilevel part, rank-capped parallel part and the two
    bilateral families B and B1."""
    if not (n >= 2 * k + delta and k // 2 >= 2 * _ceil2(delta) and delta >= 2):
        raise ConstructionError("corollary3 needs n >= 2k + delta, floor(k/2) >= 2 ceil(delta/2), delta >= 2")
    ch, cd, fd = _ceil2(k), _ceil2(delta), delta // 2
    A = lemma13_vectors(n, k, delta)
    C1 = multilevel(q, n, k, delta, A, targets=lemma13_dims(n, k, delta), name="C1")
    vh = ProfileVector("inverse", _bits((0, n - k), (1, k)))
    C2 = inverse_multilevel(q, n, k, delta, [vh], caps=k - delta, name="C2")
    B, B1, tt = corollary3_vectors(n, k, delta)
    e3 = (n - k - 2 * delta + fd) * (ch - delta + 1)
    e6 = (n - k - 2 * delta + fd - cd) * (ch - delta + 1)
    fams = [double_multilevel(C1, C2), bilateral_multilevel(q, n, k, delta, B, tt, targets=[e3] * len(B), name="C3")]
    if B1:
        fams.append(bilateral_multilevel(q, n, k, delta, B1, tt, targets=[e6] * len(B1), name="C6"))
    return union(*fams, name=f"corollary3(n={n},k={k},delta={delta})")


# ---------------------------------------------------------------------------
# Printed-vector families and the bilateral condition checks


def _pv(flavor: str, text: str, tt=None) -> ProfileVector:
    return ProfileVector.parse(flavor, text.replace("|", ""), tt)


_COROLLARY_DATA = {
    4: dict(n=17, k=6, delta=3, tt=(9, 2, 6),
            A=["111111" + "0" * 11, "111000111" + "0" * 8, "000111111" + "0" * 8],
            Ahat=["0" * 11 + "111111"],
            B=["111000000|00|000111", "100110000|00|001011"],
            B1=["001001100|00|101100"]),
    5: dict(n=18, k=7, delta=3, tt=(10, 2, 6),
            A=["1111111" + "0" * 11, "1111000111" + "0" * 8, "1000111111" + "0" * 8],
            Ahat=["0" * 11 + "1111111"],
            B=["1111000000|00|000111", "1100110000|00|001011", "0011110000|00|001101"],
            B1=["0011001100|00|101100", "0000111100|00|110100"]),
    6: dict(n=19, k=7, delta=3, tt=(10, 3, 6),
            A=["1111111" + "0" * 12, "1111000111" + "0" * 9, "1000111111" + "0" * 9],
            Ahat=["0" * 12 + "1111111"],
            B=["1111000000|000|000111", "1100110000|000|001011", "0011110000|000|001101"],
            B1=["0011001100|000|101100", "0000111100|000|110100"]),
}


def corollary_vectors(which: int) -> tuple[list, list, list, list]:
    """(A, Ahat, B, B1) exactly as printed for the (17,6,6), (18,6,7) and
    (19,6,7) corollaries (which = 4, 5, 6)."""
    if which not in _COROLLARY_DATA:
        raise ValueError("which must be 4, 5 or 6")
    d = _COROLLARY_DATA[which]
    return (
        [_pv("identifying", s) for s in d["A"]],
        [_pv("inverse", s) for s in d["Ahat"]],
        [_pv("bilateral", s, d["tt"]) for s in d["B"]],
        [_pv("bilateral", s, d["tt"]) for s in d["B1"]],
    )


def corollary_params(which: int) -> tuple[int, int, int, tuple]:
    d = _COROLLARY_DATA[which]
    return d["n"], d["k"], d["delta"], d["tt"]


# Printed per-part dimensions of the bilateral parts (B, B1).
_COROLLARY_PRINTED = {4: ([14, 12], [8]), 5: ([22, 18, 16], [12, 8]), 6: ([27, 23, 23], [19, 15])}


def corollary_family(q: int, which: int, printed: bool = True) -> CodeFamily:
    """The four-part family of a printed vector set, the v_hat part
    rank-capped at k - delta.

    With printed=True the bilateral fills are truncated to the printed part
    sizes; otherwise each pattern keeps its full fill_pattern dimension,
    which is larger for several vectors."""
    n, k, delta, tt = corollary_params(which)
    A, Ahat, B, B1 = corollary_vectors(which)
    tb, tb1 = _COROLLARY_PRINTED[which] if printed else (None, None)
    C1 = multilevel(q, n, k, delta, A, name="C1")
    C2 = inverse_multilevel(q, n, k, delta, Ahat, caps=k - delta, name="C2")
    C3 = bilateral_multilevel(q, n, k, delta, B, tt, targets=tb, name="C3")
    C6 = bilateral_multilevel(q, n, k, delta, B1, tt, targets=tb1, name="C6")
    return union(double_multilevel(C1, C2), C3, C6, name=f"corollary{which}")


@dataclass
class Theorem3Report:
    violations: list = field(default_factory=list)
    checked: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = [f"theorem3 conditions: {'pass' if self.ok else 'FAIL'}"]
        for cond, cnt in sorted(self.checked.items()):
            lines.append(f"  condition {cond}: {cnt} pairs checked")
        for cond, a, b, got, need in self.violations:
            lines.append(f"  condition {cond} violated: {a} vs {b}: {got} < {need}")
        return "\n".join(lines)


def theorem3_check(A, Ahat, B, B1, delta: int, type_triple=None, s: int | None = None) -> Theorem3Report:
    """Check the four vector conditions of the bilateral/double multilevel
    combination and report every violating pair.

    (1) d_H(v_hat, v) >= 2(s + delta) for v in A, v_hat in Ahat, with s the
        rank cap of the v_hat part (default k - delta);
    (2) d_H(v1, u1) + |wt v1 - wt u1| >= 2 delta on the first n1 coordinates,
        u in A, for all v in B and B1;
    (3) the same on the last n2 coordinates against v_hat in Ahat;
    (4) d_H(v1, v1') + d_H(v2, v2') >= 2 delta over B x B1.
    Within-set distances of A, B and B1 are also checked (condition 0)."""
    A, Ahat, B, B1 = list(A), list(Ahat), list(B), list(B1)
    vecs = A + Ahat + B + B1
    if not vecs:
        return Theorem3Report()
    bil = B + B1
    if type_triple is None:
        type_triple = bil[0].type_triple if bil else None
    k = vecs[0].weight
    if s is None:
        s = k - delta
    rep = Theorem3Report()

    def need(cond, a, b, got, bound):
        rep.checked[cond] = rep.checked.get(cond, 0) + 1
        if got < bound:
            rep.violations.append((cond, str(a), str(b), got, bound))

    for group in (A, Ahat, B, B1):
        for a, b in combinations(group, 2):
            need(0, a, b, hamming_distance(a, b), 2 * delta)
    for vh in Ahat:
        for v in A:
            need(1, vh, v, hamming_distance(vh, v), 2 * (s + delta))
    if type_triple is not None:
        n1, _, n2 = type_triple
        for v in bil:
            v1, _, v2 = v.split()
            for u in A:
                u1 = u.bits[:n1]
                need(2, v, u, hamming_distance(v1, u1) + abs(weight(v1) - weight(u1)), 2 * delta)
            for uh in Ahat:
                u2 = uh.bits[len(uh.bits) - n2:]
                need(3, v, uh, hamming_distance(v2, u2) + abs(weight(v2) - weight(u2)), 2 * delta)
        for v in B:
            for w in B1:
                a1, _, a2 = v.split()
                b1, _, b2 = w.split()
                need(4, v, w, hamming_distance(a1, b1) + hamming_distance(a2, b2), 2 * delta)
    return rep
