"""Rank-metric codes: Gabidulin MRD codes, subcodes, cosets and GRMC bounds."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .ferrers import DotPattern
from .gf import ExtFieldSpec, FieldSpec, ext_field, field_new
from .matrix import Mat, nullspace, rank, rank_gf2, rank_rows
from .qcount import gaussian_binomial, rank_count, rank_distribution

__all__ = [
    "BudgetExceeded",
    "CosetFamily",
    "LinearMatCode",
    "MrdCode",
    "coset_family",
    "embed_code",
    "enumeration_budget",
    "gabidulin",
    "gaussian_binomial",
    "grmc_lower_bound",
    "min_rank_distance",
    "rank_census",
    "rank_distribution",
    "realize_grmc",
    "sample_mrd_rank",
    "support_constrained_subcode",
]

DEFAULT_BUDGET = 2**24
BUDGET_ENV = "CDCODES_BUDGET"


class BudgetExceeded(RuntimeError):
    def __init__(self, cardinality: int, budget: int):
        super().__init__(f"enumeration of {cardinality} items exceeds the budget of {budget}")
        self.cardinality = cardinality
        self.budget = budget


def enumeration_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _rank_flat_gf2(w: int, m: int, n: int) -> int:
    mask = (1 << n) - 1
    return rank_gf2((w >> (n * (m - 1 - r))) & mask for r in range(m))


class LinearMatCode:
    """A GF(q)-linear code of m x n matrices given by a basis.

    Codeword index t corresponds to the information vector (c_0, ..., c_{K-1})
    with t = sum c_i q^(K-1-i), so index order is lexicographic order.
    """

    def __init__(self, q: int, m: int, n: int, basis: Sequence[Mat | Sequence[int]], delta_claimed: int = 1):
        self.field: FieldSpec = field_new(q)
        self.q, self.m, self.n = q, m, n
        flat = []
        for B in basis:
            f = tuple(B.entries) if isinstance(B, Mat) else tuple(B)
            if len(f) != m * n:
                raise ValueError("basis matrix has the wrong size")
            flat.append(f)
        self._flat: list[tuple[int, ...]] = flat
        self.delta_claimed = delta_claimed
        self._packed = None
        self._chunks = None
        if q == 2:
            self._packed = [int("".join(map(str, f)), 2) if f else 0 for f in flat]
            self._build_chunks()

    def _build_chunks(self):
        K = self.dim
        chunks = []
        for start in range(0, K, 8):
            idx = list(range(start, min(start + 8, K)))
            width = len(idx)
            table = [0] * (1 << width)
            for t in range(1, 1 << width):
                low = t & -t
                b = low.bit_length() - 1
                # bit b of the chunk value is basis idx[width - 1 - b]
                table[t] = table[t ^ low] ^ self._packed[idx[width - 1 - b]]
            chunks.append((K - start - width, width, table))
        self._chunks = chunks

    @property
    def dim(self) -> int:
        return len(self._flat)

    @property
    def size(self) -> int:
        return self.q**self.dim

    @property
    def basis(self) -> list[Mat]:
        return [self._to_mat(f) for f in self._flat]

    def _to_mat(self, flat: Sequence[int]) -> Mat:
        n = self.n
        return Mat(self.field, [flat[r * n:(r + 1) * n] for r in range(self.m)], n)

    def _unpack(self, w: int) -> Mat:
        total = self.m * self.n
        bits = [(w >> (total - 1 - i)) & 1 for i in range(total)]
        return self._to_mat(bits)

    def info_of(self, index: int) -> list[int]:
        q, K = self.q, self.dim
        out = [0] * K
        for i in range(K - 1, -1, -1):
            out[i] = index % q
            index //= q
        return out

    def packed_word(self, index: int) -> int:
        """GF(2) only: the codeword as a row-major int, entry (0,0) most significant."""
        w = 0
        for shift, width, table in self._chunks:
            w ^= table[(index >> shift) & ((1 << width) - 1)]
        return w

    def word(self, info: Sequence[int]) -> Mat:
        return self._to_mat(self._flat_word(info))

    def _flat_word(self, info: Sequence[int]) -> list[int]:
        F = self.field
        acc = [0] * (self.m * self.n)
        for c, B in zip(info, self._flat):
            if c:
                acc = _add_scaled(F, acc, c, B)
        return acc

    def word_at(self, index: int) -> Mat:
        if not 0 <= index < self.size:
            raise IndexError("codeword index out of range")
        if self.q == 2:
            return self._unpack(self.packed_word(index))
        return self.word(self.info_of(index))

    def rank_at(self, index: int) -> int:
        if self.q == 2:
            return _rank_flat_gf2(self.packed_word(index), self.m, self.n)
        if not 0 <= index < self.size:
            raise IndexError("codeword index out of range")
        flat, n = self._flat_word(self.info_of(index)), self.n
        return rank_rows(self.field, [flat[r * n:(r + 1) * n] for r in range(self.m)], n)

    def enumerate(self, budget: int | None = None) -> Iterator[Mat]:
        b = enumeration_budget(budget)
        if self.size > b:
            raise BudgetExceeded(self.size, b)
        for t in range(self.size):
            yield self.word_at(t)

    def sample_index(self, rng: random.Random) -> int:
        return rng.randrange(self.size)

    def sample(self, seed: int | None = None, count: int = 1) -> list[Mat]:
        rng = random.Random(seed)
        return [self.word_at(self.sample_index(rng)) for _ in range(count)]

    def contains(self, M: Mat) -> bool:
        """Membership test by solving for the information vector."""
        from .matrix import vstack

        if self.dim == 0:
            return M.is_zero()
        F = self.field
        rows = [list(f) for f in self._flat]
        A = Mat(F, rows, self.m * self.n)
        target = Mat(F, [list(M.entries)], self.m * self.n)
        return rank(vstack(A, target)) == rank(A)

    def truncated(self, dim: int) -> "LinearMatCode":
        if dim > self.dim:
            raise ValueError(f"cannot truncate a {self.dim}-dimensional code to {dim}")
        return LinearMatCode(self.q, self.m, self.n, self._flat[:dim], self.delta_claimed)

    def transpose(self) -> "LinearMatCode":
        m, n = self.m, self.n
        return LinearMatCode(self.q, n, m, [_reshape_t(f, m, n) for f in self._flat], self.delta_claimed)

    def __repr__(self) -> str:
        return f"LinearMatCode(q={self.q}, {self.m}x{self.n}, dim={self.dim}, delta>={self.delta_claimed})"


def _reshape_t(f: Sequence[int], m: int, n: int) -> tuple[int, ...]:
    return tuple(f[r * n + c] for c in range(n) for r in range(m))


class MrdCode(LinearMatCode):
    """Gabidulin code realized with linearized polynomials."""

    def __init__(self, q, m, n, delta, basis, ext: ExtFieldSpec, points, kdeg):
        super().__init__(q, m, n, basis, delta)
        self.delta = delta
        self.ext = ext
        self.points = points
        self.kdeg = kdeg

    @property
    def kdim(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"MrdCode(q={self.q}, {self.m}x{self.n}, delta={self.delta}, kdim={self.dim})"


_GAB_CACHE: dict = {}


def gabidulin(q: int, m: int, n: int, delta: int) -> MrdCode:
    """Linear MRD code of m x n matrices with minimum rank distance delta.

    Basis words are beta_j * z^(q^i) (i < K outer, j < M inner) evaluated at
    the polynomial basis 1, x, ..., x^(N-1) of GF(q^M); the column for point
    g_l is the coordinate vector of f(g_l). Transposed when m < n.
    """
    if not 1 <= delta <= min(m, n):
        raise ValueError(f"need 1 <= delta <= min(m, n), got delta={delta} for {m}x{n}")
    key = (q, m, n, delta)
    if key in _GAB_CACHE:
        return _GAB_CACHE[key]
    F = field_new(q)
    M, N = max(m, n), min(m, n)
    K = N - delta + 1
    E = ext_field(F, M)
    points = [q**l for l in range(N)]
    frob = [[E.frobenius(g, i) for g in points] for i in range(K)]
    betas = E.basis()
    basis = []
    for i in range(K):
        for b in betas:
            cols = [E.to_vector(E.mul(b, frob[i][l])) for l in range(N)]
            # M x N matrix with column l = cols[l]
            mat = [[cols[l][r] for l in range(N)] for r in range(M)]
            if m < n:
                mat = [list(row) for row in zip(*mat)]
            basis.append([x for row in mat for x in row])
    code = MrdCode(q, m, n, delta, basis, E, points, K)
    _GAB_CACHE[key] = code
    return code


def rank_census(code: LinearMatCode, budget: int | None = None) -> dict[int, int]:
    b = enumeration_budget(budget)
    if code.size > b:
        raise BudgetExceeded(code.size, b)
    return _census_gf2(code) if code.q == 2 else _census_projective(code)


def _gray_steps(q: int, K: int) -> Iterator[tuple[int, int, int]]:
    """Reflected q-ary Gray code on K digits, as (digit, old, new) steps from
    the all-zero word; digit 0 changes fastest."""
    a = [0] * K
    o = [1] * K
    while True:
        j = 0
        while j < K:
            v = a[j] + o[j]
            if 0 <= v < q:
                break
            o[j] = -o[j]
            j += 1
        if j == K:
            return
        yield j, a[j], v
        a[j] = v


def _census_gf2(code: LinearMatCode) -> dict[int, int]:
    m, n, K = code.m, code.n, code.dim
    packed = code._packed[::-1]
    mask = (1 << n) - 1
    shifts = [n * (m - 1 - r) for r in range(m)]
    cap = min(m, n)
    counts = [0] * (cap + 1)
    counts[0] = 1
    w = 0
    for j, _, _ in _gray_steps(2, K):
        w ^= packed[j]
        basis: list[int] = []
        for s in shifts:
            v = (w >> s) & mask
            for b in basis:
                x = v ^ b
                if x < v:
                    v = x
            if v:
                basis.append(v)
                if len(basis) == cap:
                    break
        counts[len(basis)] += 1
    return {r: c for r, c in enumerate(counts) if c}


def _census_projective(code: LinearMatCode) -> dict[int, int]:
    """One word per line: leading information digit 1, the rest walked in Gray
    order, each rank counted q - 1 times."""
    F, m, n, K = code.field, code.m, code.n, code.dim
    counts = [0] * (min(m, n) + 1)
    counts[0] = 1
    for lead in range(K):
        acc = list(code._flat[lead])
        tail = code._flat[lead + 1:][::-1]
        counts[rank_rows(F, [acc[r * n:(r + 1) * n] for r in range(m)], n)] += 1
        for j, old, new in _gray_steps(code.q, len(tail)):
            acc = _add_scaled(F, acc, F.sub(new, old), tail[j])
            counts[rank_rows(F, [acc[r * n:(r + 1) * n] for r in range(m)], n)] += 1
    return {r: c * (code.q - 1) if r else c for r, c in enumerate(counts) if c}


def _add_scaled(F: FieldSpec, acc: list[int], c: int, B: Sequence[int]) -> list[int]:
    if F.e == 1:
        p = F.p
        return [(a + c * b) % p for a, b in zip(acc, B)]
    if F._mul is not None:
        mc, add = F._mul[c], F._add
        return [add[a][mc[b]] for a, b in zip(acc, B)]
    return [F.add(a, F.mul(c, b)) for a, b in zip(acc, B)]


def min_rank_distance(codewords: LinearMatCode | Iterable[Mat], budget: int | None = None) -> int:
    """Exact minimum rank distance; for a linear code, the minimum nonzero rank."""
    if isinstance(codewords, LinearMatCode):
        if codewords.dim == 0:
            raise ValueError("a code with a single word has no minimum distance")
        census = rank_census(codewords, budget)
        return min(r for r in census if r > 0)
    words = list(codewords)
    if len(words) < 2:
        raise ValueError("need at least two codewords")
    b = enumeration_budget(budget)
    if len(words) * (len(words) - 1) // 2 > b:
        raise BudgetExceeded(len(words) * (len(words) - 1) // 2, b)
    return min(rank(A - B) for A, B in combinations(words, 2))


def _info_index(q: int, info: Sequence[int]) -> int:
    t = 0
    for c in info:
        t = t * q + c
    return t


def sample_mrd_rank(code: LinearMatCode, delta: int, r: int, rng: random.Random) -> int:
    """Index of a uniformly random rank-r word of a linear MRD code with
    minimum rank distance delta, for delta <= r <= min(m, n).

    A uniform r-dimensional space V on the short side is drawn first; the
    words supported on V form an MRD code of dimension max(m,n)(r-delta+1),
    and every V carries the same number of rank-r words, so a uniform draw
    from that subcode (kept when its rank is exactly r) is uniform overall."""
    F, m, n = code.field, code.m, code.n
    lo, hi = min(m, n), max(m, n)
    if not delta <= r <= lo:
        raise ValueError(f"rank {r} outside [{delta}, {lo}]")
    if code.dim != hi * (lo - delta + 1):
        raise ValueError("code is not MRD for the given delta")
    q, K = code.q, code.dim
    basis = code._flat
    while True:
        while True:
            V = Mat(F, [[rng.randrange(q) for _ in range(lo)] for _ in range(r)], lo)
            if rank(V) == r:
                break
        H = nullspace(V)
        eqs = []
        for h in H:
            for j in range(hi):
                row = []
                for B in basis:
                    acc = 0
                    for a in range(lo):
                        if not h[a]:
                            continue
                        # entry (a, j) when V lives in the column space, (j, a) otherwise
                        x = B[a * n + j] if lo == m else B[j * n + a]
                        if x:
                            acc = F.add(acc, F.mul(h[a], x))
                    row.append(acc)
                eqs.append(row)
        sol = nullspace(Mat(F, eqs, K)) if eqs else [[int(i == j) for j in range(K)] for i in range(K)]
        for _ in range(64):
            info = [0] * K
            for v in sol:
                c = rng.randrange(q)
                if c:
                    info = [F.add(a, F.mul(c, b)) for a, b in zip(info, v)]
            t = _info_index(q, info)
            if code.rank_at(t) == r:
                return t


def grmc_lower_bound(q: int, m: int, n: int, delta: int, t1: int, t2: int) -> int:
    """Lower bound on a GRMC with ranks in [t1, t2] (n <= m)."""
    if not (1 <= delta <= n <= m and 0 <= t1 <= t2 <= n):
        raise ValueError("need 1 <= delta <= n <= m and 0 <= t1 <= t2 <= n")
    if t2 >= delta:
        return sum(rank_count(q, m, n, delta, i) for i in range(t1, t2 + 1))
    best = 0
    lo = max(1, t1)
    for d in range(lo, delta):
        num = sum(rank_count(q, m, n, d, i) for i in range(lo, t2 + 1))
        best = max(best, num // (q ** (m * (delta - d)) - 1))
    return best


def realize_grmc(q: int, m: int, n: int, delta: int, t1: int, t2: int, budget: int | None = None) -> list[Mat]:
    """An explicit GRMC of m x n matrices, pairwise rank distance >= delta and
    ranks in [t1, t2], at least as large as grmc_lower_bound.

    For t2 >= delta it filters the delta-MRD code by rank. Otherwise it takes
    the distance-d Gabidulin code for each d < delta, splits it into cosets of
    the nested delta-code, and keeps the coset with the most words of rank in
    range.
    """
    if t2 >= delta:
        code = gabidulin(q, m, n, delta)
        b = enumeration_budget(budget)
        if code.size > b:
            raise BudgetExceeded(code.size, b)
        return [code.word_at(t) for t in range(code.size) if t1 <= code.rank_at(t) <= t2]
    best: list[Mat] = []
    lo = max(1, t1)
    for d in range(lo, delta):
        fam = coset_family(q, m, n, d, delta)
        b = enumeration_budget(budget)
        if fam.parent.size > b:
            raise BudgetExceeded(fam.parent.size, b)
        for r in range(1, fam.s):
            words = [w for w in fam.coset(r) if lo <= rank(w) <= t2]
            if len(words) > len(best):
                best = words
    return best


def support_constrained_subcode(code: LinearMatCode, pattern: DotPattern) -> LinearMatCode:
    """Subcode of words vanishing off the pattern's dots."""
    if (pattern.m, pattern.n) != (code.m, code.n):
        raise ValueError(f"pattern {pattern.m}x{pattern.n} does not fit the {code.m}x{code.n} grid")
    F = code.field
    n = code.n
    off = [r * n + c for r in range(code.m) for c in range(n) if (r, c) not in pattern.dots]
    K = code.dim
    if not off:
        return LinearMatCode(code.q, code.m, code.n, code._flat, code.delta_claimed)
    if K == 0:
        return LinearMatCode(code.q, code.m, code.n, [], code.delta_claimed)
    A = Mat(F, [[code._flat[j][pos] for j in range(K)] for pos in off], K)
    null = nullspace(A)
    basis = []
    for coeffs in null:
        basis.append(code.word(coeffs).entries)
    return LinearMatCode(code.q, code.m, code.n, basis, code.delta_claimed)


def embed_code(code: LinearMatCode, rows: Sequence[int], cols: Sequence[int], m: int, n: int) -> LinearMatCode:
    """Place each word of code on the given rows/columns of an m x n grid."""
    if len(rows) != code.m or len(cols) != code.n:
        raise ValueError("row/column selection does not match the code's shape")
    basis = []
    for f in code._flat:
        g = [0] * (m * n)
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                g[r * n + c] = f[i * code.n + j]
        basis.append(g)
    return LinearMatCode(code.q, m, n, basis, code.delta_claimed)


@dataclass
class CosetFamily:
    """Cosets of a nested Gabidulin subcode inside its parent."""

    parent: MrdCode
    subcode: MrdCode

    @property
    def s(self) -> int:
        return self.parent.q ** (self.parent.dim - self.subcode.dim)

    @property
    def coset_size(self) -> int:
        return self.subcode.size

    def rep_info(self, r: int) -> list[int]:
        """Information vector of the r-th representative (lexicographic)."""
        q = self.parent.q
        extra = self.parent.dim - self.subcode.dim
        digits = [0] * extra
        for i in range(extra - 1, -1, -1):
            digits[i] = r % q
            r //= q
        return [0] * self.subcode.dim + digits

    def rep(self, r: int) -> Mat:
        return self.parent.word(self.rep_info(r))

    def member_index(self, r: int, i: int) -> int:
        """Parent codeword index of the i-th word of coset r."""
        return r + i * self.s

    def member(self, r: int, i: int) -> Mat:
        if not (0 <= r < self.s and 0 <= i < self.coset_size):
            raise IndexError("coset member out of range")
        return self.parent.word_at(self.member_index(r, i))

    def coset(self, r: int) -> Iterator[Mat]:
        for i in range(self.coset_size):
            yield self.member(r, i)


def coset_family(q: int, m: int, n: int, delta: int, delta_prime: int) -> CosetFamily:
    if not (1 <= delta <= delta_prime <= min(m, n)):
        raise ValueError("need 1 <= delta <= delta' <= min(m, n)")
    return CosetFamily(gabidulin(q, m, n, delta), gabidulin(q, m, n, delta_prime))
