"""Dense linear algebra over GF(q): echelon forms, profile vectors, distances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldSpec, field_new


class ShapeError(ValueError):
    pass


class Mat:
    """Immutable matrix over GF(q); entries stored as a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: FieldSpec, data: Iterable[Sequence[int]], cols: int | None = None):
        rows = tuple(tuple(r) for r in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeError("ragged matrix rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self._hash = None

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Mat":
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldSpec, k: int) -> "Mat":
        return cls(field, [[int(i == j) for j in range(k)] for i in range(k)], k)

    @classmethod
    def reversed_identity(cls, field: FieldSpec, k: int) -> "Mat":
        return cls(field, [[int(i + j == k - 1) for j in range(k)] for i in range(k)], k)

    @classmethod
    def parse(cls, text: str, q: int = 2) -> "Mat":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        return cls(field_new(q), [[int(x) for x in ln] for ln in lines])

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(x for r in self.data for x in r)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field.q == other.field.q
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Mat(GF({self.field.q}), {self.rows}x{self.cols}, [{body}])"

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> "Mat":
        return Mat(self.field, list(zip(*self.data)) if self.rows else [], self.rows)

    T = property(transpose)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        add = self.field.add
        return Mat(self.field, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        sub = self.field.sub
        return Mat(self.field, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)], self.cols)

    def scale(self, c: int) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, [[mul(c, a) for a in r] for r in self.data], self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ShapeError("inner dimensions differ")
        F = self.field
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = F.add(acc, F.mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(F, out, other.cols)

    def _check_same(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def select_columns(self, cols: Sequence[int]) -> "Mat":
        return Mat(self.field, [[r[c] for c in cols] for r in self.data], len(cols))

    def select_rows(self, rows: Sequence[int]) -> "Mat":
        return Mat(self.field, [self.data[i] for i in rows], self.cols)

    def reverse_columns(self) -> "Mat":
        return Mat(self.field, [r[::-1] for r in self.data], self.cols)


def hstack(*mats: Mat) -> Mat:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeError("hstack needs equal row counts")
    data = [sum((m.data[i] for m in mats), ()) for i in range(rows)]
    return Mat(mats[0].field, data, sum(m.cols for m in mats))


def vstack(*mats: Mat) -> Mat:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("vstack needs equal column counts")
    return Mat(mats[0].field, [r for m in mats for r in m.data], cols)


# Elimination kernels.


def pack_row(row: Sequence[int]) -> int:
    """GF(2) row as an int, column 0 in the most significant bit."""
    v = 0
    for x in row:
        v = (v << 1) | (x & 1)
    return v


def unpack_row(v: int, n: int) -> tuple[int, ...]:
    return tuple((v >> (n - 1 - j)) & 1 for j in range(n))


def rank_gf2(rows: Iterable[int]) -> int:
    """Rank of GF(2) rows given as ints."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _rref_gf2(rows: list[int], n: int) -> tuple[list[int], list[int]]:
    out: list[int] = []
    pivots: list[int] = []
    rows = [r for r in rows if r]
    for col in range(n):
        bit = 1 << (n - 1 - col)
        sel = None
        for i, r in enumerate(rows):
            if r & bit:
                sel = i
                break
        if sel is None:
            continue
        pr = rows.pop(sel)
        rows = [r ^ pr if r & bit else r for r in rows]
        rows = [r for r in rows if r]
        out = [r ^ pr if r & bit else r for r in out]
        out.append(pr)
        pivots.append(col)
        if not rows:
            break
    return out, pivots


def _axpy(F: FieldSpec, r: list[int], c: int, pr: list[int]) -> list[int]:
    """r - c * pr."""
    if F.e == 1:
        p = F.p
        return [(x - c * y) % p for x, y in zip(r, pr)]
    if F._mul is not None:
        mc, sub = F._mul[c], F._sub
        return [sub[x][mc[y]] for x, y in zip(r, pr)]
    return [F.sub(x, F.mul(c, y)) for x, y in zip(r, pr)]


def _rref_rows(F: FieldSpec, rows: list[list[int]], n: int) -> tuple[list[list[int]], list[int]]:
    if F.q == 2:
        packed, piv = _rref_gf2([pack_row(r) for r in rows], n)
        return [list(unpack_row(v, n)) for v in packed], piv
    rows = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    for col in range(n):
        sel = None
        for i, r in enumerate(rows):
            if r[col]:
                sel = i
                break
        if sel is None:
            continue
        pr = rows.pop(sel)
        inv = F.inv(pr[col])
        if inv != 1:
            pr = [F.mul(inv, x) for x in pr]
        for group in (rows, out):
            for i, r in enumerate(group):
                c = r[col]
                if c:
                    group[i] = _axpy(F, r, c, pr)
        rows = [r for r in rows if any(r)]
        out.append(pr)
        pivots.append(col)
        if not rows:
            break
    return out, pivots


def rank_rows(F: FieldSpec, rows: list[list[int]], n: int) -> int:
    """Rank of a list of length-n rows over F, without building a Mat."""
    if F.q == 2:
        return rank_gf2(pack_row(r) for r in rows)
    rows = [r for r in rows if any(r)]
    rk = 0
    for col in range(n):
        sel = None
        for i, r in enumerate(rows):
            if r[col]:
                sel = i
                break
        if sel is None:
            continue
        pr = rows.pop(sel)
        rk += 1
        inv = F.inv(pr[col])
        nxt = []
        for r in rows:
            c = r[col]
            if c:
                r = _axpy(F, r, F.mul(c, inv), pr)
                if not any(r):
                    continue
            nxt.append(r)
        if not nxt:
            break
        rows = nxt
    return rk


def rank(M: Mat) -> int:
    if M.field.q == 2:
        return rank_gf2(pack_row(r) for r in M.data)
    return len(_rref_rows(M.field, M.tolist(), M.cols)[1])


def rref(M: Mat) -> Mat:
    """Reduced row echelon form; zero rows are kept at the bottom."""
    rows, _ = _rref_rows(M.field, M.tolist(), M.cols)
    rows += [[0] * M.cols for _ in range(M.rows - len(rows))]
    return Mat(M.field, rows, M.cols)


def rrief(M: Mat) -> Mat:
    """Reduced row inverse echelon form: pivots are the rightmost nonzero
    entries, pivot columns strictly decreasing down the rows."""
    rows, _ = _rref_rows(M.field, [r[::-1] for r in M.data], M.cols)
    rows = [r[::-1] for r in rows]
    rows += [[0] * M.cols for _ in range(M.rows - len(rows))]
    return Mat(M.field, rows, M.cols)


def _nonzero_rows(M: Mat) -> Mat:
    return Mat(M.field, [r for r in M.data if any(r)], M.cols)


def rrbef(M: Mat, n1: int, n2: int, k1: int, k2: int) -> Mat:
    """Reduced row bilateral echelon form.

    The first k1 rows vanish on the last n2 columns and their restriction to the
    first n1 columns is in RREF; the last k2 rows vanish on the first n1 columns
    and their restriction to the last n2 columns is in RRIEF.
    """
    upper, lower = _bilateral_blocks(M, n1, n2, k1, k2)
    return vstack(upper, lower) if upper.rows + lower.rows else Mat.zeros(M.field, 0, M.cols)


def rribef(M: Mat, n1: int, n2: int, k1: int, k2: int) -> Mat:
    """Reduced row inverse bilateral echelon form.

    The upper k2 rows (RRIEF on the last n2 columns) come first, then the k1
    rows in RREF on the first n1 columns.
    """
    upper, lower = _bilateral_blocks(M, n1, n2, k1, k2)
    return vstack(lower, upper) if upper.rows + lower.rows else Mat.zeros(M.field, 0, M.cols)


def _kernel_restricted(M: Mat, zero_cols: Sequence[int]) -> Mat:
    """Basis (RREF) of the subspace of rs(M) vanishing on zero_cols."""
    F = M.field
    basis = _nonzero_rows(rref(M))
    k, n = basis.rows, basis.cols
    if k == 0 or not zero_cols:
        return basis
    # coefficient vectors c with c·basis = 0 on zero_cols
    sys = Mat(F, [[basis.data[i][c] for i in range(k)] for c in zero_cols], k)
    null = nullspace(sys)
    if not null:
        return Mat.zeros(F, 0, n)
    comb = Mat(F, null, k) @ basis
    return _nonzero_rows(rref(comb))


def nullspace(A: Mat) -> list[list[int]]:
    """Basis of {x : A x = 0} as a list of vectors."""
    F = A.field
    n = A.cols
    rows, piv = _rref_rows(F, A.tolist(), n)
    free = [j for j in range(n) if j not in set(piv)]
    out = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for r, p in zip(rows, piv):
            if r[f]:
                x[p] = F.neg(r[f])
        out.append(x)
    return out


def _bilateral_blocks(M: Mat, n1: int, n2: int, k1: int, k2: int) -> tuple[Mat, Mat]:
    n = M.cols
    if n1 + n2 > n or n1 < 0 or n2 < 0:
        raise ShapeError("need n1 + n2 <= n")
    if k1 + k2 != rank(M):
        raise ShapeError(f"k1 + k2 = {k1 + k2} differs from rank {rank(M)}")
    last = list(range(n - n2, n))
    first = list(range(n1))
    W1 = _kernel_restricted(M, last)
    W2 = _kernel_restricted(M, first)
    up_rows = [r for r in W1.data if _lead(r) < n1]
    W2i = rrief(W2)
    low_rows = [r for r in W2i.data if any(r) and _trail(r) >= n - n2]
    if len(up_rows) != k1 or len(low_rows) != k2:
        raise ShapeError(
            f"row space does not admit a ({n1},{n2},{k1},{k2}) bilateral split "
            f"(found {len(up_rows)} upper and {len(low_rows)} lower rows)"
        )
    upper = Mat(M.field, up_rows, n)
    lower = Mat(M.field, low_rows, n)
    if k1 + k2 and rank(vstack(upper, lower)) != k1 + k2:
        raise ShapeError("bilateral blocks do not span the row space")
    return upper, lower


def _lead(r: Sequence[int]) -> int:
    for j, x in enumerate(r):
        if x:
            return j
    return len(r)


def _trail(r: Sequence[int]) -> int:
    for j in range(len(r) - 1, -1, -1):
        if r[j]:
            return j
    return -1


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^n identified by its canonical RREF generator."""

    gen: Mat

    @classmethod
    def from_mat(cls, M: Mat) -> "Subspace":
        return cls(_nonzero_rows(rref(M)))

    @property
    def ambient(self) -> int:
        return self.gen.cols

    @property
    def dim(self) -> int:
        return self.gen.rows

    @property
    def field(self) -> FieldSpec:
        return self.gen.field


FLAVORS = ("identifying", "inverse", "bilateral", "inverse-bilateral")


@dataclass(frozen=True)
class ProfileVector:
    """Identifying vector of one of the four flavors.

    For the bilateral flavors type_triple = (n1, n - n1 - n2, n2).
    """

    flavor: str
    bits: tuple[int, ...]
    type_triple: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if self.flavor in ("bilateral", "inverse-bilateral"):
            if self.type_triple is None or sum(self.type_triple) != len(self.bits):
                raise ShapeError("bilateral vectors need a type triple summing to n")
        elif self.type_triple is not None:
            raise ShapeError("type triple only applies to bilateral flavors")

    @classmethod
    def parse(cls, flavor: str, text: str, type_triple=None) -> "ProfileVector":
        bits = [int(c) for c in text if c in "01"]
        return cls(flavor, tuple(bits), tuple(type_triple) if type_triple else None)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def split(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        n1, mid, n2 = self.type_triple
        b = self.bits
        return b[:n1], b[n1:n1 + mid], b[n1 + mid:]

    def row_pivots(self) -> list[int]:
        """Pivot column of each row of the corresponding canonical form."""
        ones = [j for j, b in enumerate(self.bits) if b]
        if self.flavor == "identifying":
            return ones
        if self.flavor == "inverse":
            return ones[::-1]
        n1, mid, n2 = self.type_triple
        left = [j for j in ones if j < n1]
        right = [j for j in ones if j >= n1 + mid][::-1]
        if len(left) + len(right) != len(ones):
            raise ShapeError("bilateral vector has ones in the middle block")
        if self.flavor == "bilateral":
            return left + right
        return right + left

    def stripped_columns(self) -> list[int]:
        return [j for j, b in enumerate(self.bits) if not b]


def profile_vector(S: Subspace | Mat, flavor: str = "identifying", type_triple=None) -> ProfileVector:
    M = S.gen if isinstance(S, Subspace) else _nonzero_rows(rref(S))
    n = M.cols
    if flavor == "identifying":
        bits = [0] * n
        for r in rref(M).data:
            j = _lead(r)
            if j < n:
                bits[j] = 1
        return ProfileVector(flavor, tuple(bits))
    if flavor == "inverse":
        bits = [0] * n
        for r in rrief(M).data:
            j = _trail(r)
            if j >= 0:
                bits[j] = 1
        return ProfileVector(flavor, tuple(bits))
    if type_triple is None:
        raise ShapeError("bilateral flavors need a type triple")
    n1, mid, n2 = type_triple
    if n1 + mid + n2 != n:
        raise ShapeError("type triple must sum to n")
    k = M.rows
    # find the unique compatible split by trying k1 = 0..k
    for k1 in range(k + 1):
        try:
            upper, lower = _bilateral_blocks(M, n1, n2, k1, k - k1)
        except ShapeError:
            continue
        bits = [0] * n
        for r in upper.data:
            bits[_lead(r)] = 1
        for r in lower.data:
            bits[_trail(r)] = 1
        return ProfileVector(flavor, tuple(bits), tuple(type_triple))
    raise ShapeError(f"no bilateral form of type {tuple(type_triple)}")


def canonical_form(M: Mat, v: ProfileVector) -> Mat:
    """Canonical generator of rs(M) in the form matching v's flavor."""
    if v.flavor == "identifying":
        return _nonzero_rows(rref(M))
    if v.flavor == "inverse":
        return _nonzero_rows(rrief(M))
    n1, _, n2 = v.type_triple
    left = v.split()[0]
    k1 = sum(left)
    k2 = v.weight - k1
    if v.flavor == "bilateral":
        return rrbef(M, n1, n2, k1, k2)
    return rribef(M, n1, n2, k1, k2)


def pivot_stripped(M: Mat, v: ProfileVector) -> Mat:
    """The submatrix without the pivot columns named by v."""
    return M.select_columns(v.stripped_columns())


def subspace_distance(U: Subspace | Mat, V: Subspace | Mat) -> int:
    A = U.gen if isinstance(U, Subspace) else U
    B = V.gen if isinstance(V, Subspace) else V
    if A.cols != B.cols:
        raise ValueError("ambient dimensions differ")
    ra = rank(A) if not isinstance(U, Subspace) else U.dim
    rb = rank(B) if not isinstance(V, Subspace) else V.dim
    return 2 * rank(vstack(A, B)) - ra - rb


def hamming_distance(a: Sequence[int] | ProfileVector, b: Sequence[int] | ProfileVector) -> int:
    a = a.bits if isinstance(a, ProfileVector) else a
    b = b.bits if isinstance(b, ProfileVector) else b
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum(x != y for x, y in zip(a, b))


def weight(a: Sequence[int] | ProfileVector) -> int:
    a = a.bits if isinstance(a, ProfileVector) else a
    return sum(1 for x in a if x)


def all_subspaces(q: int, n: int, k: int | None = None) -> list[Subspace]:
    """Every subspace of GF(q)^n (of dimension k if given), via RREF enumeration."""
    F = field_new(q)
    dims = range(n + 1) if k is None else [k]
    out = []
    from itertools import combinations, product

    for d in dims:
        if d == 0:
            out.append(Subspace(Mat.zeros(F, 0, n)))
            continue
        for piv in combinations(range(n), d):
            free = [(i, j) for i in range(d) for j in range(piv[i] + 1, n) if j not in piv]
            for vals in product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for i, p in enumerate(piv):
                    rows[i][p] = 1
                for (i, j), x in zip(free, vals):
                    rows[i][j] = x
                out.append(Subspace(Mat(F, rows, n)))
    return out
