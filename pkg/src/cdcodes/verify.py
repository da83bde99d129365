"""Machine checks of claimed code properties.

Subspace codes are checked exhaustively (all pairs) or on seeded random
pairs; constant-weight vector sets and linear rank-metric codes are checked
exhaustively. Sampling is evidence, not proof.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .constructions import CodeFamily
from .matrix import Mat, ProfileVector, hamming_distance, rank, rank_gf2, vstack, weight
from .rank_metric import BudgetExceeded, LinearMatCode, enumeration_budget

__all__ = ["VerifyReport", "verify_cdc", "verify_constant_weight", "verify_rank_code", "verify_matrices"]

DEFAULT_SAMPLES = 10**5
MAX_WITNESSES = 20


@dataclass
class VerifyReport:
    mode: str
    claimed: int
    seed: int | None = None
    samples: int | None = None
    pairs_checked: int = 0
    min_distance_observed: int | None = None
    violations: list = field(default_factory=list)
    violation_count: int = 0
    formula_size: int | None = None
    enumerated_size: int | None = None
    part_minima: dict = field(default_factory=dict)
    subject: str = ""

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def _violate(self, witness: dict) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(witness)

    def _observe(self, d: int, key=None) -> None:
        if self.min_distance_observed is None or d < self.min_distance_observed:
            self.min_distance_observed = d
        if key is not None:
            cur = self.part_minima.get(key)
            if cur is None or d < cur:
                self.part_minima[key] = d

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "mode": self.mode,
            "seed": self.seed,
            "samples": self.samples,
            "claimed": self.claimed,
            "pairs_checked": self.pairs_checked,
            "min_distance_observed": self.min_distance_observed,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "formula_size": self.formula_size,
            "enumerated_size": self.enumerated_size,
            "part_minima": {"|".join(k): v for k, v in sorted(self.part_minima.items())},
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        mode = self.mode if self.seed is None else f"{self.mode}(seed={self.seed}, samples={self.samples})"
        lines = [
            f"subject: {self.subject}" if self.subject else None,
            f"mode: {mode}",
            f"claimed minimum distance: {self.claimed}",
            f"pairs checked: {self.pairs_checked}",
            f"minimum distance observed: {self.min_distance_observed}",
        ]
        if self.formula_size is not None:
            lines.append(f"formula size: {self.formula_size}")
        if self.enumerated_size is not None:
            lines.append(f"enumerated size: {self.enumerated_size}")
        if self.part_minima:
            lines.append("part-pair minima:")
            for (a, b), d in sorted(self.part_minima.items()):
                lines.append(f"  {a} x {b}: {d}")
        lines.append(f"violations: {self.violation_count}")
        for w in self.violations:
            lines.append(f"  {w}")
        lines.append("PASS" if self.ok else "FAIL")
        return "\n".join(x for x in lines if x is not None)


# ---------------------------------------------------------------------------
# Subspace codes


def _split_rows(w: int, k: int, n: int) -> tuple[int, ...]:
    mask = (1 << n) - 1
    return tuple((w >> (n * (k - 1 - r))) & mask for r in range(k))


class _Member:
    __slots__ = ("tag", "rows", "mat", "dim")

    def __init__(self, tag, rows=None, mat=None, dim=0):
        self.tag, self.rows, self.mat, self.dim = tag, rows, mat, dim


def _gf2_member(tag, w: int, k: int, n: int) -> _Member:
    rows = _split_rows(w, k, n)
    return _Member(tag, rows=rows, dim=rank_gf2(rows))


def _mat_member(tag, M: Mat) -> _Member:
    return _Member(tag, mat=M, dim=rank(M))


def _distance(a: _Member, b: _Member) -> int:
    if a.rows is not None:
        return 2 * rank_gf2(a.rows + b.rows) - a.dim - b.dim
    return 2 * rank(vstack(a.mat, b.mat)) - a.dim - b.dim


class _Checker:
    def __init__(self, report: VerifyReport, k: int, claimed: int):
        self.report, self.k, self.claimed = report, k, claimed
        self.bad_dims: set = set()

    def member(self, m: _Member) -> None:
        if m.dim != self.k and m.tag not in self.bad_dims:
            self.bad_dims.add(m.tag)
            self.report._violate({"kind": "dimension", "member": list(m.tag), "dim": m.dim, "expected": self.k})

    def pair(self, a: _Member, b: _Member) -> None:
        d = _distance(a, b)
        r = self.report
        r.pairs_checked += 1
        key = tuple(sorted((str(a.tag[0]), str(b.tag[0]))))
        r._observe(d, key)
        if d < self.claimed:
            r._violate({"kind": "distance", "a": list(a.tag), "b": list(b.tag), "distance": d})


def _labels(family: CodeFamily) -> list[str]:
    return [p.label for p in family.parts]


def verify_cdc(family: CodeFamily, claimed: int | None = None, mode: str = "exhaustive", seed: int = 1,
               samples: int = DEFAULT_SAMPLES, budget: int | None = None, weighting: str = "uniform") -> VerifyReport:
    """Check that every pair of members is at subspace distance >= claimed
    (default 2 delta) and that every member checked has dimension k.

    Sampled mode draws each side of a pair by choosing a part (uniformly by
    default, or by size) and then a uniform member of it; identical
    (part, index) draws are redrawn."""
    claimed = family.min_dist_claimed if claimed is None else claimed
    report = VerifyReport(mode=mode, claimed=claimed, formula_size=family.size, subject=family.name)
    chk = _Checker(report, family.k, claimed)
    labels = _labels(family)
    q, k, n = family.q, family.k, family.n
    if mode == "exhaustive":
        b = enumeration_budget(budget)
        if family.size > b:
            raise BudgetExceeded(family.size, b)
        members = []
        for pi, t, M in family.indexed_members(budget=b, packed=(q == 2)):
            tag = (labels[pi], t)
            members.append(_gf2_member(tag, M, k, n) if q == 2 else _mat_member(tag, M))
        report.enumerated_size = len(members)
        for m in members:
            chk.member(m)
        for a, b2 in combinations(members, 2):
            chk.pair(a, b2)
        return report
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    report.seed, report.samples = seed, samples
    if family.size < 2:
        return report
    rng = random.Random(seed)
    parts = family.parts

    def draw():
        pi = family.choose_part(rng, weighting)
        p = parts[pi]
        if q == 2:
            t, w = p.sample_packed(rng)
            return pi, t, w
        t, M = p.sample(rng)
        return pi, t, M

    def make(pi, t, x):
        tag = (labels[pi], t)
        return _gf2_member(tag, x, k, n) if q == 2 else _mat_member(tag, x)

    for _ in range(samples):
        while True:
            a, b2 = draw(), draw()
            if (a[0], a[1]) != (b2[0], b2[1]):
                break
        ma, mb = make(*a), make(*b2)
        chk.member(ma)
        chk.member(mb)
        chk.pair(ma, mb)
    return report


def verify_matrices(mats: Sequence[Mat], claimed: int, budget: int | None = None, subject: str = "") -> VerifyReport:
    """Exhaustive check of an explicit list of generator matrices, e.g. a
    parsed code file. Duplicate subspaces show up as distance-0 pairs."""
    report = VerifyReport(mode="exhaustive", claimed=claimed, subject=subject)
    b = enumeration_budget(budget)
    if len(mats) > b:
        raise BudgetExceeded(len(mats), b)
    report.enumerated_size = len(mats)
    if not mats:
        return report
    k, n = mats[0].shape
    q = mats[0].field.q
    members = []
    for i, M in enumerate(mats):
        if M.shape != (k, n):
            raise ValueError(f"matrix {i} has shape {M.shape}, expected {(k, n)}")
        tag = ("file", i)
        if q == 2:
            w = 0
            for x in M.entries:
                w = (w << 1) | x
            members.append(_gf2_member(tag, w, k, n))
        else:
            members.append(_mat_member(tag, M))
    chk = _Checker(report, k, claimed)
    for m in members:
        chk.member(m)
    for a, b2 in combinations(members, 2):
        chk.pair(a, b2)
    report.part_minima.clear()
    return report


# ---------------------------------------------------------------------------
# Vector sets and rank-metric codes


def _bits(v) -> tuple[int, ...]:
    if isinstance(v, ProfileVector):
        return v.bits
    if isinstance(v, str):
        return tuple(int(c) for c in v)
    return tuple(v)


def verify_constant_weight(vectors: Iterable, claimed: int) -> VerifyReport:
    """All vectors share one weight and are pairwise at Hamming distance >= claimed."""
    vs = [_bits(v) for v in vectors]
    if not vs:
        raise ValueError("empty vector set")
    report = VerifyReport(mode="exhaustive", claimed=claimed, enumerated_size=len(vs))
    w0 = weight(vs[0])
    for i, v in enumerate(vs):
        if weight(v) != w0:
            report._violate({"kind": "weight", "index": i, "vector": "".join(map(str, v)), "weight": weight(v),
                             "expected": w0})
    for (i, a), (j, b) in combinations(enumerate(vs), 2):
        d = hamming_distance(a, b)
        report.pairs_checked += 1
        report._observe(d)
        if d < claimed:
            report._violate({"kind": "distance", "a": "".join(map(str, a)), "b": "".join(map(str, b)),
                             "indices": [i, j], "distance": d})
    return report


def verify_rank_code(code: LinearMatCode, claimed: int, budget: int | None = None) -> VerifyReport:
    """Minimum rank over the nonzero codewords of a linear code (which is its
    minimum rank distance) compared against claimed."""
    report = VerifyReport(mode="exhaustive", claimed=claimed, formula_size=code.size)
    b = enumeration_budget(budget)
    if code.size > b:
        raise BudgetExceeded(code.size, b)
    count = 0
    for t in range(1, code.size):
        r = code.rank_at(t)
        count += 1
        report._observe(r)
        if r < claimed:
            report._violate({"kind": "rank", "index": t, "rank": r})
    report.pairs_checked = count
    report.enumerated_size = code.size
    return report
