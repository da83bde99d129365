"""Exact size formulas, recursive upper bounds and the comparison table report.

Everything is integer or Fraction arithmetic; floats appear only when a
ratio is rendered as a decimal string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .qcount import gaussian_binomial, rank_count

__all__ = [
    "BoundOracle",
    "Const",
    "GaussBinom",
    "GOLDEN_TABLE1",
    "Prod",
    "QPow",
    "RankDist",
    "SizeExpr",
    "Sum",
    "Table1Row",
    "gaussian_binomial",
    "lower_bound",
    "lower_bound_expr",
    "old_lower_bound",
    "ratio_remark3",
    "table1",
    "upper_bound_lemma1",
]


def _ceil2(x: int) -> int:
    return (x + 1) // 2


# ---------------------------------------------------------------------------
# Symbolic size expressions


class SizeExpr:
    """Expression tree in q; evaluate(q) is exact."""

    def evaluate(self, q: int) -> int:
        raise NotImplementedError

    def __add__(self, other: "SizeExpr | int") -> "SizeExpr":
        return Sum([self, _lift(other)])

    __radd__ = __add__

    def __mul__(self, other: "SizeExpr | int") -> "SizeExpr":
        return Prod([self, _lift(other)])

    __rmul__ = __mul__

    def __sub__(self, other: "SizeExpr | int") -> "SizeExpr":
        return Sum([self, Prod([Const(-1), _lift(other)])])

    def __neg__(self) -> "SizeExpr":
        return Prod([Const(-1), self])


def _lift(x) -> SizeExpr:
    return x if isinstance(x, SizeExpr) else Const(int(x))


@dataclass(frozen=True)
class Const(SizeExpr):
    value: int

    def evaluate(self, q: int) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class QPow(SizeExpr):
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("negative q exponent")

    def evaluate(self, q: int) -> int:
        return q**self.exponent

    def __str__(self) -> str:
        return f"q^{self.exponent}"


@dataclass(frozen=True)
class GaussBinom(SizeExpr):
    n: int
    k: int

    def evaluate(self, q: int) -> int:
        return gaussian_binomial(q, self.n, self.k)

    def __str__(self) -> str:
        return f"[{self.n} {self.k}]_q"


@dataclass(frozen=True)
class RankDist(SizeExpr):
    """a(q, m, n, delta, r): rank-r words of an m x n MRD code."""

    m: int
    n: int
    delta: int
    r: int

    def evaluate(self, q: int) -> int:
        return rank_count(q, self.m, self.n, self.delta, self.r)

    def __str__(self) -> str:
        return f"a(q,{self.m},{self.n},{self.delta},{self.r})"


@dataclass(frozen=True)
class Sum(SizeExpr):
    terms: tuple

    def __init__(self, terms: Iterable):
        object.__setattr__(self, "terms", tuple(_lift(t) for t in terms))

    def evaluate(self, q: int) -> int:
        return sum(t.evaluate(q) for t in self.terms)

    def __str__(self) -> str:
        return "(" + " + ".join(str(t) for t in self.terms) + ")" if self.terms else "0"


@dataclass(frozen=True)
class Prod(SizeExpr):
    factors: tuple

    def __init__(self, factors: Iterable):
        object.__setattr__(self, "factors", tuple(_lift(t) for t in factors))

    def evaluate(self, q: int) -> int:
        out = 1
        for f in self.factors:
            out *= f.evaluate(q)
        return out

    def __str__(self) -> str:
        return "*".join(str(f) for f in self.factors) if self.factors else "1"


def _qsum(*exps: int) -> SizeExpr:
    return Sum(QPow(e) for e in exps)


def _grmc_part(k: int, nk: int, delta: int) -> SizeExpr:
    """1 + sum_{i=delta}^{k-delta} a(q, k, nk, delta, i)."""
    return Sum([Const(1)] + [RankDist(k, nk, delta, i) for i in range(delta, k - delta + 1)])


# ---------------------------------------------------------------------------
# Lower-bound formulas


def _lemma13(n: int, k: int, delta: int) -> SizeExpr:
    if not (n >= 2 * k + delta and k >= 2 * delta >= 2):
        raise ValueError("lemma13 needs n >= 2k + delta and k >= 2 delta")
    top = k // delta
    terms = [QPow((n - k) * (k - delta + 1) - i * delta * delta) for i in range(top)]
    return Sum(terms + [QPow((n - k - delta) * (k - delta + 1))])


def _theorem2(delta: int) -> SizeExpr:
    if delta < 2:
        raise ValueError("theorem2 needs delta >= 2")
    d, c = delta, _ceil2(delta)
    return Sum(
        [
            QPow(6 * d * d + 3 * d),
            Const(1),
            *[RankDist(3 * d, 3 * d, d, i) for i in range(d, 2 * d + 1)],
            QPow(2 * d * d + 4 * d + d * c),
            QPow(d * d + 5 * d),
            QPow(5 * d + d * c),
            QPow(4 * d + d * c),
        ]
    )


def corollary3_t(k: int, delta: int) -> int:
    return min(_ceil2(k) // _ceil2(delta), (k // 2) // (delta // 2))


def _corollary3(n: int, k: int, delta: int) -> SizeExpr:
    if not (n >= 2 * k + delta and k // 2 >= 2 * _ceil2(delta) and delta >= 2):
        raise ValueError("corollary3 needs n >= 2k + delta, floor(k/2) >= 2 ceil(delta/2), delta >= 2")
    t = corollary3_t(k, delta)
    ch, cd, fd = _ceil2(k), _ceil2(delta), delta // 2
    e3 = (n - k - 2 * delta + fd) * (ch - delta + 1)
    e6 = (n - k - 2 * delta + fd - cd) * (ch - delta + 1)
    return Sum(
        [
            _lemma13(n, k, delta),
            _grmc_part(k, n - k, delta),
            Prod([Const(t), QPow(e3)]),
            Prod([Const(t - 1), QPow(e6)]),
        ]
    )


def _x_term() -> SizeExpr:
    """(q^6+..+1)(q^4+..+1)(q^2-q+1)(q^22-(q^11-1)(q^3+q^2+q)-1)."""
    inner = QPow(22) - Prod([QPow(11) - 1, _qsum(3, 2, 1)]) - 1
    return Prod([_qsum(6, 5, 4, 3, 2, 1, 0), _qsum(4, 3, 2, 1, 0), QPow(2) - QPow(1) + 1, inner])


def _corollary4() -> SizeExpr:
    return Sum(
        [
            _qsum(44, 35, 32),
            Prod([_qsum(4, 3, 2, 1, 0), _qsum(3, 0), _qsum(2, 0), QPow(11) - 1]),
            _qsum(14, 12, 8),
        ]
    )


def _corollary5() -> SizeExpr:
    return Sum([_qsum(55, 46, 40), _x_term(), _qsum(22, 18, 16, 12, 8)])


def _corollary6() -> SizeExpr:
    return Sum(
        [
            _qsum(60, 51, 45),
            RankDist(7, 12, 3, 3),
            RankDist(7, 12, 3, 4),
            QPow(27),
            Prod([Const(2), QPow(23)]),
            _qsum(19, 15),
        ]
    )


def lower_bound_expr(which: str, **params) -> SizeExpr:
    """Size formula of a construction as an expression in q."""
    if which == "lemma13":
        return _lemma13(params["n"], params["k"], params["delta"])
    if which == "theorem2":
        return _theorem2(params.get("delta", 3))
    if which == "corollary2":
        return _theorem2(3)
    if which == "corollary3":
        return _corollary3(params["n"], params["k"], params["delta"])
    if which == "corollary4":
        return _corollary4()
    if which == "corollary5":
        return _corollary5()
    if which == "corollary6":
        return _corollary6()
    raise ValueError(f"unknown lower bound {which!r}")


def lower_bound(which: str, q: int, **params) -> int:
    return lower_bound_expr(which, **params).evaluate(q)


def old_lower_bound_expr(which: str) -> SizeExpr:
    """The previously best known bounds the new ones are compared against."""
    if which in ("corollary2", "theorem2"):
        return Sum([QPow(63), _grmc_part(9, 9, 3), _qsum(36, 24)])
    if which == "corollary4":
        return Sum([_qsum(44, 35, 32), Const(1), RankDist(6, 11, 3, 3)])
    if which == "corollary5":
        return Sum(
            [
                _qsum(55, 46, 40),
                _x_term(),
                Prod([Const(2), _qsum(4, 3, 2, 1, 0), QPow(2) - QPow(1) + 1, _qsum(2, 1, 0)]),
            ]
        )
    if which == "corollary6":
        return _corollary6() - QPow(19) - QPow(15)
    raise ValueError(f"no old bound recorded for {which!r}")


def old_lower_bound(which: str, q: int) -> int:
    return old_lower_bound_expr(which).evaluate(q)


# ---------------------------------------------------------------------------
# Upper bounds


FALLBACKS = ("singleton", "anticode", "trivial")


@dataclass
class BoundOracle:
    """Values of A_q(n, d, k): table entries first, then a fallback rule."""

    table: dict = field(default_factory=dict)
    fallback: str = "singleton"

    def __post_init__(self):
        if self.fallback not in FALLBACKS:
            raise ValueError(f"fallback must be one of {FALLBACKS}")

    def add(self, q: int, n: int, d: int, k: int, value: int, provenance: str) -> None:
        self.table[(q, n, d, k)] = (int(value), provenance)

    def lookup(self, q: int, n: int, d: int, k: int) -> tuple[int, str]:
        if (q, n, d, k) in self.table:
            return self.table[(q, n, d, k)]
        dd = _ceil2(d)
        if k < 0 or k > n:
            return 0, "empty Grassmannian"
        if dd > min(k, n - k):
            return 1, "distance exceeds 2 min(k, n-k)"
        if dd <= 0:
            return gaussian_binomial(q, n, k), "trivial [n k]_q"
        if self.fallback == "singleton":
            return gaussian_binomial(q, n - dd + 1, max(k, n - k)), "singleton [n-d/2+1, max(k,n-k)]_q"
        if self.fallback == "anticode":
            t = k - dd + 1
            return gaussian_binomial(q, n, t) // gaussian_binomial(q, k, t), "anticode [n, k-d/2+1]_q / [k, k-d/2+1]_q"
        return gaussian_binomial(q, n, k), "trivial [n k]_q"


@dataclass
class UpperBound:
    value: int
    case: int
    terms: list = field(default_factory=list)

    def __int__(self) -> int:
        return self.value


def upper_bound_lemma1(q: int, n: int, delta: int, k: int, oracle: BoundOracle | None = None) -> UpperBound:
    """Upper bound on codes containing a lifted MRD code (the `delta` argument
    is the half-distance; the code distance is 2*delta)."""
    oracle = oracle or BoundOracle()
    if n < 2 * k:
        raise ValueError("upper_bound_lemma1 needs n >= 2k")
    lifted = q ** ((n - k) * (k - delta + 1))
    if k < 2 * delta and n >= 3 * delta:
        a, prov = oracle.lookup(q, n - k, 2 * (2 * delta - k), delta)
        return UpperBound(lifted + a, 1, [("lifted", lifted, ""), (f"A_q({n - k},{2 * (2 * delta - k)},{delta})", a, prov)])
    if k < 2 * delta:
        return UpperBound(lifted + 1, 2, [("lifted", lifted, ""), ("one", 1, "")])
    if k < 3 * delta:
        a, prov = oracle.lookup(q, n - k, 6 * delta - 2 * k, 2 * delta)
        num = gaussian_binomial(q, n - k, delta) * gaussian_binomial(q, k, 2 * delta - 1)
        den = gaussian_binomial(q, k - delta, delta - 1)
        third = q ** ((k - 2 * delta + 1) * (n - k - delta)) * num // den
        return UpperBound(
            lifted + a + third,
            3,
            [("lifted", lifted, ""), (f"A_q({n - k},{6 * delta - 2 * k},{2 * delta})", a, prov), ("gaussian term", third, "floored")],
        )
    raise ValueError(f"no upper-bound case applies to (n, 2delta, k) = ({n}, {2 * delta}, {k})")


@dataclass
class Ratio:
    value: Fraction
    lower: int
    upper: UpperBound
    provenance: list

    def decimal(self, places: int = 6) -> str:
        scaled = self.value.numerator * 10**places // self.value.denominator
        s = str(scaled).rjust(places + 1, "0")
        return f"{s[:-places]}.{s[-places:]}"

    def meets(self, threshold: str = "0.94548") -> bool:
        return self.value >= Fraction(threshold)


def ratio_remark3(q: int = 3, oracle: BoundOracle | None = None) -> Ratio:
    """The w = 6 style lower bound over the upper bound at (19, 6, 7)."""
    if q < 3:
        raise ValueError("ratio_remark3 needs q >= 3")
    up = upper_bound_lemma1(q, 19, 3, 7, oracle)
    low = lower_bound("corollary6", q)
    return Ratio(Fraction(low, up.value), low, up, [t[2] for t in up.terms if t[2]])


# ---------------------------------------------------------------------------
# Comparison table

TABLE1_ROWS = {(18, 6, 9): "corollary2", (17, 6, 6): "corollary4", (18, 6, 7): "corollary5", (19, 6, 7): "corollary6"}
TABLE1_Q = {(18, 6, 9): (2, 3, 4, 5, 7, 8, 9), (17, 6, 6): (3, 4, 5, 7, 8, 9), (18, 6, 7): (3, 4, 5, 7, 8, 9), (19, 6, 7): (3, 4, 5, 7, 8, 9)}

# (n, d, k, q) -> (new, old, difference), digit groups joined in print order.
GOLDEN_TABLE1 = {
    (18, 6, 9, 2): (9271545225290474496, 9271545225288115199, 2359297),
    (18, 6, 9, 3): (1144661280188263323677419096134, 1144661280188263323666571322442, 10847773692),
    (18, 6, 9, 4): (85071058146182807998870119931236581376, 85071058146182807998870115464470593536, 4466765987840),
    (18, 6, 9, 5): (108420289965710977921242760305549168808593750, 108420289965710977921242760305068516953125000, 479651855468750),
    (18, 6, 9, 7): (174251503388975551318887574330215518567696430750492486, 174251503388975551318887574330215518007522153069298030, 492474277681194456),
    (18, 6, 9, 8): (784637723721919791138381959153789396988803423687298514944, 784637723721919791138381959153789396979562037251934257152, 9241386435364257792),
    (18, 6, 9, 9): (1310020512493866339206870324857588258367421841432175735022246, 1310020512493866339206870324857588258367312272348408925663916, 109569083766809358330),
    (17, 6, 6, 3): (984822786754906111880, 984822786754900790910, 5320970),
    (17, 6, 6, 4): (309486208859711440565256219, 309486208859711440279978012, 285278207),
    (17, 6, 6, 5): (5684344819746911650662156035194, 5684344819746911650655807988320, 6348046874),
    (17, 6, 6, 7): (15286701011865696133769150856284558796, 15286701011865696133769150164214433946, 692070124850),
    (17, 6, 6, 8): (5444517911379062785232939694101114276215, 5444517911379062785232939689634331511160, 4466782765055),
    (17, 6, 6, 9): (969773732294112791690369920976223779322734, 969773732294112791690369920953064514284572, 23159265038162),
    (18, 6, 7, 3): (174458086133950601507064752, 174458086133950569695021953, 31812042799),
    (18, 6, 7, 4): (1298079167603215742180577631319615, 1298079167603215742162912414174601, 17665217145014),
    (18, 6, 7, 5): (277555898273931997862553960563246907624, 277555898273931997862551572409927221361, 2388153319686263),
    (18, 6, 7, 7): (30226802720829753783829954173786880863008449184, 30226802720829753783829954169875398154063659585, 3911482708944789599),
    (18, 6, 7, 8): (46768052743039366343452958783378892628652291957247, 46768052743039366343452958783305087356415270259473, 73805272237021702774),
    (18, 6, 7, 9): (30432527300256357008308054177590430377350854469863880, 30432527300256357008308054177589445454500732998260801, 984922850121470603079),
    (19, 6, 7, 3): (42393314923753439324693652326, 42393314923753439323517041952, 1176610374),
    (19, 6, 7, 4): (1329233067625263639209612245368813119, 1329233067625263639209611969417164351, 275951648768),
    (19, 6, 7, 5): (867362182106035125792010309131414076595124, 867362182106035125792010309112310072688874, 19104003906250),
    (19, 6, 7, 7): (508021873328985670761663974879304255244135597816466, 508021873328985670761663974879304243840492850933380, 11403642746883086),
    (19, 6, 7, 8): (1532495552283913956149369445213372457846736476350095871, 1532495552283913956149369445213372457702586103902151167, 144150372447944704),
    (19, 6, 7, 9): (1797010304552837624964875592565351564708692531023075402144, 1797010304552837624964875592565351564707341473414270315406, 1351057608805086738),
}


@dataclass
class Table1Row:
    q: int
    n: int
    d: int
    k: int
    new: int
    old: int
    diff: int
    golden_new: int
    golden_old: int
    golden_diff: int

    @property
    def new_ok(self) -> bool:
        return self.new == self.golden_new

    @property
    def old_ok(self) -> bool:
        return self.old == self.golden_old

    @property
    def diff_ok(self) -> bool:
        return self.diff == self.golden_diff

    @property
    def printed_consistent(self) -> bool:
        """Whether the printed columns satisfy new - old = difference."""
        return self.golden_new - self.golden_old == self.golden_diff

    @property
    def status(self) -> str:
        if self.new_ok and self.old_ok and self.diff_ok:
            return "match"
        bad = [name for name, ok in (("new", self.new_ok), ("old", self.old_ok), ("diff", self.diff_ok)) if not ok]
        return "mismatch:" + ",".join(bad)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "new": str(self.new),
            "old": str(self.old),
            "diff": str(self.diff),
            "status": self.status,
            "golden_new": str(self.golden_new),
            "golden_old": str(self.golden_old),
            "golden_diff": str(self.golden_diff),
            "printed_consistent": self.printed_consistent,
        }


@dataclass
class Table1Report:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.status == "match" for r in self.rows)

    def failures(self) -> list:
        return [r for r in self.rows if r.status != "match"]

    def to_text(self) -> str:
        lines = ["q n d k new old diff status"]
        for r in self.rows:
            lines.append(f"{r.q} {r.n} {r.d} {r.k} {r.new} {r.old} {r.diff} {r.status}")
            for name, ok, got, want in (
                ("new", r.new_ok, r.new, r.golden_new),
                ("old", r.old_ok, r.old, r.golden_old),
                ("diff", r.diff_ok, r.diff, r.golden_diff),
            ):
                if not ok:
                    lines.append(f"  {name}: computed {got} printed {want}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps([r.to_dict() for r in self.rows], indent=2)


def table1(q_list: Sequence[int] | None = None, rows: Iterable[tuple] | None = None) -> Table1Report:
    """Evaluate the new/old formulas for every printed table cell.

    q_list filters by q (None keeps every printed q); rows filters by
    (n, d, k).
    """
    wanted = set(rows) if rows is not None else None
    out = []
    for key, which in TABLE1_ROWS.items():
        if wanted is not None and key not in wanted:
            continue
        new_e, old_e = lower_bound_expr(which), old_lower_bound_expr(which)
        for q in TABLE1_Q[key]:
            if q_list is not None and q not in q_list:
                continue
            n, d, k = key
            new, old = new_e.evaluate(q), old_e.evaluate(q)
            g = GOLDEN_TABLE1[(n, d, k, q)]
            out.append(Table1Row(q, n, d, k, new, old, new - old, *g))
    return Table1Report(out)
