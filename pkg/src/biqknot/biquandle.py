"""Finite long virtual biquandles over the group carrier.

Two binary operations are carried as full 64x64 tables: conjugation
x o y = y x y^-1 and twisted conjugation x * y = y^(n+1) x y^-(n+1),
together with their right divisions.  An optional unary bijection-like
map f (with inverse when it has one) completes the structure.  ``audit``
sweeps every axiom over its full quantifier domain and reports failures
as data with counterexamples; nothing aborts, since documenting which
axioms a candidate f satisfies is part of the job.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from .group_words import format_normal
from .torus_group import ALL_ELEMENTS, ORDER, GroupElement, TorusGroup, _element, _index


class MissingF(Exception):
    """Operation requires an f candidate but none is attached."""


class FKind(Enum):
    SUBSTITUTION = "substitution"   # a -> ab, b -> b, extended multiplicatively
    SHEAR = "shear"                 # a^k b^l -> a^k b^(k+l)
    TABLE = "table"                 # explicit user-supplied map


@dataclass
class FCandidate:
    """A candidate unary map with its audited verdicts.

    ``table`` maps element index -> element index.  ``inverse_table`` is
    present exactly when the candidate is a bijection.  Verdicts are
    definitive sweeps over the full domain; witnesses are first failures
    in scan order.
    """

    kind: FKind
    name: str
    table: np.ndarray
    bijective: bool
    inverse_table: Optional[np.ndarray]
    multiplicative: bool
    mult_witness: Optional[Tuple[GroupElement, GroupElement]]
    collision_witness: Optional[Tuple[GroupElement, GroupElement]]
    patched_entries: Tuple[Tuple[GroupElement, GroupElement], ...] = ()

    def __call__(self, x: GroupElement) -> GroupElement:
        return _element(int(self.table[_index(*x)]))

    def preimages(self, y: GroupElement) -> Tuple[GroupElement, ...]:
        hits = np.nonzero(self.table == _index(*y))[0]
        return tuple(_element(int(i)) for i in hits)

    def summary(self) -> str:
        bits = [self.name,
                "bijective" if self.bijective else "not bijective",
                "multiplicative" if self.multiplicative
                else "not multiplicative"]
        if self.patched_entries:
            bits.append(f"{len(self.patched_entries)} patched entry(ies)")
        return "; ".join(bits)


def _audit_candidate(group: TorusGroup, kind: FKind, name: str,
                     table: np.ndarray,
                     patched: Tuple[Tuple[GroupElement, GroupElement], ...] = (),
                     ) -> FCandidate:
    seen: Dict[int, int] = {}
    collision = None
    for i in range(ORDER):
        v = int(table[i])
        if v in seen and collision is None:
            collision = (_element(seen[v]), _element(i))
        seen.setdefault(v, i)
    bijective = collision is None and len(seen) == ORDER
    inverse = None
    if bijective:
        inverse = np.empty(ORDER, dtype=np.int64)
        for i in range(ORDER):
            inverse[int(table[i])] = i
    mult_witness = None
    m = group.mul_table
    lhs = table[m]                      # f(gh)
    rhs = m[table[:, None], table[None, :]]  # f(g) f(h)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        gi, hi = (int(t) for t in bad[0])
        mult_witness = (_element(gi), _element(hi))
    return FCandidate(kind=kind, name=name, table=table,
                      bijective=bijective, inverse_table=inverse,
                      multiplicative=mult_witness is None,
                      mult_witness=mult_witness,
                      collision_witness=collision,
                      patched_entries=patched)


def make_f(group: TorusGroup, kind: FKind,
           table: Optional[Dict[GroupElement, GroupElement]] = None,
           name: Optional[str] = None) -> FCandidate:
    """Build and audit one f candidate.

    SUBSTITUTION sends a^k b^l to (ab)^k b^l, which is total on normal
    forms but need not be injective or multiplicative; SHEAR is the
    bijection (k, l) -> (k, k + l); TABLE validates an explicit map.
    All defects are verdicts on the returned candidate, never errors.
    """
    if kind is FKind.SUBSTITUTION:
        ab = group.mul(group.generator_a, group.generator_b)
        arr = np.empty(ORDER, dtype=np.int64)
        for g in ALL_ELEMENTS:
            img = group.mul(group.power(ab, g.k), group.power(group.generator_b, g.l))
            arr[_index(*g)] = _index(*img)
        return _audit_candidate(group, kind, name or "substitution", arr)
    if kind is FKind.SHEAR:
        arr = np.empty(ORDER, dtype=np.int64)
        for g in ALL_ELEMENTS:
            arr[_index(*g)] = _index(g.k, (g.k + g.l) % 8)
        return _audit_candidate(group, kind, name or "shear", arr)
    if kind is FKind.TABLE:
        if table is None:
            raise ValueError("explicit-table candidate requires a table")
        if set(table) != set(ALL_ELEMENTS):
            missing = sorted(set(ALL_ELEMENTS) - set(table))[:3]
            raise ValueError(f"table must cover all 64 elements; missing {missing}")
        arr = np.empty(ORDER, dtype=np.int64)
        for g, img in table.items():
            arr[_index(*g)] = _index(*img)
        return _audit_candidate(group, kind, name or "table", arr)
    raise ValueError(f"unknown f kind: {kind}")


OpName = str  # 'circ', 'star', 'circ_div', 'star_div'


class Biquandle:
    """Carrier-indexed operation tables over a built group."""

    def __init__(self, group: TorusGroup, n_twist: int):
        if n_twist < 1:
            raise ValueError("n_twist must be >= 1")
        self.group = group
        self.n_twist = n_twist
        self.carrier = ALL_ELEMENTS
        self.circ_table = self._conjugation_table(1)
        self.star_table = self._conjugation_table(n_twist + 1)
        self.circ_div_table = _solve_division(self.circ_table)
        self.star_div_table = _solve_division(self.star_table)
        self.f: Optional[FCandidate] = None

    def _conjugation_table(self, power: int) -> np.ndarray:
        g = self.group
        t = np.empty((ORDER, ORDER), dtype=np.int64)
        for j, y in enumerate(ALL_ELEMENTS):
            yn = g.power(y, power)
            yni = g.inv(yn)
            for i, x in enumerate(ALL_ELEMENTS):
                t[i, j] = _index(*g.mul(g.mul(yn, x), yni))
        return t

    def attach_f(self, candidate: FCandidate) -> "Biquandle":
        self.f = candidate
        return self

    def _table(self, which: OpName) -> np.ndarray:
        try:
            return {"circ": self.circ_table, "star": self.star_table,
                    "circ_div": self.circ_div_table,
                    "star_div": self.star_div_table}[which]
        except KeyError:
            raise ValueError(f"unknown operation {which!r}") from None

    def op(self, which: OpName, x: GroupElement, y: GroupElement) -> GroupElement:
        return _element(int(self._table(which)[_index(*x), _index(*y)]))

    def circ(self, x, y):
        return self.op("circ", x, y)

    def star(self, x, y):
        return self.op("star", x, y)

    def circ_div(self, x, y):
        return self.op("circ_div", x, y)

    def star_div(self, x, y):
        return self.op("star_div", x, y)

    def apply_f(self, direction: str, x: GroupElement) -> GroupElement:
        if self.f is None:
            raise MissingF("no f candidate attached")
        if direction == "fwd":
            return self.f(x)
        if direction == "inv":
            if self.f.inverse_table is None:
                raise ValueError(
                    f"f candidate {self.f.name!r} is not a bijection; "
                    "use f.preimages()"
                )
            return _element(int(self.f.inverse_table[_index(*x)]))
        raise ValueError(f"direction must be 'fwd' or 'inv', got {direction!r}")


def _solve_division(table: np.ndarray) -> np.ndarray:
    """Right division: div[x, y] is the unique z with table[z, y] = x."""
    div = np.empty((ORDER, ORDER), dtype=np.int64)
    for y in range(ORDER):
        col = table[:, y]
        if len(set(int(v) for v in col)) != ORDER:
            raise ValueError("operation is not right-invertible")
        div[col, y] = np.arange(ORDER)
    return div


def from_group(group: TorusGroup, n: int) -> Biquandle:
    """x o y = y x y^-1,  x * y = y^(n+1) x y^-(n+1), divisions solved."""
    return Biquandle(group, n)


# -- axiom audit ----------------------------------------------------------------


@dataclass
class AxiomResult:
    axiom_id: str
    domain_size: int
    passed: bool
    skipped: bool = False
    skip_reason: str = ""
    counterexample: Optional[Dict[str, GroupElement]] = None

    def line(self) -> str:
        if self.skipped:
            return f"{self.axiom_id} domain={self.domain_size} SKIP ({self.skip_reason})"
        verdict = "PASS" if self.passed else "FAIL"
        out = f"{self.axiom_id} domain={self.domain_size} {verdict}"
        if self.counterexample:
            cx = ", ".join(f"{k}={format_normal(v)}"
                           for k, v in self.counterexample.items())
            out += f" [{cx}]"
        return out


@dataclass
class AxiomReport:
    n_twist: int
    f_name: Optional[str]
    results: List[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if not r.skipped)

    def failures(self) -> List[AxiomResult]:
        return [r for r in self.results if not r.skipped and not r.passed]

    def to_text(self) -> str:
        return "\n".join(r.line() for r in self.results)

    def to_json(self) -> Dict:
        return {
            "n_twist": self.n_twist,
            "f": self.f_name,
            "passed": self.passed,
            "axioms": [
                {
                    "id": r.axiom_id,
                    "domain": r.domain_size,
                    "passed": r.passed,
                    "skipped": r.skipped,
                    "skip_reason": r.skip_reason or None,
                    "counterexample": (
                        {k: format_normal(v)
                         for k, v in r.counterexample.items()}
                        if r.counterexample else None
                    ),
                }
                for r in self.results
            ],
        }


_OP_NAMES: Tuple[OpName, ...] = ("circ", "star", "circ_div", "star_div")


def _first_bad(mask_bad: np.ndarray) -> Optional[Tuple[int, ...]]:
    idx = np.argwhere(mask_bad)
    if len(idx) == 0:
        return None
    return tuple(int(t) for t in idx[0])


def audit(bq: Biquandle) -> AxiomReport:
    """Exhaustive axiom sweep; failures carry the first counterexample."""
    report = AxiomReport(n_twist=bq.n_twist,
                         f_name=bq.f.name if bq.f else None)
    res = report.results
    rng = np.arange(ORDER)

    for opname in ("circ", "star"):
        t = bq._table(opname)
        bad = _first_bad(t[rng, rng] != rng)
        res.append(AxiomResult(
            f"idempotence-{opname}", ORDER, bad is None,
            counterexample=None if bad is None else {"x": _element(bad[0])}))

    for opname in ("circ", "star"):
        t = bq._table(opname)
        d = bq._table(opname + "_div")
        for label, composed in ((f"right-invert-{opname}-div-after", d[t, rng[None, :]]),
                                (f"right-invert-{opname}-div-before", t[d, rng[None, :]])):
            bad = _first_bad(composed != rng[:, None])
            res.append(AxiomResult(
                label, ORDER * ORDER, bad is None,
                counterexample=None if bad is None else
                {"x": _element(bad[0]), "y": _element(bad[1])}))

    # (a <> b) <*> c = (a <*> c) <> (b <*> c) for all 16 operation pairs
    for dia in _OP_NAMES:
        td = bq._table(dia)
        for bullet in _OP_NAMES:
            tb = bq._table(bullet)
            lhs = tb[td[:, :, None], rng[None, None, :]]
            rhs = td[tb[:, None, :], tb[None, :, :]]
            bad = _first_bad(lhs != rhs)
            res.append(AxiomResult(
                f"self-distributivity-{dia}-over-{bullet}", ORDER ** 3,
                bad is None,
                counterexample=None if bad is None else
                {"a": _element(bad[0]), "b": _element(bad[1]),
                 "c": _element(bad[2])}))

    if bq.f is None:
        for opname in ("circ", "star"):
            res.append(AxiomResult(f"f-equivariance-{opname}", ORDER * ORDER,
                                   True, skipped=True,
                                   skip_reason="no f attached"))
        res.append(AxiomResult("f-roundtrip", ORDER, True, skipped=True,
                               skip_reason="no f attached"))
    else:
        ft = bq.f.table
        for opname in ("circ", "star"):
            t = bq._table(opname)
            lhs = ft[t]
            rhs = t[ft[:, None], ft[None, :]]
            bad = _first_bad(lhs != rhs)
            res.append(AxiomResult(
                f"f-equivariance-{opname}", ORDER * ORDER, bad is None,
                counterexample=None if bad is None else
                {"a": _element(bad[0]), "b": _element(bad[1])}))
        if bq.f.inverse_table is None:
            cx = None
            if bq.f.collision_witness:
                g1, g2 = bq.f.collision_witness
                cx = {"x": g1, "y": g2}
            res.append(AxiomResult("f-roundtrip", ORDER, False,
                                   counterexample=cx))
        else:
            inv = bq.f.inverse_table
            ok = (np.array_equal(ft[inv], rng) and np.array_equal(inv[ft], rng))
            res.append(AxiomResult("f-roundtrip", ORDER, ok))

    ct, st = bq.circ_table, bq.star_table
    cd, sd = bq.circ_div_table, bq.star_div_table
    for dia in _OP_NAMES:
        td = bq._table(dia)
        for label, left_inner, right_inner in (
                (f"strange-I-{dia}", ct, st),
                (f"strange-II-{dia}", cd, sd)):
            lhs = td[rng[:, None, None], left_inner[None, :, :]]
            rhs = td[rng[:, None, None], right_inner[None, :, :]]
            bad = _first_bad(lhs != rhs)
            res.append(AxiomResult(
                label, ORDER ** 3, bad is None,
                counterexample=None if bad is None else
                {"x": _element(bad[0]), "a": _element(bad[1]),
                 "b": _element(bad[2])}))

    return report
