"""The order-64 group carried by an oriented 8x8 torus grid.

Vertices live on an 8x8 grid glued into a torus.  A step labelled ``a``
moves one unit horizontally, a step labelled ``b`` one unit vertically;
the direction of each step depends on the orientation of the grid line
it runs along, and lines alternate orientation row by row and column by
column.  Group elements are identified with the endpoints reached from
the base vertex (0, 0), written in the normal form a^k b^l with both
exponents mod 8.

The grid picture alone does not pin the group down: the composition
order of step words, the orientation phases, and a central holonomy
picked up when paths with odd displacements are composed are all free
parameters.  ``Convention`` records one choice of each;
``calibrate_convention`` selects the choice that reproduces a fixed set
of known-good products (the calibration anchors) and freezes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

import numpy as np

GRID = 8
ORDER = GRID * GRID


class Vertex(NamedTuple):
    x: int
    y: int


class GroupElement(NamedTuple):
    """Normal form a^k b^l with k, l in 0..7."""

    k: int
    l: int


class CompositionOrder(Enum):
    WORD = "word-order"          # leftmost letter of a word is traversed first
    FUNCTION = "function-order"  # rightmost letter is traversed first


class RowPhase(Enum):
    EVEN_RIGHT = "even-rows-right"
    EVEN_LEFT = "even-rows-left"


class ColPhase(Enum):
    EVEN_UP = "even-cols-up"
    EVEN_DOWN = "even-cols-down"


class SeamTwist(Enum):
    """Central holonomy applied when composing paths.

    FLAT composes paths literally.  CENTRAL_B4 multiplies by the central
    element b^4 whenever a path with odd vertical displacement is
    followed by a path with odd horizontal displacement.  The flat model
    cannot reproduce the calibration anchors (no orientation pattern
    does); the b^4 holonomy is a central correction that can, and
    calibration verifies that it does.
    """

    FLAT = "flat"
    CENTRAL_B4 = "central-b4"


@dataclass(frozen=True)
class Convention:
    composition_order: CompositionOrder = CompositionOrder.WORD
    row_phase: RowPhase = RowPhase.EVEN_RIGHT
    col_phase: ColPhase = ColPhase.EVEN_UP
    seam_twist: SeamTwist = SeamTwist.CENTRAL_B4

    def describe(self) -> str:
        return ", ".join(
            (
                self.composition_order.value,
                self.row_phase.value,
                self.col_phase.value,
                self.seam_twist.value,
            )
        )


class ConventionInconsistent(Exception):
    """Endpoint identification clashes with multiplication."""


class NoConventionMatches(Exception):
    """No convention variant reproduces the calibration anchors."""


CenterSet = FrozenSet[GroupElement]

IDENTITY = GroupElement(0, 0)
GEN_A = GroupElement(1, 0)
GEN_B = GroupElement(0, 1)


def _index(k: int, l: int) -> int:
    return (k % GRID) * GRID + (l % GRID)


def _element(i: int) -> GroupElement:
    return GroupElement(i // GRID, i % GRID)


ALL_ELEMENTS: Tuple[GroupElement, ...] = tuple(_element(i) for i in range(ORDER))


class TorusGroup:
    """The built group: 64 elements, full multiplication table, frozen convention."""

    def __init__(self, convention: Convention, mul_table: np.ndarray,
                 vertex_of: Dict[GroupElement, Vertex]):
        self.convention = convention
        self.mul_table = mul_table              # (64, 64) indices
        self.elements = ALL_ELEMENTS
        self.identity = IDENTITY
        self.generator_a = GEN_A
        self.generator_b = GEN_B
        self._vertex_of = vertex_of
        self._element_at = {v: g for g, v in vertex_of.items()}
        inv = np.empty(ORDER, dtype=np.int64)
        e = _index(0, 0)
        for i in range(ORDER):
            hits = np.nonzero(mul_table[i] == e)[0]
            inv[i] = hits[0]
        self.inv_table = inv
        self._center: Optional[CenterSet] = None

    # -- element arithmetic ------------------------------------------------

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        return _element(int(self.mul_table[_index(*g), _index(*h)]))

    def inv(self, g: GroupElement) -> GroupElement:
        return _element(int(self.inv_table[_index(*g)]))

    def power(self, g: GroupElement, n: int) -> GroupElement:
        if n < 0:
            g, n = self.inv(g), -n
        acc = IDENTITY
        base = g
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """g h g^-1 h^-1."""
        return self.mul(self.mul(self.mul(g, h), self.inv(g)), self.inv(h))

    def order_of(self, g: GroupElement) -> int:
        n = 1
        acc = g
        while acc != IDENTITY:
            acc = self.mul(acc, g)
            n += 1
        return n

    def conjugate(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """y x y^-1."""
        return self.mul(self.mul(y, x), self.inv(y))

    # -- structure ---------------------------------------------------------

    def center(self) -> CenterSet:
        if self._center is None:
            central = np.all(self.mul_table == self.mul_table.T, axis=1)
            self._center = frozenset(
                _element(i) for i in np.nonzero(central)[0]
            )
        return self._center

    def is_central(self, g: GroupElement) -> bool:
        return g in self.center()

    def vertex_of(self, g: GroupElement) -> Vertex:
        return self._vertex_of[g]

    def element_at(self, v: Vertex) -> GroupElement:
        return self._element_at[Vertex(v[0] % GRID, v[1] % GRID)]

    def parity_table(self) -> "ParityReport":
        return _parity_report(self)

    def __len__(self) -> int:
        return ORDER


# -- construction ------------------------------------------------------------


def _step_permutations(convention: Convention) -> Tuple[np.ndarray, np.ndarray]:
    """Vertex permutations for one a-step and one b-step."""
    verts = [Vertex(x, y) for x in range(GRID) for y in range(GRID)]
    vid = {v: i for i, v in enumerate(verts)}
    pa = np.empty(ORDER, dtype=np.int64)
    pb = np.empty(ORDER, dtype=np.int64)
    row_sign = 1 if convention.row_phase is RowPhase.EVEN_RIGHT else -1
    col_sign = 1 if convention.col_phase is ColPhase.EVEN_UP else -1
    for v, i in vid.items():
        sr = row_sign if v.y % 2 == 0 else -row_sign
        sc = col_sign if v.x % 2 == 0 else -col_sign
        pa[i] = vid[Vertex((v.x + sr) % GRID, v.y)]
        pb[i] = vid[Vertex(v.x, (v.y + sc) % GRID)]
    return pa, pb


def _compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Apply q first, then p."""
    return p[q]


def _perm_power(p: np.ndarray, n: int) -> np.ndarray:
    acc = np.arange(ORDER)
    for _ in range(n):
        acc = _compose(p, acc)
    return acc


def build_group(convention: Convention) -> TorusGroup:
    """Construct the group for one convention and verify it exhaustively.

    Raises ConventionInconsistent (with a witness) if endpoint
    identification does not yield a well-defined group of 64 elements.
    """
    pa, pb = _step_permutations(convention)
    word_first = convention.composition_order is CompositionOrder.WORD

    # permutation realised by the canonical word a^k b^l
    perms: List[np.ndarray] = []
    for g in ALL_ELEMENTS:
        pak = _perm_power(pa, g.k)
        pbl = _perm_power(pb, g.l)
        perms.append(_compose(pbl, pak) if word_first else _compose(pak, pbl))

    base = 0  # Vertex(0, 0)
    verts = [Vertex(x, y) for x in range(GRID) for y in range(GRID)]
    endpoints = [int(p[base]) for p in perms]
    if len(set(endpoints)) != ORDER:
        seen: Dict[int, GroupElement] = {}
        for g, v in zip(ALL_ELEMENTS, endpoints):
            if v in seen:
                raise ConventionInconsistent(
                    f"normal forms {seen[v]} and {g} reach the same vertex "
                    f"{verts[v]} from base"
                )
            seen[v] = g
    vertex_of = {g: verts[v] for g, v in zip(ALL_ELEMENTS, endpoints)}
    element_at_idx = {v: i for i, v in enumerate(endpoints)}

    # flat product: translate the second path to start at the first endpoint
    flat = np.empty((ORDER, ORDER), dtype=np.int64)
    for i in range(ORDER):
        for j in range(ORDER):
            if word_first:
                v = int(perms[j][endpoints[i]])
            else:
                v = int(perms[i][endpoints[j]])
            flat[i, j] = element_at_idx[v]

    if convention.seam_twist is SeamTwist.FLAT:
        # endpoint identification must agree with permutation identity:
        # the permutation of a product word must equal the composed
        # permutations of its factors.
        for i in range(ORDER):
            pi = perms[i]
            for j in range(ORDER):
                pj = perms[j]
                pij = _compose(pj, pi) if word_first else _compose(pi, pj)
                if not np.array_equal(pij, perms[flat[i, j]]):
                    raise ConventionInconsistent(
                        f"word action of {ALL_ELEMENTS[i]} then "
                        f"{ALL_ELEMENTS[j]} differs from the action of "
                        f"their product {_element(int(flat[i, j]))}"
                    )
        table = flat
    else:
        # central b^4 holonomy on odd-displacement compositions
        table = flat.copy()
        for i, g in enumerate(ALL_ELEMENTS):
            if g.l % 2 == 0:
                continue
            for j, h in enumerate(ALL_ELEMENTS):
                if h.k % 2 == 0:
                    continue
                r = _element(int(table[i, j]))
                table[i, j] = _index(r.k, r.l + 4)

    _verify_group(table, convention)
    return TorusGroup(convention, table, vertex_of)


def _verify_group(table: np.ndarray, convention: Convention) -> None:
    e = _index(0, 0)
    if not (np.array_equal(table[e], np.arange(ORDER))
            and np.array_equal(table[:, e], np.arange(ORDER))):
        raise ConventionInconsistent("identity is not two-sided neutral")
    # every row and column a permutation: regular left/right translations
    ar = np.arange(ORDER)
    if not (np.array_equal(np.sort(table, axis=1), np.tile(ar, (ORDER, 1)))
            and np.array_equal(np.sort(table, axis=0), np.tile(ar[:, None], (1, ORDER)))):
        raise ConventionInconsistent("translations are not permutations")
    if not np.array_equal(table[table], table[:, table]):
        bad = np.argwhere(table[table] != table[:, table])[0]
        raise ConventionInconsistent(
            f"associativity fails at triple {tuple(int(t) for t in bad)}"
        )
    for gi in (_index(1, 0), _index(0, 1)):
        n, acc = 1, gi
        while acc != e:
            acc = int(table[acc, gi])
            n += 1
        if n != GRID:
            raise ConventionInconsistent(
                f"generator order {n} != {GRID} under {convention.describe()}"
            )


# -- calibration ---------------------------------------------------------------


@dataclass
class AnchorReport:
    """Values of the calibration anchors under one convention."""

    a_comm: GroupElement            # a [a,b]
    comm_a: GroupElement            # [a,b] a
    alpha: GroupElement             # (ab)^-3 a (ab)^3
    beta_literal: GroupElement      # (ab^3)^3 (ab) (ab^3)^-3
    beta_derived: GroupElement      # (ab^3)^3 (ab^2) (ab^3)^-3
    b_inv2_is_b6: bool
    matches: bool


ANCHOR_A_COMM = GroupElement(3, 2)
ANCHOR_COMM_A = GroupElement(3, 6)
ANCHOR_ALPHA = GroupElement(7, 6)


def _anchors(group: TorusGroup) -> AnchorReport:
    a, b = group.generator_a, group.generator_b
    comm = group.commutator(a, b)
    ab = group.mul(a, b)
    ab3 = group.mul(a, group.power(b, 3))
    alpha = group.mul(group.mul(group.power(ab, -3), a), group.power(ab, 3))
    beta_lit = group.mul(group.mul(group.power(ab3, 3), ab),
                         group.power(ab3, -3))
    beta_der = group.mul(group.mul(group.power(ab3, 3),
                                   group.mul(a, group.power(b, 2))),
                         group.power(ab3, -3))
    rep = AnchorReport(
        a_comm=group.mul(a, comm),
        comm_a=group.mul(comm, a),
        alpha=alpha,
        beta_literal=beta_lit,
        beta_derived=beta_der,
        b_inv2_is_b6=group.power(b, -2) == group.power(b, 6),
        matches=False,
    )
    rep.matches = (rep.a_comm == ANCHOR_A_COMM
                   and rep.comm_a == ANCHOR_COMM_A
                   and rep.alpha == ANCHOR_ALPHA
                   and rep.b_inv2_is_b6)
    return rep


@dataclass
class CalibrationResult:
    convention: Convention
    matches: List[Convention]
    reports: Dict[Convention, AnchorReport] = field(repr=False)

    @property
    def ambiguous(self) -> bool:
        """Several variants reproduce the anchors; the first was frozen."""
        return len(self.matches) > 1


def all_conventions() -> List[Convention]:
    """Every variant, in deterministic enum order (seam twist innermost)."""
    return [
        Convention(co, rp, cp, st)
        for co in CompositionOrder
        for rp in RowPhase
        for cp in ColPhase
        for st in SeamTwist
    ]


def calibrate_convention() -> CalibrationResult:
    """Pick the convention reproducing all calibration anchors.

    Every variant is built and checked.  If several match, all are
    reported and the first in enum order is frozen; if none match,
    NoConventionMatches is raised.
    """
    reports: Dict[Convention, AnchorReport] = {}
    matches: List[Convention] = []
    for conv in all_conventions():
        try:
            group = build_group(conv)
        except ConventionInconsistent:
            continue
        rep = _anchors(group)
        reports[conv] = rep
        if rep.matches:
            matches.append(conv)
    if not matches:
        raise NoConventionMatches(
            "no convention variant reproduces the calibration anchors"
        )
    return CalibrationResult(convention=matches[0], matches=matches,
                             reports=reports)


DEFAULT_CONVENTION = Convention()


def build_default_group() -> TorusGroup:
    return build_group(DEFAULT_CONVENTION)


# -- parity sweep --------------------------------------------------------------


ParityKey = Tuple[int, int, int, int]  # parities of i, j, k, l

# stated pattern: a^4 when i odd, j even, l odd; b^4 when i even, j odd,
# k odd; identity otherwise ("-4" with odd multiplier is 4 mod 8)
def _stated_parity_value(key: ParityKey) -> GroupElement:
    pi, pj, pk, pl = key
    if pi == 1 and pj == 0 and pl == 1:
        return GroupElement(4, 0)
    if pi == 0 and pj == 1 and pk == 1:
        return GroupElement(0, 4)
    return GroupElement(0, 0)


@dataclass
class ParityReport:
    """Sweep of A = w y^2 w^-1 y^-2 over all pairs, grouped by parity class."""

    values: Dict[ParityKey, FrozenSet[GroupElement]]
    all_constant: bool
    all_central: bool
    has_nontrivial: bool
    mismatches: List[Tuple[ParityKey, FrozenSet[GroupElement], GroupElement]]

    def value_of(self, key: ParityKey) -> FrozenSet[GroupElement]:
        return self.values[key]


def _parity_report(group: TorusGroup) -> ParityReport:
    center = group.center()
    values: Dict[ParityKey, set] = {}
    has_nontrivial = False
    all_central = True
    for y in ALL_ELEMENTS:
        y2 = group.mul(y, y)
        for w in ALL_ELEMENTS:
            a_val = group.commutator(w, y2)
            key = (y.k % 2, y.l % 2, w.k % 2, w.l % 2)
            values.setdefault(key, set()).add(a_val)
            if a_val != IDENTITY:
                has_nontrivial = True
            if a_val not in center:
                all_central = False
    frozen = {key: frozenset(vals) for key, vals in values.items()}
    all_constant = all(len(vals) == 1 for vals in frozen.values())
    mismatches = []
    for key, vals in sorted(frozen.items()):
        stated = _stated_parity_value(key)
        if vals != frozenset({stated}):
            mismatches.append((key, vals, stated))
    return ParityReport(values=frozen, all_constant=all_constant,
                        all_central=all_central,
                        has_nontrivial=has_nontrivial,
                        mismatches=mismatches)
