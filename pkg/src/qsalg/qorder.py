"""Quantale-valued orders, fuzzy subsets, and fuzzy joins.

A Q-order assigns a degree e(x, y) in the base quantale to every ordered
pair of carrier elements; the classical laws come back by comparing
degrees against the quantale unit.  The join of a fuzzy subset M is the
unique element s that M lies below (condition 1) and that lies below
everything M lies below (condition 2).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping, Optional

from . import limits
from .errors import (
    AntisymmetryFails,
    CarrierMismatch,
    InternalInconsistency,
    NoQJoin,
    NotQJoinComplete,
    PartialTable,
    ReflexivityFails,
    TransitivityFails,
    UnknownElement,
)
from .lattice import FinitePoset, validate_poset
from .quantale import FiniteQuantale


@lru_cache(maxsize=None)
def _index(carrier: tuple) -> dict:
    return {x: i for i, x in enumerate(carrier)}


@dataclass(frozen=True, eq=False)
class QSubset:
    """A fuzzy subset: one base-quantale value per carrier element."""

    carrier: tuple[str, ...]
    base: FiniteQuantale
    values: tuple[str, ...]

    def __call__(self, x: str) -> str:
        return self.values[_index(self.carrier)[x]]

    def table(self) -> dict:
        return dict(zip(self.carrier, self.values))

    def __eq__(self, other):
        return (isinstance(other, QSubset)
                and self.carrier == other.carrier
                and self.values == other.values
                and self.base is other.base)

    def __hash__(self):
        return hash((self.carrier, self.values, id(self.base)))

    def __repr__(self):
        return "QSubset(%s)" % ", ".join(
            f"{x}:{v}" for x, v in zip(self.carrier, self.values))


def qsubset(carrier, base, table) -> QSubset:
    carrier = tuple(carrier)
    values = []
    for x in carrier:
        if x not in table:
            raise PartialTable("fuzzy subset", x)
        v = table[x]
        if v not in base.elements:
            raise UnknownElement(v, "fuzzy subset value")
        values.append(v)
    return QSubset(carrier, base, tuple(values))


def constant_subset(carrier, base, q) -> QSubset:
    return QSubset(tuple(carrier), base, (q,) * len(tuple(carrier)))


def characteristic_subset(carrier, base, members, degree=None) -> QSubset:
    """The subset taking `degree` (default: the unit) on `members`, bottom off."""
    carrier = tuple(carrier)
    q = base.unit if degree is None else degree
    members = set(members)
    for m in members:
        if m not in carrier:
            raise UnknownElement(m, "characteristic subset")
    return QSubset(carrier, base,
                   tuple(q if x in members else base.bottom for x in carrier))


def point_subset(carrier, base, a) -> QSubset:
    return characteristic_subset(carrier, base, [a])


def all_qsubsets(carrier, base):
    """Every fuzzy subset, in base-element product order (deterministic)."""
    carrier = tuple(carrier)
    for values in itertools.product(base.elements, repeat=len(carrier)):
        yield QSubset(carrier, base, values)


def scan_qsubsets(carrier, base, threshold=None, seed=None):
    """(subsets, exhaustive, meta): all subsets when the space is within the
    threshold, otherwise a reproducible sample."""
    carrier = tuple(carrier)
    bound = limits.threshold(threshold)
    space = limits.subset_space(len(base.elements), len(carrier))
    if space <= bound:
        return (all_qsubsets(carrier, base), True,
                {"space": space, "threshold": bound, "sampled": False})
    seed = limits.DEFAULT_SEED if seed is None else seed
    sample = (QSubset(carrier, base, values)
              for values in limits.sample_tables(
                  base.elements, len(carrier), seed))
    return (sample, False,
            {"space": space, "threshold": bound, "sampled": True,
             "seed": seed, "sample_size": limits.SAMPLE_SIZE})


@dataclass(frozen=True, eq=False)
class QOrderedSet:
    carrier: tuple[str, ...]
    base: FiniteQuantale
    e: Mapping[tuple[str, str], str] = field(repr=False)

    def degree(self, x, y) -> str:
        return self.e[(x, y)]

    def same_tables(self, other) -> bool:
        return (self.carrier == other.carrier
                and dict(self.e) == dict(other.e)
                and self.base.same_tables(other.base))


def validate_qorder(carrier, base: FiniteQuantale, e) -> QOrderedSet:
    """Check reflexivity, transitivity and antisymmetry of a degree table."""
    carrier = tuple(carrier)
    table = {}
    for x in carrier:
        for y in carrier:
            if (x, y) not in e:
                raise PartialTable("degree table", (x, y))
            v = e[(x, y)]
            if v not in base.elements:
                raise UnknownElement(v, "degree value")
            table[(x, y)] = v
    unit = base.unit
    for x in carrier:
        if not base.leq(unit, table[(x, x)]):
            raise ReflexivityFails(
                f"e({x!r},{x!r}) = {table[(x, x)]!r} is not above the unit",
                element=x, degree=table[(x, x)])
    for x in carrier:
        for y in carrier:
            for z in carrier:
                prod = base.mul(table[(x, y)], table[(y, z)])
                if not base.leq(prod, table[(x, z)]):
                    raise TransitivityFails(
                        f"e({x!r},{y!r})*e({y!r},{z!r}) = {prod!r} exceeds "
                        f"e({x!r},{z!r}) = {table[(x, z)]!r}",
                        triple=[x, y, z], product=prod, bound=table[(x, z)])
    for x in carrier:
        for y in carrier:
            if x != y and base.leq(unit, table[(x, y)]) \
                    and base.leq(unit, table[(y, x)]):
                raise AntisymmetryFails(
                    f"{x!r} and {y!r} are unit-related both ways", pair=[x, y])
    return QOrderedSet(carrier, base, table)


def induced_order(order: QOrderedSet) -> FinitePoset:
    """The crisp order x <= y iff the unit is below e(x, y)."""
    unit = order.base.unit
    rel = {(x, y) for x in order.carrier for y in order.carrier
           if order.base.leq(unit, order.e[(x, y)])}
    return validate_poset(order.carrier, rel)


def crisp_qorder(poset, base: FiniteQuantale) -> QOrderedSet:
    """Embed a crisp poset: degree unit where x <= y, bottom elsewhere."""
    p = poset.poset if hasattr(poset, "poset") else poset
    e = {(x, y): base.unit if p.leq(x, y) else base.bottom
         for x in p.elements for y in p.elements}
    return validate_qorder(p.elements, base, e)


def subsethood(m: QSubset, n: QSubset) -> str:
    """Degree to which m is contained in n: meet of pointwise residuals."""
    if m.carrier != n.carrier or m.base is not n.base:
        raise CarrierMismatch("subsethood needs one carrier and one base",
                              left=list(m.carrier), right=list(n.carrier))
    q = m.base
    return q.meet(q.residual[(mv, nv)] for mv, nv in zip(m.values, n.values))


def powerset_order(carrier, base, threshold=None):
    """The fuzzy order of all fuzzy subsets under subsethood.

    Returns (order, atlas) where atlas maps the synthetic element ids back
    to the subsets.  Materializes the whole space, so it is gated by the
    same threshold as the other subset scans.
    """
    carrier = tuple(carrier)
    bound = limits.threshold(threshold)
    space = limits.subset_space(len(base.elements), len(carrier))
    if space > bound:
        from .errors import TooLarge
        raise TooLarge("fuzzy powerset", space, bound)
    atlas = {subset_id(m): m for m in all_qsubsets(carrier, base)}
    ids = tuple(atlas)
    e = {(i, j): subsethood(atlas[i], atlas[j]) for i in ids for j in ids}
    return validate_qorder(ids, base, e), atlas


def subset_id(m: QSubset) -> str:
    return "{%s}" % ",".join(f"{x}:{v}" for x, v in zip(m.carrier, m.values))


@lru_cache(maxsize=None)
def _compiled(order: QOrderedSet):
    """Integer-indexed copies of the order and base tables.

    Same tables, faster lookups: the join conditions run inside every
    sampled certification and were the single hottest spot in the suite,
    and list indexing beats hashing label pairs severalfold.  Cached on
    order identity (orders are frozen).
    """
    q = order.base
    qi = {v: i for i, v in enumerate(q.elements)}
    e_by_y = [[qi[order.e[(x, y)]] for x in order.carrier]
              for y in order.carrier]
    res = [[qi[q.residual[(a, b)]] for b in q.elements] for a in q.elements]
    meet = [[qi[q.lattice.meet2[(a, b)]] for b in q.elements]
            for a in q.elements]
    leq = [[q.leq(a, b) for b in q.elements] for a in q.elements]
    return qi, e_by_y, res, meet, leq, qi[q.lattice.top]


def _degrees(order: QOrderedSet, m: QSubset, qi):
    if m.carrier == order.carrier:
        return [qi[v] for v in m.values]
    return [qi[m(x)] for x in order.carrier]


def _cone_indices(order, m):
    qi, e_by_y, res, meet, _, top = _compiled(order)
    d = _degrees(order, m, qi)
    rng = range(len(d))
    cone = []
    for row in e_by_y:
        acc = top
        for j in rng:
            acc = meet[acc][res[d[j]][row[j]]]
        cone.append(acc)
    return cone


def _upper_cone(order: QOrderedSet, m: QSubset):
    """t(y) = meet over x of (M(x) -> e(x, y)): how strongly y bounds m."""
    elements = order.base.elements
    return {y: elements[c] for y, c in zip(order.carrier,
                                           _cone_indices(order, m))}


def qjoin_conditions(order: QOrderedSet, m: QSubset, s: str,
                     cone=None) -> bool:
    qi, e_by_y, _, _, leq, _ = _compiled(order)
    si = _index(order.carrier)[s]
    d = _degrees(order, m, qi)
    row_s = e_by_y[si]
    for j in range(len(d)):
        if not leq[d[j]][row_s[j]]:
            return False
    if cone is None:
        cone_i = _cone_indices(order, m)
    else:
        cone_i = [qi[cone[y]] for y in order.carrier]
    for yi in range(len(cone_i)):
        if not leq[cone_i[yi]][e_by_y[yi][si]]:
            return False
    return True


def qjoin(order: QOrderedSet, m: QSubset) -> Optional[str]:
    """Join of a fuzzy subset, or None when no element qualifies.

    Uniqueness follows from antisymmetry; the scan still collects every
    candidate and treats two hits as an internal inconsistency.
    """
    if m.carrier != order.carrier:
        raise CarrierMismatch("subset lives on a different carrier",
                              left=list(m.carrier), right=list(order.carrier))
    cone = _upper_cone(order, m)
    hits = [s for s in order.carrier if qjoin_conditions(order, m, s, cone)]
    if len(hits) > 1:
        raise InternalInconsistency(
            f"two distinct joins {hits!r} for {m!r}; antisymmetry is broken")
    return hits[0] if hits else None


@dataclass(frozen=True, eq=False)
class QSupLattice:
    """A Q-ordered set certified to have joins of fuzzy subsets.

    `joins` holds the materialized join table when certification was
    exhaustive; otherwise joins are recomputed on demand (and re-verified
    against both defining conditions every time).
    """

    order: QOrderedSet
    joins: Optional[Mapping[tuple[str, ...], str]] = field(repr=False)
    join_rule: Optional[Callable] = field(repr=False, default=None)
    exhaustive: bool = True
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def carrier(self):
        return self.order.carrier

    @property
    def base(self):
        return self.order.base

    @property
    def e(self):
        return self.order.e

    def qjoin(self, m: QSubset) -> str:
        if m.carrier != self.carrier:
            raise CarrierMismatch("subset lives on a different carrier",
                                  left=list(m.carrier),
                                  right=list(self.carrier))
        if self.joins is not None and m.values in self.joins:
            return self.joins[m.values]
        if self.join_rule is not None:
            s = self.join_rule(m)
            if not qjoin_conditions(self.order, m, s):
                raise InternalInconsistency(
                    f"join rule produced {s!r} for {m!r} but the join "
                    f"conditions reject it")
            return s
        s = qjoin(self.order, m)
        if s is None:
            raise NoQJoin(f"{m!r} has no join in a structure certified "
                          f"complete (certification was sampled)",
                          subset=m.table())
        return s

    def same_tables(self, other) -> bool:
        return self.order.same_tables(other.order)


def certify_qsuplattice(order: QOrderedSet, threshold=None, seed=None,
                        join_rule=None) -> QSupLattice:
    """Scan fuzzy subsets for joins; certify or report the first gap.

    With a `join_rule` (a function computing the expected join directly,
    as the module construction provides) the rule's output is checked
    against the join conditions instead of searching candidates.
    """
    subsets, exhaustive, meta = scan_qsubsets(
        order.carrier, order.base, threshold, seed)
    table = {}
    for m in subsets:
        if join_rule is not None:
            s = join_rule(m)
            ok = qjoin_conditions(order, m, s)
            if not ok:
                raise InternalInconsistency(
                    f"join rule produced {s!r} for {m!r} but the join "
                    f"conditions reject it")
        else:
            s = qjoin(order, m)
            if s is None:
                raise NotQJoinComplete(
                    f"{m!r} has no join", subset=m.table())
        if exhaustive:
            table[m.values] = s
    return QSupLattice(order, table if exhaustive else None,
                       join_rule, exhaustive, meta)


def zadeh_forward(f: Mapping[str, str], m: QSubset, target_carrier,
                  base=None) -> QSubset:
    """Push a fuzzy subset along a map: each image point collects the join
    of the degrees of its preimages."""
    base = m.base if base is None else base
    target_carrier = tuple(target_carrier)
    sums = {y: [] for y in target_carrier}
    for x in m.carrier:
        y = f[x]
        if y not in sums:
            raise UnknownElement(y, "map image")
        sums[y].append(m(x))
    return QSubset(target_carrier, base,
                   tuple(base.join(sums[y]) for y in target_carrier))


def is_qjoin_preserving(table: Mapping[str, str], source: QSupLattice,
                        target: QSupLattice, threshold=None, seed=None):
    """Does the map send the join of every fuzzy subset to the join of the
    pushed subset?  Returns (ok, witness_subset_or_None)."""
    subsets, _, _ = scan_qsubsets(source.carrier, source.base, threshold, seed)
    for m in subsets:
        s = source.qjoin(m)
        pushed = zadeh_forward(table, m, target.carrier, target.base)
        t = target.qjoin(pushed)
        if table[s] != t:
            return False, m
    return True, None
