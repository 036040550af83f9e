"""Actions of a quantale on a complete lattice, and the two-way bridge
between such modules and fuzzy-complete orders.

A module action q * a must distribute over joins of scalars and compose
along quantale multiplication.  Unit action (unit * a = a) and join
distribution in the carrier argument are enforced as well unless `lax`
is requested; the lax escape hatch exists so that the consequences of
dropping those laws stay observable (the module-to-order bridge then
fails its order axioms with a concrete witness).

The bridge: a module yields a fuzzy order via e(a, b) = largest q with
q * a <= b, with joins given by folding M(a) * a; a fuzzy-complete order
yields a module via its induced crisp order, with q * a the join of the
one-point fuzzy subset at a with degree q.  Both directions are inverse
to each other table-for-table, and this is checked in the test suite
rather than assumed.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Mapping

from .errors import (
    CompositionLawFails,
    InternalInconsistency,
    JoinLawFails,
    NotActionHom,
    NotJoinPreserving,
    SecondArgJoinFails,
    UnitActionFails,
    UnknownElement,
    CertificationFails,
)
from .lattice import CompleteLattice, complete_lattice
from .qorder import (
    QSubset,
    QSupLattice,
    certify_qsuplattice,
    characteristic_subset,
    constant_subset,
    induced_order,
    is_qjoin_preserving,
    validate_qorder,
)
from .quantale import FiniteQuantale


@dataclass(frozen=True, eq=False)
class QModule:
    lattice: CompleteLattice
    base: FiniteQuantale
    action: Mapping[tuple[str, str], str] = field(repr=False)
    residual: Mapping[tuple[str, str], str] = field(repr=False)
    lax: bool = False

    @property
    def carrier(self):
        return self.lattice.elements

    def act(self, q, a) -> str:
        return self.action[(q, a)]

    def same_tables(self, other) -> bool:
        return (self.carrier == other.carrier
                and self.lattice.poset.relation == other.lattice.poset.relation
                and dict(self.action) == dict(other.action)
                and self.base.same_tables(other.base))


def validate_qmodule(lattice: CompleteLattice, base: FiniteQuantale,
                     action, lax: bool = False) -> QModule:
    """Check the action laws; `lax` skips unit action and carrier-side
    join distribution (and is recorded on the result)."""
    table = {}
    for q in base.elements:
        for a in lattice.elements:
            if (q, a) not in action:
                raise UnknownElement((q, a), "action table (missing)")
            v = action[(q, a)]
            lattice.poset.check_element(v, "action value")
            table[(q, a)] = v
    bot_q, bot_a = base.bottom, lattice.bottom
    for a in lattice.elements:
        if table[(bot_q, a)] != bot_a:
            raise JoinLawFails(
                f"bottom scalar acting on {a!r} gives {table[(bot_q, a)]!r}, "
                f"not the carrier bottom",
                subset=[], element=a, value=table[(bot_q, a)])
        for p in base.elements:
            for q in base.elements:
                j = base.lattice.join2[(p, q)]
                lhs = table[(j, a)]
                rhs = lattice.join2[(table[(p, a)], table[(q, a)])]
                if lhs != rhs:
                    raise JoinLawFails(
                        f"(join of {[p, q]!r})*{a!r} = {lhs!r} but the join "
                        f"of the two actions is {rhs!r}",
                        subset=[p, q], element=a, left=lhs, right=rhs)
    for p in base.elements:
        for q in base.elements:
            for a in lattice.elements:
                lhs = table[(p, table[(q, a)])]
                rhs = table[(base.mul(p, q), a)]
                if lhs != rhs:
                    raise CompositionLawFails(
                        f"{p!r}*({q!r}*{a!r}) = {lhs!r} but "
                        f"({p!r}{q!r})*{a!r} = {rhs!r}",
                        scalars=[p, q], element=a, left=lhs, right=rhs)
    if not lax:
        for a in lattice.elements:
            if table[(base.unit, a)] != a:
                raise UnitActionFails(
                    f"unit*{a!r} = {table[(base.unit, a)]!r}",
                    element=a, value=table[(base.unit, a)])
        for q in base.elements:
            if table[(q, bot_a)] != bot_a:
                raise SecondArgJoinFails(
                    f"{q!r}*bottom = {table[(q, bot_a)]!r}",
                    scalar=q, subset=[], value=table[(q, bot_a)])
            for a in lattice.elements:
                for b in lattice.elements:
                    j = lattice.join2[(a, b)]
                    lhs = table[(q, j)]
                    rhs = lattice.join2[(table[(q, a)], table[(q, b)])]
                    if lhs != rhs:
                        raise SecondArgJoinFails(
                            f"{q!r}*(join of {[a, b]!r}) = {lhs!r} but the "
                            f"join of the two actions is {rhs!r}",
                            scalar=q, subset=[a, b], left=lhs, right=rhs)
    residual = {}
    for a in lattice.elements:
        for b in lattice.elements:
            residual[(a, b)] = base.join(
                q for q in base.elements if lattice.leq(table[(q, a)], b))
    return QModule(lattice, base, table, residual, lax)


def action_residual(module: QModule, a: str, b: str) -> str:
    """Largest scalar q with q * a <= b."""
    return module.residual[(a, b)]


def quantale_self_module(base: FiniteQuantale) -> QModule:
    """The quantale acting on itself by multiplication."""
    action = {(q, a): base.mul(q, a)
              for q in base.elements for a in base.elements}
    return validate_qmodule(base.lattice, base, action)


def crisp_module(lattice: CompleteLattice, two: FiniteQuantale) -> QModule:
    """The only two-element-quantale module on a lattice: 1 keeps, 0 kills."""
    action = {}
    for q in two.elements:
        for a in lattice.elements:
            action[(q, a)] = a if q == two.unit else lattice.bottom
    return validate_qmodule(lattice, two, action)


def suplattice_from_module(module: QModule, threshold=None,
                           seed=None) -> QSupLattice:
    """Fuzzy-complete order of a module: degrees are action residuals,
    joins fold the action over the subset.

    The order axioms are validated outright; the join rule is verified
    against the join conditions subset-by-subset (sampled past the
    threshold).  For a lax module this is the place where dropped laws
    surface as order-axiom failures.

    Memoized on object identity (modules are frozen): re-certifying the
    same module always reproduces the same order, and the callers lean
    on this bridge heavily enough that rebuilding it dominated runtime.
    """
    return _bridge_cached(module, threshold, seed)


@functools.lru_cache(maxsize=None)
def _bridge_cached(module, threshold, seed):
    e = {(a, b): module.residual[(a, b)]
         for a in module.carrier for b in module.carrier}
    order = validate_qorder(module.carrier, module.base, e)

    def rule(m: QSubset) -> str:
        return module.lattice.join(
            module.act(m(a), a) for a in module.carrier)

    return certify_qsuplattice(order, threshold, seed, join_rule=rule)


def module_from_suplattice(sup: QSupLattice) -> QModule:
    """Module of a fuzzy-complete order: induced crisp order, with the
    action reading off joins of one-point fuzzy subsets."""
    base = sup.base
    poset = induced_order(sup.order)
    lat = complete_lattice(poset)
    # The crisp joins must agree with fuzzy joins of characteristic
    # subsets; a mismatch means one of the two join paths is broken.
    if lat.bottom != sup.qjoin(constant_subset(sup.carrier, base, base.bottom)):
        raise InternalInconsistency(
            "crisp bottom disagrees with the join of the empty fuzzy subset")
    for a in sup.carrier:
        for b in sup.carrier:
            crisp = lat.join2[(a, b)]
            fuzzy = sup.qjoin(characteristic_subset(sup.carrier, base, [a, b]))
            if crisp != fuzzy:
                raise InternalInconsistency(
                    f"join of {[a, b]!r}: crisp scan gives {crisp!r}, "
                    f"fuzzy join gives {fuzzy!r}")
    action = {}
    for q in base.elements:
        for a in sup.carrier:
            action[(q, a)] = sup.qjoin(
                characteristic_subset(sup.carrier, base, [a], degree=q))
    return validate_qmodule(lat, base, action)


@dataclass(frozen=True, eq=False)
class StructureMap:
    """A carrier map between two structures of the same flavor."""

    source: object
    target: object
    table: Mapping[str, str]
    kind: str = "map"

    def __call__(self, a: str) -> str:
        return self.table[a]


def check_module_hom(table, source: QModule, target: QModule):
    """None when the map preserves joins and the action; otherwise a
    witness dict naming the first failure."""
    if table[source.lattice.bottom] != target.lattice.bottom:
        return {"law": "NotJoinPreserving", "subset": [],
                "value": table[source.lattice.bottom]}
    for a in source.carrier:
        for b in source.carrier:
            j = source.lattice.join2[(a, b)]
            if table[j] != target.lattice.join2[(table[a], table[b])]:
                return {"law": "NotJoinPreserving", "subset": [a, b],
                        "join": j, "value": table[j]}
    for q in source.base.elements:
        for a in source.carrier:
            if table[source.act(q, a)] != target.act(q, table[a]):
                return {"law": "NotActionHom", "scalar": q, "element": a,
                        "left": table[source.act(q, a)],
                        "right": target.act(q, table[a])}
    return None


def transport_map(f: StructureMap, to: str, threshold=None,
                  seed=None) -> StructureMap:
    """Recertify a map on the other side of the module/order bridge.

    to="sup": f is a module homomorphism; the same table must preserve
    fuzzy joins between the two derived orders.  to="module": f preserves
    fuzzy joins; the same table must be a module homomorphism between the
    derived modules.
    """
    if to == "sup":
        src = suplattice_from_module(f.source, threshold, seed)
        tgt = suplattice_from_module(f.target, threshold, seed)
        ok, witness = is_qjoin_preserving(f.table, src, tgt, threshold, seed)
        if not ok:
            raise CertificationFails(
                f"module homomorphism does not preserve fuzzy joins at "
                f"{witness!r}", subset=witness.table())
        return StructureMap(src, tgt, dict(f.table), "q-sup")
    if to == "module":
        src = module_from_suplattice(f.source)
        tgt = module_from_suplattice(f.target)
        witness = check_module_hom(f.table, src, tgt)
        if witness is not None:
            law = witness.pop("law")
            cls = NotJoinPreserving if law == "NotJoinPreserving" else NotActionHom
            raise cls(f"transported map fails {law}", **witness)
        return StructureMap(src, tgt, dict(f.table), "q-module")
    raise UnknownElement(to, "transport direction (sup|module)")
