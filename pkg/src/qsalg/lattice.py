"""Finite posets, complete lattices, monotone maps, and adjoints.

Element identity is an opaque string everywhere; order comes only from the
supplied relation, never from parsing the labels.  On a finite carrier,
completeness is equivalent to "a bottom exists and every pair has a join",
so that is exactly what certification checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    EmptyCarrier,
    InternalInconsistency,
    NotAntisymmetric,
    NotComplete,
    NotJoinPreserving,
    NotMonotone,
    NotReflexive,
    NotTransitive,
    UnknownElement,
)


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order: elements plus the full <= relation."""

    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def check_element(self, a: str, where: str = "poset") -> None:
        if a not in self.elements:
            raise UnknownElement(a, where)


def reflexive_transitive_closure(elements, relation):
    """Smallest reflexive, transitive relation containing `relation`."""
    elements = list(elements)
    closed = {(a, a) for a in elements}
    closed.update(tuple(p) for p in relation)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(closed):
            for c in elements:
                if (b, c) in closed and (a, c) not in closed:
                    closed.add((a, c))
                    changed = True
    return frozenset(closed)


def validate_poset(elements: Iterable[str], relation) -> FinitePoset:
    """Check the poset laws and return the certified structure.

    The relation must arrive already reflexively and transitively closed;
    ingestion offers closure as an explicit opt-in instead of silently
    repairing input.
    """
    elements = tuple(elements)
    if not elements:
        raise EmptyCarrier("poset has an empty carrier")
    if len(set(elements)) != len(elements):
        raise NotAntisymmetric("duplicate element ids", elements=sorted(
            e for e in elements if elements.count(e) > 1))
    rel = frozenset((str(a), str(b)) for a, b in relation)
    known = set(elements)
    for (a, b) in rel:
        if a not in known or b not in known:
            raise UnknownElement(a if a not in known else b, "poset relation")
    for a in elements:
        if (a, a) not in rel:
            raise NotReflexive(f"{a!r} <= {a!r} missing", element=a)
    for (a, b) in sorted(rel):
        for c in elements:
            if (b, c) in rel and (a, c) not in rel:
                raise NotTransitive(
                    f"{a!r} <= {b!r} <= {c!r} but {a!r} <= {c!r} missing",
                    chain=[a, b, c])
        if a != b and (b, a) in rel:
            raise NotAntisymmetric(
                f"{a!r} and {b!r} are <= each other", pair=[a, b])
    return FinitePoset(elements, rel)


@dataclass(frozen=True)
class CompleteLattice:
    """A finite poset certified to have all joins (hence all meets).

    join2/meet2 are the precomputed binary tables; arbitrary joins fold
    over them, with join([]) = bottom and meet([]) = top.
    """

    poset: FinitePoset
    bottom: str
    top: str
    join2: Mapping[tuple[str, str], str] = field(repr=False)
    meet2: Mapping[tuple[str, str], str] = field(repr=False)

    @property
    def elements(self):
        return self.poset.elements

    def leq(self, a, b):
        return self.poset.leq(a, b)

    def join(self, subset) -> str:
        out = self.bottom
        for s in subset:
            out = self.join2[(out, s)]
        return out

    def meet(self, subset) -> str:
        out = self.top
        for s in subset:
            out = self.meet2[(out, s)]
        return out


def _least(poset, candidates, pair, kind):
    for u in candidates:
        if all(poset.leq(u, v) for v in candidates):
            return u
    raise NotComplete(
        f"{kind} of {pair!r} has no least element among {sorted(candidates)}",
        pair=list(pair), bounds=sorted(candidates))


def complete_lattice(poset: FinitePoset) -> CompleteLattice:
    """Certify completeness and precompute the binary join/meet tables."""
    bottoms = [a for a in poset.elements
               if all(poset.leq(a, b) for b in poset.elements)]
    if not bottoms:
        raise NotComplete("no bottom element", pair=[])
    bottom = bottoms[0]
    join2 = {}
    for a in poset.elements:
        for b in poset.elements:
            ubs = [u for u in poset.elements if poset.leq(a, u) and poset.leq(b, u)]
            if not ubs:
                raise NotComplete(f"{(a, b)!r} has no upper bound", pair=[a, b])
            join2[(a, b)] = _least(poset, ubs, (a, b), "join")
    top = bottom
    for a in poset.elements:
        top = join2[(top, a)]
    meet2 = {}
    for a in poset.elements:
        for b in poset.elements:
            lbs = [v for v in poset.elements if poset.leq(v, a) and poset.leq(v, b)]
            # lbs is nonempty (bottom); its join is the meet because all
            # binary joins are already certified above.
            m = bottom
            for v in lbs:
                m = join2[(m, v)]
            if not (poset.leq(m, a) and poset.leq(m, b)):
                raise InternalInconsistency(
                    f"computed meet of {(a, b)!r} is not a lower bound")
            meet2[(a, b)] = m
    return CompleteLattice(poset, bottom, top, join2, meet2)


def _poset_of(obj) -> FinitePoset:
    return obj.poset if isinstance(obj, CompleteLattice) else obj


@dataclass(frozen=True)
class MonotoneMap:
    """An order-preserving map; endpoints may be posets or lattices."""

    source: object
    target: object
    table: Mapping[str, str]

    def __call__(self, a: str) -> str:
        return self.table[a]


def monotone_map(source, target, table) -> MonotoneMap:
    src, tgt = _poset_of(source), _poset_of(target)
    for a in src.elements:
        if a not in table:
            raise UnknownElement(a, "map table (missing)")
        tgt.check_element(table[a], "map target")
    for a in src.elements:
        for b in src.elements:
            if src.leq(a, b) and not tgt.leq(table[a], table[b]):
                raise NotMonotone(
                    f"{a!r} <= {b!r} but f({a!r}) = {table[a]!r} "
                    f"is not <= f({b!r}) = {table[b]!r}",
                    pair=[a, b], images=[table[a], table[b]])
    return MonotoneMap(source, target, table)


def _join_failure_witness(f, src, tgt):
    # On a finite carrier, preservation of the empty join and of all binary
    # joins already forces preservation of every join, so a failing map must
    # leave a witness in this small search space.
    if f.table[src.bottom] != tgt.bottom:
        return (), src.bottom, f.table[src.bottom], tgt.bottom
    for a in src.elements:
        for b in src.elements:
            j = src.join2[(a, b)]
            mapped = tgt.join2[(f.table[a], f.table[b])]
            if f.table[j] != mapped:
                return (a, b), j, f.table[j], mapped
    return None


def right_adjoint(f: MonotoneMap) -> MonotoneMap:
    """Upper adjoint of a join-preserving map between complete lattices.

    g(b) is the join of everything f sends below b.  The defining
    equivalence f(a) <= b iff a <= g(b) is then checked on all pairs; a
    failure is converted into the join-preservation witness that caused it.
    """
    src, tgt = f.source, f.target
    if not isinstance(src, CompleteLattice) or not isinstance(tgt, CompleteLattice):
        raise UnknownElement("<lattice>", "right_adjoint endpoints")
    g = {b: src.join(a for a in src.elements if tgt.leq(f.table[a], b))
         for b in tgt.elements}
    for a in src.elements:
        for b in tgt.elements:
            if tgt.leq(f.table[a], b) != src.leq(a, g[b]):
                bad = _join_failure_witness(f, src, tgt)
                if bad is None:
                    raise InternalInconsistency(
                        "adjunction failed but all binary joins are preserved")
                subset, j, fj, jf = bad
                raise NotJoinPreserving(
                    f"f(join {list(subset)!r}) = {fj!r} "
                    f"but join of images is {jf!r}",
                    subset=list(subset), join=j, f_of_join=fj, join_of_images=jf)
    return monotone_map(tgt, src, g)


# -- small builders used across the test corpus -------------------------------

def chain_lattice(labels: Iterable[str]) -> CompleteLattice:
    """Total order on the given labels, bottom first."""
    labels = [str(x) for x in labels]
    rel = {(labels[i], labels[j])
           for i in range(len(labels)) for j in range(i, len(labels))}
    return complete_lattice(validate_poset(labels, rel))


def _from_covers(elements, covers):
    rel = reflexive_transitive_closure(elements, covers)
    return complete_lattice(validate_poset(elements, rel))


def diamond_lattice() -> CompleteLattice:
    """Four elements: bot, two incomparable middles, top (a 2x2 grid)."""
    return _from_covers(
        ("bot", "a", "b", "top"),
        {("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")})


def pentagon_lattice() -> CompleteLattice:
    """The five-element non-distributive lattice with a 3-chain side."""
    return _from_covers(
        ("bot", "a", "c", "b", "top"),
        {("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")})


def antichain_cube_lattice() -> CompleteLattice:
    """Three incomparable atoms under a common top (the M3 lattice)."""
    return _from_covers(
        ("bot", "a", "b", "c", "top"),
        {("bot", "a"), ("bot", "b"), ("bot", "c"),
         ("a", "top"), ("b", "top"), ("c", "top")})
