"""Signature algebras on fuzzy-complete orders and on modules, the free
fuzzy powerset algebra over a plain signature algebra, and homomorphism
checking and enumeration.

The free construction is the load-bearing piece: the carrier is every
fuzzy subset of the generators, operations convolve argument degrees
along the generator operations (joining the products over each fiber),
and scalars act pointwise.  Its laws are certified on the module side,
where every check is exhaustive; the fuzzy-order side is derived through
the module/order bridge.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import limits
from .errors import (
    CertificationFails,
    EquivarianceFails,
    InternalInconsistency,
    NotOmegaHom,
    PartialTable,
    SlotPreservationFails,
    TooLarge,
    UnknownElement,
)
from .qmodule import (
    QModule,
    StructureMap,
    check_module_hom,
    module_from_suplattice,
    suplattice_from_module,
    validate_qmodule,
)
from .qorder import (
    QSubset,
    QSupLattice,
    all_qsubsets,
    is_qjoin_preserving,
    point_subset,
    scan_qsubsets,
    subset_id,
    subsethood,
    zadeh_forward,
)
from .quantale import FiniteQuantale


@dataclass(frozen=True, eq=False)
class Signature:
    symbols: tuple[str, ...]
    arities: Mapping[str, int] = field(repr=False)

    def arity(self, sym: str) -> int:
        return self.arities[sym]

    def same_tables(self, other) -> bool:
        return (self.symbols == other.symbols
                and dict(self.arities) == dict(other.arities))


def signature(arities: Mapping[str, int]) -> Signature:
    for sym, n in arities.items():
        if int(n) < 0:
            raise UnknownElement(n, f"arity of {sym!r}")
    return Signature(tuple(arities), {s: int(n) for s, n in arities.items()})


EMPTY_SIGNATURE = signature({})


@dataclass(frozen=True, eq=False)
class OmegaAlgebra:
    """A plain signature algebra: total operation tables, no order."""

    carrier: tuple[str, ...]
    signature: Signature
    ops: Mapping[str, Mapping[tuple, str]] = field(repr=False)

    def apply(self, sym: str, args) -> str:
        return self.ops[sym][tuple(args)]

    def same_tables(self, other) -> bool:
        return (self.carrier == other.carrier
                and self.signature.same_tables(other.signature)
                and {s: dict(t) for s, t in self.ops.items()}
                == {s: dict(t) for s, t in other.ops.items()})


def validate_omega_algebra(carrier, sig: Signature, ops) -> OmegaAlgebra:
    carrier = tuple(carrier)
    known = set(carrier)
    tables = {}
    for sym in sig.symbols:
        n = sig.arity(sym)
        if sym not in ops:
            raise PartialTable(sym, "entire table")
        table = {}
        for args in itertools.product(carrier, repeat=n):
            if args not in ops[sym]:
                raise PartialTable(sym, args)
            v = ops[sym][args]
            if v not in known:
                raise UnknownElement(v, f"op {sym!r} value")
            table[args] = v
        tables[sym] = table
    return OmegaAlgebra(carrier, sig, tables)


@dataclass(frozen=True, eq=False)
class QSupAlgebra:
    """Fuzzy-complete order whose operations preserve fuzzy joins slotwise."""

    sup: QSupLattice
    algebra: OmegaAlgebra
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def carrier(self):
        return self.sup.carrier

    @property
    def base(self):
        return self.sup.base

    def same_tables(self, other) -> bool:
        return (self.sup.same_tables(other.sup)
                and self.algebra.same_tables(other.algebra))


@dataclass(frozen=True, eq=False)
class QModuleAlgebra:
    """Module whose operations preserve joins and scalar action slotwise."""

    module: QModule
    algebra: OmegaAlgebra
    meta: dict = field(default_factory=dict, repr=False)

    @property
    def carrier(self):
        return self.module.carrier

    @property
    def base(self):
        return self.module.base

    def same_tables(self, other) -> bool:
        return (self.module.same_tables(other.module)
                and self.algebra.same_tables(other.algebra))


def _slot_maps(algebra: OmegaAlgebra, sym: str):
    """All unary restrictions of an operation: (slot, frozen other args,
    {x: op(... x ...)})."""
    n = algebra.signature.arity(sym)
    for slot in range(n):
        for rest in itertools.product(algebra.carrier, repeat=n - 1):
            table = {}
            for x in algebra.carrier:
                args = rest[:slot] + (x,) + rest[slot:]
                table[x] = algebra.apply(sym, args)
            yield slot, rest, table


def validate_qsup_algebra(sup: QSupLattice, algebra: OmegaAlgebra,
                          threshold=None, seed=None) -> QSupAlgebra:
    """Each operation must send fuzzy joins to fuzzy joins in every slot
    (with all other arguments pinned).  Nullary symbols only need to sit
    in the carrier, which totality already guarantees."""
    if tuple(sup.carrier) != tuple(algebra.carrier):
        raise UnknownElement(algebra.carrier, "algebra carrier (mismatch)")
    meta = {"slot_check": "exhaustive"}
    for sym in algebra.signature.symbols:
        for slot, rest, g in _slot_maps(algebra, sym):
            subsets, exhaustive, scan_meta = scan_qsubsets(
                sup.carrier, sup.base, threshold, seed)
            if not exhaustive:
                meta = {"slot_check": "sampled", **scan_meta}
            for m in subsets:
                lhs = g[sup.qjoin(m)]
                rhs = sup.qjoin(zadeh_forward(g, m, sup.carrier))
                if lhs != rhs:
                    raise SlotPreservationFails(
                        f"{sym!r} slot {slot} with fixed args {rest!r}: "
                        f"op of join is {lhs!r}, join of op-image is {rhs!r}",
                        symbol=sym, slot=slot, rest=list(rest),
                        subset=m.table(), left=lhs, right=rhs)
    return QSupAlgebra(sup, algebra, meta)


def validate_qmodule_algebra(module: QModule,
                             algebra: OmegaAlgebra) -> QModuleAlgebra:
    """Slotwise join preservation (empty and binary joins cover the rest on
    a finite carrier) plus slotwise scalar equivariance."""
    if tuple(module.carrier) != tuple(algebra.carrier):
        raise UnknownElement(algebra.carrier, "algebra carrier (mismatch)")
    lat = module.lattice
    for sym in algebra.signature.symbols:
        for slot, rest, g in _slot_maps(algebra, sym):
            if g[lat.bottom] != lat.bottom:
                raise SlotPreservationFails(
                    f"{sym!r} slot {slot} with fixed args {rest!r} does not "
                    f"send bottom to bottom",
                    symbol=sym, slot=slot, rest=list(rest), subset=[],
                    value=g[lat.bottom])
            for a in module.carrier:
                for b in module.carrier:
                    j = lat.join2[(a, b)]
                    if g[j] != lat.join2[(g[a], g[b])]:
                        raise SlotPreservationFails(
                            f"{sym!r} slot {slot} with fixed args {rest!r} "
                            f"breaks the join of {[a, b]!r}",
                            symbol=sym, slot=slot, rest=list(rest),
                            subset=[a, b], left=g[j],
                            right=lat.join2[(g[a], g[b])])
            for q in module.base.elements:
                for b in module.carrier:
                    if g[module.act(q, b)] != module.act(q, g[b]):
                        raise EquivarianceFails(
                            f"{sym!r} slot {slot} with fixed args {rest!r}: "
                            f"op({q!r}*{b!r}) != {q!r}*op({b!r})",
                            symbol=sym, slot=slot, rest=list(rest),
                            scalar=q, element=b,
                            left=g[module.act(q, b)],
                            right=module.act(q, g[b]))
    return QModuleAlgebra(module, algebra)


def transport_algebra(x, threshold=None, seed=None):
    """Carry a certified algebra across the module/order bridge.

    Toward the module side every law is re-checked exhaustively.  Toward
    the fuzzy side, slotwise fuzzy-join preservation is re-checked
    exhaustively when the subset space fits the threshold; past that the
    module-side certification is what vouches for it (the bridge sends
    slotwise join-and-action preservation to slotwise fuzzy-join
    preservation) and the skip is recorded in meta.
    """
    if isinstance(x, QSupAlgebra):
        module = module_from_suplattice(x.sup)
        return validate_qmodule_algebra(module, x.algebra)
    if isinstance(x, QModuleAlgebra):
        sup = suplattice_from_module(x.module, threshold, seed)
        space = limits.subset_space(len(sup.base.elements), len(sup.carrier))
        if space <= limits.threshold(threshold):
            return validate_qsup_algebra(sup, x.algebra, threshold, seed)
        out = QSupAlgebra(sup, x.algebra,
                          {"slot_check": "module-side", "space": space})
        return out
    raise UnknownElement(type(x).__name__, "transport_algebra input")


# -- the free fuzzy powerset algebra ------------------------------------------

@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    """Free fuzzy-complete algebra on the generators, with both faces.

    ids: carrier of the free object, one per fuzzy subset of the
    generators.  atlas/id_of translate between ids and subsets.  eta is
    the generator embedding a -> unit-at-a.
    """

    base: FiniteQuantale
    generators: OmegaAlgebra
    ids: tuple[str, ...]
    atlas: Mapping[str, QSubset] = field(repr=False)
    id_of: Mapping[tuple, str] = field(repr=False)
    module_algebra: QModuleAlgebra = field(repr=False)
    sup_algebra: QSupAlgebra = field(repr=False)
    eta: Mapping[str, str] = field(repr=False)

    @property
    def sup(self):
        return self.sup_algebra.sup

    @property
    def module(self):
        return self.module_algebra.module

    def subset(self, i: str) -> QSubset:
        return self.atlas[i]


def free_qsup_algebra(base: FiniteQuantale, generators: OmegaAlgebra,
                      threshold=None, seed=None) -> FreeAlgebra:
    """Build and certify the free object over a plain signature algebra.

    Raises TooLarge when |Q| ** |generators| passes the materialization
    threshold.  Certification is exhaustive on the module side; the
    embedding of generators is checked to be an operation homomorphism.

    Memoized on object identity: the free object over the same base and
    generator instances is deterministic, and several certifiers want it
    at once (evaluation, canonical closure, hom extension).
    """
    return _free_cached(base, generators, threshold, seed)


@functools.lru_cache(maxsize=None)
def _free_cached(base, generators, threshold, seed):
    gens = generators.carrier
    bound = limits.threshold(threshold)
    space = limits.subset_space(len(base.elements), len(gens))
    if space > bound:
        raise TooLarge("free algebra carrier", space, bound)

    subsets = list(all_qsubsets(gens, base))
    ids = tuple(subset_id(m) for m in subsets)
    atlas = dict(zip(ids, subsets))
    id_of = {m.values: i for i, m in zip(ids, subsets)}

    # Pointwise order, scalar action, and convolution operations.
    rel = {(i, j) for i in ids for j in ids
           if all(base.leq(a, b)
                  for a, b in zip(atlas[i].values, atlas[j].values))}
    from .lattice import complete_lattice, validate_poset
    lat = complete_lattice(validate_poset(ids, rel))
    action = {}
    for q in base.elements:
        for i in ids:
            scaled = tuple(base.mul(q, v) for v in atlas[i].values)
            action[(q, i)] = id_of[scaled]
    module = validate_qmodule(lat, base, action)

    ops = {}
    for sym in generators.signature.symbols:
        n = generators.signature.arity(sym)
        table = {}
        for arg_ids in itertools.product(ids, repeat=n):
            args = [atlas[i] for i in arg_ids]
            out = {a: [] for a in gens}
            for xs in itertools.product(gens, repeat=n):
                prod = base.unit
                for m, x in zip(args, xs):
                    prod = base.mul(prod, m(x))
                out[generators.apply(sym, xs)].append(prod)
            table[arg_ids] = id_of[tuple(base.join(out[a]) for a in gens)]
        ops[sym] = table
    algebra = validate_omega_algebra(ids, generators.signature, ops)

    module_algebra = validate_qmodule_algebra(module, algebra)
    sup_algebra = transport_algebra(module_algebra, threshold, seed)

    # The derived degrees must coincide with subsethood of the underlying
    # fuzzy subsets; both are computed, neither is assumed.
    for i in ids:
        for j in ids:
            if sup_algebra.sup.e[(i, j)] != subsethood(atlas[i], atlas[j]):
                raise InternalInconsistency(
                    f"free degree table disagrees with subsethood at "
                    f"({i!r}, {j!r})")

    eta = {a: id_of[point_subset(gens, base, a).values] for a in gens}
    for sym in generators.signature.symbols:
        n = generators.signature.arity(sym)
        for xs in itertools.product(gens, repeat=n):
            expected = eta[generators.apply(sym, xs)]
            got = algebra.apply(sym, tuple(eta[x] for x in xs))
            if got != expected:
                raise InternalInconsistency(
                    f"generator embedding is not an operation homomorphism "
                    f"at {sym!r}{xs!r}")
    return FreeAlgebra(base, generators, ids, atlas, id_of,
                       module_algebra, sup_algebra, eta)


def counit_map(free: FreeAlgebra, target: QModuleAlgebra) -> StructureMap:
    """Evaluation: each fuzzy subset of the target's carrier folds to the
    join of degree-scaled elements.  Computed on the module side and
    cross-checked against the fuzzy join on the order side."""
    if not free.generators.same_tables(target.algebra):
        raise UnknownElement("generators", "counit target (mismatch)")
    mod = target.module
    sup = suplattice_from_module(mod)
    table = {}
    for i in free.ids:
        m = free.atlas[i]
        folded = mod.lattice.join(mod.act(m(b), b) for b in mod.carrier)
        fuzzy = sup.qjoin(m)
        if folded != fuzzy:
            raise InternalInconsistency(
                f"counit fold {folded!r} disagrees with fuzzy join "
                f"{fuzzy!r} at {i!r}")
        table[i] = folded
    f = StructureMap(free.module_algebra, target, table, "q-module-algebra")
    ok, witness = is_homomorphism(f, "q-module-algebra")
    if not ok:
        raise CertificationFails(f"counit is not a homomorphism: {witness}",
                                 **witness)
    return f


def extend_hom(free: FreeAlgebra, target: QModuleAlgebra,
               f: Mapping[str, str]) -> StructureMap:
    """The canonical extension of a generator assignment f to the free
    algebra: alpha maps to the join of f-images scaled by their degrees.

    Certifies that the extension restricts to f along the generator
    embedding and is a homomorphism; a non-homomorphic f surfaces here
    as CertificationFails.
    """
    mod = target.module
    for a in free.generators.carrier:
        if a not in f:
            raise PartialTable("generator assignment", a)
        mod.lattice.poset.check_element(f[a], "generator image")
    table = {}
    for i in free.ids:
        m = free.atlas[i]
        table[i] = mod.lattice.join(
            mod.act(m(a), f[a]) for a in free.generators.carrier)
    for a in free.generators.carrier:
        if table[free.eta[a]] != f[a]:
            raise InternalInconsistency(
                f"extension does not restrict to the assignment at {a!r}")
    fbar = StructureMap(free.module_algebra, target, table,
                        "q-module-algebra")
    ok, witness = is_homomorphism(fbar, "q-module-algebra")
    if not ok:
        raise CertificationFails(
            f"extension of a non-homomorphic assignment: {witness}",
            **witness)
    return fbar


def extension_unique(free: FreeAlgebra, target: QModuleAlgebra,
                     f: Mapping[str, str], fbar: StructureMap,
                     bound=None) -> str:
    """Exhaustively confirm that fbar is the only homomorphism restricting
    to f along the generator embedding.

    Returns "unique" or "skipped" (search space past the bound); a second
    extension raises TheoremFails, and is never silently ignored.
    """
    cap = limits.HOM_ENUM_BOUND if bound is None else bound
    space = len(target.carrier) ** len(free.ids)
    if space > cap:
        return "skipped"
    pinned = {free.eta[a]: f[a] for a in free.generators.carrier}
    tables = enumerate_homs(free.module_algebra, target, fixed=pinned,
                            bound=cap)
    if dict(fbar.table) not in tables:
        raise InternalInconsistency(
            "canonical extension is missing from the exhaustive "
            "homomorphism enumeration")
    if len(tables) != 1:
        other = next(t for t in tables if t != dict(fbar.table))
        from .errors import TheoremFails
        raise TheoremFails(
            "a second homomorphism restricts to the same assignment",
            assignment=dict(f), other=other)
    return "unique"


# -- homomorphism checking and enumeration -------------------------------------

def _omega_hom_witness(table, source: OmegaAlgebra, target: OmegaAlgebra):
    for sym in source.signature.symbols:
        n = source.signature.arity(sym)
        for args in itertools.product(source.carrier, repeat=n):
            lhs = table[source.apply(sym, args)]
            rhs = target.apply(sym, tuple(table[a] for a in args))
            if lhs != rhs:
                return {"symbol": sym, "args": list(args),
                        "left": lhs, "right": rhs}
    return None


def is_homomorphism(f: StructureMap, kind: str, threshold=None, seed=None):
    """Direct law check per kind; returns (ok, witness_dict_or_None).

    Kinds: omega, sup, q-sup, q-module, q-sup-algebra, q-module-algebra.
    """
    src, tgt, table = f.source, f.target, f.table
    if kind == "omega":
        w = _omega_hom_witness(table, src, tgt)
        return (w is None), w
    if kind == "sup":
        if table[src.bottom] != tgt.bottom:
            return False, {"subset": [], "value": table[src.bottom]}
        for a in src.elements:
            for b in src.elements:
                j = src.join2[(a, b)]
                if table[j] != tgt.join2[(table[a], table[b])]:
                    return False, {"subset": [a, b], "join": j,
                                   "value": table[j]}
        return True, None
    if kind == "q-sup":
        ok, m = is_qjoin_preserving(table, src, tgt, threshold, seed)
        return ok, (None if ok else {"subset": m.table()})
    if kind == "q-module":
        w = check_module_hom(table, src, tgt)
        return (w is None), w
    if kind == "q-sup-algebra":
        ok, w = is_homomorphism(
            StructureMap(src.sup, tgt.sup, table), "q-sup", threshold, seed)
        if not ok:
            return False, w
        w = _omega_hom_witness(table, src.algebra, tgt.algebra)
        return (w is None), w
    if kind == "q-module-algebra":
        w = check_module_hom(table, src.module, tgt.module)
        if w is not None:
            return False, w
        w = _omega_hom_witness(table, src.algebra, tgt.algebra)
        return (w is None), w
    raise UnknownElement(kind, "homomorphism kind")


def _module_sides(x):
    if isinstance(x, QModuleAlgebra):
        return x
    if isinstance(x, QSupAlgebra):
        return transport_algebra(x)
    if isinstance(x, QModule):
        return QModuleAlgebra(x, validate_omega_algebra(
            x.carrier, EMPTY_SIGNATURE, {}))
    if isinstance(x, QSupLattice):
        return QModuleAlgebra(module_from_suplattice(x),
                              validate_omega_algebra(
                                  x.carrier, EMPTY_SIGNATURE, {}))
    raise UnknownElement(type(x).__name__, "hom enumeration endpoint")


def enumerate_homs(source, target, kind="q-module-algebra", fixed=None,
                   bound=None):
    """All homomorphisms source -> target, exhaustively, in deterministic
    order.

    Structure-preserving maps between fuzzy-complete algebras are
    enumerated through their module faces (the bridge makes the two hom
    sets coincide; the test suite keeps a brute-force cross-check).  The
    search backtracks over carrier positions with necessary-condition
    pruning, then fully re-verifies each survivor, so pruning can only
    speed things up, never change the answer.  `fixed` pins chosen
    images.  Raises TooLarge past |target| ** |source|.
    """
    smalg, tmalg = _module_sides(source), _module_sides(target)
    src, tgt = smalg.module, tmalg.module
    cap = limits.HOM_ENUM_BOUND if bound is None else bound
    space = len(tgt.carrier) ** len(src.carrier)
    if space > cap:
        raise TooLarge("homomorphism search space", space, cap)

    forced = {src.lattice.bottom: tgt.lattice.bottom}
    for sym in smalg.algebra.signature.symbols:
        if smalg.algebra.signature.arity(sym) == 0:
            forced[smalg.algebra.apply(sym, ())] = tmalg.algebra.apply(sym, ())
    for x, v in (fixed or {}).items():
        if forced.get(x, v) != v:
            return []
        forced[x] = v

    carrier = list(src.carrier)
    results = []
    assign = {}

    def violates(x, v):
        # Necessary conditions only, against images already assigned; the
        # leaf check is the full law scan, so pruning cannot drop homs.
        for y, w in assign.items():
            if src.lattice.leq(x, y) and not tgt.lattice.leq(v, w):
                return True
            if src.lattice.leq(y, x) and not tgt.lattice.leq(w, v):
                return True
            j = src.lattice.join2[(x, y)]
            if j in assign and assign[j] != tgt.lattice.join2[(v, w)]:
                return True
        for q in src.base.elements:
            qa = src.act(q, x)
            if qa in assign and assign[qa] != tgt.act(q, v):
                return True
            for y, w in assign.items():
                if src.act(q, y) == x and v != tgt.act(q, w):
                    return True
        return False

    def dfs(k):
        if k == len(carrier):
            table = dict(assign)
            f = StructureMap(smalg, tmalg, table)
            ok, _ = is_homomorphism(f, "q-module-algebra")
            if ok:
                results.append(table)
            return
        x = carrier[k]
        candidates = [forced[x]] if x in forced else list(tgt.carrier)
        for v in candidates:
            assign[x] = v
            if not violates(x, v):
                dfs(k + 1)
            del assign[x]

    dfs(0)
    return results
