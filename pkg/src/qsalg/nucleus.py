"""Nuclei on module algebras: inflationary monotone idempotent-below maps
that are lax over every operation and over the scalar action.

The quotient of a nucleus keeps exactly the fixed points; joins, the
action, and the operations are recomputed through the nucleus.  The facts
that the fixed points coincide with the image, that the quotient is again
a lawful module algebra, and that the four derived equalities hold are
all theorems, so this module *checks* them and treats a failure as an
internal inconsistency rather than bad input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from . import limits
from .errors import (
    AxiomFails,
    InternalInconsistency,
    TooLarge,
    UnknownElement,
)
from .lattice import complete_lattice, validate_poset
from .omega import QModuleAlgebra, validate_omega_algebra, validate_qmodule_algebra
from .qmodule import validate_qmodule


@dataclass(frozen=True, eq=False)
class Nucleus:
    host: QModuleAlgebra
    table: Mapping[str, str] = field(repr=False)

    def __call__(self, a: str) -> str:
        return self.table[a]

    def values(self):
        return tuple(self.table[a] for a in self.host.carrier)


def is_nucleus(host: QModuleAlgebra, table) -> Nucleus:
    """Check the five nucleus axioms; first failure wins, with a witness."""
    mod, alg = host.module, host.algebra
    lat = mod.lattice
    for a in host.carrier:
        if a not in table:
            raise UnknownElement(a, "nucleus table (missing)")
        lat.poset.check_element(table[a], "nucleus value")
    for a in host.carrier:
        for b in host.carrier:
            if lat.leq(a, b) and not lat.leq(table[a], table[b]):
                raise AxiomFails(
                    "monotone",
                    f"{a!r} <= {b!r} but j({a!r}) = {table[a]!r} is not "
                    f"<= j({b!r}) = {table[b]!r}",
                    pair=[a, b], images=[table[a], table[b]])
    for a in host.carrier:
        if not lat.leq(a, table[a]):
            raise AxiomFails(
                "inflationary", f"{a!r} is not <= j({a!r}) = {table[a]!r}",
                element=a, image=table[a])
    for a in host.carrier:
        if not lat.leq(table[table[a]], table[a]):
            raise AxiomFails(
                "idempotent",
                f"j(j({a!r})) = {table[table[a]]!r} is not <= "
                f"j({a!r}) = {table[a]!r}",
                element=a, image=table[a], double=table[table[a]])
    for sym in alg.signature.symbols:
        n = alg.signature.arity(sym)
        for args in itertools.product(host.carrier, repeat=n):
            lifted = alg.apply(sym, tuple(table[a] for a in args))
            if not lat.leq(lifted, table[alg.apply(sym, args)]):
                raise AxiomFails(
                    "op-compatible",
                    f"{sym!r} of nucleus images at {args!r} gives "
                    f"{lifted!r}, above j of the raw result",
                    symbol=sym, args=list(args), lifted=lifted,
                    bound=table[alg.apply(sym, args)])
    for q in mod.base.elements:
        for a in host.carrier:
            lhs = mod.act(q, table[a])
            if not lat.leq(lhs, table[mod.act(q, a)]):
                raise AxiomFails(
                    "action-compatible",
                    f"{q!r}*j({a!r}) = {lhs!r} is not <= "
                    f"j({q!r}*{a!r}) = {table[mod.act(q, a)]!r}",
                    scalar=q, element=a, left=lhs,
                    bound=table[mod.act(q, a)])
    return Nucleus(host, dict(table))


def _crisp_subset_scan(carrier, threshold=None, seed=None):
    n = len(carrier)
    bound = limits.threshold(threshold)
    if 2 ** n <= bound:
        sets = itertools.chain.from_iterable(
            itertools.combinations(carrier, r) for r in range(n + 1))
        return sets, True, {"space": 2 ** n, "sampled": False}
    import random
    seed = limits.DEFAULT_SEED if seed is None else seed
    rng = random.Random(seed)
    sets = [tuple(x for x in carrier if rng.random() < 0.5)
            for _ in range(limits.SAMPLE_SIZE)]
    return sets, False, {"space": 2 ** n, "sampled": True, "seed": seed,
                         "sample_size": limits.SAMPLE_SIZE}


def derived_laws(nucleus: Nucleus, threshold=None, seed=None) -> dict:
    """Recheck the four equalities every nucleus must satisfy.

    These follow from the axioms; a failure therefore raises
    InternalInconsistency.  The join law quantifies over crisp subsets
    and falls back to a seeded sample past the threshold (recorded in
    the returned report).
    """
    host, j = nucleus.host, nucleus.table
    lat = host.module.lattice
    alg = host.algebra
    for a in host.carrier:
        if j[j[a]] != j[a]:
            raise InternalInconsistency(
                f"j(j({a!r})) = {j[j[a]]!r} differs from j({a!r}) = {j[a]!r}")
    sets, exhaustive, meta = _crisp_subset_scan(host.carrier, threshold, seed)
    checked = 0
    for subset in sets:
        lhs = j[lat.join(subset)]
        rhs = j[lat.join(j[s] for s in subset)]
        if lhs != rhs:
            raise InternalInconsistency(
                f"j(join {list(subset)!r}) = {lhs!r} but joining the "
                f"nucleus images first gives {rhs!r}")
        checked += 1
    for sym in alg.signature.symbols:
        n = alg.signature.arity(sym)
        for args in itertools.product(host.carrier, repeat=n):
            lhs = j[alg.apply(sym, args)]
            rhs = j[alg.apply(sym, tuple(j[a] for a in args))]
            if lhs != rhs:
                raise InternalInconsistency(
                    f"j({sym!r}{args!r}) = {lhs!r} differs from j of "
                    f"{sym!r} over nucleus images = {rhs!r}")
    for q in host.module.base.elements:
        for a in host.carrier:
            if j[host.module.act(q, a)] != j[host.module.act(q, j[a])]:
                raise InternalInconsistency(
                    f"j({q!r}*{a!r}) differs from j({q!r}*j({a!r}))")
    return {"idempotent": True, "join_law": True,
            "join_law_exhaustive": exhaustive, "join_law_checked": checked,
            "op_law": True, "action_law": True, **meta}


def quotient(nucleus: Nucleus) -> QModuleAlgebra:
    """The module algebra on the fixed points of a nucleus."""
    host, j = nucleus.host, nucleus.table
    lat = host.module.lattice
    fixed = tuple(a for a in host.carrier if j[a] == a)
    image = {j[a] for a in host.carrier}
    if set(fixed) != image:
        raise InternalInconsistency(
            f"fixed points {sorted(fixed)!r} differ from the nucleus image "
            f"{sorted(image)!r}")
    rel = {(a, b) for a in fixed for b in fixed if lat.leq(a, b)}
    qlat = complete_lattice(validate_poset(fixed, rel))
    if qlat.bottom != j[lat.bottom]:
        raise InternalInconsistency(
            "quotient bottom is not the nucleus image of the host bottom")
    for a in fixed:
        for b in fixed:
            expected = j[lat.join2[(a, b)]]
            if qlat.join2[(a, b)] != expected:
                raise InternalInconsistency(
                    f"quotient join of {(a, b)!r} is {qlat.join2[(a, b)]!r}, "
                    f"expected the nucleus image {expected!r}")
    action = {(q, a): j[host.module.act(q, a)]
              for q in host.base.elements for a in fixed}
    qmod = validate_qmodule(qlat, host.base, action)
    ops = {}
    for sym in host.algebra.signature.symbols:
        n = host.algebra.signature.arity(sym)
        ops[sym] = {args: j[host.algebra.apply(sym, args)]
                    for args in itertools.product(fixed, repeat=n)}
    qalg = validate_omega_algebra(fixed, host.algebra.signature, ops)
    return validate_qmodule_algebra(qmod, qalg)


def _linear_extension(lat):
    remaining = list(lat.elements)
    out = []
    while remaining:
        for x in remaining:
            if all(not lat.leq(y, x) for y in remaining if y != x):
                out.append(x)
                remaining.remove(x)
                break
        else:
            raise InternalInconsistency("no minimal element in a poset")
    return out


def enumerate_nuclei(host: QModuleAlgebra, bound=None):
    """Every nucleus on the host, exhaustively, sorted by value table.

    Backtracks over a linear extension of the carrier, pruning with the
    inflationary and monotonicity axioms (both necessary conditions);
    every surviving table still goes through the full five-axiom check.
    """
    lat = host.module.lattice
    n = len(host.carrier)
    cap = limits.ENDOMAP_BOUND if bound is None else bound
    if n ** n > cap:
        raise TooLarge("endo-map space", n ** n, cap)
    order = _linear_extension(lat)
    found = []
    assign = {}

    def dfs(k):
        if k == n:
            try:
                found.append(is_nucleus(host, dict(assign)))
            except AxiomFails:
                pass
            return
        x = order[k]
        for v in lat.elements:
            if not lat.leq(x, v):
                continue
            ok = True
            for y, w in assign.items():
                if lat.leq(y, x) and not lat.leq(w, v):
                    ok = False
                    break
                if lat.leq(x, y) and not lat.leq(v, w):
                    ok = False
                    break
            if ok:
                assign[x] = v
                dfs(k + 1)
                del assign[x]

    dfs(0)
    found.sort(key=lambda nuc: nuc.values())
    return found
