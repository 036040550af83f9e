"""The embedding of a module algebra into the quotient of its free cover.

Given a certified module algebra A over a quantale Q, the fuzzy powerset
of A carries the free algebra, evaluation gives the counit, and the map
sending a fuzzy subset to the residual cone over its evaluation is a
nucleus on the free algebra.  Sending each element to its fuzzy principal
down-set then lands A isomorphically on the fixed points of that nucleus.

`representation` certifies every step of this on concrete tables and
returns a self-contained certificate: all tables needed to re-verify the
claims are embedded, so an independent checker needs nothing from this
package but the table arithmetic.
"""

from __future__ import annotations

import itertools

from . import limits
from .errors import InternalInconsistency, LemmaFails, TheoremFails
from .lattice import CompleteLattice
from .nucleus import derived_laws, is_nucleus, quotient
from .omega import (
    EMPTY_SIGNATURE,
    QModuleAlgebra,
    QSupAlgebra,
    counit_map,
    free_qsup_algebra,
    transport_algebra,
    validate_omega_algebra,
    validate_qmodule_algebra,
)
from .qmodule import (
    QModule,
    action_residual,
    crisp_module,
    suplattice_from_module,
)
from .qorder import qsubset, scan_qsubsets, zadeh_forward
from .quantale import boolean_quantale


def principal_subset(module: QModule, a: str):
    """The fuzzy down-set of an element: x holds to the degree that
    scaling x stays below a."""
    return qsubset(module.carrier, module.base,
                   {x: action_residual(module, x, a) for x in module.carrier})


def canonical_closure(free, eps) -> dict:
    """Nucleus table on the free algebra induced by a counit: a fuzzy
    subset closes up to the residual cone over its evaluation."""
    subject = eps.target.module
    table = {}
    for i in free.ids:
        e = eps.table[i]
        values = tuple(action_residual(subject, x, e)
                       for x in subject.carrier)
        table[i] = free.id_of[values]
    return table


def _leq_pairs(lat: CompleteLattice):
    return sorted([a, b] for a in lat.elements for b in lat.elements
                  if lat.leq(a, b))


def _action_triples(module: QModule):
    return sorted([q, a, module.act(q, a)]
                  for q in module.base.elements for a in module.carrier)


def _op_tables(algebra):
    out = {}
    for sym in algebra.signature.symbols:
        n = algebra.signature.arity(sym)
        out[sym] = sorted(
            [list(args), algebra.apply(sym, args)]
            for args in itertools.product(algebra.carrier, repeat=n))
    return out


def _quantale_section(q):
    return {
        "elements": list(q.elements),
        "unit": q.unit,
        "leq": _leq_pairs(q.lattice),
        "mult": sorted([a, b, q.mul(a, b)]
                       for a in q.elements for b in q.elements),
    }


def _module_algebra_section(x: QModuleAlgebra):
    return {
        "carrier": list(x.carrier),
        "leq": _leq_pairs(x.module.lattice),
        "action": _action_triples(x.module),
        "arities": {s: x.algebra.signature.arity(s)
                    for s in x.algebra.signature.symbols},
        "ops": _op_tables(x.algebra),
    }


def representation(subject, threshold=None, seed=None) -> dict:
    """Certify that the subject embeds onto the nucleus fixed points of
    its free cover, and return the full certificate.

    Accepts either face of the subject; checks run on the module side.
    Any failed claim raises (LemmaFails / TheoremFails with a witness);
    a wrong intermediate table raises InternalInconsistency.
    """
    if isinstance(subject, QSupAlgebra):
        subject = transport_algebra(subject, threshold, seed)
    mod = subject.module
    lat = mod.lattice
    checks = []

    free = free_qsup_algebra(mod.base, subject.algebra, threshold, seed)
    eps = counit_map(free, subject)

    table = canonical_closure(free, eps)
    nuc = is_nucleus(free.module_algebra, table)
    checks.append({"name": "nucleus-axioms", "status": "PASS",
                   "carrier": len(free.ids)})
    laws = derived_laws(nuc, threshold, seed)
    checks.append({"name": "nucleus-derived-laws", "status": "PASS", **laws})

    rho = {}
    for a in mod.carrier:
        i = free.id_of[principal_subset(mod, a).values]
        rho[a] = i
        if eps.table[i] != a:
            raise LemmaFails(
                f"evaluating the principal down-set of {a!r} gives "
                f"{eps.table[i]!r}", element=a, evaluated=eps.table[i])
        if table[i] != i:
            raise LemmaFails(
                f"the principal down-set of {a!r} is not a fixed point",
                element=a, image=table[i])
    checks.append({"name": "counit-retraction", "status": "PASS"})
    checks.append({"name": "principal-subsets-fixed", "status": "PASS"})

    fixed = [i for i in free.ids if table[i] == i]
    if len(set(rho.values())) != len(mod.carrier):
        raise TheoremFails("the principal-down-set map is not injective",
                           images=sorted(set(rho.values())))
    if set(rho.values()) != set(fixed):
        raise TheoremFails(
            "fixed points are not exactly the principal down-sets",
            fixed=sorted(fixed), principal=sorted(rho.values()))
    checks.append({"name": "bijective-onto-fixed-points", "status": "PASS",
                   "fixed_points": len(fixed)})

    quot = quotient(nuc)
    checks.append({"name": "quotient-laws", "status": "PASS"})

    for sym in subject.algebra.signature.symbols:
        n = subject.algebra.signature.arity(sym)
        for args in itertools.product(mod.carrier, repeat=n):
            lhs = rho[subject.algebra.apply(sym, args)]
            rhs = quot.algebra.apply(sym, tuple(rho[a] for a in args))
            if lhs != rhs:
                raise TheoremFails(
                    f"the embedding is not a homomorphism for {sym!r}",
                    symbol=sym, args=list(args), left=lhs, right=rhs)
    checks.append({"name": "operation-hom", "status": "PASS"})

    for q in mod.base.elements:
        for a in mod.carrier:
            lhs = rho[mod.act(q, a)]
            rhs = quot.module.act(q, rho[a])
            if lhs != rhs:
                raise TheoremFails(
                    "the embedding does not respect the scalar action",
                    scalar=q, element=a, left=lhs, right=rhs)
    checks.append({"name": "action-hom", "status": "PASS"})

    subject_sup = suplattice_from_module(mod, threshold, seed)
    quot_sup = suplattice_from_module(quot.module, threshold, seed)
    for a in mod.carrier:
        for b in mod.carrier:
            if subject_sup.order.degree(a, b) != \
                    quot_sup.order.degree(rho[a], rho[b]):
                raise TheoremFails(
                    "the embedding distorts an order degree",
                    pair=[a, b],
                    source=subject_sup.order.degree(a, b),
                    target=quot_sup.order.degree(rho[a], rho[b]))
    subsets, exhaustive, scan_meta = scan_qsubsets(
        mod.carrier, mod.base, threshold, seed)
    for m in subsets:
        s = subject_sup.qjoin(m)
        pushed = zadeh_forward(rho, m, quot.carrier)
        t = quot_sup.qjoin(pushed)
        if rho[s] != t:
            raise TheoremFails(
                "the embedding does not preserve a fuzzy join",
                subset=m.table(), source_join=s, target_join=t)
    checks.append({"name": "qjoin-preserving", "status": "PASS",
                   "exhaustive": exhaustive, **scan_meta})

    for a in mod.carrier:
        if eps.table[rho[a]] != a:
            raise TheoremFails("evaluation does not invert the embedding",
                               element=a, image=eps.table[rho[a]])
    for i in fixed:
        if rho[eps.table[i]] != i:
            raise TheoremFails(
                "the embedding does not invert evaluation on a fixed point",
                fixed_point=i, image=rho[eps.table[i]])
    checks.append({"name": "evaluation-inverse", "status": "PASS"})

    checks.append(_closure_bound_check(subject, free, eps, table))

    return {
        "format": "qsalg-cert/1",
        "theorem": "representation",
        "verdict": ("PASS" if all(c["status"] in ("PASS", "SKIPPED")
                                  for c in checks) else "FAIL"),
        "quantale": _quantale_section(mod.base),
        "subject": _module_algebra_section(subject),
        "free": {
            "ids": list(free.ids),
            "subsets": {i: free.atlas[i].table() for i in free.ids},
            "leq": _leq_pairs(free.module.lattice),
            "action": _action_triples(free.module),
            "ops": _op_tables(free.module_algebra.algebra),
        },
        "nucleus": dict(table),
        "epsilon": dict(eps.table),
        "rho": rho,
        "fixed": fixed,
        "quotient": _module_algebra_section(quot),
        "checks": checks,
        "meta": {
            "threshold": limits.threshold(threshold),
            "seed": limits.DEFAULT_SEED if seed is None else seed,
            "free_size": len(free.ids),
        },
    }


def _closure_bound_check(subject, free, eps, table):
    """The inequality doing the work in the operation-compatibility axiom:
    scaling any element by its degree in an operation applied to closed
    subsets stays below the evaluation of the raw result.

    Quantified over all argument tuples of free elements, so it only runs
    when that space is affordable.
    """
    mod = subject.module
    alg = free.module_algebra.algebra
    total = sum(len(free.ids) ** alg.signature.arity(sym)
                for sym in alg.signature.symbols)
    if total * max(1, len(mod.carrier)) > limits.HOM_ENUM_BOUND:
        return {"name": "closure-bound", "status": "SKIPPED",
                "space": total, "bound": limits.HOM_ENUM_BOUND}
    for sym in alg.signature.symbols:
        n = alg.signature.arity(sym)
        for args in itertools.product(free.ids, repeat=n):
            closed = alg.apply(sym, tuple(table[i] for i in args))
            target = eps.table[alg.apply(sym, args)]
            w = free.atlas[closed]
            for a in mod.carrier:
                if not mod.lattice.leq(mod.act(w(a), a), target):
                    raise TheoremFails(
                        "an operation over closed subsets escapes the "
                        "evaluation bound",
                        symbol=sym, args=list(args), element=a,
                        scaled=mod.act(w(a), a), bound=target)
    return {"name": "closure-bound", "status": "PASS", "tuples": total}


def all_down_sets(lat: CompleteLattice):
    """Every down-closed subset, as sorted tuples.  Written as a direct
    filter so it owes nothing to the nucleus machinery."""
    out = []
    for r in range(len(lat.elements) + 1):
        for combo in itertools.combinations(lat.elements, r):
            chosen = set(combo)
            if all(b not in chosen or a in chosen
                   for a in lat.elements for b in lat.elements
                   if lat.leq(a, b)):
                out.append(tuple(sorted(combo)))
    return out


def crisp_specialization(lat: CompleteLattice, threshold=None,
                         seed=None) -> dict:
    """Run the representation over the two-element quantale and read the
    result classically.

    The fixed points must be exactly the principal down-sets of the
    lattice, evaluation must be plain join of the support, and counting
    all down-sets shows the non-principal ones are properly closed up.
    """
    two = boolean_quantale()
    mod = crisp_module(lat, two)
    alg = validate_omega_algebra(lat.elements, EMPTY_SIGNATURE, {})
    subject = validate_qmodule_algebra(mod, alg)
    cert = representation(subject, threshold, seed)

    supports = {}
    for i, tab in cert["free"]["subsets"].items():
        supports[i] = tuple(sorted(x for x, v in tab.items() if v == "1"))
    principal = {tuple(sorted(x for x in lat.elements if lat.leq(x, a)))
                 for a in lat.elements}
    fixed_supports = {supports[i] for i in cert["fixed"]}
    if fixed_supports != principal:
        raise TheoremFails(
            "crisp fixed points are not the principal down-sets",
            fixed=sorted(fixed_supports), principal=sorted(principal))
    downs = all_down_sets(lat)
    if not set(downs) >= fixed_supports:
        raise InternalInconsistency(
            "a nucleus fixed point is not even down-closed")
    for i in cert["free"]["ids"]:
        if cert["epsilon"][i] != lat.join(supports[i]):
            raise TheoremFails(
                "crisp evaluation is not join of the support",
                subset=list(supports[i]), evaluated=cert["epsilon"][i])
    return {
        "carrier": len(lat.elements),
        "fixed_points": len(cert["fixed"]),
        "principal_down_sets": len(principal),
        "all_down_sets": len(downs),
        "fixed_are_principal": True,
        "evaluation_is_support_join": True,
        "certificate": cert,
    }
