"""Independent re-verification of representation certificates.

This module deliberately imports nothing from the construction side of
the package.  Every law is re-derived from the tables the certificate
embeds, using plain dictionary and set arithmetic, so a PASS here vouches
for the certificate without trusting the code that produced it.

The first violated claim raises CertificateTampered naming the check; a
structurally unusable certificate (missing sections, partial tables)
raises ParseError instead.
"""

from __future__ import annotations

import itertools

from .errors import CertificateTampered, ParseError

FORMAT = "qsalg-cert/1"


def _section(cert, key):
    if key not in cert:
        raise ParseError(f"certificate is missing the {key!r} section")
    return cert[key]


class _Order:
    """Crisp order arithmetic over a pair list: lub, bottom, monotone scans."""

    def __init__(self, elements, pairs, where):
        self.elements = list(elements)
        known = set(self.elements)
        self.rel = set()
        for row in pairs:
            if len(row) != 2:
                raise ParseError(f"{where}: bad leq row {row!r}")
            if row[0] not in known or row[1] not in known:
                raise CertificateTampered(
                    where, f"leq mentions unknown element in {row!r}",
                    row=list(row))
            self.rel.add((row[0], row[1]))

    def leq(self, a, b):
        return (a, b) in self.rel

    def check_poset(self, where):
        for a in self.elements:
            if not self.leq(a, a):
                raise CertificateTampered(where, f"not reflexive at {a!r}",
                                          element=a)
        for a, b in self.rel:
            if self.leq(b, a) and a != b:
                raise CertificateTampered(where, f"not antisymmetric on "
                                          f"{a!r}, {b!r}", pair=[a, b])
            for c in self.elements:
                if self.leq(b, c) and not self.leq(a, c):
                    raise CertificateTampered(
                        where, f"not transitive via {a!r} <= {b!r} <= {c!r}",
                        chain=[a, b, c])

    def lub(self, subset, where):
        uppers = [u for u in self.elements
                  if all(self.leq(s, u) for s in subset)]
        least = [u for u in uppers
                 if all(self.leq(u, v) for v in uppers)]
        if len(least) != 1:
            raise CertificateTampered(
                where, f"subset {sorted(set(subset))!r} has no unique join",
                subset=sorted(set(subset)))
        return least[0]

    def bottom(self, where):
        return self.lub([], where)


def _table3(rows, where):
    out = {}
    for row in rows:
        if len(row) != 3:
            raise ParseError(f"{where}: bad triple {row!r}")
        out[(row[0], row[1])] = row[2]
    return out


def _ops_tables(raw, where):
    out = {}
    for sym, rows in raw.items():
        table = {}
        for row in rows:
            if len(row) != 2:
                raise ParseError(f"{where}.{sym}: bad op row {row!r}")
            table[tuple(row[0])] = row[1]
        out[sym] = table
    return out


class _Quantale:
    def __init__(self, section):
        self.elements = section["elements"]
        self.unit = section["unit"]
        self.order = _Order(self.elements, section["leq"], "quantale-order")
        self.mult = _table3(section["mult"], "quantale")

    def verify(self):
        self.order.check_poset("quantale-order")
        bot = self.order.bottom("quantale-order")
        E = self.elements
        for a in E:
            for b in E:
                if (a, b) not in self.mult:
                    raise ParseError(f"mult missing {(a, b)!r}")
                if self.mult[(a, b)] != self.mult[(b, a)]:
                    raise CertificateTampered(
                        "quantale-laws", f"multiplication not commutative "
                        f"at {(a, b)!r}", pair=[a, b])
        for a in E:
            if self.mult[(self.unit, a)] != a:
                raise CertificateTampered(
                    "quantale-laws", f"unit law fails at {a!r}", element=a)
            if self.mult[(a, bot)] != bot:
                raise CertificateTampered(
                    "quantale-laws", f"bottom not absorbed at {a!r}",
                    element=a)
            for b in E:
                for c in E:
                    if self.mult[(self.mult[(a, b)], c)] != \
                            self.mult[(a, self.mult[(b, c)])]:
                        raise CertificateTampered(
                            "quantale-laws", "multiplication not "
                            f"associative at {(a, b, c)!r}",
                            triple=[a, b, c])
                    j = self.order.lub([b, c], "quantale-laws")
                    if self.mult[(a, j)] != self.order.lub(
                            [self.mult[(a, b)], self.mult[(a, c)]],
                            "quantale-laws"):
                        raise CertificateTampered(
                            "quantale-laws", "multiplication does not "
                            f"distribute over the join of {(b, c)!r}",
                            scalar=a, pair=[b, c])

    def mul(self, a, b):
        return self.mult[(a, b)]

    def join(self, values):
        return self.order.lub(list(values), "quantale-laws")


class _ModuleSide:
    """Carrier with order, action, and operations, as bare tables."""

    def __init__(self, section, q, where):
        self.q = q
        self.where = where
        self.carrier = section["carrier"]
        self.order = _Order(self.carrier, section["leq"], where + "-order")
        self.action = _table3(section["action"], where)
        self.arities = section.get("arities", {})
        self.ops = _ops_tables(section.get("ops", {}), where + "-ops")

    def act(self, s, a):
        if (s, a) not in self.action:
            raise ParseError(f"{self.where}: action missing {(s, a)!r}")
        return self.action[(s, a)]

    def verify(self):
        w = self.where
        self.order.check_poset(w + "-order")
        bot = self.order.bottom(w + "-order")
        for a in self.carrier:
            if self.act(self.q.unit, a) != a:
                raise CertificateTampered(
                    w + "-laws", f"unit action fails at {a!r}", element=a)
            if self.act(self.q.order.bottom("quantale-order"), a) != bot:
                raise CertificateTampered(
                    w + "-laws", f"bottom scalar does not crush {a!r}",
                    element=a)
            for s in self.q.elements:
                if self.act(s, bot) != bot:
                    raise CertificateTampered(
                        w + "-laws", f"{s!r} does not fix bottom",
                        scalar=s)
                for t in self.q.elements:
                    if self.act(s, self.act(t, a)) != \
                            self.act(self.q.mul(s, t), a):
                        raise CertificateTampered(
                            w + "-laws", "action does not compose at "
                            f"{(s, t, a)!r}", scalars=[s, t], element=a)
                    sj = self.q.join([s, t])
                    if self.act(sj, a) != self.order.lub(
                            [self.act(s, a), self.act(t, a)], w + "-laws"):
                        raise CertificateTampered(
                            w + "-laws", "action does not distribute over "
                            f"the scalar join of {(s, t)!r}",
                            scalars=[s, t], element=a)
            for s in self.q.elements:
                for b in self.carrier:
                    j = self.order.lub([a, b], w + "-laws")
                    if self.act(s, j) != self.order.lub(
                            [self.act(s, a), self.act(s, b)], w + "-laws"):
                        raise CertificateTampered(
                            w + "-laws", "action does not distribute over "
                            f"the join of {(a, b)!r}", scalar=s,
                            pair=[a, b])
        for sym, table in self.ops.items():
            n = int(self.arities.get(sym, 0))
            for args in itertools.product(self.carrier, repeat=n):
                if args not in table:
                    raise ParseError(f"{w}: op {sym!r} missing {args!r}")
                if table[args] not in set(self.carrier):
                    raise CertificateTampered(
                        w + "-laws", f"op {sym!r} leaves the carrier at "
                        f"{args!r}", symbol=sym, args=list(args))

    def residual(self, a, b):
        return self.q.join([s for s in self.q.elements
                            if self.order.leq(self.act(s, a), b)])


def recheck_certificate(cert) -> list:
    """Re-verify every claim a representation certificate makes.  Returns
    the list of check names that passed; raises on the first failure."""
    if not isinstance(cert, dict) or cert.get("format") != FORMAT:
        raise ParseError("not a qsalg-cert/1 certificate")
    if cert.get("theorem") != "representation":
        raise ParseError(f"unknown theorem {cert.get('theorem')!r}")
    passed = []

    q = _Quantale(_section(cert, "quantale"))
    q.verify()
    passed.append("quantale-laws")

    subject = _ModuleSide(_section(cert, "subject"), q, "subject")
    subject.verify()
    passed.append("subject-laws")

    fr = _section(cert, "free")
    ids = fr["ids"]
    subsets = {i: fr["subsets"][i] for i in ids}
    if len(set(ids)) != len(ids):
        raise CertificateTampered("free-tables", "duplicate free ids")
    if len(ids) != len(q.elements) ** len(subject.carrier):
        raise CertificateTampered(
            "free-tables", "free carrier does not exhaust the fuzzy "
            "subsets", ids=len(ids))
    seen = set()
    for i in ids:
        row = tuple(subsets[i].get(a) for a in subject.carrier)
        if None in row:
            raise ParseError(f"free subset {i!r} is partial")
        seen.add(row)
    if len(seen) != len(ids):
        raise CertificateTampered("free-tables", "two free ids share a "
                                  "subset table")
    # The free side shares the subject's signature; its carrier is the ids.
    free = _ModuleSide({"carrier": ids, "leq": fr["leq"],
                        "action": fr["action"], "ops": fr["ops"],
                        "arities": subject.arities}, q, "free")
    by_values = {tuple(subsets[i][a] for a in subject.carrier): i
                 for i in ids}
    for i in ids:
        for k in ids:
            pointwise = all(q.order.leq(subsets[i][a], subsets[k][a])
                            for a in subject.carrier)
            if pointwise != free.order.leq(i, k):
                raise CertificateTampered(
                    "free-tables", f"free order at {(i, k)!r} disagrees "
                    "with the pointwise order", pair=[i, k])
        for s in q.elements:
            scaled = tuple(q.mul(s, subsets[i][a]) for a in subject.carrier)
            if free.act(s, i) != by_values[scaled]:
                raise CertificateTampered(
                    "free-tables", f"free action at {(s, i)!r} is not "
                    "pointwise multiplication", scalar=s, id=i)
    for sym, table in free.ops.items():
        n = int(free.arities.get(sym, 0))
        for args in itertools.product(ids, repeat=n):
            expected = {}
            for a in subject.carrier:
                expected[a] = []
            for fiber in itertools.product(subject.carrier, repeat=n):
                out = subject.ops[sym][fiber]
                deg = q.unit
                for i, a in zip(args, fiber):
                    deg = q.mul(deg, subsets[i][a])
                expected[out].append(deg)
            values = tuple(q.join(expected[a]) for a in subject.carrier)
            if table[args] != by_values[values]:
                raise CertificateTampered(
                    "free-tables", f"free op {sym!r} at {args!r} is not "
                    "the convolution of the subject op", symbol=sym,
                    args=list(args))
    passed.append("free-tables")

    eps = _section(cert, "epsilon")
    for i in ids:
        folded = subject.order.lub(
            [subject.act(subsets[i][a], a) for a in subject.carrier],
            "evaluation")
        if eps.get(i) != folded:
            raise CertificateTampered(
                "evaluation", f"evaluation of {i!r} should be {folded!r}",
                id=i, claimed=eps.get(i))
    passed.append("evaluation")

    nuc = _section(cert, "nucleus")
    for i in ids:
        values = tuple(subject.residual(a, eps[i])
                       for a in subject.carrier)
        if nuc.get(i) != by_values[values]:
            raise CertificateTampered(
                "nucleus-definition", f"nucleus at {i!r} is not the "
                "residual cone over its evaluation", id=i)
    for i in ids:
        for k in ids:
            if free.order.leq(i, k) and not free.order.leq(nuc[i], nuc[k]):
                raise CertificateTampered(
                    "nucleus-axioms", "closure is not monotone",
                    pair=[i, k])
        if not free.order.leq(i, nuc[i]):
            raise CertificateTampered(
                "nucleus-axioms", "closure is not inflationary", id=i)
        if not free.order.leq(nuc[nuc[i]], nuc[i]):
            raise CertificateTampered(
                "nucleus-axioms", "closure is not weakly idempotent", id=i)
        for s in q.elements:
            if not free.order.leq(free.act(s, nuc[i]),
                                  nuc[free.act(s, i)]):
                raise CertificateTampered(
                    "nucleus-axioms", "closure is not laxly compatible "
                    "with the action", scalar=s, id=i)
    for sym, table in free.ops.items():
        n = int(free.arities.get(sym, 0))
        for args in itertools.product(ids, repeat=n):
            lifted = table[tuple(nuc[i] for i in args)]
            if not free.order.leq(lifted, nuc[table[args]]):
                raise CertificateTampered(
                    "nucleus-axioms", "closure is not laxly compatible "
                    f"with {sym!r}", symbol=sym, args=list(args))
    passed.append("nucleus-definition")
    passed.append("nucleus-axioms")

    rho = _section(cert, "rho")
    fixed = _section(cert, "fixed")
    if set(fixed) != {i for i in ids if nuc[i] == i}:
        raise CertificateTampered("fixed-points", "fixed list does not "
                                  "match the closure table")
    if sorted(set(rho.values())) != sorted(fixed):
        raise CertificateTampered(
            "fixed-points", "embedding image differs from the fixed "
            "points", image=sorted(set(rho.values())))
    if len(set(rho.values())) != len(subject.carrier):
        raise CertificateTampered("fixed-points", "embedding not injective")
    for a in subject.carrier:
        expected = by_values[tuple(subject.residual(x, a)
                                   for x in subject.carrier)]
        if rho.get(a) != expected:
            raise CertificateTampered(
                "fixed-points", f"embedding of {a!r} is not its residual "
                "cone", element=a)
        if eps[rho[a]] != a:
            raise CertificateTampered(
                "fixed-points", f"evaluation does not invert the "
                f"embedding at {a!r}", element=a)
    for i in fixed:
        if rho[eps[i]] != i:
            raise CertificateTampered(
                "fixed-points", f"embedding does not invert evaluation "
                f"at {i!r}", id=i)
    passed.append("fixed-points")

    quot = _ModuleSide(_section(cert, "quotient"), q, "quotient")
    quot.verify()
    if sorted(quot.carrier) != sorted(fixed):
        raise CertificateTampered("quotient-tables", "quotient carrier is "
                                  "not the fixed-point set")
    for i in quot.carrier:
        for k in quot.carrier:
            if quot.order.leq(i, k) != free.order.leq(i, k):
                raise CertificateTampered(
                    "quotient-tables", f"quotient order at {(i, k)!r} is "
                    "not restriction", pair=[i, k])
        for s in q.elements:
            if quot.act(s, i) != nuc[free.act(s, i)]:
                raise CertificateTampered(
                    "quotient-tables", f"quotient action at {(s, i)!r} is "
                    "not the closed free action", scalar=s, id=i)
    for sym, table in quot.ops.items():
        n = int(quot.arities.get(sym, 0))
        for args in itertools.product(quot.carrier, repeat=n):
            if table[args] != nuc[free.ops[sym][args]]:
                raise CertificateTampered(
                    "quotient-tables", f"quotient op {sym!r} at {args!r} "
                    "is not the closed free op", symbol=sym,
                    args=list(args))
    passed.append("quotient-tables")

    for sym, table in subject.ops.items():
        n = int(subject.arities.get(sym, 0))
        for args in itertools.product(subject.carrier, repeat=n):
            if rho[table[args]] != quot.ops[sym][tuple(rho[a]
                                                       for a in args)]:
                raise CertificateTampered(
                    "embedding-hom", f"embedding breaks {sym!r} at "
                    f"{args!r}", symbol=sym, args=list(args))
    for s in q.elements:
        for a in subject.carrier:
            if rho[subject.act(s, a)] != quot.act(s, rho[a]):
                raise CertificateTampered(
                    "embedding-hom", "embedding breaks the action at "
                    f"{(s, a)!r}", scalar=s, element=a)
    passed.append("embedding-hom")

    for a in subject.carrier:
        for b in subject.carrier:
            if subject.residual(a, b) != quot.residual(rho[a], rho[b]):
                raise CertificateTampered(
                    "order-iso", f"residual degree at {(a, b)!r} is "
                    "distorted", pair=[a, b])
            j = subject.order.lub([a, b], "order-iso")
            if rho[j] != quot.order.lub([rho[a], rho[b]], "order-iso"):
                raise CertificateTampered(
                    "order-iso", f"join of {(a, b)!r} is not preserved",
                    pair=[a, b])
    if rho[subject.order.bottom("order-iso")] != \
            quot.order.bottom("order-iso"):
        raise CertificateTampered("order-iso", "bottom is not preserved")
    passed.append("order-iso")

    # Every law re-derived above, so the summary may not claim otherwise.
    verdict = _section(cert, "verdict")
    failing = [c.get("name") for c in cert.get("checks", [])
               if c.get("status") not in ("PASS", "SKIPPED")]
    if verdict != "PASS" or failing:
        raise CertificateTampered(
            "verdict", "certificate summary contradicts the re-verified "
            "laws", verdict=verdict, failing=failing)
    passed.append("verdict")
    return passed
