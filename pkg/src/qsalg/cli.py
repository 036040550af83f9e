"""Command surface over the verification core.

Commands: validate (run a validator over named declarations), check (run a
theorem suite and embed the certificates), enumerate (census of small
structures), recheck (re-verify a certificate from its tables alone),
corpus (bundled files).

Exit codes: 0 every check passed; 1 a law or theorem failed, with a
witness in the report; 2 malformed input or an exceeded bound.  With
--json the report is canonical: sorted keys, compact separators, timing
pinned to null, so identical inputs and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import sys
import time

from . import corpus, document, limits
from .document import KINDS
from .errors import (
    CertificateTampered,
    InputError,
    ParseError,
    SpecViolation,
    TooLarge,
)
from .nucleus import derived_laws, enumerate_nuclei, is_nucleus
from .omega import (
    EMPTY_SIGNATURE,
    QSupAlgebra,
    counit_map,
    enumerate_homs,
    extend_hom,
    extension_unique,
    free_qsup_algebra,
    is_homomorphism,
    transport_algebra,
    validate_omega_algebra,
    validate_qmodule_algebra,
)
from .qmodule import (
    StructureMap,
    module_from_suplattice,
    quantale_self_module,
    suplattice_from_module,
)
from .qorder import certify_qsuplattice
from .representation import (
    canonical_closure,
    crisp_specialization,
    representation,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _digest(path):
    h = hashlib.sha256()
    try:
        with open(path, "rb") as fh:
            h.update(fh.read())
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    return h.hexdigest()


def _fail(name, err, **extra):
    return {"name": name, "status": "FAIL", "law": err.law,
            "message": str(err), "witness": err.witness, **extra}


def _report(command, arguments, inputs, seed):
    return {
        "format": "qsalg-report/1",
        "command": command,
        "arguments": arguments,
        "inputs": [{"path": p, "sha256": _digest(p)} for p in inputs],
        "threshold": limits.threshold(None),
        "seed": limits.DEFAULT_SEED if seed is None else seed,
        "checks": [],
        "status": "PASS",
        "timing": None,
        "exit": EXIT_PASS,
    }


def _settle(report):
    if any(c["status"] == "FAIL" for c in report["checks"]):
        report["status"] = "FAIL"
        report["exit"] = EXIT_FAIL
    return report


def _bare_host(mod):
    alg = validate_omega_algebra(mod.carrier, EMPTY_SIGNATURE, {})
    return validate_qmodule_algebra(mod, alg)


def cmd_validate(ns):
    report = _report("validate", {
        "file": ns.file, "kind": ns.kind, "name": ns.name,
        "close": ns.close, "lax_modules": ns.lax_modules}, [ns.file],
        ns.seed)
    doc = document.load(ns.file, close=ns.close, lax_modules=ns.lax_modules)
    kinds = [ns.kind] if ns.kind else \
        [k for k in KINDS if doc.names(KINDS[k])]
    targets = []
    for kind in kinds:
        for name in doc.names(KINDS[kind]):
            if ns.name is None or name == ns.name:
                targets.append((kind, name))
    if not targets:
        raise InputError("nothing to validate: no matching declarations")
    for kind, name in targets:
        label = f"{kind}:{name}"
        try:
            doc.build(kind, name)
            report["checks"].append({"name": label, "status": "PASS"})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    return _settle(report)


def _representation_subjects(doc):
    for name in doc.names("qmodule_algebras"):
        yield name, (lambda n=name: doc.qmodule_algebra(n))
    for name in doc.names("qsup_algebras"):
        yield name, (lambda n=name: doc.qsup_algebra(n))


def _check_representation(doc, report, seed):
    empty = True
    for name, build in _representation_subjects(doc):
        empty = False
        label = f"representation:{name}"
        try:
            cert = representation(build(), seed=seed)
            report["checks"].append({"name": label, "status": "PASS",
                                     "certificate": cert})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    if empty:
        raise InputError("no algebra declarations to represent")


def _check_roundtrip(doc, report, seed):
    empty = True
    for name in doc.names("modules"):
        empty = False
        label = f"roundtrip:module:{name}"
        try:
            mod = doc.module(name)
            back = module_from_suplattice(
                suplattice_from_module(mod, seed=seed))
            if back.same_tables(mod):
                report["checks"].append({"name": label, "status": "PASS"})
            else:
                report["checks"].append({
                    "name": label, "status": "FAIL",
                    "law": "RoundTripDrift",
                    "message": "module -> order -> module changed a table",
                    "witness": {"module": name}})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    for name in doc.names("qorders"):
        empty = False
        label = f"roundtrip:qorder:{name}"
        try:
            sup = certify_qsuplattice(doc.qorder(name), seed=seed)
            back = suplattice_from_module(module_from_suplattice(sup),
                                          seed=seed)
            if back.order.same_tables(sup.order):
                report["checks"].append({"name": label, "status": "PASS"})
            else:
                report["checks"].append({
                    "name": label, "status": "FAIL",
                    "law": "RoundTripDrift",
                    "message": "order -> module -> order changed a degree",
                    "witness": {"qorder": name}})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    if empty:
        raise InputError("no modules or q-orders to round-trip")


def _check_universal(doc, report, seed):
    targets = []
    for name in doc.names("qmodule_algebras"):
        targets.append((name, doc.qmodule_algebra(name)))
    for name in doc.names("qsup_algebras"):
        targets.append((name, transport_algebra(doc.qsup_algebra(name),
                                                seed=seed)))
    ran = False
    for gname in doc.names("algebras"):
        gens = doc.algebra(gname)
        for tname, target in targets:
            if not gens.signature.same_tables(target.algebra.signature):
                continue
            ran = True
            label = f"universal:{gname}->{tname}"
            space = len(target.carrier) ** len(gens.carrier)
            if space > limits.HOM_ENUM_BOUND:
                raise TooLarge("generator assignment space", space,
                               limits.HOM_ENUM_BOUND)
            try:
                free = free_qsup_algebra(target.module.base, gens,
                                         seed=seed)
            except SpecViolation as err:
                report["checks"].append(_fail(label, err))
                continue
            homs = []
            for images in itertools.product(target.carrier,
                                            repeat=len(gens.carrier)):
                f = dict(zip(gens.carrier, images))
                ok, _ = is_homomorphism(
                    StructureMap(gens, target.algebra, f), "omega")
                if ok:
                    homs.append(f)
            outcomes = []
            try:
                for f in homs:
                    fbar = extend_hom(free, target, f)
                    outcomes.append(extension_unique(free, target, f, fbar))
                report["checks"].append({
                    "name": label, "status": "PASS",
                    "omega_homs": len(homs), "uniqueness": outcomes,
                    "free_size": len(free.ids)})
            except SpecViolation as err:
                report["checks"].append(_fail(label, err))
    if not ran:
        raise InputError("no generator algebra / target pair shares a "
                         "signature")


def _check_nucleus_laws(doc, report, seed):
    empty = True
    for name in doc.names("nuclei"):
        empty = False
        label = f"nucleus:{name}"
        try:
            nuc = doc.nucleus(name)
            laws = derived_laws(nuc, seed=seed)
            report["checks"].append({"name": label, "status": "PASS",
                                     **laws})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    for name, build in _representation_subjects(doc):
        empty = False
        label = f"canonical-nucleus:{name}"
        try:
            subject = build()
            if isinstance(subject, QSupAlgebra):
                subject = transport_algebra(subject, seed=seed)
            free = free_qsup_algebra(subject.module.base, subject.algebra,
                                     seed=seed)
            eps = counit_map(free, subject)
            nuc = is_nucleus(free.module_algebra,
                             canonical_closure(free, eps))
            laws = derived_laws(nuc, seed=seed)
            report["checks"].append({"name": label, "status": "PASS",
                                     "free_size": len(free.ids), **laws})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))
    if empty:
        raise InputError("no nuclei or algebra subjects declared")


def _check_crisp(doc, report, seed):
    names = doc.names("posets")
    if not names:
        raise InputError("no posets declared")
    for name in names:
        label = f"crisp:{name}"
        try:
            out = crisp_specialization(doc.lattice(name), seed=seed)
            report["checks"].append({"name": label, "status": "PASS", **out})
        except SpecViolation as err:
            report["checks"].append(_fail(label, err))


THEOREMS = {
    "representation": _check_representation,
    "solovyov-roundtrip": _check_roundtrip,
    "free-universal-property": _check_universal,
    "nucleus-derived-laws": _check_nucleus_laws,
    "crisp-specialization": _check_crisp,
}


def cmd_check(ns):
    report = _report("check", {
        "file": ns.file, "theorem": ns.theorem, "close": ns.close,
        "lax_modules": ns.lax_modules}, [ns.file], ns.seed)
    doc = document.load(ns.file, close=ns.close,
                        lax_modules=ns.lax_modules)
    THEOREMS[ns.theorem](doc, report, ns.seed)
    return _settle(report)


def _enumerate_quantales(ns, report, artifacts):
    for n in range(2, ns.max_size + 1):
        labels = [str(k) for k in range(n)]
        found = corpus.census_quantales(labels)
        report["checks"].append({
            "name": f"quantales:chain{n}", "status": "PASS",
            "count": len(found), "space": n ** (n * n)})
        doc = {"format": document.FORMAT,
               "description": f"All quantale structures on the {n}-chain.",
               "quantales": {}}
        lat = [[a, b] for a in labels for b in labels
               if labels.index(a) <= labels.index(b)]
        for k, (mult, unit) in enumerate(found):
            doc["quantales"][f"q{k}"] = {
                "elements": labels, "unit": unit, "leq": lat,
                "mult": sorted([a, b, v] for (a, b), v in mult.items())}
        artifacts[f"quantales-chain{n}.json"] = doc


def _enumerate_nuclei(ns, report, artifacts):
    for qname, q in corpus.bundled_quantales().items():
        if len(q.elements) > ns.max_size:
            continue
        host = _bare_host(quantale_self_module(q))
        nuclei = enumerate_nuclei(host)
        report["checks"].append({
            "name": f"nuclei:{qname}", "status": "PASS",
            "count": len(nuclei)})
        doc = {"format": document.FORMAT,
               "description": f"All nuclei on the {qname} quantale acting "
                              "on itself (no operations).",
               "quantales": {"q": corpus._quantale(q)},
               "posets": {"carrier": corpus._poset(q.lattice)},
               "modules": {"self": corpus._self_module(q, "carrier")},
               "signatures": {"empty": {}},
               "algebras": {"bare": {"carrier": list(q.elements),
                                     "signature": "empty", "ops": {}}},
               "qmodule_algebras": {"host": {"module": "self",
                                             "algebra": "bare"}},
               "nuclei": {f"n{k}": {"host": "host", "table": dict(n.table)}
                          for k, n in enumerate(nuclei)}}
        artifacts[f"nuclei-{qname}.json"] = doc


def _enumerate_homs(ns, report, artifacts):
    summary = {"format": "qsalg-homs/1", "hom_sets": {}}
    for qname, q in corpus.bundled_quantales().items():
        if len(q.elements) > ns.max_size:
            continue
        host = _bare_host(quantale_self_module(q))
        homs = enumerate_homs(host, host)
        report["checks"].append({
            "name": f"endo-homs:{qname}", "status": "PASS",
            "count": len(homs)})
        summary["hom_sets"][f"endo:{qname}"] = homs
    if ns.max_size >= 2:
        doc = document.loads(corpus.corpus_text("two-meet.json"))
        gens = doc.algebra("z2")
        target = doc.qmodule_algebra("subject")
        free = free_qsup_algebra(target.module.base, gens, seed=ns.seed)
        homs = enumerate_homs(free.module_algebra, target)
        report["checks"].append({
            "name": "free-homs:z2->two-meet", "status": "PASS",
            "count": len(homs), "free_size": len(free.ids)})
        summary["hom_sets"]["free:z2->two-meet"] = homs
    artifacts["homs-summary.json"] = summary


def cmd_enumerate(ns):
    report = _report("enumerate", {
        "kind": ns.kind, "max_size": ns.max_size, "out": ns.out}, [],
        ns.seed)
    artifacts = {}
    {"quantales": _enumerate_quantales,
     "nuclei": _enumerate_nuclei,
     "homs": _enumerate_homs}[ns.kind](ns, report, artifacts)
    if ns.out:
        os.makedirs(ns.out, exist_ok=True)
        for name, doc in sorted(artifacts.items()):
            with open(os.path.join(ns.out, name), "w",
                      encoding="utf-8") as fh:
                fh.write(corpus.render(doc))
        report["written"] = sorted(artifacts)
    return _settle(report)


def _find_certificates(raw):
    if isinstance(raw, dict) and raw.get("format") == "qsalg-cert/1":
        return [("certificate", raw)]
    found = []
    if isinstance(raw, dict) and raw.get("format") == "qsalg-report/1":
        for check in raw.get("checks", []):
            cert = check.get("certificate")
            if isinstance(cert, dict) and \
                    cert.get("format") == "qsalg-cert/1":
                found.append((check.get("name", "?"), cert))
    return found


def cmd_recheck(ns):
    from .recheck import recheck_certificate
    report = _report("recheck", {"file": ns.file}, [ns.file], None)
    try:
        with open(ns.file, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise ParseError(f"cannot read certificate: {err}") from err
    certs = _find_certificates(raw)
    if not certs:
        raise ParseError("no qsalg-cert/1 certificate found in the file")
    for label, cert in certs:
        try:
            passed = recheck_certificate(cert)
            report["checks"].append({"name": f"recheck:{label}",
                                     "status": "PASS", "verified": passed})
        except CertificateTampered as err:
            report["checks"].append(_fail(f"recheck:{label}", err,
                                          failed_check=err.check))
    return _settle(report)


def cmd_corpus(ns):
    report = _report("corpus", {"action": ns.action}, [], None)
    for name, description in corpus.corpus_listing():
        report["checks"].append({"name": name, "status": "PASS",
                                 "description": description})
    return report


def _emit(report, as_json, elapsed):
    if as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True,
                                    separators=(",", ":"),
                                    default=str) + "\n")
        return
    print(f"qsalg {report['command']}: {report['status']} "
          f"({len(report['checks'])} checks, seed {report['seed']}, "
          f"threshold {report['threshold']})")
    for check in report["checks"]:
        line = f"  {check['status']:4} {check['name']}"
        if check["status"] == "FAIL":
            line += f"  [{check['law']}] {check['message']}"
        elif "count" in check:
            line += f"  count={check['count']}"
        elif "description" in check:
            line += f"  {check['description']}"
        print(line)
        if check["status"] == "FAIL":
            print(f"       witness: "
                  f"{json.dumps(check['witness'], default=str)}")
    print(f"elapsed {elapsed:.3f}s")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="qsalg",
        description="Validate, certify, and enumerate finite "
                    "quantale-valued structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="canonical machine report on stdout")
        p.add_argument("--seed", type=int, default=None,
                       help="sampling seed (echoed in the report)")

    p = sub.add_parser("validate", help="run a validator over a document")
    p.add_argument("file")
    p.add_argument("--kind", choices=sorted(KINDS))
    p.add_argument("--name", help="single declaration to validate")
    p.add_argument("--close", action="store_true",
                   help="close crisp leq lists reflexively-transitively")
    p.add_argument("--lax-modules", action="store_true",
                   help="skip unit action and second-argument join laws")
    common(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("check", help="run a theorem suite over a document")
    p.add_argument("file")
    p.add_argument("--theorem", choices=sorted(THEOREMS), required=True)
    p.add_argument("--close", action="store_true")
    p.add_argument("--lax-modules", action="store_true")
    common(p)
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("enumerate", help="census of small structures")
    p.add_argument("--kind", choices=["quantales", "nuclei", "homs"],
                   required=True)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--out", help="directory for the census documents")
    common(p)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("recheck",
                       help="re-verify a certificate from its tables")
    p.add_argument("file")
    common(p)
    p.set_defaults(handler=cmd_recheck)

    p = sub.add_parser("corpus", help="bundled corpus files")
    p.add_argument("action", choices=["list"])
    common(p)
    p.set_defaults(handler=cmd_corpus)

    ns = parser.parse_args(argv)
    start = time.monotonic()
    try:
        report = ns.handler(ns)
    except InputError as err:
        report = {
            "format": "qsalg-report/1", "command": ns.command,
            "error": {"kind": type(err).__name__, "message": str(err)},
            "status": "ERROR", "timing": None, "exit": EXIT_INPUT,
        }
        if ns.json:
            sys.stdout.write(json.dumps(report, sort_keys=True,
                                        separators=(",", ":"),
                                        default=str) + "\n")
        else:
            print(f"qsalg {ns.command}: ERROR "
                  f"[{type(err).__name__}] {err}")
        return EXIT_INPUT
    _emit(report, ns.json, time.monotonic() - start)
    return report["exit"]


if __name__ == "__main__":
    sys.exit(main())
