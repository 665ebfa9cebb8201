"""Certificates: self-contained JSON records that can be re-checked offline.

A certificate carries the command, the group, the full input, and the
computed result (verdict and witness).  :func:`validate_certificate`
recomputes the result from the group and input alone and compares.
Timing lives outside the certificate, in an optional envelope.
"""
from __future__ import annotations

import json
from dataclasses import replace
from importlib import resources

from .abelian import (
    APCover,
    TwoAPCover,
    abelian_profile,
    classify_abelian,
    verdict_is_consistent,
)
from .errors import CounterexampleFound, PreconditionError, UnsupportedVersion
from .groups import group_from_json
from .nonabelian import (
    YoungForm,
    law_check,
    match_extension_form,
    match_triple_form,
    match_young,
    validate_form,
)
from .products import doubling_report, make_subset, square, square_size
from .search.constructions import construct_4k5
from .search.verify import THEOREMS, revalidate_counterexample, verify

__all__ = [
    "VERSION",
    "COMMANDS",
    "build_certificate",
    "validate_certificate",
    "dumps",
    "load_corpus",
    "shipped_corpus",
]

VERSION = "1"
COMMANDS = ("square", "classify", "dim", "match", "construct", "laws", "verify")


def dumps(obj):
    """Canonical JSON: sorted keys, fixed separators, no trailing spaces."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_set(spec, raw):
    return make_subset(spec, [spec.element_from_json(x) for x in raw])


def _cert(command, group, inp, verdict, witness, result, evidence="exact", seed=0, cex=()):
    return {
        "version": VERSION,
        "command": command,
        "group": group,
        "input": inp,
        "verdict": verdict,
        "witness": witness,
        "evidence_level": evidence,
        "seed": seed,
        "counterexamples": list(cex),
        "result": result,
    }


def _square(group, inp):
    spec = group_from_json(group)
    S = _read_set(spec, inp["set"])
    sq = square(S)
    result = {"square": sq.to_json(), "doubling": None}
    cex = []
    if len(S) >= 2:
        try:
            result["doubling"] = doubling_report(S).to_json()
        except CounterexampleFound as exc:
            cex.append(exc.record)
    verdict = "counterexample" if cex else "ok"
    return _cert("square", group, inp, verdict, None, result, cex=cex)


def _classify(group, inp):
    spec = group_from_json(group)
    S = _read_set(spec, inp["set"])
    v = classify_abelian(S, inp["mode"], inp.get("c"))
    body = v.to_json()
    cex = []
    if v.is_counterexample:
        cex.append({"check": "classification", "group": group, "set": inp["set"],
                    "params": {"mode": inp["mode"], "c": inp.get("c")}})
    return _cert("classify", group, inp, v.branch, body["witness"], body, cex=cex)


def _dim(group, inp):
    spec = group_from_json(group)
    S = _read_set(spec, inp["set"])
    cex = []
    try:
        prof = abelian_profile(S).to_json()
        verdict = "ok"
    except CounterexampleFound as exc:
        prof, verdict = None, "counterexample"
        cex.append(exc.record)
    return _cert("dim", group, inp, verdict, None, prof, cex=cex)


def match_any(spec, S):
    """Triple forms for |S| = 3, the young matcher for 4-sets with
    |S^2| = 10, extension forms otherwise."""
    k = len(S)
    if k == 3:
        return match_triple_form(spec, S)
    if k == 4 and square_size(S) == 10:
        return match_young(spec, S)
    return match_extension_form(spec, S)


def _match(group, inp):
    spec = group_from_json(group)
    S = _read_set(spec, inp["set"])
    abelian = all(spec.commutes(p, q) for p in S for q in S)
    if abelian:
        return _cert("match", group, inp, "abelian", None, None)
    form = match_any(spec, S)
    if form is None:
        rec = {"check": "young_k4" if len(S) == 4 else ("triple_form" if len(S) == 3 else "extension_form"),
               "group": group, "set": inp["set"], "params": {}}
        return _cert("match", group, inp, "no-match", None, None, cex=[rec])
    wit = form.to_json(spec)
    return _cert("match", group, inp, form.kind, wit, wit)


def _construct(group, inp):
    k = inp["k"]
    S = construct_4k5(k)
    n = square_size(S)
    result = {"set": S.to_json(), "square_size": n, "expected": 4 * k - 5}
    cex = [] if n == 4 * k - 5 else [{"check": "construction", "group": group, "set": S.to_json(),
                                      "params": {"k": k}}]
    return _cert("construct", S.spec.to_json(), inp, "exact" if not cex else "counterexample",
                 None, result, cex=cex)


def _laws(group, inp):
    spec = group_from_json(group)
    gens = [spec.element_from_json(g) for g in inp["generators"]]
    rep = law_check(spec, gens, inp["law"], inp["radius"], inp["samples"], inp.get("seed", 0))
    body = rep.to_json(spec)
    verdict = "holds" if rep.holds else "violated"
    return _cert("laws", group, inp, verdict, body["first_violation"], body,
                 evidence=rep.evidence_level, seed=rep.seed)


def _verify(group, inp, workers=None):
    rep = verify(inp["theorem"], inp["params"], workers)
    body = rep.to_json()
    return _cert("verify", group, inp, rep.status, None, body, evidence=rep.evidence_level,
                 seed=rep.seed, cex=rep.counterexamples), rep.runtime_ms


_BUILDERS = {
    "square": _square,
    "classify": _classify,
    "dim": _dim,
    "match": _match,
    "construct": _construct,
    "laws": _laws,
}


def build_certificate(command, group, inp, workers=None):
    """Run ``command`` on ``(group, input)`` and wrap the result.

    Returns the certificate; for ``verify`` the runtime in milliseconds is
    returned alongside it as ``(certificate, runtime_ms)``.
    """
    if command == "verify":
        return _verify(group, inp, workers)
    if command not in _BUILDERS:
        raise PreconditionError(f"no certificate for command {command!r}")
    return _BUILDERS[command](group, inp)


def _witness_ok(cert):
    """Check the stored witness directly against the input set."""
    cmd, wit = cert["command"], cert["witness"]
    if wit is None or cmd not in ("classify", "match"):
        return True
    spec = group_from_json(cert["group"])
    S = _read_set(spec, cert["input"]["set"])
    try:
        if cmd == "match":
            return validate_form(spec, S, YoungForm.from_json(spec, wit))
        body = {k: v for k, v in wit.items() if k != "kind"}
        cover = APCover.from_json(body) if wit["kind"] == "ap" else TwoAPCover.from_json(body)
    except (KeyError, TypeError, ValueError):
        return False
    v = classify_abelian(S, cert["input"]["mode"], cert["input"].get("c"))
    return verdict_is_consistent(S, replace(v, witness=cover))


def validate_certificate(cert):
    """Recompute a certificate from its own group and input; True iff the
    stored verdict, witness and result are reproduced exactly."""
    version = cert.get("version")
    if version != VERSION:
        raise UnsupportedVersion(f"certificate version {version!r} is not supported")
    cmd = cert.get("command")
    if cmd not in COMMANDS:
        raise UnsupportedVersion(f"unknown certificate command {cmd!r}")
    try:
        fresh = build_certificate(cmd, cert["group"], cert["input"])
    except (KeyError, TypeError, ValueError):
        return False
    if cmd == "verify":
        fresh = fresh[0]
    if dumps(fresh) != dumps(cert):
        return False
    if not all(revalidate_counterexample(r) for r in cert["counterexamples"]):
        return False
    return _witness_ok(cert)


# --------------------------------------------------------------------------
# corpus files


def load_corpus(obj):
    """Accept a parsed corpus file; reject unknown schema versions."""
    version = str(obj.get("version", VERSION))
    if version != VERSION:
        raise UnsupportedVersion(f"corpus version {version!r} is not supported")
    return obj


def shipped_corpus(name):
    """Load one of the corpus files bundled with the package."""
    text = resources.files("smalldoubling.corpora").joinpath(f"{name}.json").read_text()
    return load_corpus(json.loads(text))


def shipped_theorem_corpus(theorem_id):
    if theorem_id not in THEOREMS:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}")
    return shipped_corpus(theorem_id)
