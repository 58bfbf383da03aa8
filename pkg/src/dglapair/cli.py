"""Command line interface: `dglapair <subcommand> [FILE] [flags]`.

Every subcommand prints a JSON report (sorted keys, rationals as strings) and
exits 0 when all checks pass, 1 when a mathematical check fails and 2 on
input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from math import factorial
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from . import catalog as cat
from .cone import (ObstructionClass, PairMCWitness, cone_les_check, failed_equations, gamma_map,
                   lift_mc, mc_pair_residuals, mc_pair_verify, obstruction_class, pair_equiv_residuals,
                   pair_equiv_verify, project_witness, stabilizer_T, tangent_space)
from .dgla import cohomology, validate_dgla, validate_morphism
from .graded import Permutation, koszul_sign, koszul_sign_0, parity_sign, unshuffle_indices, unshuffles
from .elements import Element, is_mc
from .homotopy import VerificationError, gauge_to_homotopy, homotopy_to_gauge, homotopy_verify
from .linf import (bernoulli, dgla_to_linf, mc_infinity_residual, mc_infinity_verify, phi_sequence,
                   transferred_bracket_closed, transferred_bracket_tree, transferred_structure,
                   validate_linf)
from .paths import barycentric_embed, contraction_check, path_dgla_ops, random_path_triple
from .textformat import DiagramDocument, ParseError, parse, serialize

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# library operation -> subcommands that reach it
COVERAGE: Dict[str, List[str]] = {
    "koszul_sign": ["transfer"],
    "unshuffles": ["transfer", "validate"],
    "shift": ["transfer", "validate"],
    "cohomology": ["cohomology", "cone"],
    "product_dgla": ["catalog"],
    "make_artin": ["mc-verify", "lift", "obstruct"],
    "bch": ["equiv-verify", "gauge-to-homotopy", "homotopy-to-gauge"],
    "gauge_action": ["equiv-verify", "mc-verify"],
    "is_mc": ["mc-verify"],
    "stabilizer_element": ["equiv-verify", "gauge-to-homotopy"],
    "make_small_extension": ["obstruct", "lift"],
    "build_cone": ["cone"],
    "cone_les_check": ["cone"],
    "gamma_map": ["gamma"],
    "mc_pair_verify": ["mc-verify"],
    "pair_equiv_verify": ["equiv-verify"],
    "tangent_space": ["cone"],
    "obstruction_class": ["obstruct"],
    "lift_mc": ["lift"],
    "eval_at": ["homotopy-to-gauge", "cone"],
    "integrate": ["cone", "homotopy-to-gauge"],
    "path_dgla_ops": ["cone"],
    "iota": ["cone"],
    "pi": ["cone"],
    "homotopy_K": ["cone"],
    "contraction_check": ["cone"],
    "barycentric_embed": ["cone"],
    "mc_path_from_gauge": ["gauge-to-homotopy"],
    "stabilizer_from_loop": ["homotopy-to-gauge"],
    "mc_path_decompose": ["homotopy-to-gauge"],
    "dgla_to_linf": ["validate"],
    "validate_linf": ["transfer", "validate"],
    "bernoulli": ["transfer"],
    "phi_sequence": ["transfer"],
    "transferred_bracket_tree": ["transfer"],
    "transferred_bracket_closed": ["transfer"],
    "mc_infinity_verify": ["mc-infinity-verify"],
    "gauge_to_homotopy": ["gauge-to-homotopy"],
    "homotopy_to_gauge": ["homotopy-to-gauge"],
}


class InputError(Exception):
    pass


# -- report helpers -----------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Element):
        return terms_of(x)
    return x


def terms_of(el: Element, var: str = "s") -> List[str]:
    """Element as sorted text-format term lines (``name*label -> c``)."""
    from .textformat import _fmt_terms
    return [ln.split(": ", 1)[1] for ln in _fmt_terms("_", el, var)]


def emit(report: dict, out=None) -> None:
    out = out or sys.stdout
    out.write(json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def _vec(v) -> Dict[str, str]:
    return {k: str(c) for k, c in sorted(v.items())}


# -- loading ------------------------------------------------------------------------------------

def load_document(path: str) -> DiagramDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    try:
        return parse(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}")


def _need_pair(doc: DiagramDocument):
    if doc.pair is None:
        raise InputError("the document has no pair section")
    return doc.diagram


def _pick(table: dict, name: Optional[str], what: str) -> List[str]:
    if name is None:
        if not table:
            raise InputError(f"the document has no {what} sections")
        return list(table)
    if name not in table:
        raise InputError(f"no {what} named {name!r}")
    return [name]


def shipped_fixture_dir() -> Path:
    return Path(str(resources.files("dglapair") / "fixtures"))


def shipped_fixtures() -> List[Path]:
    return sorted(shipped_fixture_dir().glob("*.dgl"))


# -- subcommands --------------------------------------------------------------------------------

def cmd_validate(args) -> tuple:
    doc = load_document(args.file)
    rep = {"dglas": {}, "morphisms": {}}
    ok = True
    for name, L in doc.dglas.items():
        v = validate_dgla(L)
        entry = {"dim": len(L.names), "ok": v.ok, "failures": [str(f) for f in v.failures[:20]]}
        if args.linf_weight and v.ok and L.names:
            lr = validate_linf(dgla_to_linf(L, arity_cap=max(2, args.linf_weight - 1)), args.linf_weight)
            entry["linf"] = {"weight": args.linf_weight, "checked": lr.checked, "ok": lr.ok}
            ok &= lr.ok
        rep["dglas"][name] = entry
        ok &= v.ok
    for name, f in doc.morphisms.items():
        v = validate_morphism(f)
        rep["morphisms"][name] = {"ok": v.ok, "failures": [str(x) for x in v.failures[:20]]}
        ok &= v.ok
    if doc.pair:
        P = doc.diagram
        rep["pair"] = {"name": P.name, "h_injective": P.h_injective(), "m_nonnegative": P.m_nonnegative()}
        ok &= _check_expect(doc, rep)
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _check_expect(doc: DiagramDocument, rep: dict) -> bool:
    """Compare pinned properties in the expect line; records mismatches in the report."""
    P = doc.diagram
    exp = doc.expect
    mism = []
    if "h_injective" in exp and (exp["h_injective"] == "yes") != P.h_injective():
        mism.append("h_injective")
    if "m_nonnegative" in exp and (exp["m_nonnegative"] == "yes") != P.m_nonnegative():
        mism.append("m_nonnegative")
    if "cone_dims" in exp:
        want = _parse_dims(exp["cone_dims"])
        have = _cone_dims(P)
        if want != have:
            mism.append("cone_dims")
    if "tangent_dim" in exp and int(exp["tangent_dim"]) != tangent_space(P)[0]:
        mism.append("tangent_dim")
    if exp:
        rep["expect_mismatches"] = mism
    return not mism


def _parse_dims(text: str) -> Dict[int, int]:
    if text.strip() == "none":
        return {}
    out = {}
    for part in text.split(","):
        i, d = part.split(":")
        out[int(i)] = int(d)
    return out


def _cone_dims(P) -> Dict[int, int]:
    C = P.cone
    degs = C.degrees()
    if not degs:
        return {}
    dims = {i: cohomology(C.complex, i)[0] for i in range(min(degs) - 1, max(degs) + 2)}
    return {i: d for i, d in dims.items() if d}


def cmd_cohomology(args) -> tuple:
    doc = load_document(args.file)
    if args.of == "cone":
        cx = _need_pair(doc).cone.complex
    elif args.of in ("L", "M", "N") and doc.pair:
        P = doc.diagram
        cx = getattr(P, args.of).as_complex()
    elif args.of in doc.dglas:
        cx = doc.dglas[args.of].as_complex()
    else:
        raise InputError(f"unknown complex {args.of!r}")
    dim, reps = cohomology(cx, args.degree)
    return {"complex": args.of, "degree": args.degree, "dimension": dim,
            "representatives": [_vec(r) for r in reps]}, EXIT_OK


def cmd_cone(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    C = P.cone
    sq = C.complex.check_square_zero()
    les = cone_les_check(P)
    tdim, treps = tangent_space(P)
    rng = random.Random(args.seed)
    degs = sorted(set(C.degrees()))
    samples = [random_path_triple(rng, P, rng.choice(degs), tmax=args.tmax) for _ in range(args.samples)] \
        if degs else []
    cones = [cat.random_cone_element(rng, P, rng.choice(degs)) for _ in range(args.samples)] if degs else []
    con = contraction_check(P, samples, cones)
    bary_bad = 0
    ops_bad = 0
    for pt, other in zip(samples, samples[1:]):
        p, q = pt.m, other.m
        dp, pq = path_dgla_ops(p, q)
        dq, _ = path_dgla_ops(q, q)
        d_pq, _ = path_dgla_ops(pq, q)
        sign = parity_sign(p.degree() or 0)
        if path_dgla_ops(dp, q)[0] or d_pq != dp.bracket(q) + p.bracket(dq).scaled(sign):
            ops_bad += 1
    for pt in samples:
        k = barycentric_embed(P, pt)
        if k.membership_defects(P) or not k.matching():
            bary_bad += 1
    ok = sq.ok and les.ok and con.ok and not bary_bad and not ops_bad
    rep = {
        "pair": P.name,
        "cone_basis": [f"{n}:{d}" for n, d in C.space.basis],
        "D_squared_zero": sq.ok,
        "cohomology": {str(i): d for i, d in _cone_dims(P).items()},
        "tangent_dimension": tdim,
        "tangent_representatives": [_vec(r) for r in treps],
        "exact_sequence": {"ok": les.ok, "nodes": les.nodes, "failures": les.failures},
        "contraction": {"samples": con.checked, "ok": con.ok, "failures": con.failures[:10]},
        "barycentric_embedding_failures": bary_bad,
        "path_algebra_failures": ops_bad,
    }
    ok &= _check_expect(doc, rep)
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_gamma(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    if not P.h_injective():
        raise InputError("gamma needs an injective h")
    G = gamma_map(P)
    rep = {"pair": P.name, "complement": G.complement,
           "dimensions": {str(i): {"cone": a, "target": b, "rank": G.ranks[i]} for i, (a, b) in G.dims.items()},
           "quasi_isomorphism": G.quasi_isomorphism}
    return rep, EXIT_OK if G.quasi_isomorphism else EXIT_FAIL


def cmd_transfer(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    if args.arity < 2:
        raise InputError("--arity must be at least 2")
    rng = random.Random(args.seed)
    degs = sorted(set(P.cone.degrees()))
    if not degs:
        raise InputError("the cone is zero")
    coeffs = {}
    coeff_ok = True
    for j in range(1, args.arity):
        phi, I = phi_sequence(j)
        B = bernoulli(j)
        coeffs[str(j)] = {"phi": {str(k): str(v) for k, v in sorted(phi.items())}, "I": str(I),
                          "I_bar": str(phi_sequence(j, bar=True)[1]), "B": str(B)}
        coeff_ok &= I == -B / factorial(j)
    results = []
    agree = True
    for _ in range(args.samples):
        inputs = [cat.random_cone_element(rng, P, rng.choice(degs)) for _ in range(args.arity)]
        row = {"inputs": [x.format() for x in inputs]}
        if args.mode in ("tree", "both"):
            row["tree"] = transferred_bracket_tree(P, inputs).format()
        if args.mode in ("closed", "both"):
            row["closed"] = transferred_bracket_closed(P, inputs).format()
        if args.mode == "both":
            row["agree"] = row["tree"] == row["closed"]
            agree &= row["agree"]
        results.append(row)
    signs = _sign_consistency(rng, P, degs, args.arity)
    rep = {"pair": P.name, "arity": args.arity, "mode": args.mode, "seed": args.seed,
           "coefficients": coeffs, "coefficients_match_bernoulli": coeff_ok,
           "unshuffle_signs": signs, "samples": results}
    ok = agree and coeff_ok and signs["ok"]
    if args.validate_weight:
        T = transferred_structure(P, arity_cap=max(args.validate_weight - 1, 2),
                                  mode="tree" if args.mode == "tree" else "closed")
        lr = validate_linf(T, args.validate_weight)
        rep["linf_relations"] = {"weight": args.validate_weight, "checked": lr.checked,
                                 "per_weight": {str(k): v for k, v in lr.weights.items()},
                                 "failures": [list(t) for t, _ in lr.failures[:10]], "ok": lr.ok}
        ok &= lr.ok
    if args.mode == "both":
        rep["tree_closed_agreement"] = agree
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _sign_consistency(rng, P, degs, n) -> dict:
    """The fast 0-based sign and unshuffle routines against the permutation-level ones."""
    shifted = [rng.choice(degs) - 1 for _ in range(n)]
    checked = bad = 0
    for p in range(n + 1):
        perms = unshuffles(p, n - p)
        fast = list(unshuffle_indices(p, n - p))
        if len(perms) != len(fast):
            bad += 1
        for sigma, (first, rest) in zip(perms, fast):
            checked += 1
            order = list(first) + list(rest)
            if sigma != Permutation(tuple(k + 1 for k in order)) or \
                    koszul_sign(sigma, shifted) != koszul_sign_0(order, shifted):
                bad += 1
    return {"degrees": shifted, "checked": checked, "mismatches": bad, "ok": not bad}


def _witness_report(P, w: PairMCWitness) -> dict:
    res = mc_pair_residuals(P, w)
    return {"x": terms_of(w.x), "y": terms_of(w.y), "p": terms_of(w.p),
            "residuals": {k: terms_of(v) for k, v in res.items()},
            "x_is_mc": is_mc(w.x), "y_is_mc": is_mc(w.y),
            "failed_equations": failed_equations(P, w), "ok": mc_pair_verify(P, w)}


def cmd_mc_verify(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    rep = {"pair": P.name, "ring": doc.algebra.name, "witnesses": {}}
    ok = True
    for name in _pick(doc.witnesses, args.witness, "witness"):
        r = _witness_report(P, doc.witnesses[name])
        rep["witnesses"][name] = r
        ok &= r["ok"]
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _not_mc(P, doc, names) -> Optional[dict]:
    bad = {n: failed_equations(P, doc.witnesses[n]) for n in names if not mc_pair_verify(P, doc.witnesses[n])}
    return bad or None


def cmd_equiv_verify(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    rep = {"pair": P.name, "equivalences": {}}
    ok = True
    for name in _pick(doc.equivs, args.equiv, "equiv"):
        a, b, ew = doc.equivs[name]
        bad = _not_mc(P, doc, (a, b))
        if bad:
            rep["equivalences"][name] = {"from": a, "to": b, "not_maurer_cartan": bad, "ok": False}
            ok = False
            continue
        res = pair_equiv_residuals(P, doc.witnesses[a], doc.witnesses[b], ew)
        good = pair_equiv_verify(P, doc.witnesses[a], doc.witnesses[b], ew)
        rep["equivalences"][name] = {
            "from": a, "to": b, "a": terms_of(ew.a), "b": terms_of(ew.b), "c": terms_of(ew.c),
            "T": terms_of(stabilizer_T(P, doc.witnesses[a].y, ew.c)),
            "residuals": {k: terms_of(v) for k, v in res.items()},
            "failed_equations": [k for k, v in res.items() if v], "ok": good}
        ok &= good
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_mc_infinity(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    rep = {"pair": P.name, "witnesses": {}}
    ok = True
    for name in _pick(doc.witnesses, args.witness, "witness"):
        w = doc.witnesses[name]
        gamma = w.as_cone()
        inf = mc_infinity_verify(P, gamma)
        pair = mc_pair_verify(P, w)
        res = mc_infinity_residual(P, gamma)
        rep["witnesses"][name] = {"mc_infinity": inf, "mc_pair": pair, "agree": inf == pair,
                                  "residual": {"l": terms_of(res.l), "n": terms_of(res.n), "m": terms_of(res.m)},
                                  "failed_equations": failed_equations(P, w)}
        ok &= inf and pair
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _write_doc(doc: DiagramDocument, path: Optional[str]):
    if path:
        Path(path).write_text(serialize(doc), encoding="utf-8")


def cmd_gauge_to_homotopy(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    rep = {"pair": P.name, "paths": {}}
    ok = True
    for name in _pick(doc.equivs, args.equiv, "equiv"):
        a, b, ew = doc.equivs[name]
        bad = _not_mc(P, doc, (a, b))
        if bad:
            rep["paths"][name] = {"not_maurer_cartan": bad, "ok": False}
            ok = False
            continue
        try:
            path = gauge_to_homotopy(P, doc.witnesses[a], doc.witnesses[b], ew)
        except VerificationError as exc:
            rep["paths"][name] = {"from": a, "to": b, "failed_stage": exc.stage, "error": str(exc), "ok": False}
            ok = False
            continue
        doc.paths[f"{name}_path"] = ("s", path)
        rep["paths"][name] = {"from": a, "to": b, "l": terms_of(path.l), "n": terms_of(path.n),
                              "m": terms_of(path.m), "ok": True}
    _write_doc(doc, args.write)
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_homotopy_to_gauge(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    rep = {"pair": P.name, "equivalences": {}}
    ok = True
    for name in _pick(doc.paths, args.path, "path"):
        var, path = doc.paths[name]
        failures = homotopy_verify(P, path)
        entry = {"path_checks_failed": failures}
        if failures:
            entry["ok"] = False
            ok = False
        else:
            try:
                ew = homotopy_to_gauge(P, path)
                entry.update({"a": terms_of(ew.a), "b": terms_of(ew.b), "c": terms_of(ew.c), "ok": True})
                w0, w1 = path.endpoint(0), path.endpoint(1)
                src = _find_witness(doc, w0) or f"{name}@0"
                tgt = _find_witness(doc, w1) or f"{name}@1"
                for wn, w in ((src, w0), (tgt, w1)):
                    doc.witnesses.setdefault(wn, w)
                doc.equivs[f"{name}_gauge"] = (src, tgt, ew)
                entry["from"], entry["to"] = src, tgt
            except VerificationError as exc:
                entry.update({"failed_stage": exc.stage, "error": str(exc), "ok": False})
                ok = False
        rep["equivalences"][name] = entry
    _write_doc(doc, args.write)
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def _find_witness(doc: DiagramDocument, w: PairMCWitness) -> Optional[str]:
    for name, v in doc.witnesses.items():
        if v == w:
            return name
    return None


def _extension(doc: DiagramDocument):
    if doc.ring is None or doc.ring.small_extension is None:
        raise InputError("this subcommand needs 'extension=...' in the ring line")
    return doc.ring.small_extension


def _expected_obstructed(doc: DiagramDocument) -> Optional[set]:
    txt = doc.expect.get("obstructed")
    if txt is None:
        return None
    return set() if txt.strip() == "none" else {x.strip() for x in txt.split(",")}


def cmd_obstruct(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    se = _extension(doc)
    want = _expected_obstructed(doc)
    rep = {"pair": P.name, "extension": {"total": se.total.name, "quotient": se.quotient.name,
                                         "ideal": [_vec(j) for j in se.ideal]}, "witnesses": {}}
    ok = True
    rng = random.Random(args.seed)
    for name in _pick(doc.witnesses, args.witness, "witness"):
        w = project_witness(se, doc.witnesses[name])
        if not mc_pair_verify(P, w):
            rep["witnesses"][name] = {"not_maurer_cartan_over_quotient": failed_equations(P, w), "ok": False}
            ok = False
            continue
        ob = obstruction_class(P, se, w)
        others = [obstruction_class(P, se, w, rng) for _ in range(args.random_lifts)]
        independent = all(o.coordinates == ob.coordinates for o in others)
        entry = {"class_coordinates": [[str(c) for c in row] for row in ob.coordinates],
                 "cocycles": [_vec(z) for z in ob.cocycles], "obstructed": not ob.is_zero,
                 "random_lifts": len(others), "lift_independent": independent}
        good = independent
        if want is not None:
            entry["expected_obstructed"] = name in want
            good &= (name in want) == (not ob.is_zero)
        entry["ok"] = good
        ok &= good
        rep["witnesses"][name] = entry
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_lift(args) -> tuple:
    doc = load_document(args.file)
    P = _need_pair(doc)
    se = _extension(doc)
    rep = {"pair": P.name, "witnesses": {}}
    ok = True
    for name in _pick(doc.witnesses, args.witness, "witness"):
        w = project_witness(se, doc.witnesses[name])
        if not mc_pair_verify(P, w):
            rep["witnesses"][name] = {"not_maurer_cartan_over_quotient": failed_equations(P, w), "ok": False}
            ok = False
            continue
        res = lift_mc(P, se, w)
        if isinstance(res, ObstructionClass):
            rep["witnesses"][name] = {"obstructed": True,
                                      "class_coordinates": [[str(c) for c in r] for r in res.coordinates],
                                      "ok": False}
            ok = False
        else:
            r = _witness_report(P, res)
            rep["witnesses"][name] = {"obstructed": False, "lift": {k: r[k] for k in ("x", "y", "p")},
                                      "lift_verifies": r["ok"], "ok": r["ok"]}
            ok &= r["ok"]
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args) -> tuple:
    if args.action == "list":
        entries = []
        for name in cat.catalog_list():
            E = cat.load(name)
            entries.append({"name": name, "description": E.description,
                            "cone_dims": {str(i): d for i, d in E.cone_dims.items() if d},
                            "h_injective": E.h_injective, "m_nonnegative": E.m_nonnegative})
        return {"entries": entries}, EXIT_OK
    names = cat.catalog_list() if args.all else [args.name]
    if not args.all and not args.name:
        raise InputError("catalog emit needs a name or --all")
    written = []
    for name in names:
        if name not in cat.catalog_list():
            raise InputError(f"unknown catalog entry {name!r}")
        text = serialize(cat.fixture_document(name, args.seed))
        if args.dir:
            p = Path(args.dir) / f"{name}.dgl"
            p.write_text(text, encoding="utf-8")
            written.append(str(p))
        else:
            sys.stdout.write(text)
    if args.all and args.dir:
        inv = Path(args.dir) / "invalid"
        inv.mkdir(exist_ok=True)
        p = inv / "corrupted-witness.dgl"
        p.write_text(serialize(cat.corrupted_document()), encoding="utf-8")
        written.append(str(p))
    if args.dir:
        return {"written": written}, EXIT_OK
    return None, EXIT_OK


def fixture_checks(path: Path) -> dict:
    """Every document-level check on one fixture file."""
    text = path.read_text(encoding="utf-8")
    doc = parse(text)
    out = {"round_trip": parse(serialize(doc)) == doc and serialize(parse(serialize(doc))) == serialize(doc),
           "canonical": serialize(doc) == text}
    ns = argparse.Namespace(file=str(path), linf_weight=0, seed=0, samples=4, tmax=4, witness=None,
                            equiv=None, path=None, write=None, random_lifts=2, degree=1, of="cone")
    steps = [("validate", cmd_validate), ("cone", cmd_cone)]
    if doc.pair and doc.diagram.h_injective():
        steps.append(("gamma", cmd_gamma))
    if doc.witnesses:
        steps.append(("obstruct", cmd_obstruct))
    if doc.equivs:
        steps += [("equiv-verify", cmd_equiv_verify), ("gauge-to-homotopy", cmd_gauge_to_homotopy)]
    if doc.paths:
        steps.append(("homotopy-to-gauge", cmd_homotopy_to_gauge))
    results, expected = {}, {}
    for name, fn in steps:
        _, results[name] = fn(ns)
        expected[name] = EXIT_OK
    # obstructed witnesses only solve the equations modulo the extension ideal
    want = _expected_obstructed(doc) or set()
    for n in doc.witnesses:
        for sub, fn in (("mc-verify", cmd_mc_verify), ("mc-infinity-verify", cmd_mc_infinity),
                        ("lift", cmd_lift)):
            key = f"{sub} {n}"
            _, results[key] = fn(argparse.Namespace(file=str(path), witness=n))
            expected[key] = EXIT_FAIL if n in want else EXIT_OK
    out["subcommands"] = results
    out["unexpected"] = sorted(k for k in results if results[k] != expected[k])
    out["ok"] = out["round_trip"] and out["canonical"] and not out["unexpected"]
    return out


def cmd_suite(args) -> tuple:
    from . import acceptance
    files = sorted(Path(args.fixtures).glob("*.dgl")) if args.fixtures else shipped_fixtures()
    if not files:
        raise InputError("no fixture files found")
    rep = {"fixtures": {}}
    ok = True
    for f in files:
        try:
            r = fixture_checks(f)
        except (ParseError, ValueError, InputError) as exc:
            r = {"ok": False, "error": str(exc)}
        rep["fixtures"][f.name] = r
        ok &= r["ok"]
    if not args.skip_criteria:
        only = [int(x) for x in args.only.split(",")] if args.only else None
        crit = {}
        for res in acceptance.run_all(only=only, scale=args.scale, seed=args.seed):
            crit[str(res.number)] = {"title": res.title, "passed": res.passed, "detail": res.detail}
            ok &= res.passed
        rep["criteria"] = crit
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dglapair", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=fn)
        return p

    p = with_file("validate", cmd_validate, "check DGLA and morphism axioms")
    p.add_argument("--linf-weight", type=int, default=3,
                   help="also check the L∞ relations of each DGLA up to this weight (0 to skip)")
    p = with_file("cohomology", cmd_cohomology, "cohomology of the cone or of one DGLA")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--of", default="cone", help="'cone', 'L', 'M', 'N' or a dgla name")
    p = with_file("cone", cmd_cone, "build the cone, check D²=0, the long exact sequence and the contraction")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--tmax", type=int, default=6)
    with_file("gamma", cmd_gamma, "the injective-h quasi-isomorphism")
    p = with_file("transfer", cmd_transfer, "transferred brackets on the cone")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--mode", choices=("tree", "closed", "both"), default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--validate-weight", type=int, default=0)
    p = with_file("mc-verify", cmd_mc_verify, "check witnesses against the Maurer-Cartan equations of the pair")
    p.add_argument("--witness")
    p = with_file("equiv-verify", cmd_equiv_verify, "check equivalence witnesses")
    p.add_argument("--equiv")
    p = with_file("mc-infinity-verify", cmd_mc_infinity, "Maurer-Cartan check in the transferred structure")
    p.add_argument("--witness")
    p = with_file("gauge-to-homotopy", cmd_gauge_to_homotopy, "homotopy from an equivalence witness")
    p.add_argument("--equiv")
    p.add_argument("--write", help="write the document with the new path sections to this file")
    p = with_file("homotopy-to-gauge", cmd_homotopy_to_gauge, "equivalence witness from a homotopy")
    p.add_argument("--path")
    p.add_argument("--write", help="write the document with the new equiv sections to this file")
    p = with_file("obstruct", cmd_obstruct, "obstruction classes for the ring's small extension")
    p.add_argument("--witness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-lifts", type=int, default=3)
    p = with_file("lift", cmd_lift, "lift witnesses through the ring's small extension")
    p.add_argument("--witness")

    p = sub.add_parser("suite", help="fixture checks and the acceptance criteria")
    p.add_argument("--fixtures", help="directory of .dgl files (default: the shipped fixtures)")
    p.add_argument("--skip-criteria", action="store_true")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.add_argument("--scale", type=float, default=1.0, help="multiply sample counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("catalog", help="list catalog entries or emit fixture files")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--dir", help="write <name>.dgl files into this directory")
    p.add_argument("--seed", type=int, default=cat.FIXTURE_SEED)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except InputError as exc:
        emit({"error": str(exc), "ok": False})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if report is not None:
        emit(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
