"""Command-line front end.

Exit codes: 0 success, 1 internal invariant violation, 2 user error.
Every subcommand accepts ``--format json|text`` and ``--config FILE``; the
config is a JSON JobConfig whose keys mirror the long flags and are
validated against a schema (unknown keys are rejected).  Flags given on the
command line override config values.
"""

import argparse
from fractions import Fraction
import json
import logging
from multiprocessing import Pool
import sys

import jsonschema

from . import intmat as im
from .lattice import (
    GramLattice,
    IntegralIsometry,
    LatticeError,
    Sublattice,
    discriminant_group,
    hyperbolic_from_isotropic,
    invariant_coinvariant,
    isometry_order,
    orthogonal_complement,
    smith_normal_form,
)
from .mukai import (
    Monodromy,
    MukaiError,
    NonIntegralError,
    NSData,
    alg_mukai_lattice,
    compute_e,
    markman_monodromy_test,
    mukai_pairing,
    parse_word,
    reflection_disc_action,
)
from .walls import (
    DEFAULT_STAR_BOUND,
    InvariantViolation,
    StarVerdict,
    WallKind,
    build_vertical,
    check_star,
    classify_enumerative,
    classify_vertical,
    classify_vertical_closed_form,
    decide_involution,
    fm_reduce,
    reduction_to_vertical,
)

log = logging.getLogger("mukaiwalls")

EXIT_OK, EXIT_INVARIANT, EXIT_USER = 0, 1, 2


class UserError(Exception):
    pass


# -- JSON helpers -------------------------------------------------------------

def _plain(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, (list, tuple)):
        return [_plain(a) for a in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if hasattr(x, "value") and isinstance(x.value, str):
        return x.value
    return x


def dumps(doc):
    """Canonical, byte-deterministic JSON."""
    return json.dumps(_plain(doc), sort_keys=True, separators=(",", ":"))


def _load_json_arg(text, what):
    """Inline JSON, or @path to a JSON file."""
    try:
        if text.startswith("@"):
            with open(text[1:]) as fh:
                return json.load(fh)
        return json.loads(text)
    except OSError as exc:
        raise UserError(f"cannot read {what}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UserError(f"{what} is not valid JSON: {exc}") from None


def _int_list(text, what):
    try:
        body = str(text).replace(" ", "").strip("[]")
        return [int(a) for a in body.split(",") if a != ""]
    except ValueError:
        raise UserError(f"{what} must be a comma-separated list of integers") from None


def _int_matrix(doc, what):
    if (not isinstance(doc, list) or not doc
            or not all(isinstance(r, list) and all(isinstance(a, int) for a in r) for r in doc)):
        raise UserError(f"{what} must be a non-empty list of integer rows")
    return doc


def _range(text, what):
    """'a:b' (inclusive), 'a' or 'a,b,c'."""
    text = str(text)
    if ":" in text:
        lo, _, hi = text.partition(":")
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise UserError(f"bad range for {what}: {text!r}") from None
        vals = list(range(lo, hi + 1))
    else:
        vals = _int_list(text, what)
    if not vals:
        raise UserError(f"empty range for {what}")
    return vals


# -- job config ---------------------------------------------------------------

_INT_MATRIX = {"type": "array", "minItems": 1,
               "items": {"type": "array", "items": {"type": "integer"}}}
_INT_VEC = {"type": "array", "items": {"type": "integer"}}
_NS_SCHEMA = {
    "type": "object",
    "properties": {
        "gram": _INT_MATRIX,
        "D": _INT_VEC,
        "names": {"type": "array", "items": {"type": "string"}},
        "k3_embedding": _INT_MATRIX,
    },
    "required": ["gram"],
    "additionalProperties": False,
}
_VEC_TEXT = {"anyOf": [{"type": "string"}, _INT_VEC]}
_RANGE = {"anyOf": [{"type": "string"}, {"type": "integer"}, _INT_VEC]}
_COMMON = {"ns": _NS_SCHEMA, "d2": {"type": "integer"},
           "output_format": {"enum": ["json", "text"]}}
_PARAMS = {
    "classify": {"v": _VEC_TEXT, "star_bound": {"type": "integer", "minimum": 0},
                 "disc": {"type": "boolean"}},
    "isometry": {"v": _VEC_TEXT, "word": {"type": "string"}},
    "sweep": {"r": _RANGE, "c": _RANGE, "s": _RANGE, "jobs": {"type": "integer", "minimum": 1},
              "markman": {"type": "boolean"}},
    "lattice": {"op": {"enum": ["snf", "disc", "complement", "coinv", "u-from-isotropic"]},
                "gram": _INT_MATRIX, "matrix": _INT_MATRIX, "basis": _INT_MATRIX,
                "isometry": _INT_MATRIX, "vector": _INT_VEC,
                "order": {"type": "integer", "minimum": 1}},
    "fm-reduce": {"v": _VEC_TEXT, "w": _VEC_TEXT, "from_e": {"type": "boolean"},
                  "gram": _INT_MATRIX, "v_coords": _INT_VEC, "w_coords": _INT_VEC},
}


def job_schema(command):
    props = dict(_COMMON)
    props.update(_PARAMS[command])
    if command == "sweep":
        props["d2"] = _RANGE
    props["command"] = {"const": command}
    return {"type": "object", "properties": props, "additionalProperties": False}


def load_job_config(path, command):
    doc = _load_json_arg("@" + path, "config file")
    try:
        jsonschema.validate(doc, job_schema(command))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise UserError(f"invalid job config at {where}: {exc.message}") from None
    return doc


def _merge(args, command):
    """Fold a JobConfig into the argparse namespace (flags win)."""
    cfg = load_job_config(args.config, command) if args.config else {}
    for key, val in cfg.items():
        if key == "command":
            continue
        if key == "output_format":
            if args.format is None:
                args.format = val
            continue
        if key == "ns":
            if args.ns is None:
                args.ns_doc = val
            continue
        attr = key.replace("-", "_")
        if getattr(args, attr, None) in (None, False):
            if isinstance(val, list) and key in ("v", "w", "r", "c", "s", "d2"):
                val = ",".join(str(a) for a in val)
            setattr(args, attr, val)
    if args.format is None:
        args.format = "json"
    return args


def _ns_from_args(args, required=True):
    doc = getattr(args, "ns_doc", None)
    if args.ns is not None:
        doc = _load_json_arg("@" + args.ns if not args.ns.lstrip().startswith("{") else args.ns,
                             "ns file")
    if doc is not None and args.d2 is not None:
        raise UserError("give either --d2 or an NS file, not both")
    if doc is not None:
        if not isinstance(doc, dict):
            raise UserError("NS file must hold a JSON object {\"gram\", \"D\"}")
        try:
            jsonschema.validate(doc, _NS_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise UserError(f"invalid NS file: {exc.message}") from None
        return NSData.from_json(doc)
    if args.d2 is not None:
        return NSData.rank_one(int(args.d2))
    if required:
        raise UserError("need --d2 (rank one) or --ns FILE")
    return None


def _vector(ns, text, what="--v"):
    if text is None:
        raise UserError(f"missing {what}")
    x = _int_list(text, what)
    if len(x) != ns.rank + 2:
        raise UserError(f"{what} needs {ns.rank + 2} integers (r, theta..., s)")
    return ns.from_coords(x)


# -- output -------------------------------------------------------------------

def _emit(args, doc, text_lines=None, stream=None):
    out = stream or sys.stdout
    if args.format == "json":
        out.write(dumps(doc) + "\n")
    else:
        lines = text_lines if text_lines is not None else _text_lines(doc)
        out.write("\n".join(lines) + "\n")
    out.flush()


def _text_lines(doc, prefix=""):
    lines = []
    for key in sorted(doc):
        val = doc[key]
        if isinstance(val, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_text_lines(val, prefix + "  "))
        else:
            lines.append(f"{prefix}{key}: {dumps(val) if isinstance(val, (list, tuple)) else _plain(val)}")
    return lines


# -- classify -----------------------------------------------------------------

def classify_report(ns, v, star_bound=DEFAULT_STAR_BOUND, with_disc=True):
    shifted = False
    if v.r < 0:
        v, shifted = -v, True
    v2 = v.square()
    spec = build_vertical(ns, v)
    star = check_star(ns, v, bound=star_bound)
    try:
        e = compute_e(v)
        e_integral = True
    except NonIntegralError:
        e, e_integral = None, False
    e_primitive = bool(e is not None and e.is_primitive())
    mono = markman_monodromy_test(v, e) if e_primitive else None
    disc = None
    if with_disc and e_primitive:
        disc = reflection_disc_action(v, e)
    enum = classify_vertical(ns, v)
    witnesses = {"enumeration": enum.witness.to_json() if enum.witness else None}
    closed = None
    if ns.rank == 1 and star.holds == StarVerdict.YES:
        closed = classify_vertical_closed_form(ns, v)
        witnesses["closed_form"] = closed.witness.to_json()
        if closed.kind != enum.kind:
            raise InvariantViolation(f"closed form says {closed.kind.value}, "
                                     f"enumeration says {enum.kind.value} for {v}")
    if star.holds != StarVerdict.NO and e_primitive and mono != Monodromy.MINUS:
        raise InvariantViolation(f"(*) holds for {v} but the monodromy test gives {mono}")
    decision = decide_involution(ns, v)
    return {
        "v": v.to_json(),
        "v2": v2,
        "shifted": shifted,
        "H_W": spec.to_json(),
        "star": star.to_json(),
        "e": e.to_json() if e is not None else None,
        "e_integral": e_integral,
        "e_primitive": e_primitive,
        "monodromy": mono.value if mono else None,
        "disc_action": disc.value if disc else None,
        "wall_type": enum.kind.value,
        "closed_form_case": closed.case if closed else None,
        "witnesses": witnesses,
        "involution": decision.involution,
        "reasons": list(decision.reasons),
    }


def cmd_classify(args):
    ns = _ns_from_args(args)
    v = _vector(ns, args.v)
    bound = args.star_bound if args.star_bound is not None else DEFAULT_STAR_BOUND
    doc = classify_report(ns, v, bound, with_disc=not args.no_disc)
    lines = [
        f"v = {ns.from_coords(_coords(doc['v']))}  v^2 = {doc['v2']}",
        f"condition (*): {doc['star']['holds']}  gcd(r,s) = {doc['star']['gcd_rs']}",
        f"e = {_fmt_vec(doc['e'])}  integral={doc['e_integral']}  primitive={doc['e_primitive']}",
        f"monodromy: {doc['monodromy']}  discriminant action: {doc['disc_action']}",
        f"wall type: {doc['wall_type']}"
        + (f" ({doc['closed_form_case']})" if doc["closed_form_case"] else ""),
        f"involution: {doc['involution']}",
    ]
    lines += [f"  reason: {r}" for r in doc["reasons"]]
    _emit(args, doc, lines)
    return EXIT_OK


def _coords(vdoc):
    return [vdoc["r"]] + list(vdoc["theta"]) + [vdoc["s"]]


def _fmt_vec(vdoc):
    if vdoc is None:
        return "-"
    return "(" + ",".join(str(a) for a in _coords(vdoc)) + ")"


# -- isometry -----------------------------------------------------------------

def cmd_isometry(args):
    ns = _ns_from_args(args)
    v = _vector(ns, args.v)
    if not args.word:
        raise UserError("missing --word")
    word = parse_word(args.word, ns)
    trail = word.trace(v)
    integral = word.is_lattice_isometry()
    if integral:
        M = word.matrix()
        G = [list(r) for r in alg_mukai_lattice(ns).gram]
        preserved = im.matmul(im.matmul(im.transpose(M), G), M) == G
    else:
        preserved = all(mukai_pairing(x, x) == v.square() for x in trail)
    if not preserved or mukai_pairing(trail[-1], trail[-1]) != v.square():
        raise InvariantViolation(f"word {word} does not preserve the Mukai pairing")
    atoms = [a.render(ns) for a in reversed(word.steps)]
    steps = [{"atom": a, "result": x.to_json()} for a, x in zip(atoms, trail[1:])]
    doc = {
        "word": str(word),
        "input": v.to_json(),
        "steps": steps,
        "output": trail[-1].to_json(),
        "pairing_preserved": preserved,
        "lattice_isometry": integral,
    }
    lines = [f"word: {word}", f"start: {v}"]
    lines += [f"  {a:>14}  ->  {x}" for a, x in zip(atoms, trail[1:])]
    lines += [f"result: {trail[-1]}", f"pairing preserved: {preserved}"]
    _emit(args, doc, lines)
    return EXIT_OK


# -- sweep --------------------------------------------------------------------

def _sweep_one(item):
    d2, r, c, s, markman = item
    ns = NSData.rank_one(d2)
    v = ns.vec(r, c, s)
    star = check_star(ns, v)
    enum = classify_vertical(ns, v)
    rec = {
        "d2": d2,
        "v": [r, c, s],
        "v2": v.square(),
        "star": star.holds.value,
        "enumeration": enum.kind.value,
        "closed_form": None,
        "case": None,
        "agree": True,
    }
    if star.holds == StarVerdict.YES:
        closed = classify_vertical_closed_form(ns, v)
        rec["closed_form"] = closed.kind.value
        rec["case"] = closed.case
        rec["agree"] = closed.kind == enum.kind and enum.kind != WallKind.FAKE_OR_NO_WALL
    if markman:
        try:
            e = compute_e(v)
            mono = markman_monodromy_test(v, e) if e.is_primitive() else None
        except NonIntegralError:
            mono = None
        rec["monodromy"] = mono.value if mono else None
        rec["markman_agrees"] = (mono == Monodromy.MINUS) == (star.holds == StarVerdict.YES)
    rec["involution"] = star.holds == StarVerdict.YES and enum.kind == WallKind.FLOPPING
    return rec


def _sweep_items(d2s, rs, cs, ss, markman):
    for d2 in d2s:
        for r in rs:
            for c in cs:
                for s in ss:
                    if im.vec_gcd((r, c, s)) != 1 or c * c * d2 - 2 * r * s < 2:
                        continue
                    yield d2, r, c, s, markman


def cmd_sweep(args):
    if args.d2 is None:
        raise UserError("sweep needs --d2 (a value, list or range)")
    d2s = _range(args.d2, "--d2")
    if any(d % 2 for d in d2s):
        raise UserError("D^2 values must be even")
    rs = _range(args.r if args.r is not None else "1:8", "--r")
    if min(rs) < 1:
        raise UserError("sweep needs r >= 1 (apply shift to negative ranks)")
    cs = _range(args.c if args.c is not None else "0", "--c")
    ss = _range(args.s if args.s is not None else "-20:20", "--s")
    markman = not args.no_markman
    items = _sweep_items(d2s, rs, cs, ss, markman)
    jobs = args.jobs or 1
    counts = {k.value: 0 for k in WallKind}
    n = invol = 0
    disagreements, markman_bad = [], []
    pool = Pool(jobs) if jobs > 1 else None
    try:
        results = pool.imap(_sweep_one, items, chunksize=64) if pool else map(_sweep_one, items)
        for rec in results:
            n += 1
            counts[rec["enumeration"]] += 1
            invol += rec["involution"]
            if not rec["agree"]:
                disagreements.append(rec)
            if markman and not rec["markman_agrees"]:
                markman_bad.append(rec)
            if args.format == "json":
                sys.stdout.write(dumps(rec) + "\n")
            else:
                sys.stdout.write(
                    f"D2={rec['d2']} v=({','.join(map(str, rec['v']))}) v2={rec['v2']} "
                    f"star={rec['star']} wall={rec['enumeration']}"
                    + (f" closed={rec['closed_form']}" if rec["closed_form"] else "")
                    + (" INVOLUTION" if rec["involution"] else "") + "\n")
    finally:
        if pool:
            pool.close()
            pool.join()
    summary = {
        "records": n,
        "counts": counts,
        "involutions": invol,
        "disagreements": len(disagreements),
        "markman_mismatches": len(markman_bad) if markman else None,
        "counterexamples": [r["v"] + [r["d2"]] for r in disagreements + markman_bad][:20],
    }
    _emit(args, {"summary": summary}, [
        f"records: {n}",
        "counts: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())),
        f"involutions: {invol}",
        f"disagreements: {len(disagreements)}",
        f"markman mismatches: {summary['markman_mismatches']}",
    ])
    if disagreements or markman_bad:
        log.error("sweep found %d disagreements and %d Markman mismatches",
                  len(disagreements), len(markman_bad))
        return EXIT_INVARIANT
    return EXIT_OK


# -- lattice ------------------------------------------------------------------

def _gram_arg(args):
    if args.gram is None:
        raise UserError(f"lattice {args.op} needs --gram")
    g = args.gram if isinstance(args.gram, list) else _load_json_arg(args.gram, "--gram")
    return GramLattice(_int_matrix(g, "--gram"))


def _matrix_arg(val, flag):
    if val is None:
        raise UserError(f"missing {flag}")
    m = val if isinstance(val, list) else _load_json_arg(val, flag)
    return _int_matrix(m, flag)


def cmd_lattice(args):
    op = args.op
    if op is None:
        raise UserError("lattice needs an operation: snf, disc, complement, coinv, u-from-isotropic")
    if op == "snf":
        M = _matrix_arg(args.matrix if args.matrix is not None else args.gram, "--matrix")
        U, D, V = smith_normal_form(M)
        inv = [D[i][i] for i in range(min(len(D), len(D[0])))]
        doc = {"U": U, "D": D, "V": V, "invariant_factors": inv}
        lines = [f"invariant factors: {inv}", f"U = {dumps(U)}", f"V = {dumps(V)}"]
    elif op == "disc":
        L = _gram_arg(args)
        A = discriminant_group(L)
        doc = {"cyclic_orders": A.cyclic_orders, "order": A.order, "q_values": A.q_values,
               "b_values": A.b_values, "generators": A.generators}
        lines = ["A_L = " + (" + ".join(f"Z/{d}" for d in A.cyclic_orders) or "0"),
                 f"q = {[str(q) for q in A.q_values]}"]
    elif op == "complement":
        L = _gram_arg(args)
        S = Sublattice(_matrix_arg(args.basis, "--basis"))
        C = orthogonal_complement(L, S)
        doc = {"basis": C.basis, "gram": C.gram(L), "saturated_input": C.saturated_input}
        lines = [f"complement basis: {dumps(C.basis)}", f"gram: {dumps(C.gram(L))}"]
    elif op == "coinv":
        L = _gram_arg(args)
        g = IntegralIsometry(_matrix_arg(args.isometry, "--isometry"))
        g.check(L)
        order = args.order or isometry_order(g)
        inv, coinv, exp = invariant_coinvariant(L, g, order)
        doc = {"order": order, "invariant": inv.basis, "invariant_gram": inv.gram(L),
               "coinvariant": coinv.basis, "coinvariant_gram": coinv.gram(L), "exponent": exp}
        lines = [f"order: {order}", f"invariant: {dumps(inv.basis)}",
                 f"coinvariant: {dumps(coinv.basis)}", f"exponent: {exp}"]
    else:
        L = _gram_arg(args)
        if args.vector is None:
            raise UserError("u-from-isotropic needs --vector")
        e = args.vector if isinstance(args.vector, list) else _int_list(args.vector, "--vector")
        S = hyperbolic_from_isotropic(L, e)
        m = S.gram(L)[0][1]
        doc = {"basis": S.basis, "gram": S.gram(L), "m_squared": m}
        lines = [f"basis: {dumps(S.basis)}", f"gram: {dumps(S.gram(L))}"]
    _emit(args, doc, lines)
    return EXIT_OK


# -- fm-reduce ----------------------------------------------------------------

def cmd_fm_reduce(args):
    ns = _ns_from_args(args, required=False)
    if ns is not None:
        v = _vector(ns, args.v)
        spec = build_vertical(ns, v)
        H, vc = spec.gram, spec.v_coords
        if args.from_e:
            e = compute_e(spec.v)
            ec = spec.h_coords(e)
            w_full, w, red = reduction_to_vertical(H, vc, ec)
            w_amb = spec.ambient(w)
        else:
            wv = _vector(ns, args.w, "--w")
            w = spec.h_coords(wv)
            if w is None:
                raise UserError(f"w = {wv} is not in H_W")
            w_amb = wv.coords()
            red = fm_reduce(H, vc, w)
        extra = {"H_W": spec.to_json(), "w_ambient": list(w_amb)}
    else:
        if args.gram is None or args.v_coords is None or args.w_coords is None:
            raise UserError("fm-reduce needs --d2/--ns with --v and --w, or --gram with "
                            "--v-coords and --w-coords")
        H = GramLattice(_matrix_arg(args.gram, "--gram"))
        vc = args.v_coords if isinstance(args.v_coords, list) else _int_list(args.v_coords, "--v-coords")
        w = args.w_coords if isinstance(args.w_coords, list) else _int_list(args.w_coords, "--w-coords")
        red = fm_reduce(H, vc, w)
        extra = {}
    before = classify_enumerative(H, vc)
    after = classify_enumerative(red.new_gram, red.v_prime_coords)
    if before.kind != after.kind:
        raise InvariantViolation("FM basis change altered the wall type")
    doc = red.to_json()
    doc.update(extra)
    doc["w"] = list(w)
    doc["wall_type"] = before.kind.value
    lines = [f"r' = {red.r_prime}" + ("  (possibly twisted)" if red.possibly_twisted else ""),
             f"new gram: {dumps(red.new_gram.gram)}",
             f"v' = {list(red.v_prime_coords)}", f"wall type: {before.kind.value}"]
    _emit(args, doc, lines)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------

def _add_common(p, ns=True):
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--config", metavar="FILE", help="JSON job config (unknown keys rejected)")
    if ns:
        p.add_argument("--ns", metavar="FILE", help='NS lattice as JSON {"gram", "D"}')
        p.add_argument("--d2", help="rank-one NS generated by D with this D^2")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mukaiwalls",
        description="Exact lattice computations for vertical walls on moduli of sheaves on K3 surfaces.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="condition (*), monodromy test and wall type of v")
    _add_common(p)
    p.add_argument("--v", help="Mukai vector r,theta...,s")
    p.add_argument("--star-bound", type=int, default=None)
    p.add_argument("--no-disc", action="store_true", help="skip the discriminant action")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("isometry", help="apply an isometry word with an audit trail")
    _add_common(p)
    p.add_argument("--v")
    p.add_argument("--word", help="e.g. 'exp(-1H);shift;twist;exp(-4H)' (rightmost acts first)")
    p.set_defaults(func=cmd_isometry)

    p = sub.add_parser("sweep", help="classify a grid of rank-one vectors, streaming JSONL")
    _add_common(p, ns=False)
    p.add_argument("--d2", help="D^2 values: a, a,b,c or lo:hi")
    p.add_argument("--r", default=None)
    p.add_argument("--c", default=None)
    p.add_argument("--s", default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--no-markman", action="store_true", help="skip the monodromy cross-check")
    p.set_defaults(func=cmd_sweep, ns=None)

    p = sub.add_parser("lattice", help="lattice utilities")
    _add_common(p, ns=False)
    p.add_argument("op", nargs="?", choices=("snf", "disc", "complement", "coinv", "u-from-isotropic"))
    p.add_argument("--gram", help="Gram matrix as JSON or @file")
    p.add_argument("--matrix", help="integer matrix for snf")
    p.add_argument("--basis", help="sublattice basis rows for complement")
    p.add_argument("--isometry", help="isometry matrix (columns are images) for coinv")
    p.add_argument("--order", type=int)
    p.add_argument("--vector", help="isotropic vector for u-from-isotropic")
    p.set_defaults(func=cmd_lattice, ns=None, d2=None)

    p = sub.add_parser("fm-reduce", help="move an isotropic class of H_W to the (0,0,1) position")
    _add_common(p)
    p.add_argument("--v")
    p.add_argument("--w", help="isotropic Mukai vector in H_W")
    p.add_argument("--from-e", action="store_true", help="use w = v + e")
    p.add_argument("--gram", help="raw rank-2 Gram matrix instead of an NS lattice")
    p.add_argument("--v-coords")
    p.add_argument("--w-coords")
    p.set_defaults(func=cmd_fm_reduce)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USER
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = _merge(args, args.command)
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (UserError, MukaiError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
