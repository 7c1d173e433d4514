"""Command-line interface.

Exit codes: 0 success (for ``obstruct``: a witness exists; for ``verify``:
every identity holds), 1 no witness within caps or an identity fails,
2 input or parse error, 3 computation error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .alexander import alexander_poly, verify_rel_identity
from .catalog import catalog_get, catalog_list
from .errors import ComputationError, NotDivisibleError, ParseError
from .knotio import parse_pd, parse_presentation, parse_word, wirtinger
from .laurent import equal_up_to_unit, is_prime
from .obstruction import (
    CONSISTENT,
    EXCLUDED,
    dump_report,
    murasugi_check,
    murasugi_verify,
    obstruction_report,
    twisted_search,
    twisted_verify,
)
from .twisted import (
    delta0,
    find_representations,
    read_rep,
    trivial_representation,
    twisted_alexander,
    wada_poly,
)

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3

CAPS_ENV = "KNOT_OBSTRUCT_CAPS"
DEFAULT_CAPS = {
    "lambda_max": None,
    "max_chi": None,
    "max_nodes": 10**6,
    "max_candidates": None,
    "max_p": 5,
    "max_n": 2,
}


class InputError(ValueError):
    pass


# -- inputs ----------------------------------------------------------------


class Source:
    """A resolved input: a presentation, and the diagram when there is one."""

    def __init__(self, label, pres, pd=None):
        self.label = label
        self.pres = pres
        self.pd = pd


def _read_text(value):
    path = Path(value)
    if path.is_file():
        return path.read_text()
    return None


def _from_text(label, text):
    stripped = text.strip()
    if stripped.upper().startswith("PD"):
        pd = parse_pd(stripped)
        return Source(label, wirtinger(pd), pd)
    if stripped.lower().startswith("gens"):
        return Source(label, parse_presentation(stripped))
    raise InputError(f"{label}: expected a PD code or a 'gens: ...' presentation")


def resolve_source(value) -> Source:
    """Catalog name, file (PD or presentation) or a literal code, in that order."""
    try:
        entry = catalog_get(value)
    except ValueError:
        entry = None
    if entry is not None:
        return Source(entry.name, entry.presentation(), entry.pd() if entry.is_pd else None)
    text = _read_text(value)
    return _from_text(value, text if text is not None else value)


def source_from_args(args) -> Source:
    chosen = [(k, getattr(args, k)) for k in ("knot", "pd", "presentation") if getattr(args, k, None)]
    if len(chosen) != 1:
        raise InputError("give exactly one of --knot, --pd, --presentation")
    kind, value = chosen[0]
    if kind == "knot":
        entry = catalog_get(value)
        return Source(entry.name, entry.presentation(), entry.pd() if entry.is_pd else None)
    text = _read_text(value)
    if text is None:
        text = value
    if kind == "pd":
        pd = parse_pd(text)
        return Source(value, wirtinger(pd), pd)
    return Source(value, parse_presentation(text))


def load_rep(value, pres, p=None):
    """``trivial`` / ``trivial:N`` or a representation file."""
    if value.startswith("trivial"):
        if p is None:
            raise InputError("a trivial representation needs a prime (--p or --mod)")
        n = int(value.split(":", 1)[1]) if ":" in value else 1
        return trivial_representation(pres, p, n)
    text = _read_text(value)
    if text is None:
        raise InputError(f"representation file {value!r} not found")
    rep = read_rep(text, pres)
    if p is not None and rep.p != p:
        raise InputError(f"representation is over F_{rep.p}, expected F_{p}")
    return rep


def load_caps(args):
    caps = dict(DEFAULT_CAPS)
    env = os.environ.get(CAPS_ENV, "").strip()
    if env:
        for item in env.replace(";", ",").split(","):
            if not item.strip():
                continue
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in caps:
                raise InputError(f"{CAPS_ENV}: unknown cap {key!r}")
            try:
                caps[key] = int(val)
            except ValueError:
                raise InputError(f"{CAPS_ENV}: {key} must be an integer") from None
    for key in caps:
        val = getattr(args, key, None)
        if val is not None:
            caps[key] = val
    return caps


def _check_prime(p, flag):
    if not is_prime(p):
        raise InputError(f"{flag} {p} is not prime")


def _rep_dict(rep):
    return {"p": rep.p, "n": rep.n, "images": [[list(row) for row in m] for m in rep.images]}


# -- commands ---------------------------------------------------------------


def cmd_alexander(args):
    src = source_from_args(args)
    report = {"input": src.label, "component": args.component,
              "delta": str(alexander_poly(src.pres, component=args.component))}
    lines = [report["delta"]]
    if args.mod is not None:
        _check_prime(args.mod, "--mod")
        report["p"] = args.mod
        report["delta_mod_p"] = str(alexander_poly(src.pres, p=args.mod, component=args.component))
        lines.append(f"mod {args.mod}: {report['delta_mod_p']}")
    return report, "\n".join(lines), EXIT_OK


def _twisted_entry(pres, rep, component, mod_check):
    entry = {"rep": _rep_dict(rep)}
    try:
        w = wada_poly(pres, rep, component=component)
        entry["wada"] = {"numerator": str(w.numerator), "denominator": str(w.denominator), "column": w.column}
        entry["delta0"] = str(delta0(pres, rep, component=component))
        entry["delta"] = str(twisted_alexander(pres, rep, component=component))
    except (ComputationError, NotDivisibleError) as exc:
        entry["anomaly"] = str(exc)
    if mod_check:
        classical = alexander_poly(pres, p=rep.p, component=component)
        entry["classical_mod_p"] = str(classical)
        if "delta" in entry:
            tw = twisted_alexander(pres, rep, component=component)
            entry["matches_classical"] = equal_up_to_unit(tw, classical)
    return entry


def cmd_twisted(args):
    src = source_from_args(args)
    caps = load_caps(args)
    report = {"input": src.label}
    if args.rep:
        reps = [load_rep(args.rep, src.pres, args.mod)]
    else:
        p, n = args.search
        _check_prime(p, "--search")
        cls = None
        if args.conjugacy_class:
            cls = [[int(x) for x in row.split()] for row in args.conjugacy_class.split(";")]
        found = find_representations(
            src.pres, p, n, max_nodes=caps["max_nodes"], max_candidates=caps["max_candidates"],
            conjugacy_class=cls, up_to_conjugacy=args.up_to_conjugacy,
            max_p=caps["max_p"], max_n=caps["max_n"])
        reps = found.reps
        report.update(search={"p": p, "n": n, "count": len(reps), "truncated": found.truncated,
                              "nodes": found.nodes, "up_to_conjugacy": args.up_to_conjugacy})
    report["representations"] = [_twisted_entry(src.pres, rep, args.component, args.mod_check) for rep in reps]
    lines = []
    if "search" in report:
        s = report["search"]
        lines.append(f"{s['count']} representation(s) into GL_{s['n']}(F_{s['p']})"
                     + (" [TRUNCATED]" if s["truncated"] else ""))
    for i, e in enumerate(report["representations"], 1):
        lines.append(f"rep {i}: {e['rep']['images']}")
        if "anomaly" in e:
            lines.append(f"  anomaly: {e['anomaly']}")
        else:
            wd = e["wada"]
            lines.append(f"  Wada: ({wd['numerator']}) / ({wd['denominator']})")
            lines.append(f"  Delta0: {e['delta0']}")
            lines.append(f"  Delta: {e['delta']}")
        if "classical_mod_p" in e:
            lines.append(f"  classical mod p: {e['classical_mod_p']}"
                         + (f" (match: {e['matches_classical']})" if "matches_classical" in e else ""))
    return report, "\n".join(lines), EXIT_OK


def _witness_line(w):
    return "  " + ", ".join(f"{k}={v}" for k, v in w.items())


def cmd_obstruct(args):
    src = source_from_args(args)
    _check_prime(args.p, "--p")
    if args.r < 1:
        raise InputError("--r must be positive")
    if src.pres.num_components != 1:
        raise InputError("obstruct needs a knot")
    caps = load_caps(args)
    if args.twisted is None:
        delta = alexander_poly(src.pres, p=args.p)
        ws = murasugi_check(delta, args.p, args.r, lambda_max=caps["lambda_max"])
        report = obstruction_report(src.label, args.p, args.r, {"lambda_max": caps["lambda_max"]},
                                    ws, True, mode="classical", delta_mod_p=str(delta))
    else:
        report = _obstruct_twisted(src, args, caps)
    lines = [f"{src.label}: q = {report['q']}, mode {report['mode']}"]
    if report["mode"] == "classical":
        lines.append(f"Delta mod {args.p}: {report['delta_mod_p']}")
        lines += [_witness_line(w) for w in report["witnesses"]]
    else:
        for i, e in enumerate(report["representations"], 1):
            status = e.get("skipped") or f"{len(e['witnesses'])} witness(es)"
            lines.append(f"rep {i} {e['rep']['images']}: Delta_rho = {e.get('delta_rho', '-')}: {status}")
            lines += [_witness_line(w) for w in e["witnesses"]]
    if report["verdict"] == CONSISTENT:
        lines.append("verdict: consistent with period")
    else:
        lines.append("verdict: period excluded within caps" + ("" if report["exhausted"] else " (search truncated)"))
    return report, "\n".join(lines), EXIT_OK if report["verdict"] == CONSISTENT else EXIT_NONE


def _obstruct_twisted(src, args, caps):
    n = args.twisted
    if args.rep:
        reps, truncated = [load_rep(args.rep, src.pres, args.p)], False
        if reps[0].n != n:
            raise InputError(f"representation has dimension {reps[0].n}, not {n}")
    else:
        found = find_representations(src.pres, args.p, n, max_nodes=caps["max_nodes"],
                                     max_candidates=caps["max_candidates"],
                                     max_p=caps["max_p"], max_n=caps["max_n"])
        reps, truncated = found.reps, found.truncated
    entries, flat = [], []
    exhausted = not truncated
    excluded = False
    for i, rep in enumerate(reps):
        entry = {"rep": _rep_dict(rep), "witnesses": []}
        entries.append(entry)
        try:
            delta = twisted_alexander(src.pres, rep)
        except (ComputationError, NotDivisibleError) as exc:
            entry["skipped"] = f"anomaly: {exc}"
            continue
        if not delta:
            entry["skipped"] = "twisted polynomial is zero"
            continue
        entry["delta_rho"] = str(delta)
        ws, done = twisted_search(delta, args.p, args.r, n, lambda_max=caps["lambda_max"],
                                  max_chi=caps["max_chi"])
        entry["witnesses"] = [w.as_dict() for w in ws]
        entry["exhausted"] = done
        exhausted = exhausted and done
        flat += [dict(w, rep=i) for w in entry["witnesses"]]
        if not ws:
            excluded = True
    caps_used = {k: caps[k] for k in ("lambda_max", "max_chi", "max_nodes", "max_candidates")}
    report = obstruction_report(src.label, args.p, args.r, caps_used, [], exhausted,
                                mode="twisted", n=n, representations=entries)
    report["witnesses"] = flat
    report["verdict"] = EXCLUDED if excluded or not flat else CONSISTENT
    return report


def cmd_verify(args):
    if args.identity == "rel":
        src = source_from_args(args)
        if src.pd is None:
            raise InputError("verify rel needs a diagram")
        report = verify_rel_identity(src.pd, component=args.component, p=args.mod).as_dict()
        report["input"] = src.label
        ok = report["equal_up_to_unit"]
        text = (f"{report['identity']} with lambda = {report['lambda']}\n"
                f"  lhs: {report['lhs']}\n  rhs: {report['rhs']}\n  equal up to units: {ok}")
        return report, text, EXIT_OK if ok else EXIT_NONE
    _check_prime(args.p, "--p")
    if not args.kbar:
        raise InputError("--kbar is required")
    src = source_from_args(args)
    kbar = resolve_source(args.kbar)
    if args.identity == "murasugi":
        report = murasugi_verify(src.pres, kbar.pres, args.lam, args.p, args.r)
        report.update(input=src.label, kbar=kbar.label)
        text = (f"{report['identity']}\n  lhs: {report['lhs']}\n  rhs: {report['rhs']}\n"
                f"  equal up to units: {report['equal']}")
        return report, text, EXIT_OK if report["equal"] else EXIT_NONE
    if not (args.rep and args.rep_bar and args.la):
        raise InputError("verify twisted needs --rep, --rep-bar and --la")
    rep = load_rep(args.rep, src.pres, args.p)
    repbar = load_rep(args.rep_bar, kbar.pres, args.p)
    word = parse_word(args.la, src.pres)
    link = link_rep = None
    if args.link:
        link = resolve_source(args.link)
        if not args.link_rep:
            raise InputError("--link needs --link-rep")
        link_rep = load_rep(args.link_rep, link.pres, args.p)
    report = twisted_verify(src.pres, rep, kbar.pres, repbar, word, args.lam, args.p, args.r,
                            link.pres if link else None, link_rep, args.component)
    report.update(input=src.label, kbar=kbar.label)
    lines = [f"D = det(I - rho(l_A) t^{args.lam}) = {report['D']}"]
    for c in report["checks"]:
        lines.append(f"{c['identity']}\n  lhs: {c['lhs']}\n  rhs: {c['rhs']}\n  equal up to units: {c['equal']}")
    return report, "\n".join(lines), EXIT_OK if report["equal"] else EXIT_NONE


def cmd_catalog(args):
    entries = catalog_list()
    report = {"entries": [{"name": e.name, "reference": e.reference, "notes": e.notes} for e in entries]}
    text = "\n".join(f"{e.name:10s} {e.reference:40s} {e.notes}" for e in entries)
    return report, text, EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_input(p, required=True):
    g = p.add_argument_group("input (exactly one)")
    g.add_argument("--knot", help="catalog name (see the 'catalog' command)")
    g.add_argument("--pd", help="PD code file or literal 'PD[X(...),...]'")
    g.add_argument("--presentation", help="presentation file or literal 'gens: ...; rels: ...'")


def _add_caps(p):
    p.add_argument("--lambda-max", dest="lambda_max", type=int)
    p.add_argument("--max-chi", dest="max_chi", type=int)
    p.add_argument("--max-nodes", dest="max_nodes", type=int)
    p.add_argument("--max-candidates", dest="max_candidates", type=int)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotperiod",
        description="Alexander polynomials, twisted invariants and periodicity obstructions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alexander", parents=[common], help="classical Alexander polynomial")
    _add_input(a)
    a.add_argument("--mod", type=int, help="also reduce mod this prime")
    a.add_argument("--component", type=int, default=0)
    a.set_defaults(func=cmd_alexander)

    t = sub.add_parser("twisted", parents=[common], help="twisted Alexander polynomials")
    _add_input(t)
    src = t.add_mutually_exclusive_group(required=True)
    src.add_argument("--rep", help="representation file, or trivial / trivial:N (needs --mod)")
    src.add_argument("--search", nargs=2, type=int, metavar=("P", "N"),
                     help="enumerate representations into GL_N(F_P)")
    t.add_argument("--mod", type=int, help="prime for a trivial representation")
    t.add_argument("--mod-check", action="store_true", help="compare with the classical polynomial mod p")
    t.add_argument("--up-to-conjugacy", action="store_true")
    t.add_argument("--conjugacy-class", help="restrict images to the class of this matrix, rows split by ';'")
    t.add_argument("--component", type=int, default=0)
    _add_caps(t)
    t.set_defaults(func=cmd_twisted)

    o = sub.add_parser("obstruct", parents=[common], help="search for periodicity witnesses")
    _add_input(o)
    o.add_argument("--p", type=int, required=True)
    o.add_argument("--r", type=int, default=1)
    o.add_argument("--twisted", type=int, metavar="N", help="use the twisted condition in dimension N")
    o.add_argument("--rep", help="with --twisted: a single representation instead of a search")
    _add_caps(o)
    o.set_defaults(func=cmd_obstruct)

    v = sub.add_parser("verify", parents=[common], help="check an identity on given data")
    v.add_argument("identity", choices=("rel", "murasugi", "twisted"))
    _add_input(v)
    v.add_argument("--kbar", help="quotient knot: catalog name, file or literal")
    v.add_argument("--lambda", dest="lam", type=int, default=1)
    v.add_argument("--p", type=int)
    v.add_argument("--r", type=int, default=1)
    v.add_argument("--mod", type=int, help="(rel) work mod this prime")
    v.add_argument("--rep")
    v.add_argument("--rep-bar", dest="rep_bar")
    v.add_argument("--la", help="word for the axis longitude in the knot's generators")
    v.add_argument("--link", help="(twisted) the link K u A")
    v.add_argument("--link-rep", dest="link_rep")
    v.add_argument("--component", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", parents=[common], help="list built-in knots")
    c.set_defaults(func=cmd_catalog)
    return parser


def _emit(args, report, text):
    out = dump_report(report) if args.format == "json" else text + "\n"
    if args.output:
        Path(args.output).write_text(out)
    else:
        sys.stdout.write(out)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "identity", None) in ("murasugi", "twisted") and args.p is None:
            raise InputError("--p is required")
        report, text, code = args.func(args)
    except (ParseError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    _emit(args, report, text)
    return code


if __name__ == "__main__":
    sys.exit(main())
