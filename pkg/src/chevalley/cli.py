"""
chevalley: command-line front end.

Every subcommand prints one JSON report (or writes it to --out). Exit code
0 means every check in the report passed, 1 means a verification failure,
2 a usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from . import __version__
from .acceptance import CRITERIA, DEFAULT_SEED, run_all
from .group import GroupWord, build_table, group
from .rings import Ring, RingError, Unsupported
from .roots import UnsupportedType, build


class UsageError(Exception):
    pass


def _ring(desc: str) -> Ring:
    try:
        return Ring.parse(desc)
    except (RingError, ValueError) as e:
        raise UsageError("bad ring descriptor %r: %s" % (desc, e))


def _load(path):
    if path is None:
        raise UsageError("--in is required")
    with open(path) as f:
        return json.load(f)


def _word(data) -> GroupWord:
    if isinstance(data, dict) and "word" in data:
        data = data["word"]
    return GroupWord.from_json(data)


def _root(text):
    return tuple(int(v) for v in text.replace("(", "").replace(")", "").split(","))


# subcommands ---------------------------------------------------------------


def cmd_roots(a):
    return build(a.type).to_json(), True


def cmd_table(a):
    return build_table(build(a.type).label).to_json(), True


def cmd_eval(a):
    G = group(a.type, _ring(a.ring))
    x = _word(_load(a.input)).evaluate(G)
    return {"type": a.type, "ring": G.ring.to_json(), "element": x.to_json()}, True


def cmd_decompose(a):
    from .decomposition import gauss_decompose

    G = group(a.type, _ring(a.ring))
    x = _word(_load(a.input)).evaluate(G)
    f = gauss_decompose(x, a.orientation)
    rebuilt = (G.unipotent_word(f.u_params).evaluate(G) * G.torus(f.torus)
               * G.unipotent_word(f.v_params).evaluate(G) * G.weyl_word(f.w).evaluate(G))
    ok = rebuilt == x
    return {"factorization": f.to_json(), "round_trip": ok}, ok


def cmd_extract(a):
    from .extraction import ExtractionError, extract

    G = group(a.type, _ring(a.ring))
    h = _word(_load(a.input)).evaluate(G)
    try:
        res = extract(h)
    except ExtractionError as e:
        return {"error": type(e).__name__, "message": str(e)}, False
    ok = res.verify(h)
    out = res.to_json()
    out["verified"] = ok
    return out, ok


def cmd_generic(a):
    from .generic import AffineAlgebra, verify_generic_lemma

    if a.type.upper() != "A2":
        raise Unsupported("generic-check covers A2 (l = 2)")
    phi = build(a.type)
    w = phi.weyl([int(c) - 1 for c in a.w.replace(",", " ").split()] if a.w else [])
    rep = verify_generic_lemma(w, _root(a.alpha), alg=AffineAlgebra(2), points=a.points, seed=a.seed)
    return rep.to_json(), rep.ok


def _subgroup(a):
    from .normal import normal_closure

    G = group(a.type, _ring(a.ring))
    data = _load(a.input)
    words = data if isinstance(data, list) and data and isinstance(data[0], list) else [data]
    gens = [_word(w).evaluate(G) for w in words]
    return G, normal_closure(G, gens)


def cmd_level(a):
    from .normal import level

    G, H = _subgroup(a)
    lev = level(H, check=False)
    return {"order": len(H), **lev.to_json()}, lev.consistent


def cmd_sandwich(a):
    from .normal import sandwich_check

    G, H = _subgroup(a)
    rep = sandwich_check(H, strict=False)
    return rep.to_json(), rep.ok


def cmd_verify_all(a):
    only = None
    if a.only:
        only = {int(v) for v in a.only.split(",")}
    results = run_all(quick=a.quick, seed=a.seed, only=only)
    for r in results:
        logging.getLogger("chevalley").info(r.line())
        print(r.line(), file=sys.stderr)
    ok = all(r.ok for r in results)
    return {
        "quick": a.quick,
        "results": [r.to_json() for r in results],
        "failures": [r.number for r in results if not r.ok],
    }, ok


COMMANDS = {
    "roots": cmd_roots,
    "table": cmd_table,
    "eval": cmd_eval,
    "decompose": cmd_decompose,
    "extract": cmd_extract,
    "generic-check": cmd_generic,
    "level": cmd_level,
    "sandwich": cmd_sandwich,
    "verify-all": cmd_verify_all,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chevalley", description=__doc__.strip().splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="RNG seed (default %(default)s)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timestamp", action="store_true", help="add a timestamp field to the report")
    common.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, type_=True, ring=False, inp=False):
        s = sub.add_parser(name, parents=[common], help=help)
        if type_:
            s.add_argument("--type", required=True, help="root system label, e.g. A2, B2, G2")
        if ring:
            s.add_argument("--ring", required=True, help="ring descriptor: int, mod:N or gf:P")
        if inp:
            s.add_argument("--in", dest="input", help="JSON input file")
        return s

    add("roots", "root system and Weyl group data")
    add("table", "structure constants N_ab")
    add("eval", "evaluate a GroupWord", ring=True, inp=True)
    s = add("decompose", "Gauss decomposition of a GroupWord", ring=True, inp=True)
    s.add_argument("--orientation", choices=["UBw", "U-Bw"], default="UBw")
    add("extract", "certified root element in the normal closure of a GroupWord", ring=True, inp=True)
    s = add("generic-check", "generic-element construction in SL_3 (l = 2)")
    s.add_argument("--w", default="", help="reduced word in simple reflections, e.g. '1 2'")
    s.add_argument("--alpha", default="1,0", help="positive root, e.g. 1,0")
    s.add_argument("--points", type=int, default=20, help="identity-testing points")
    add("level", "level of the normal closure of GroupWords", ring=True, inp=True)
    add("sandwich", "sandwich check for the normal closure of GroupWords", ring=True, inp=True)
    s = add("verify-all", "run the acceptance suite", type_=False)
    s.add_argument("--quick", action="store_true", help="reduced sample sizes")
    s.add_argument("--only", help="comma-separated criterion numbers (1-%d)" % len(CRITERIA))
    return p


def main(argv=None) -> int:
    p = parser()
    a = p.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * a.verbose, format="%(levelname)s %(name)s: %(message)s")
    random.seed(a.seed)
    try:
        report, ok = COMMANDS[a.command](a)
    except (UsageError, UnsupportedType, Unsupported, FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        p.print_usage(sys.stderr)
        print("chevalley: error: %s" % e, file=sys.stderr)
        return 2
    out = {"command": a.command, "seed": a.seed, "ok": bool(ok), "report": report}
    if a.timestamp:
        out["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    text = json.dumps(out, indent=2, sort_keys=True, default=str)
    if a.out:
        with open(a.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
