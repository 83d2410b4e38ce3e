"""Command-line entry points.

Thin wrappers over the package: each subcommand parses files, calls one
operation, and writes a JSON report or text trace. Exit codes: 0 success,
1 a verification failed (golden mismatch, invalid witness), 2 usage or
file problems.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (
    BijectionWitness,
    InjectionWitness,
    load_instance,
    layout_from_injection,
    verify_bijection,
    verify_injection,
    Mode,
)
from .division import LONG, SHORT, Schedule, long_divide, short_divide
from .errors import CarddivError
from .hilbert import a_elem, c_elem, load_family, swallow_map
from .laws import CbVariant, EuclidStep, TaggedElement, cb_combine, euclid_divide, subtract
from .shipshape import ShipOutPolicy, render_trace, run_pass
from .solitaire import Strategy, estimate_win_rate
from .worked_deal import worked_layout

_POLICIES = {"all": ShipOutPolicy.ALL_BAD, "leftmost": ShipOutPolicy.LEFTMOST_ONLY}


def _write_json(doc, path: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_divide(args) -> int:
    n, a_elems, b_elems, witness, file_mode = load_instance(args.input)
    mode = Mode(args.mode) if args.mode else file_mode
    policy = _POLICIES[args.policy]
    if args.trace:
        layout = layout_from_injection(n, a_elems, b_elems, witness, mode)
        _final, trace = run_pass(layout, policy, capture_states=True)
        with open(args.trace, "w") as fh:
            fh.write(render_trace(trace))
    if mode is Mode.LONG:
        report = long_divide(n, a_elems, b_elems, witness, Schedule.parse(args.schedule), policy)
        doc = report.to_doc()
        ok = verify_injection(report.result)
    else:
        outcome = short_divide(n, a_elems, b_elems, witness, policy)
        doc = outcome.to_doc()
        ok = verify_injection(outcome.result)
    _write_json(doc, args.output)
    if not ok:
        print("result failed injectivity verification", file=sys.stderr)
        return 1
    return 0


def _cmd_golden(args) -> int:
    _final, trace = run_pass(worked_layout(), ShipOutPolicy.ALL_BAD, capture_states=True)
    produced = render_trace(trace)
    try:
        with open(args.golden) as fh:
            expected = fh.read()
    except OSError as exc:
        print(f"cannot read golden file: {exc}", file=sys.stderr)
        return 2
    if produced != expected:
        import difflib

        diff = difflib.unified_diff(
            expected.splitlines(), produced.splitlines(), "golden", "engine", lineterm=""
        )
        for line in list(diff)[:40]:
            print(line, file=sys.stderr)
        print("golden trace mismatch", file=sys.stderr)
        return 1
    print(f"golden trace matches ({len(produced)} bytes)")
    return 0


def _pairs_to_witness(pairs, provenance=None) -> InjectionWitness:
    domain = tuple(a for a, _b in pairs)
    codomain_seen = []
    for _a, b in pairs:
        if b not in codomain_seen:
            codomain_seen.append(b)
    return InjectionWitness(domain, tuple(codomain_seen), dict(pairs), provenance=provenance)


def _cmd_laws(args) -> int:
    with open(args.input) as fh:
        doc = json.load(fh)
    if args.law == "cb":
        f_pairs = doc["f"]
        g_pairs = doc["g"]
        f_w = InjectionWitness(
            tuple(a for a, _ in f_pairs), tuple(b for b, _ in g_pairs), dict(map(tuple, f_pairs))
        )
        g_w = InjectionWitness(f_w.codomain, f_w.domain, dict(map(tuple, g_pairs)))
        result = cb_combine(f_w, g_w, CbVariant(args.variant))
        _write_json({"law": "cb", "variant": args.variant, "result": result.pairs()}, args.output)
        return 0
    if args.law == "subtract":
        h_pairs = [
            (TaggedElement(x[0], x[1]), TaggedElement(y[0], y[1])) for x, y in doc["h"]
        ]
        domain = tuple(x for x, _ in h_pairs)
        codomain = []
        for _x, y in h_pairs:
            if y not in codomain:
                codomain.append(y)
        h = InjectionWitness(domain, tuple(codomain), dict(h_pairs))
        result = subtract(h, doc.get("c_tag", "C"))
        _write_json(
            {"law": "subtract", "result": [[list(x), list(y)] for x, y in result.map.items()]},
            args.output,
        )
        return 0
    # euclid
    m, n = int(doc["m"]), int(doc["n"])
    a_elems, b_elems = doc["A"], doc["B"]
    mapping = {(int(i), a): (int(j), b) for (i, a), (j, b) in doc["F"]}
    big = BijectionWitness(
        tuple((i, a) for i in range(m) for a in a_elems),
        tuple((j, b) for j in range(n) for b in b_elems),
        mapping,
    )
    r_elems, a_wit, b_wit = euclid_divide(m, n, a_elems, b_elems, big, EuclidStep(args.step))
    ok = verify_bijection(a_wit) and verify_bijection(b_wit)
    _write_json(
        {
            "law": "euclid",
            "R": list(r_elems),
            "a_wit": [[a, list(v)] for a, v in a_wit.pairs()],
            "b_wit": [[b, list(v)] for b, v in b_wit.pairs()],
        },
        args.output,
    )
    return 0 if ok else 1


def _cmd_chains(args) -> int:
    family = load_family(args.input)
    results = []
    for query in args.query:
        if query.startswith("a:"):
            elem = a_elem(query[2:])
        else:
            elem = c_elem(int(query))
        results.append({"query": query, "value": swallow_map(family, elem)})
    _write_json({"results": results}, args.output)
    return 0


def _cmd_solitaire(args) -> int:
    report = estimate_win_rate(
        Strategy(args.strategy), args.trials, seed=args.seed, cap=args.cap
    )
    _write_json(report.to_doc(), args.output)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.persist, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="carddiv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("divide", help="divide an instance file's injection by its suit count")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["long", "short"], default=None)
    p.add_argument("--schedule", default="naive", help="naive, halving, or comma-separated k's")
    p.add_argument("--policy", choices=sorted(_POLICIES), default="all")
    p.add_argument("--output", default=None)
    p.add_argument("--trace", default=None, help="write the first pass's rendered trace here")
    p.set_defaults(func=_cmd_divide)

    p = sub.add_parser("golden", help="re-derive the demonstration trace and diff it")
    p.add_argument("--golden", default="golden/section1.trace")
    p.set_defaults(func=_cmd_golden)

    p = sub.add_parser("laws", help="run a cancellation law on a witness file")
    p.add_argument("law", choices=["cb", "subtract", "euclid"])
    p.add_argument("--input", required=True)
    p.add_argument("--variant", choices=[v.value for v in CbVariant], default="give_forward")
    p.add_argument("--step", choices=[s.value for s in EuclidStep], default="naive")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_laws)

    p = sub.add_parser("chains", help="evaluate the hiding injection of a chain family")
    p.add_argument("--input", required=True)
    p.add_argument("query", nargs="+", help="a:<tag> for tagged elements, integers for naturals")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_chains)

    p = sub.add_parser("solitaire", help="Monte Carlo win-rate estimate")
    p.add_argument("--strategy", choices=[s.value for s in Strategy], default="random")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=2000)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_solitaire)

    p = sub.add_parser("serve", help="start the HTTP play service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--persist", default=None, help="snapshot sessions to this file on shutdown")
    p.add_argument("--ui", default="frontend", help="directory with the built browser client")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CarddivError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
