"""Command-line interface.

Subcommands: simulate (diagram files and SVG), scan (classify all 256
rules), curve (compression-curve CSV), programmability (report JSON),
lattice (block-decomposition of a diagram file), agent (behavioral
assessment), table (build a coding table file).

Expensive commands (scan, programmability) go through an append-only
run cache of JSON-line records keyed by a hash of the command, its
parameters, and the package version.  A cache hit replays the stored
payload byte for byte.  The cache lives under $PROGMETER_CACHE_DIR,
defaulting to ~/.cache/progmeter.

Exit codes: 0 success, 2 usage error, 1 runtime error.
"""

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__, agents, behavior, compress, eca, lattice, programmability

CACHE_ENV = "PROGMETER_CACHE_DIR"


def _cache_file():
    root = os.environ.get(CACHE_ENV) or os.path.join(
        os.path.expanduser("~"), ".cache", "progmeter")
    os.makedirs(root, exist_ok=True)
    return os.path.join(root, "runs.jsonl")


def _cache_key(command, params):
    blob = json.dumps(
        {"command": command, "params": params, "version": __version__},
        sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _cache_lookup(key):
    path = _cache_file()
    if not os.path.exists(path):
        return None
    hit = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                continue
            if rec.get("key") == key:
                hit = rec["payload"]
    return hit


def _cache_store(key, payload):
    rec = json.dumps({"key": key, "timestamp": time.time(), "payload": payload})
    with open(_cache_file(), "a", encoding="utf-8") as fh:
        fh.write(rec + "\n")


def _write_out(path, data):
    binary = isinstance(data, bytes)
    if path == "-":
        if binary:
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            sys.stdout.write(data)
        return
    with open(path, "wb" if binary else "w") as fh:
        fh.write(data)


def _svg(cells):
    h, w = cells.shape
    px = 4
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'shape-rendering="crispEdges">' % (w * px, h * px),
        '<rect width="%d" height="%d" fill="#ffffff"/>' % (w * px, h * px),
    ]
    for r, c in zip(*np.nonzero(cells)):
        parts.append('<rect x="%d" y="%d" width="%d" height="%d" fill="#000000"/>'
                     % (c * px, r * px, px, px))
    parts.append("</svg>\n")
    return "\n".join(parts)


def _cmd_simulate(args, parser):
    if not 0 <= args.rule <= 255:
        parser.error("--rule must be in 0..255")
    if args.width < 3:
        parser.error("--width must be at least 3")
    if args.t < 0:
        parser.error("--t must be non-negative")
    init = (eca.single_cell_config(args.width) if args.init == "single"
            else eca.random_config(args.width, args.seed))
    diag = eca.evolve(args.rule, init, args.t)
    if args.format == "ascii":
        _write_out(args.out, eca.diagram_to_text(diag))
    elif args.format == "packed":
        _write_out(args.out, eca.diagram_to_bytes(diag))
    else:
        _write_out(args.out, _svg(diag.cells))
    return 0


def _scan_csv(width, t, n_inputs, seed, compressor):
    lines = ["rule,label,terminal_ratio,slope,input_variability"]
    for rule in range(256):
        est = behavior.classify_rule(rule, width=width, t_max=t,
                                     n_inputs=n_inputs, seed=seed,
                                     compressor=compressor)
        lines.append("%d,%s,%.6f,%.4f,%.6f" % (
            rule, est.label, est.terminal_ratio, est.slope_bits_per_step,
            est.input_variability))
    return "\n".join(lines) + "\n"


def _cmd_scan(args, parser):
    params = {"width": args.width, "t": args.t, "n_inputs": args.n_inputs,
              "seed": args.seed, "compressor": args.compressor}
    key = _cache_key("scan", params)
    payload = _cache_lookup(key)
    if payload is None:
        payload = _scan_csv(**params)
        _cache_store(key, payload)
    else:
        print("cache hit", file=sys.stderr)
    _write_out(args.out, payload)
    return 0


def _cmd_curve(args, parser):
    if not 0 <= args.rule <= 255:
        parser.error("--rule must be in 0..255")
    init = (eca.single_cell_config(args.width) if args.init == "single"
            else eca.random_config(args.width, args.seed))
    curve = behavior.compression_curve(args.rule, init, args.t_max,
                                       args.t_step, args.compressor)
    _write_out(args.out, behavior.curve_to_csv(curve, args.seed))
    return 0


def _cmd_programmability(args, parser):
    if not 0 <= args.rule <= 255:
        parser.error("--rule must be in 0..255")
    params = {"rule": args.rule, "width": args.width, "n": args.n,
              "t_max": args.t_max, "t_step": args.t_step,
              "compressor": args.compressor}
    key = _cache_key("programmability", params)
    payload = _cache_lookup(key)
    cached = payload is not None
    if not cached:
        report = programmability.programmability_coefficient(
            args.rule, args.width, args.n, args.t_max, args.t_step,
            args.compressor)
        payload = json.dumps(report.to_dict(), sort_keys=True)
        _cache_store(key, payload)
    out = '{"cached": %s, "report": %s}\n' % ("true" if cached else "false", payload)
    _write_out(args.out, out)
    return 0


def _cmd_lattice(args, parser):
    if not os.path.exists(args.table):
        parser.error("table file %r does not exist" % (args.table,))
    if not os.path.exists(args.input):
        parser.error("input file %r does not exist" % (args.input,))
    table = lattice.load_table(args.table)
    with open(args.input, encoding="utf-8") as fh:
        cells = eca.text_to_cells(fh.read())
    res = lattice.bdm(cells, table, args.compressor)
    out = json.dumps({
        "input": args.input,
        "height": int(cells.shape[0]),
        "width": int(cells.shape[1]),
        "b": table.b,
        "bdm": res.value,
        "padded": res.padded,
        "fallback_blocks": res.fallback_blocks,
    }, sort_keys=True)
    _write_out(args.out, out + "\n")
    return 0


def _cmd_agent(args, parser):
    spec = agents.AgentSpec(kind=args.kind, seed=args.seed)
    assessment = agents.assess(spec, steps=args.steps,
                               seeds=tuple(args.stream_seeds),
                               compressor=args.compressor)
    doc = {
        "agent": args.kind,
        "variability": assessment.variability,
        "controllability": assessment.controllability,
        "label": assessment.label,
        "per_stream_c_bits": assessment.per_stream_c_bits,
    }
    if args.table is not None:
        if not os.path.exists(args.table):
            parser.error("table file %r does not exist" % (args.table,))
        table = lattice.load_table(args.table)
        bdm3 = {}
        for name, seed in zip(("constant", "periodic", "random"), args.stream_seeds):
            stream = agents.stimulus_stream(name, args.steps, seed)
            traj = agents.simulate_agent(spec, stream, args.steps)
            bdm3[name] = agents.behavioral_complexity(
                traj, args.compressor, table)[1]
        doc["per_stream_bdm3"] = bdm3
    _write_out(args.out, json.dumps(doc, sort_keys=True) + "\n")
    return 0


def _cmd_table(args, parser):
    table = lattice.build_coding_table(args.b, args.samples, args.seed)
    lattice.save_table(table, args.out)
    summary = json.dumps({
        "b": table.b, "samples": args.samples, "seed": args.seed,
        "total": table.total, "distinct": len(table.counts), "out": args.out,
    }, sort_keys=True)
    sys.stdout.write(summary + "\n")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="progmeter",
        description="Behavioral complexity and programmability measurement")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="evolve a rule and write the diagram")
    p.add_argument("--rule", type=int, required=True)
    p.add_argument("--width", type=int, default=101)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--init", choices=("single", "random"), default="single")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--format", choices=("ascii", "packed", "svg"), default="ascii")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("scan", help="classify all 256 rules to CSV")
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--n-inputs", type=int, default=10)
    p.add_argument("--seed", type=int, default=behavior.DEFAULT_CLASSIFY_SEED)
    p.add_argument("--compressor", choices=sorted(compress.COMPRESSORS),
                   default=behavior.DEFAULT_CLASSIFY_COMPRESSOR)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("curve", help="compression curve CSV for one rule")
    p.add_argument("--rule", type=int, required=True)
    p.add_argument("--width", type=int, default=100)
    p.add_argument("--t-max", type=int, default=100)
    p.add_argument("--t-step", type=int, default=10)
    p.add_argument("--init", choices=("single", "random"), default="random")
    p.add_argument("--seed", type=int, default=behavior.DEFAULT_CLASSIFY_SEED)
    p.add_argument("--compressor", choices=sorted(compress.COMPRESSORS),
                   default="builtin-lzss")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("programmability", help="coefficient report JSON")
    p.add_argument("--rule", type=int, required=True)
    p.add_argument("--width", type=int, default=12)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--t-max", type=int, default=200)
    p.add_argument("--t-step", type=int, default=20)
    p.add_argument("--compressor", choices=sorted(compress.COMPRESSORS),
                   default="builtin-lzss")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_programmability)

    p = sub.add_parser("lattice", help="block-decomposition complexity of a diagram file")
    p.add_argument("--input", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--compressor", choices=sorted(compress.COMPRESSORS),
                   default="builtin-lzss")
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("agent", help="behavioral assessment JSON")
    p.add_argument("--kind", choices=("periodic", "random", "reactive"), required=True)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--stream-seeds", type=int, nargs=3, default=[101, 102, 103],
                   metavar=("CONST", "PERIODIC", "RANDOM"))
    p.add_argument("--compressor", choices=sorted(compress.COMPRESSORS),
                   default="builtin-lzss")
    p.add_argument("--table", default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=_cmd_agent)

    p = sub.add_parser("table", help="build and save a coding table")
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=lattice.DEFAULT_TABLE_SEED)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_table)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, OSError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
