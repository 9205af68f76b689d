"""Command-line front end.

Every subcommand reads one input (a file path, ``-`` for stdin, or a
formula given inline), calls the library and prints the result.  Exit
status is 0 on success (an empty answer included), 2 for unreadable
input and 3 when a size cap is hit.
"""

import argparse
import json
import sys

from . import bipolar, cdnet, frames, kleene, monadic, pipeline, topnet
from .baf import baf_compose, format_baf
from .dot import export_dot
from .errors import ArgqError, InputError, ParseError, ResourceLimitError
from .values import HALF, show

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_LIMIT = 0, 1, 2, 3


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _json_value(v):
    return 0.5 if v == HALF else int(v)


def _labelling_text(lam):
    return "{" + ", ".join(f"{k}={show(v)}" for k, v in sorted(lam.items())) + "}"


def _labelling_json(lam):
    return {k: _json_value(v) for k, v in sorted(lam.items())}


class _Out:
    """Collects a result and prints it as text or JSON."""

    def __init__(self, args):
        self.as_json = args.json
        self.data = {"command": args.command_name}
        self.lines = []

    def labellings(self, key, labs, title=None):
        labs = sorted(labs)
        self.data[key] = [_labelling_json(l) for l in labs]
        self.lines.append(f"{title or key}: {len(labs)}")
        self.lines += ["  " + _labelling_text(l) for l in labs]

    def value(self, key, value, text=None):
        self.data[key] = value
        self.lines.append(text if text is not None else f"{key}: {value}")

    def emit(self):
        if self.as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            print("\n".join(self.lines))


# --- subcommand handlers -------------------------------------------------------

def _frame_ext(args, out):
    frame = frames.parse_frame(_read(args.file))
    if args.grounded:
        out.labellings("extensions", [frames.grounded_labelling(frame)], "grounded")
    else:
        out.labellings("extensions", frames.complete_labellings(frame), "complete extensions")


def _topnet_ext(args, out):
    net = topnet.parse_topnet(_read(args.file))
    policy = topnet.policy_named(args.policy)
    out.labellings("extensions", topnet.extensions(net, args.option, policy),
                   f"option {args.option} extensions")


def _cd(args, out):
    net = cdnet.parse_cdnet(_read(args.file))
    if args.action == "ext":
        labs = cdnet.rcd_extensions(net) if args.rcd else cdnet.enumerate_cd_extensions(net)
        out.labellings("extensions", labs, "RCD extensions" if args.rcd else "CD extensions")
    elif args.action == "np":
        out.labellings("extensions", cdnet.np_extensions(net), "NP extensions")
    else:
        if args.rcd:
            frame = cdnet.eliminate_joint_attacks(cdnet.rcd_expand(net), nodes=net.nodes)
        else:
            frame = cdnet.reduce_to_frame(net)
        text = frames.format_frame(frame)
        out.value("frame", text, text.rstrip("\n"))


def _baf_build(args, out):
    phi = kleene.parse_formula(args.formula)
    made = baf_compose(phi, selector=not args.no_selector, toxic_guard=args.toxic_guard)
    text = format_baf(made.baf)
    dot = export_dot(made.baf, name=kleene.render(phi))
    out.value("frame", text, text.rstrip("\n"))
    out.value("dot", dot, dot.rstrip("\n"))
    out.data["in"], out.data["out"] = made.baf.in_node, made.baf.out_node


def _instantiated(args):
    text = _read(args.file)
    if args.logic == "prop":
        frame, inst = pipeline.parse_instantiation(text)
        return frame, inst, pipeline.InstantiatedFrame(frame, inst)
    frame, inst = pipeline.parse_instantiation(text, monadic.parse_monadic)
    return frame, inst, pipeline.propositional_instantiation(frame, inst, s5=args.logic == "s5")


def _extension_output(out, exts, args, n):
    if args.nonempty:
        exts = pipeline.require_nonempty_domain(exts, n)
    out.data["valuations"] = [_labelling_json(e.valuation) for e in exts]
    out.labellings("extensions", pipeline.distinct_labellings(exts), "extensions")
    out.lines.append(f"valuations: {len(exts)}")
    for e in exts:
        out.lines.append(f"  {_labelling_text(e.valuation)} -> {_labelling_text(e.labelling)}")


def _max_predicate(inst):
    return max([1] + [monadic.max_predicate(phi) for phi in inst.values()])


def _inst(args, out):
    if args.nonempty and args.logic != "monadic":
        raise InputError("--nonempty applies to monadic instantiations")
    frame, raw, inst = _instantiated(args)
    n = _max_predicate(raw) if args.logic != "prop" else 0
    if args.action == "oracle":
        _extension_output(out, pipeline.oracle_extensions(inst), args, n)
    elif args.action == "pipeline":
        policy = topnet.policy_named(args.policy)
        _extension_output(out, pipeline.pipeline_extensions(inst, policy), args, n)
    elif args.action == "equational":
        if args.nonempty:
            raise InputError("--nonempty is not available for the equational route")
        out.labellings("extensions", pipeline.equational_labellings(inst), "extensions")
    elif args.logic == "monadic":
        labs, carried = pipeline.quantifier_pattern_extensions(frame, raw)
        out.data["formulas"] = {k: monadic.render(v) for k, v in sorted(carried.items())}
        out.labellings("extensions", labs, "pattern-network extensions")
    else:
        sols = pipeline.pattern_extensions(inst)
        out.labellings("solutions", [frames.Labelling(v) for v in sols], "pattern-network solutions")


def _mpl_nf(args, out):
    phi = monadic.parse_monadic(args.formula)
    constants = sorted(monadic.free_terms(phi))
    prop = monadic.to_propositional(phi, args.n, constants)
    if constants:
        nf = monadic.normal_form_with_constants(phi, constants, args.n)
        shown = [{"types": sorted(map(list, g)), "constants": dict(zip(constants, map(list, c)))}
                 for g, c in nf]
    else:
        nf = monadic.normal_form(phi, args.n)
        shown = [{"types": sorted(map(list, g))} for g in nf]
    out.value("normal_form", shown, f"type sets: {len(shown)}")
    out.lines += [f"  {item}" for item in shown]
    out.value("propositional", kleene.render(prop), f"propositional: {kleene.render(prop)}")


def _s5_nf(args, out):
    phi = monadic.parse_monadic(args.formula)
    n = args.n
    nf = monadic.s5_normal_form(phi, n)
    n = n if n is not None else max(monadic.max_predicate(phi), 1)
    shown = [{"actual": list(eps), "worlds": sorted(map(list, g))} for eps, g in nf]
    out.value("normal_form", shown, f"pointed world sets: {len(shown)}")
    out.lines += [f"  {item}" for item in shown]
    prop = monadic.s5_propositionalize(nf, n)
    out.value("propositional", kleene.render(prop), f"propositional: {kleene.render(prop)}")


def _defeasible(args, out):
    net = bipolar.compile_theory(bipolar.parse_theory(_read(args.file)))
    if args.action == "compile":
        text = bipolar.format_net(net)
        out.value("network", text, text.rstrip("\n"))
        indices = bipolar.d_indices(net, args.max_visits)
        out.value("index", {k: None if v is None else [v.d1, v.d2] for k, v in indices.items()},
                  "index: " + " ".join(f"{k}={v}" for k, v in indices.items()))
    elif args.action == "ground":
        res = bipolar.ground_labelling(net)
        out.labellings("extensions", [res.labelling], "ground labelling")
        out.value("in", sorted(res.members()), "in: " + " ".join(sorted(res.members())))
        out.data["trace"] = [[s.node, _json_value(s.value), s.d, s.reason] for s in res.trace]
        out.data["rejected"] = [[s.node, _json_value(s.value), s.d, s.reason] for s in res.rejected]
        for s in res.trace:
            out.lines.append(f"  {s.node}={show(s.value)}  D={s.d}  ({s.reason})")
        for s in res.rejected:
            out.lines.append(f"  rejected {s.node}={show(s.value)} at D={s.d} ({s.reason})")
    else:
        report = {}
        labs = bipolar.cg_labellings(net, args.max_visits, project=True, report=report)
        out.labellings("extensions", labs, "case-table labellings")
        for key in (bipolar.ILLEGITIMATE, bipolar.UNCLASSIFIED):
            pairs = report.get(key, [])
            out.value(key, pairs, f"{key} pairs: {' '.join(pairs) or '-'}")


def _load_for_dot(path, kind):
    text = _read(path)
    if kind == "auto":
        kind = {"thy": "theory", "top": "topnet", "cd": "cd"}.get(path.rsplit(".", 1)[-1], "frame")
    if kind == "theory":
        return bipolar.compile_theory(bipolar.parse_theory(text))
    if kind == "topnet":
        return topnet.parse_topnet(text)
    if kind == "cd":
        return cdnet.parse_cdnet(text)
    if kind == "inst":
        return pipeline.parse_instantiation(text)[0]
    return frames.parse_frame(text)


def _export_dot(args, out):
    text = export_dot(_load_for_dot(args.file, args.kind))
    out.value("dot", text, text.rstrip("\n"))


# --- argument parsing ------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")

    parser = argparse.ArgumentParser(prog="argq", description="Argumentation network solver.")
    groups = parser.add_subparsers(dest="group", required=True)

    def action(group_name, help_text, actions):
        g = groups.add_parser(group_name, help=help_text)
        sub = g.add_subparsers(dest="action", required=True)
        return {a: sub.add_parser(a, parents=[common]) for a in actions}

    p = action("frame", "plain frames", ["ext"])["ext"]
    p.add_argument("file")
    p.add_argument("--grounded", action="store_true", help="only the grounded labelling")
    p.set_defaults(handler=_frame_ext)

    p = action("topnet", "networks with a truth node", ["ext"])["ext"]
    p.add_argument("file")
    p.add_argument("--option", choices=["i", "ii", "iii", "iv"], default="iv")
    p.add_argument("--policy", choices=["strict", "lenient"], default="lenient")
    p.set_defaults(handler=_topnet_ext)

    for name, p in action("cd", "set-to-set attacks", ["ext", "reduce", "np"]).items():
        p.add_argument("file")
        if name != "np":
            p.add_argument("--rcd", action="store_true",
                           help="expand disjunctive targets into joint attacks first")
        p.set_defaults(handler=_cd, rcd=False)

    p = action("baf", "Boolean attack formations", ["build"])["build"]
    p.add_argument("formula")
    p.add_argument("--no-selector", action="store_true", help="push every conjunct atom out")
    p.add_argument("--toxic-guard", action="store_true", help="let undecided conjunctions attack the truth node")
    p.set_defaults(handler=_baf_build)

    for name, p in action("inst", "instantiated frames",
                          ["oracle", "equational", "pattern", "pipeline"]).items():
        p.add_argument("file")
        p.add_argument("--logic", choices=["prop", "monadic", "s5"], default="prop")
        p.add_argument("--nonempty", action="store_true",
                       help="monadic only: drop valuations that leave the domain empty")
        p.add_argument("--policy", choices=["strict", "lenient"], default="lenient")
        p.set_defaults(handler=_inst)

    for group_name, handler in (("mpl", _mpl_nf), ("s5", _s5_nf)):
        p = action(group_name, f"{group_name} normal forms", ["nf"])["nf"]
        p.add_argument("formula")
        p.add_argument("--n", type=int, default=None, help="number of predicates")
        p.set_defaults(handler=handler)

    for name, p in action("defeasible", "defeasible theories", ["compile", "ground", "ext"]).items():
        p.add_argument("file")
        p.add_argument("--max-visits", type=int, default=1,
                       help="how often a node may repeat on an index path")
        p.set_defaults(handler=_defeasible)

    p = action("export", "drawings", ["dot"])["dot"]
    p.add_argument("file")
    p.add_argument("--kind", choices=["auto", "frame", "topnet", "cd", "inst", "theory"], default="auto")
    p.set_defaults(handler=_export_dot)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    args.command_name = f"{args.group} {args.action}"
    out = _Out(args)
    try:
        args.handler(args, out)
    except ResourceLimitError as exc:
        print(f"argq: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except InputError as exc:
        kind = "parse error" if isinstance(exc, ParseError) else "input error"
        print(f"argq: {kind}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ArgqError as exc:
        print(f"argq: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out.emit()
    return EXIT_OK


def main():
    sys.exit(run())
