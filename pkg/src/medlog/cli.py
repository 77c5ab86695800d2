"""Command line surface.

Exit codes: 0 the property holds / success, 1 it fails (countermodel or
report emitted), 2 usage or input error, 3 work cap exceeded, 4 an internal
theorem cross-check failed.
"""

import argparse
import json
import os
import sys

from .errors import VerificationError, WorkCapExceeded
from .formula import Or, ParseError, parse, parse_sequent, render, scheme
from .medvedev import (
    Countermodel,
    MedvedevFrame,
    compactness_entailment,
    compactness_witness,
    decide,
    dp_failure_witness,
    edn_falsifier,
    edn_root_check,
    frame,
    separation_witness,
)
from .poset import Poset, PosetError, characterize, check_conditions, induced_pmorphism, max_incompatible_family
from .prucnal import structural_demo
from .semantics import DEFAULT_WORK_CAP, Model, falsify_at
from . import __version__


def _parser():
    ap = argparse.ArgumentParser(
        prog="medlog",
        description="decision procedures and frame theory for the logics of "
        "reverse-inclusion subset frames",
    )
    ap.add_argument("--version", action="version", version=f"medlog {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    fr = sub.add_parser("frame", help="generate or recognize subset frames")
    fsub = fr.add_subparsers(dest="action", required=True)
    gen = fsub.add_parser("gen", help="emit the n-frame as a poset file")
    gen.add_argument("n", type=int)
    gen.add_argument("--format", choices=["json", "text", "dot"], default="json")
    gen.add_argument("-o", "--out", help="write to a file instead of stdout")
    chk = fsub.add_parser("check", help="test whether a poset file is an n-frame")
    chk.add_argument("path")
    chk.add_argument("--format", choices=["json", "text"], default="text")

    va = sub.add_parser("valid", help="is a formula valid at a point of a poset")
    va.add_argument("formula")
    va.add_argument("--scheme", action="store_true",
                    help="read the argument as a scheme name like kp or bd(2)")
    va.add_argument("-n", type=int, help="use the n-frame")
    va.add_argument("--poset", help="use a poset file instead")
    va.add_argument("--at", default="root", metavar="WORLD")
    va.add_argument("--work-cap", type=int, dest="work_cap")
    va.add_argument("--format", choices=["text", "json", "dot"], default="text")

    de = sub.add_parser("decide", help="decide a sequent at the root of the n-frame")
    de.add_argument("sequent", help="'g1 ; g2 |- f' or '|- f'")
    de.add_argument("-n", type=int, required=True)
    de.add_argument("--work-cap", type=int, dest="work_cap")
    de.add_argument("--format", choices=["text", "json", "dot"], default="text")

    cm = sub.add_parser("countermodel", help="like decide, but emit only the witness")
    cm.add_argument("sequent", help="a sequent, or a bare formula meaning '|- f'")
    cm.add_argument("-n", type=int, required=True)
    cm.add_argument("--work-cap", type=int, dest="work_cap")
    cm.add_argument("--format", choices=["text", "json", "dot"], default="text")

    ru = sub.add_parser("rule", help="frame correspondence checks for rules")
    rsub = ru.add_subparsers(dest="rule", required=True)
    edn = rsub.add_parser("edn", help="does the endpoint rule hold at the root")
    edn.add_argument("-n", type=int, required=True)
    edn.add_argument("--frame", type=int, metavar="K", help="check on the k-frame")
    edn.add_argument("--poset", help="check on a poset file")
    edn.add_argument("--work-cap", type=int, dest="work_cap")
    edn.add_argument("--format", choices=["text", "json"], default="text")

    pm = sub.add_parser("pmorph", help="the induced map between subset frames")
    pm.add_argument("n", type=int)
    pm.add_argument("j", type=int)
    pm.add_argument("g", help="surjection as '0:0,1:1,2:1' or '0,1,1'")
    pm.add_argument("--format", choices=["text", "json"], default="text")

    dm = sub.add_parser("demo", help="reproduce the separation results")
    dsub = dm.add_subparsers(dest="demo", required=True)
    chain = dsub.add_parser("chain", help="bd(n) separates neighbouring logics")
    chain.add_argument("-n", type=int, default=2)
    chain.add_argument("--work-cap", type=int, dest="work_cap")
    chain.add_argument("--format", choices=["text", "json"], default="text")
    dp = dsub.add_parser("dp", help="a valid disjunction with no valid disjunct")
    dp.add_argument("-n", type=int, default=2)
    dp.add_argument("--work-cap", type=int, dest="work_cap")
    dp.add_argument("--format", choices=["text", "json"], default="text")
    comp = dsub.add_parser("compactness", help="finite premise families fall short")
    comp.add_argument("-i", type=int, default=2)
    comp.add_argument("--work-cap", type=int, dest="work_cap")
    comp.add_argument("--format", choices=["text", "json"], default="text")
    pru = dsub.add_parser("prucnal", help="substitution showing a rule inadmissible")
    pru.add_argument("-n", type=int, default=2)
    pru.add_argument("--phi", default="~~p")
    pru.add_argument("--psi", default="p")
    pru.add_argument("--work-cap", type=int, dest="work_cap")
    pru.add_argument("--format", choices=["text", "json"], default="text")

    return ap


def _work_cap(args) -> int:
    if getattr(args, "work_cap", None) is not None:
        return args.work_cap
    env = os.environ.get("MEDLOG_WORK_CAP")
    if env:
        return int(env)
    return DEFAULT_WORK_CAP


def _json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _emit(text, out=None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_poset(path) -> Poset:
    with open(path) as fh:
        data = json.load(fh)
    return Poset.from_dict(data)


def _pick_poset(args) -> Poset:
    n = getattr(args, "n", None)
    path = getattr(args, "poset", None)
    if (n is None) == (path is None):
        raise ValueError("pick exactly one of -n and --poset")
    return frame(n) if n is not None else _load_poset(path)


def _resolve_world(P, text):
    if text == "root":
        root = P.root()
        if root is None:
            raise PosetError("the poset has no root; pass --at")
        return root
    if isinstance(P, MedvedevFrame):
        return P.parse_world(text)
    for e in P.elements:
        if P.label(e) == text:
            return e
    raise PosetError(f"no element labeled {text!r}")


def _frame_text(P) -> str:
    lines = [f"{len(P)} worlds, root {P.label(P.root())}"]
    lines.append("endpoints: " + ", ".join(P.label(e) for e in P.end_points()))
    lines.append("covers:")
    for a, b in P.covering_pairs():
        lines.append(f"  {P.label(a)} <= {P.label(b)}")
    return "\n".join(lines) + "\n"


def _do_frame_gen(args) -> int:
    P = frame(args.n)
    if args.format == "json":
        text = _json(P.to_dict())
    elif args.format == "dot":
        text = P.to_dot()
    else:
        text = _frame_text(P)
    _emit(text, args.out)
    return 0


def _do_frame_check(args) -> int:
    P = _load_poset(args.path)
    found = characterize(P)
    if found is not None:
        n, iso = found
        F = frame(n)
        if args.format == "json":
            _emit(_json({
                "schema": "medlog.frame_check/1",
                "is_medvedev": True,
                "n": n,
                "iso": {P.label(e): F.label(w) for e, w in iso.items()},
            }))
        else:
            lines = [f"an n-Medvedev frame: n={n}"]
            for e in P.elements:
                lines.append(f"  {P.label(e)} -> {F.label(iso[e])}")
            _emit("\n".join(lines) + "\n")
        return 0
    rooted = P.root() is not None
    n = len(P.end_points())
    report = check_conditions(P, n)
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.frame_check/1",
            "is_medvedev": False,
            "rooted": rooted,
            "n_tried": n,
            "chain_le": report.chain_le,
            "uni": report.uni,
            "end_ge": report.end_ge,
            "longest_chain": report.longest_chain,
            "end_count": report.end_count,
        }))
    else:
        lines = [
            "not an n-Medvedev frame",
            f"  rooted: {rooted}",
            f"  tried n = {n} (endpoint count)",
            f"  chain_le: {report.chain_le} (longest chain {report.longest_chain})",
            f"  uni: {report.uni}",
            f"  end_ge: {report.end_ge}",
        ]
        _emit("\n".join(lines) + "\n")
    return 1


def _do_valid(args) -> int:
    f = scheme(args.formula) if args.scheme else parse(args.formula)
    P = _pick_poset(args)
    w = _resolve_world(P, args.at)
    witness = falsify_at(P, w, f, _work_cap(args))
    if witness is None:
        _emit("valid\n")
        return 0
    cm = Countermodel(Model(P, witness), w, (), f)
    if args.format == "json":
        _emit(_json(cm.to_json_dict()))
    elif args.format == "dot":
        _emit(cm.to_dot())
    else:
        _emit("invalid\n" + cm.to_text())
    return 1


def _do_decide(args) -> int:
    premises, conclusion = parse_sequent(args.sequent)
    verdict = decide(args.n, premises, conclusion, _work_cap(args))
    if args.format == "json":
        _emit(_json(verdict.to_json_dict()))
    elif args.format == "dot" and not verdict.valid:
        _emit(verdict.witness.to_dot())
    else:
        _emit(verdict.to_text())
    return 0 if verdict.valid else 1


def _do_countermodel(args) -> int:
    text = args.sequent
    if "|-" in text:
        premises, conclusion = parse_sequent(text)
    else:
        premises, conclusion = (), parse(text)
    verdict = decide(args.n, premises, conclusion, _work_cap(args))
    if verdict.valid:
        _emit("valid; no countermodel\n")
        return 0
    if args.format == "json":
        _emit(_json(verdict.witness.to_json_dict()))
    elif args.format == "dot":
        _emit(verdict.witness.to_dot())
    else:
        _emit(verdict.witness.to_text())
    return 1


def _do_rule_edn(args) -> int:
    if args.frame is not None and args.poset is not None:
        raise ValueError("pick one of --frame and --poset")
    if args.frame is not None:
        P = frame(args.frame)
    elif args.poset is not None:
        P = _load_poset(args.poset)
    else:
        raise ValueError("pick one of --frame and --poset")
    n = args.n
    holds = edn_root_check(P, n)
    found = len(max_incompatible_family(P))
    falsifier = edn_falsifier(P, n, _work_cap(args))
    if holds != (falsifier is None):
        raise VerificationError("rule check and falsifier search disagree")
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.edn/1",
            "n": n,
            "holds": holds,
            "incompatible": found,
            "falsifier": None if holds else render(falsifier[0]),
        }))
        return 0 if holds else 1
    if holds:
        _emit(f"holds for n={n}: {found} pairwise incompatible elements\n")
        return 0
    _emit(
        f"fails for n={n}: only {found} pairwise incompatible elements\n"
        f"premise valid at the root while its conclusion is not: "
        f"{render(falsifier[0])}\n"
    )
    return 1


def _parse_surjection(text: str, n: int):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if any(":" in p for p in parts):
        table = {}
        for p in parts:
            k, _, v = p.partition(":")
            table[int(k)] = int(v)
        if sorted(table) != list(range(n)):
            raise ValueError(f"the map must cover 0..{n - 1} exactly once")
        return [table[i] for i in range(n)]
    vals = [int(p) for p in parts]
    if len(vals) != n:
        raise ValueError(f"need {n} entries, got {len(vals)}")
    return vals


def _do_pmorph(args) -> int:
    g = _parse_surjection(args.g, args.n)
    f = induced_pmorphism(args.n, args.j, g)
    src, tgt = f.source, f.target
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.pmorph/1",
            "n": args.n,
            "j": args.j,
            "g": g,
            "map": {src.label(w): tgt.label(f.mapping[w]) for w in src.elements},
        }))
    else:
        lines = [f"{src.label(w)} -> {tgt.label(f.mapping[w])}" for w in src.elements]
        _emit("\n".join(lines) + "\n")
    return 0


def _do_demo_chain(args) -> int:
    f = separation_witness(args.n, _work_cap(args))
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.demo/1",
            "demo": "chain",
            "n": args.n,
            "formula": render(f),
            "valid_on_n": True,
            "valid_on_next": False,
        }))
    else:
        _emit(
            f"{render(f)}\n"
            f"valid on the {args.n}-frame, invalid on the {args.n + 1}-frame\n"
        )
    return 0


def _do_demo_dp(args) -> int:
    left, right = dp_failure_witness(args.n, _work_cap(args))
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.demo/1",
            "demo": "dp",
            "n": args.n,
            "disjunction": render(Or(left, right)),
            "left": render(left),
            "right": render(right),
            "disjunction_valid": True,
            "left_valid": False,
            "right_valid": False,
        }))
    else:
        _emit(
            f"valid on the {args.n}-frame: {render(Or(left, right))}\n"
            f"but neither disjunct is:\n"
            f"  {render(left)}\n"
            f"  {render(right)}\n"
        )
    return 0


def _do_demo_compactness(args) -> int:
    i = args.i
    model = compactness_witness(i)
    entails = compactness_entailment(i, _work_cap(args))
    if not entails:
        raise VerificationError(
            f"the premise family up to {i} does not entail p0 on the {i}-frame"
        )
    if args.format == "json":
        _emit(_json({
            "schema": "medlog.demo/1",
            "demo": "compactness",
            "i": i,
            "witness_frame": model.poset.n,
            "finite_family_entails": False,
            "full_family_entails_at_i": True,
        }))
    else:
        _emit(
            f"on the {model.poset.n}-frame the root forces bd(j) -> p0 for all "
            f"j <= {i} but not p0\n"
            f"on the {i}-frame the same premises do entail p0 at the root\n"
        )
    return 0


def _do_demo_prucnal(args) -> int:
    rep = structural_demo(args.n, parse(args.phi), parse(args.psi), _work_cap(args))
    if args.format == "json":
        _emit(_json(rep.to_json_dict()))
    else:
        _emit(rep.to_text())
    return 0


def _dispatch(args) -> int:
    if args.verb == "frame":
        return _do_frame_gen(args) if args.action == "gen" else _do_frame_check(args)
    if args.verb == "valid":
        return _do_valid(args)
    if args.verb == "decide":
        return _do_decide(args)
    if args.verb == "countermodel":
        return _do_countermodel(args)
    if args.verb == "rule":
        return _do_rule_edn(args)
    if args.verb == "pmorph":
        return _do_pmorph(args)
    if args.verb == "demo":
        handler = {
            "chain": _do_demo_chain,
            "dp": _do_demo_dp,
            "compactness": _do_demo_compactness,
            "prucnal": _do_demo_prucnal,
        }[args.demo]
        return handler(args)
    raise ValueError(f"unknown verb {args.verb!r}")


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except WorkCapExceeded as exc:
        print(f"work cap exceeded: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 4
    except (ParseError, PosetError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
