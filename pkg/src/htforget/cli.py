"""Command-line front end.

Subcommands: models, forget, omega, equiv, closure, check, synth.
Exit codes: 0 success (omega: criterion not satisfied; equiv: equivalent;
check: matrix as expected), 1 negative verdict (inequivalent, matrix
mismatch), 2 parse or flag error, 3 omega satisfied, 4 signature cap
exceeded.  All output is deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from .forgetting import (DEFAULT_MAX_RULE_ATOMS, ForgettingInstance,
                         SynthesisError, closure_forget, forget, omega,
                         r_family, synthesize)
from .relativized import v_ht_models
from .semantics import (CapExceeded, HTModelSet, answer_sets, common_signature,
                        ht_models, strongly_equivalent)
from .syntax import Program, Signature, parse_program, render_program

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_OMEGA = 3
EXIT_CAP = 4


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return pathlib.Path(path).read_text()


def _load_program(path: str) -> Program:
    return parse_program(_read_text(path))


def _atom_list(text: str) -> list:
    return [a for a in text.split(",") if a.strip()] if text else []


def _fmt_set(names) -> str:
    return "{" + ",".join(names) + "}"


def _sorted_sets(sets) -> list:
    return sorted([tuple(sorted(s)) for s in sets])


def _sorted_pairs(named_pairs) -> list:
    return sorted(
        [(tuple(sorted(x)), tuple(sorted(y))) for x, y in named_pairs],
        key=lambda p: (p[1], p[0]))


def _fmt_pair(x, y) -> str:
    return f"<{_fmt_set(x)},{_fmt_set(y)}>"


def _emit(args, text_lines, json_obj) -> None:
    if args.format == "json":
        print(json.dumps(json_obj, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _signature_for(program: Program, args) -> Signature:
    if getattr(args, "sig", None):
        return Signature.of(_atom_list(args.sig))
    return program.effective_signature()


def _instance(program: Program, args) -> ForgettingInstance:
    wanted = _atom_list(args.forget)
    present = program.atom_set()
    unknown = [a for a in wanted if a not in present]
    if unknown:
        print(f"warning: forgetting atoms not in the program: "
              f"{','.join(sorted(unknown))}", file=sys.stderr)
    return ForgettingInstance.make(program, wanted)


def cmd_models(args) -> int:
    program = _load_program(args.file)
    if args.kind == "vht" and not args.forget:
        print("error: --kind vht requires --forget", file=sys.stderr)
        return EXIT_USAGE
    sig = _signature_for(program, args)
    if args.kind == "as":
        sets = _sorted_sets(answer_sets(program, sig))
        _emit(args, [" ".join(_fmt_set(s) for s in sets) or ""],
              {"signature": list(sig.atoms),
               "answer_sets": [list(s) for s in sets]})
        return EXIT_OK
    if args.kind == "ht":
        models = ht_models(program, sig)
        pairs = _sorted_pairs(models.named_pairs())
        sets = _sorted_sets(models.answer_sets())
        _emit(args, [_fmt_pair(x, y) for x, y in pairs],
              {"signature": list(sig.atoms),
               "ht_models": [[list(x), list(y)] for x, y in pairs],
               "answer_sets": [list(s) for s in sets]})
        return EXIT_OK
    vset = _atom_list(args.forget)
    full_sig = sig.union(Signature.of(sorted(set(vset) - set(sig.atoms))))
    models = v_ht_models(program, vset, full_sig)
    pairs = _sorted_pairs(models.named_pairs())
    _emit(args, [_fmt_pair(x, y) for x, y in pairs],
          {"signature": list(models.signature.atoms),
           "forgotten": sorted(models.forgotten),
           "v_ht_models": [[list(x), list(y)] for x, y in pairs]})
    return EXIT_OK


def cmd_forget(args) -> int:
    program = _load_program(args.file)
    if not _atom_list(args.forget):
        print("error: --forget must name at least one atom", file=sys.stderr)
        return EXIT_USAGE
    inst = _instance(program, args)
    if args.op == "closure":
        result = closure_forget(inst, max_atoms=args.max_rule_atoms,
                                minimize=args.minimize)
    else:
        result = forget(inst, args.op, minimize=args.minimize)
    text = render_program(Program.of(result.rules))
    _emit(args, [text.rstrip("\n")] if text else [""], {"program": text})
    return EXIT_OK


def cmd_omega(args) -> int:
    program = _load_program(args.file)
    inst = _instance(program, args)
    verdict = omega(inst)
    payload = {"satisfies_omega": verdict.satisfied,
               "witness": sorted(verdict.witness) if verdict.witness is not None else None}
    if args.explain:
        families = {}
        red = inst.reduced_signature()
        for y_mask in range(1 << len(red)):
            base = red.names(y_mask)
            fam = r_family(inst, base)
            if not fam.members:
                continue
            families[_fmt_set(sorted(base))] = {
                _fmt_set(sorted(a)): sorted(_fmt_set(sorted(m)) for m in mem)
                for a, mem in sorted(fam.members.items(), key=lambda kv: sorted(kv[0]))}
        payload["families"] = families
    if verdict.satisfied:
        line = f"omega: true, witness Y={_fmt_set(sorted(verdict.witness))}"
    else:
        line = "omega: false"
    _emit(args, [line], payload)
    return EXIT_OMEGA if verdict.satisfied else EXIT_OK


def cmd_equiv(args) -> int:
    p = _load_program(args.file1)
    q = _load_program(args.file2)
    if args.mode == "strong":
        sig = common_signature(p, q)
        mp, mq = ht_models(p, sig), ht_models(q, sig)
        same = mp.pairs == mq.pairs
        diff = mp.pairs ^ mq.pairs
        witness = None
        if diff:
            x, y = min(diff, key=lambda t: (t[1], t[0]))
            witness = (sig.names(x), sig.names(y))
    else:
        if not args.forget:
            print("error: --mode relativized requires --forget", file=sys.stderr)
            return EXIT_USAGE
        vset = _atom_list(args.forget)
        sig = common_signature(p, q).union(Signature.of(sorted(vset)))
        mp = v_ht_models(p, vset, sig)
        mq = v_ht_models(q, vset, sig)
        same = mp.pairs == mq.pairs
        diff = set(mp.pairs) ^ set(mq.pairs)
        witness = None
        if diff:
            x, y = min(diff, key=lambda t: (t[1], t[0]))
            witness = (sig.names(x), sig.names(y))
    payload = {"equivalent": same, "mode": args.mode,
               "witness": None if witness is None else
               [list(witness[0]), list(witness[1])]}
    lines = ["equivalent" if same else "not equivalent"]
    if witness is not None:
        lines.append("witness: " + _fmt_pair(*witness))
    _emit(args, lines, payload)
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_check(args) -> int:
    from . import properties as PR

    kinds = _atom_list(args.ops) or list(PR.OPERATOR_KINDS)
    props = [p for p in (args.props.split(",") if args.props else PR.PROPERTIES) if p]
    for k in kinds:
        if k not in PR.OPERATOR_KINDS:
            print(f"error: unknown operator kind {k!r}", file=sys.stderr)
            return EXIT_USAGE
    for p in props:
        if p not in PR.PROPERTIES:
            print(f"error: unknown property {p!r}", file=sys.stderr)
            return EXIT_USAGE
    corpus = PR.build_corpus(args.seed, args.size)
    witnesses = PR.load_witnesses()
    expected = PR.expected_matrix()
    matrix = {}
    ok = True
    outdir = pathlib.Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for kind in kinds:
        for prop in props:
            report = PR.check_property(prop, kind, corpus, args.bound)
            shipped = witnesses.get((kind, prop))
            if shipped is not None and PR.replay(shipped):
                report.violations.append(shipped)
            observed_ok = not report.violations
            expected_ok = prop in expected[kind]
            if observed_ok != expected_ok:
                ok = False
            matrix[f"{kind}.{prop}"] = {
                "checked": report.checked,
                "skipped": report.skipped,
                "bound": report.bound,
                "violations": len(report.violations),
                "status": report.status(),
                "expected": "satisfied" if expected_ok else "violated",
                "as_expected": observed_ok == expected_ok,
            }
            if outdir:
                for i, v in enumerate(report.violations):
                    stem = f"{kind}_{prop}_{i}"
                    (outdir / f"{stem}.json").write_text(
                        json.dumps(v.to_json_dict(), indent=2, sort_keys=True) + "\n")
                    (outdir / f"{stem}.lp").write_text(v.program)
    print(json.dumps(matrix, indent=2, sort_keys=True))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_synth(args) -> int:
    data = json.loads(_read_text(args.file))
    try:
        sig = Signature.of(data["signature"])
        pairs = [(x, y) for x, y in data["ht_models"]]
    except (KeyError, TypeError, ValueError) as e:
        print(f"error: bad model-set JSON: {e}", file=sys.stderr)
        return EXIT_USAGE
    models = HTModelSet.from_named(sig, pairs)
    if not models.is_total_closed():
        print("error: model set is not total-closed; no program realizes it",
              file=sys.stderr)
        return EXIT_USAGE
    program = synthesize(models, minimize=args.minimize)
    text = render_program(Program.of(program.rules))
    _emit(args, [text.rstrip("\n")] if text else [""], {"program": text})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="htforget",
        description="Forget atoms from answer-set programs under HT semantics.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, with_format=True):
        if with_format:
            p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("models", help="enumerate HT/V-HT-models or answer sets")
    p.add_argument("file")
    p.add_argument("--kind", choices=("ht", "vht", "as"), default="ht")
    p.add_argument("--forget", default="", help="comma-separated atoms (vht)")
    p.add_argument("--sig", default="", help="explicit signature atoms")
    common(p)
    p.set_defaults(func=cmd_models)

    for name, fixed_op in (("forget", None), ("closure", "closure")):
        p = sub.add_parser(name, help="apply a forgetting operator" if fixed_op is None
                           else "rule-closure forgetting (forget --op closure)")
        p.add_argument("file")
        p.add_argument("--forget", required=True, help="comma-separated atoms")
        if fixed_op is None:
            p.add_argument("--op", choices=("sp", "r", "m", "closure"), default="sp")
        p.add_argument("--minimize", action="store_true")
        p.add_argument("--max-rule-atoms", type=int, default=DEFAULT_MAX_RULE_ATOMS,
                       help="cap for closure rule enumeration")
        common(p)
        p.set_defaults(func=cmd_forget, **({"op": "closure"} if fixed_op else {}))

    p = sub.add_parser("omega", help="decide whether forgetting is obstructed")
    p.add_argument("file")
    p.add_argument("--forget", default="")
    p.add_argument("--explain", action="store_true",
                   help="include the per-world families in JSON output")
    common(p)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("equiv", help="strong or relativized equivalence")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--mode", choices=("strong", "relativized"), default="strong")
    p.add_argument("--forget", default="")
    common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("check", help="postulate matrix over a random corpus")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--size", type=int, default=200)
    p.add_argument("--props", default="", help="comma-separated property names")
    p.add_argument("--ops", default="", help="comma-separated operator kinds")
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--out", default="", help="directory for violation files")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("synth", help="program from an HT-model-set JSON")
    p.add_argument("file")
    p.add_argument("--minimize", action="store_true")
    common(p)
    p.set_defaults(func=cmd_synth)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as e:
        # ParseError and SignatureError are ValueErrors too
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SynthesisError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
