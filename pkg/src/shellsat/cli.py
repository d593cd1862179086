"""Command-line front door for every decider and certificate converter.

Exit codes are the machine-readable verdict channel:

* 0 - property holds / certificate produced
* 1 - property refuted
* 2 - node budget exceeded
* 3 - input or usage error

stdout carries reports, certificate files carry proofs.  All randomness
flows from --seed (default 0); identical invocations produce identical
bytes.
"""

import argparse
import json
import sys
from itertools import islice
from pathlib import Path

from . import certificates, collapse, harness, shelling, wsat
from .complexes import Complex, parse_sc_with_warnings
from .errors import ShellsatError
from .harness import GeneratorSpec, sample_pure2
from .outcomes import BudgetExceeded, Impossible, NotCollapsible, NotSaturated, Unshellable

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

DEFAULT_BUDGET = 10**7


def _read_complex(path: str) -> Complex:
    text = Path(path).read_text(encoding="utf-8")
    complex_, warnings = parse_sc_with_warnings(text)
    for warning in warnings:
        print(f"warning: {path}: {warning}", file=sys.stderr)
    return complex_


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _report(data: dict, text: str, as_json: bool, out: str | None = None) -> None:
    if as_json:
        _emit(json.dumps(data, indent=2) + "\n", out)
    else:
        _emit(text, out)


# -- subcommands ---------------------------------------------------------------

def _cmd_info(args) -> int:
    K = _read_complex(args.infile)
    try:
        flag = K.is_flag2()
    except ShellsatError:
        flag = None
    data = {
        "file": args.infile,
        "fingerprint": K.fingerprint,
        "dimension": K.dim,
        "f_vector": list(K.f_vector()),
        "reduced_euler_characteristic": K.reduced_euler_characteristic(),
        "pure": K.is_pure(),
        "connected": K.is_connected(),
        "flag": flag,
        "facets": len(K.facets),
    }
    text = "\n".join([
        f"file: {data['file']}",
        f"fingerprint: {data['fingerprint']}",
        f"dimension: {data['dimension']}",
        f"f-vector: {' '.join(str(c) for c in data['f_vector'])}",
        f"reduced-euler-characteristic: {data['reduced_euler_characteristic']}",
        f"pure: {str(data['pure']).lower()}",
        f"connected: {str(data['connected']).lower()}",
        f"flag: {'n/a' if flag is None else str(flag).lower()}",
        f"facets: {data['facets']}",
    ]) + "\n"
    _report(data, text, args.json)
    return EXIT_OK


def _cmd_sd(args) -> int:
    K = _read_complex(args.infile)
    L = K
    for _ in range(args.depth):
        L = L.barycentric_subdivision()
    text = f"# sd depth={args.depth} of {K.fingerprint}\n" + L.to_sc()
    _emit(text, args.out)
    return EXIT_OK


def _cmd_shell(args) -> int:
    K = _read_complex(args.infile)
    if args.verify:
        if not args.cert:
            print("error: --verify requires --cert", file=sys.stderr)
            return EXIT_USAGE
        cert = shelling.parse_shelling(Path(args.cert).read_text(encoding="utf-8"), K)
        violation = shelling.first_shelling_violation(K, cert)
        ok = violation is None
        text = ("valid shelling\n" if ok
                else f"invalid shelling: condition fails at index {violation}\n")
        _report({"verdict": "valid" if ok else "invalid",
                 "violation_index": violation}, text, args.json)
        return EXIT_OK if ok else EXIT_REFUTED

    result = shelling.find_shelling(K, args.budget)
    if isinstance(result, BudgetExceeded):
        _report({"verdict": "budget-exceeded"}, "budget exceeded\n", args.json)
        return EXIT_BUDGET
    if isinstance(result, Unshellable):
        _report({"verdict": "unshellable"}, "unshellable\n", args.json)
        return EXIT_REFUTED
    cert_text = shelling.format_shelling(K, result)
    if args.cert:
        Path(args.cert).write_text(cert_text, encoding="utf-8")
        _report({"verdict": "shellable", "certificate_file": args.cert},
                f"shellable; certificate written to {args.cert}\n", args.json)
    else:
        _report({"verdict": "shellable", "certificate": cert_text},
                cert_text, args.json)
    return EXIT_OK


def _cmd_collapse(args) -> int:
    K = _read_complex(args.infile)
    if args.verify:
        if not args.cert:
            print("error: --verify requires --cert", file=sys.stderr)
            return EXIT_USAGE
        cert = collapse.parse_collapse(Path(args.cert).read_text(encoding="utf-8"), K)
        reason = collapse.collapse_violation(K, cert)
        ok = reason is None
        text = "valid collapse\n" if ok else f"invalid collapse: {reason}\n"
        _report({"verdict": "valid" if ok else "invalid", "reason": reason},
                text, args.json)
        return EXIT_OK if ok else EXIT_REFUTED

    if args.k is not None:
        result = collapse.collapsible_after_removing(K, args.k, args.budget)
        if isinstance(result, BudgetExceeded):
            _report({"verdict": "budget-exceeded"}, "budget exceeded\n", args.json)
            return EXIT_BUDGET
        if isinstance(result, Impossible):
            _report({"verdict": "impossible"},
                    f"not collapsible after removing {args.k} triangles\n",
                    args.json)
            return EXIT_REFUTED
        _, cert = result
    else:
        result = collapse.is_collapsible(K, args.budget)
        if isinstance(result, BudgetExceeded):
            _report({"verdict": "budget-exceeded"}, "budget exceeded\n", args.json)
            return EXIT_BUDGET
        if isinstance(result, NotCollapsible):
            _report({"verdict": "not-collapsible"}, "not collapsible\n", args.json)
            return EXIT_REFUTED
        cert = result
    cert_text = collapse.format_collapse(K, cert)
    if args.cert:
        Path(args.cert).write_text(cert_text, encoding="utf-8")
        _report({"verdict": "collapsible", "certificate_file": args.cert},
                f"collapsible; certificate written to {args.cert}\n", args.json)
    else:
        _report({"verdict": "collapsible", "certificate": cert_text},
                cert_text, args.json)
    return EXIT_OK


def _cmd_wsat(args) -> int:
    F = _read_complex(args.infile)
    if F.dim == 2:
        # The saturation statements concern the 1-skeleton of a 2-complex.
        print(f"note: {args.infile}: using the 1-skeleton as the host graph",
              file=sys.stderr)
        F = F.skeleton(1)
    if args.verify:
        if not args.cert:
            print("error: --verify requires --cert", file=sys.stderr)
            return EXIT_USAGE
        cert = wsat.parse_saturation(Path(args.cert).read_text(encoding="utf-8"), F)
        reason = wsat.saturation_violation(F, cert)
        ok = reason is None
        text = "valid saturation\n" if ok else f"invalid saturation: {reason}\n"
        _report({"verdict": "valid" if ok else "invalid", "reason": reason},
                text, args.json)
        return EXIT_OK if ok else EXIT_REFUTED

    if args.number:
        result = wsat.wsat_number(F, args.budget)
        if isinstance(result, BudgetExceeded):
            _report({"verdict": "budget-exceeded"}, "budget exceeded\n", args.json)
            return EXIT_BUDGET
        _report({"verdict": "computed", "wsat_number": result},
                f"wsat number: {result}\n", args.json)
        return EXIT_OK

    result = wsat.decide_wsat_eq_treesize(F, args.budget)
    if isinstance(result, BudgetExceeded):
        _report({"verdict": "budget-exceeded"}, "budget exceeded\n", args.json)
        return EXIT_BUDGET
    if isinstance(result, NotSaturated):
        _report({"verdict": "no"},
                "no spanning tree is weakly K3-saturated\n", args.json)
        return EXIT_REFUTED
    cert_text = wsat.format_saturation(F, result)
    if args.cert:
        Path(args.cert).write_text(cert_text, encoding="utf-8")
        _report({"verdict": "yes", "certificate_file": args.cert},
                f"wsat equals tree size; certificate written to {args.cert}\n",
                args.json)
    else:
        _report({"verdict": "yes", "certificate": cert_text}, cert_text, args.json)
    return EXIT_OK


def _certificate_kind(text: str) -> str | None:
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# shelling of"):
            return "shelling"
        if line.startswith("# saturation of") or line.startswith("# start:"):
            return "saturation"
    return None


def _cmd_convert(args) -> int:
    K = _read_complex(args.infile)
    cert_text = Path(args.cert).read_text(encoding="utf-8")
    kind = _certificate_kind(cert_text)
    if kind == "shelling":
        cert = shelling.parse_shelling(cert_text, K)
        sat = certificates.shelling_to_saturated_tree(K, cert)
        out_text = wsat.format_saturation(K.skeleton(1), sat)
    elif kind == "saturation":
        host = K.skeleton(1)
        cert = wsat.parse_saturation(cert_text, host)
        col = certificates.saturation_to_collapse(K, cert)
        out_text = collapse.format_collapse(K, col)
    else:
        print("error: unrecognized certificate kind", file=sys.stderr)
        return EXIT_USAGE
    _emit(out_text, args.out)
    return EXIT_OK


def _cmd_chain(args) -> int:
    K = _read_complex(args.infile)
    report = certificates.run_chain(K, args.budget)
    data = certificates.chain_report_json(report)
    text = certificates.format_chain_report(report)
    _report(data, text, args.json, args.out)
    if report.status.startswith("budget-exceeded"):
        return EXIT_BUDGET
    if not report.complete or not all(report.verdicts.values()):
        return EXIT_REFUTED
    return EXIT_OK


def _cmd_gen(args) -> int:
    spec = GeneratorSpec(seed=args.seed, n_vertices=args.n, n_triangles=args.t,
                         mode=args.mode, depth=args.depth)
    spec.validate()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    entries = []
    if spec.mode == "random-pure-2":
        import random
        rng = random.Random(spec.seed)
        count = args.count if args.count is not None else 10
        for i in range(count):
            instance, retries = sample_pure2(rng, spec.n_vertices, spec.n_triangles)
            entries.append((instance, {"retries": retries}))
    else:
        stream = harness.generate(spec)
        if args.count is not None:
            stream = islice(stream, args.count)
        for instance in stream:
            entries.append((instance, {}))

    manifest = {
        "spec": {"seed": spec.seed, "n_vertices": spec.n_vertices,
                 "n_triangles": spec.n_triangles, "mode": spec.mode,
                 "depth": spec.depth},
        "instances": [],
    }
    for i, (instance, extra) in enumerate(entries):
        name = f"inst_{i:04d}.sc"
        (out_dir / name).write_text(instance.to_sc(), encoding="utf-8")
        entry = {"file": name, "fingerprint": instance.fingerprint}
        entry.update(extra)
        manifest["instances"].append(entry)
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    message = f"wrote {len(entries)} instances to {out_dir}\n"
    _report({"count": len(entries), "directory": str(out_dir)}, message, args.json)
    return EXIT_OK


# -- argument wiring -------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shellsat",
        description="shellability / collapsibility / weak K3-saturation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, cert=False, budget=False):
        p.add_argument("--in", dest="infile", required=True, metavar="FILE",
                       help="input complex in .sc format")
        p.add_argument("--json", action="store_true",
                       help="machine-readable report on stdout")
        if cert:
            p.add_argument("--cert", metavar="FILE",
                           help="certificate file to write (or read with --verify)")
            p.add_argument("--verify", action="store_true",
                           help="verify an existing certificate instead of searching")
        if budget:
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, metavar="N",
                           help=f"search-node budget (default {DEFAULT_BUDGET})")
            p.add_argument("--threads", type=int, default=1, metavar="N",
                           help="worker threads; any value yields the sequential "
                                "lexicographic result")

    p_info = sub.add_parser("info", help="print structural facts")
    add_common(p_info)
    p_info.set_defaults(handler=_cmd_info)

    p_sd = sub.add_parser("sd", help="barycentric subdivision")
    add_common(p_sd)
    p_sd.add_argument("--out", metavar="FILE", help="output .sc file (default stdout)")
    p_sd.add_argument("--depth", type=int, default=1, metavar="K",
                      help="number of subdivision rounds (default 1)")
    p_sd.set_defaults(handler=_cmd_sd)

    p_shell = sub.add_parser("shell", help="decide shellability")
    add_common(p_shell, cert=True, budget=True)
    p_shell.set_defaults(handler=_cmd_shell)

    p_col = sub.add_parser("collapse", help="decide collapsibility")
    add_common(p_col, cert=True, budget=True)
    p_col.add_argument("--k", type=int, default=None, metavar="N",
                       help="decide collapsibility after removing N triangles")
    p_col.set_defaults(handler=_cmd_collapse)

    p_wsat = sub.add_parser("wsat", help="weak K3-saturation decisions")
    add_common(p_wsat, cert=True, budget=True)
    p_wsat.add_argument("--number", action="store_true",
                        help="compute the exact wsat number instead of the "
                             "tree-size decision")
    p_wsat.set_defaults(handler=_cmd_wsat)

    p_conv = sub.add_parser("convert", help="run a certificate translation")
    add_common(p_conv)
    p_conv.add_argument("--cert", required=True, metavar="FILE",
                        help="input certificate (shelling or saturation)")
    p_conv.add_argument("--out", metavar="FILE",
                        help="output certificate file (default stdout)")
    p_conv.set_defaults(handler=_cmd_convert)

    p_chain = sub.add_parser("chain", help="run the full certificate pipeline")
    add_common(p_chain, budget=True)
    p_chain.add_argument("--out", metavar="FILE",
                         help="report file (default stdout)")
    p_chain.set_defaults(handler=_cmd_chain)

    p_gen = sub.add_parser("gen", help="materialize an instance corpus")
    p_gen.add_argument("--out", required=True, metavar="DIR",
                       help="corpus directory")
    p_gen.add_argument("--mode", required=True, choices=harness.MODES)
    p_gen.add_argument("--n", type=int, required=True, help="vertex bound")
    p_gen.add_argument("--t", type=int, required=True, help="triangle bound")
    p_gen.add_argument("--seed", type=int, default=0,
                       help="RNG seed (default 0, never entropy)")
    p_gen.add_argument("--count", type=int, default=None,
                       help="instance cap (required stream length for random mode)")
    p_gen.add_argument("--depth", type=int, default=1, metavar="K",
                       help="subdivision depth for subdivide-depth-k")
    p_gen.add_argument("--json", action="store_true")
    p_gen.set_defaults(handler=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ShellsatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
